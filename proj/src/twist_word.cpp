#include "platgenus/twist_word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace platgenus {

TwistWord::TwistWord(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("twist word must not be empty");
    }
    if (entries_.size() % 2 != 0) {
        throw std::invalid_argument("twist word length must be even, got " +
                                    std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] == 0) {
            throw std::invalid_argument("twist parameter at position " + std::to_string(i + 1) +
                                        " is zero");
        }
    }
}

TwistWord TwistWord::parse(std::string_view text) {
    std::vector<int> entries;
    std::size_t pos = 0;
    std::size_t index = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        std::string_view token = text.substr(pos, comma - pos);
        ++index;
        // trim surrounding spaces
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (token.empty()) {
            throw std::invalid_argument("token " + std::to_string(index) + " is empty");
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw std::invalid_argument("token " + std::to_string(index) + " ('" +
                                        std::string(token) + "') is not an integer");
        }
        if (value == 0) {
            throw std::invalid_argument("token " + std::to_string(index) +
                                        " is zero; twist parameters must be nonzero");
        }
        entries.push_back(value);
        if (comma == text.size()) {
            break;
        }
        pos = comma + 1;
    }
    if (entries.empty()) {
        throw std::invalid_argument("empty twist word");
    }
    if (entries.size() % 2 != 0) {
        throw std::invalid_argument("twist word needs an even number of entries, got " +
                                    std::to_string(entries.size()));
    }
    return TwistWord(std::move(entries));
}

std::int64_t TwistWord::complexity() const {
    std::int64_t n = 0;
    for (int a : entries_) {
        n += std::abs(static_cast<std::int64_t>(a));
    }
    return n;
}

TwistWord TwistWord::negate_reverse() const {
    std::vector<int> out(entries_.rbegin(), entries_.rend());
    for (int& a : out) {
        a = -a;
    }
    return TwistWord(std::move(out));
}

TwistWord TwistWord::mirror() const {
    std::vector<int> out(entries_);
    for (int& a : out) {
        a = -a;
    }
    return TwistWord(std::move(out));
}

std::string TwistWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << entries_[i];
    }
    return os.str();
}

std::strong_ordering TwistWord::operator<=>(const TwistWord& other) const {
    if (auto c = entries_.size() <=> other.entries_.size(); c != 0) {
        return c;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (auto c = entries_[i] <=> other.entries_[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

CrossingBounds crossing_bounds(const TwistWord& w) {
    const std::int64_t n = w.complexity();
    return CrossingBounds{n + 1, 2 * n};
}

KnotClass::KnotClass(const TwistWord& w) : canonical_(std::min(w, w.negate_reverse())) {}

void ConnectedSum::add(const KnotClass& c, std::int64_t count) {
    if (count < 0) {
        throw std::invalid_argument("summand count must be nonnegative");
    }
    if (count == 0) {
        return;
    }
    counts_[c] += count;
}

std::int64_t ConnectedSum::summand_count() const {
    std::int64_t total = 0;
    for (const auto& [cls, count] : counts_) {
        total += count;
    }
    return total;
}

std::int64_t ConnectedSum::total_genus() const {
    std::int64_t total = 0;
    for (const auto& [cls, count] : counts_) {
        total += cls.seifert_genus() * count;
    }
    return total;
}

std::int64_t ConnectedSum::count_of(const KnotClass& c) const {
    auto it = counts_.find(c);
    return it == counts_.end() ? 0 : it->second;
}

bool ConnectedSum::is_mirror_paired() const {
    for (const auto& [cls, count] : counts_) {
        const KnotClass partner = cls.mirror_class();
        if (partner == cls) {
            if (count % 2 != 0) {
                return false;
            }
        } else if (count_of(partner) != count) {
            return false;
        }
    }
    return true;
}

std::string ConnectedSum::str() const {
    if (counts_.empty()) {
        return "empty";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [cls, count] : counts_) {
        for (std::int64_t i = 0; i < count; ++i) {
            if (!first) {
                os << " ; ";
            }
            os << cls.word().str();
            first = false;
        }
    }
    return os.str();
}

} // namespace platgenus
