#include "platgenus/trace_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace platgenus {

namespace {

constexpr std::string_view kHeader = "platgenus-trace v1";

std::string_view kind_name(StepKind kind) {
    switch (kind) {
    case StepKind::RemoveLargePair:
        return "remove-large-pair";
    case StepKind::Split:
        return "split";
    case StepKind::CancelMirrorPair:
        return "cancel";
    case StepKind::RemoveResidual:
        return "residual";
    }
    return "?";
}

std::int64_t parse_int(std::string_view token, std::string_view what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("trace: bad integer for " + std::string(what) + ": '" +
                                    std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ') {
            ++end;
        }
        if (end > pos) {
            out.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return out;
}

ConnectedSum sum_from_text(std::string_view text) {
    ConnectedSum cs;
    if (text == "empty") {
        return cs;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t sep = text.find(" ; ", pos);
        std::string_view piece =
            (sep == std::string_view::npos) ? text.substr(pos) : text.substr(pos, sep - pos);
        cs.add(TwistWord::parse(piece));
        if (sep == std::string_view::npos) {
            break;
        }
        pos = sep + 3;
    }
    return cs;
}

} // namespace

std::string trace_to_text(const CobordismTrace& trace) {
    std::ostringstream os;
    os << kHeader << '\n';
    os << "word " << trace.initial_word.str() << '\n';
    os << "k " << trace.params.k << '\n';
    os << "s " << trace.params.s << '\n';
    os << "n " << trace.initial_word.complexity() << '\n';
    os << "m " << trace.initial_word.pair_count() << '\n';
    os << "total " << trace.total_cost << '\n';
    os << "bound " << trace.bound << '\n';
    os << "steps " << trace.steps.size() << '\n';
    for (const TraceStep& step : trace.steps) {
        os << kind_name(step.kind);
        switch (step.kind) {
        case StepKind::RemoveLargePair:
        case StepKind::Split:
            os << ' ' << step.pair_index;
            break;
        case StepKind::CancelMirrorPair:
            os << ' ' << step.cls->word().str() << ' ' << step.mirror_cls->word().str();
            break;
        case StepKind::RemoveResidual:
            os << ' ' << step.cls->word().str();
            break;
        }
        os << ' ' << step.genus_cost << '\n';
    }
    os << "final " << trace.final_sum.str() << '\n';
    os << "end\n";
    return os.str();
}

CobordismTrace trace_from_text(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) {
                lines.push_back(text.substr(pos));
            }
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    std::size_t next = 0;
    auto need_line = [&]() -> std::string_view {
        if (next >= lines.size()) {
            throw std::invalid_argument("trace: unexpected end of input");
        }
        return lines[next++];
    };
    auto need_field = [&](std::string_view key) -> std::string_view {
        std::string_view line = need_line();
        if (line.substr(0, key.size()) != key || line.size() <= key.size() ||
            line[key.size()] != ' ') {
            throw std::invalid_argument("trace: expected '" + std::string(key) + " ...', got '" +
                                        std::string(line) + "'");
        }
        return line.substr(key.size() + 1);
    };

    if (need_line() != kHeader) {
        throw std::invalid_argument("trace: missing header line");
    }
    const TwistWord word = TwistWord::parse(need_field("word"));
    BoundParams params;
    params.k = parse_int(need_field("k"), "k");
    params.s = parse_int(need_field("s"), "s");
    params.validate();
    const std::int64_t n = parse_int(need_field("n"), "n");
    const std::int64_t m = parse_int(need_field("m"), "m");
    if (n != word.complexity() || m != word.pair_count()) {
        throw std::invalid_argument("trace: header n/m do not match the word");
    }
    const std::int64_t total = parse_int(need_field("total"), "total");
    const std::int64_t bound = parse_int(need_field("bound"), "bound");
    const std::int64_t step_count = parse_int(need_field("steps"), "steps");
    if (step_count < 0) {
        throw std::invalid_argument("trace: negative step count");
    }

    CobordismTrace trace{word, params, {}, ConnectedSum{}, total, bound};
    trace.steps.reserve(static_cast<std::size_t>(step_count));
    for (std::int64_t i = 0; i < step_count; ++i) {
        const std::vector<std::string_view> tokens = split_tokens(need_line());
        if (tokens.empty()) {
            throw std::invalid_argument("trace: empty step line");
        }
        TraceStep step;
        const std::string_view kind = tokens[0];
        if (kind == "remove-large-pair" || kind == "split") {
            if (tokens.size() != 3) {
                throw std::invalid_argument("trace: malformed step line");
            }
            step.kind = (kind == "split") ? StepKind::Split : StepKind::RemoveLargePair;
            step.pair_index = parse_int(tokens[1], "pair index");
            step.genus_cost = parse_int(tokens[2], "cost");
        } else if (kind == "cancel") {
            if (tokens.size() != 4) {
                throw std::invalid_argument("trace: malformed cancel line");
            }
            step.kind = StepKind::CancelMirrorPair;
            step.cls = KnotClass(TwistWord::parse(tokens[1]));
            step.mirror_cls = KnotClass(TwistWord::parse(tokens[2]));
            step.genus_cost = parse_int(tokens[3], "cost");
        } else if (kind == "residual") {
            if (tokens.size() != 3) {
                throw std::invalid_argument("trace: malformed residual line");
            }
            step.kind = StepKind::RemoveResidual;
            step.cls = KnotClass(TwistWord::parse(tokens[1]));
            step.genus_cost = parse_int(tokens[2], "cost");
        } else {
            throw std::invalid_argument("trace: unknown step kind '" + std::string(kind) + "'");
        }
        trace.steps.push_back(std::move(step));
    }
    trace.final_sum = sum_from_text(need_field("final"));
    if (need_line() != "end") {
        throw std::invalid_argument("trace: missing end marker");
    }
    return trace;
}

std::string trace_to_json(const CobordismTrace& trace) {
    nlohmann::json j;
    j["format"] = std::string(kHeader);
    j["word"] = trace.initial_word.str();
    j["k"] = trace.params.k;
    j["s"] = trace.params.s;
    j["n"] = trace.initial_word.complexity();
    j["m"] = trace.initial_word.pair_count();
    j["total"] = trace.total_cost;
    j["bound"] = trace.bound;
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& step : trace.steps) {
        nlohmann::json js;
        js["kind"] = std::string(kind_name(step.kind));
        js["cost"] = step.genus_cost;
        if (step.kind == StepKind::RemoveLargePair || step.kind == StepKind::Split) {
            js["pair"] = step.pair_index;
        }
        if (step.cls) {
            js["class"] = step.cls->word().str();
        }
        if (step.mirror_cls) {
            js["mirror"] = step.mirror_cls->word().str();
        }
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    nlohmann::json final_list = nlohmann::json::array();
    for (const auto& [cls, count] : trace.final_sum.counts()) {
        for (std::int64_t i = 0; i < count; ++i) {
            final_list.push_back(cls.word().str());
        }
    }
    j["final"] = std::move(final_list);
    return j.dump(2);
}

CobordismTrace trace_from_json(std::string_view text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kHeader) {
        throw std::invalid_argument("trace: unknown json format tag");
    }
    const TwistWord word = TwistWord::parse(j.at("word").get<std::string>());
    BoundParams params{j.at("k").get<std::int64_t>(), j.at("s").get<std::int64_t>()};
    params.validate();
    CobordismTrace trace{word, params, {}, ConnectedSum{},
                         j.at("total").get<std::int64_t>(), j.at("bound").get<std::int64_t>()};
    for (const nlohmann::json& js : j.at("steps")) {
        TraceStep step;
        const std::string kind = js.at("kind").get<std::string>();
        step.genus_cost = js.at("cost").get<std::int64_t>();
        if (kind == "remove-large-pair" || kind == "split") {
            step.kind = (kind == "split") ? StepKind::Split : StepKind::RemoveLargePair;
            step.pair_index = js.at("pair").get<std::int64_t>();
        } else if (kind == "cancel") {
            step.kind = StepKind::CancelMirrorPair;
            step.cls = KnotClass(TwistWord::parse(js.at("class").get<std::string>()));
            step.mirror_cls = KnotClass(TwistWord::parse(js.at("mirror").get<std::string>()));
        } else if (kind == "residual") {
            step.kind = StepKind::RemoveResidual;
            step.cls = KnotClass(TwistWord::parse(js.at("class").get<std::string>()));
        } else {
            throw std::invalid_argument("trace: unknown step kind '" + kind + "'");
        }
        trace.steps.push_back(std::move(step));
    }
    for (const nlohmann::json& jw : j.at("final")) {
        trace.final_sum.add(TwistWord::parse(jw.get<std::string>()));
    }
    return trace;
}

} // namespace platgenus
