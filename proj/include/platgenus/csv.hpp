// Minimal CSV support: RFC-style quoting on demand, byte-stable round trips.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace platgenus {

// Quotes a cell only when it contains a comma, quote or newline.
std::string csv_escape(std::string_view cell);

std::string csv_join(const std::vector<std::string>& cells);

// Splits one line into cells, honoring quotes; throws on malformed input.
std::vector<std::string> csv_split(std::string_view line);

std::vector<std::vector<std::string>> csv_parse(std::string_view document);

// Rows joined with '\n', trailing newline included.
std::string csv_emit(const std::vector<std::vector<std::string>>& rows);

} // namespace platgenus
