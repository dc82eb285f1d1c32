// Serialization of cobordism traces: a line-oriented text format and a JSON
// mirror of the same records.  Both round-trip bit-exactly: parsing a
// serialized trace and serializing it again reproduces the input bytes.

#pragma once

#include <string>
#include <string_view>

#include "platgenus/cobordism.hpp"

namespace platgenus {

std::string trace_to_text(const CobordismTrace& trace);
CobordismTrace trace_from_text(std::string_view text); // throws std::invalid_argument

std::string trace_to_json(const CobordismTrace& trace);
CobordismTrace trace_from_json(std::string_view text);

} // namespace platgenus
