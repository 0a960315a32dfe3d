#pragma once

#include <string>

namespace patchcat {

/// Re-serializes a JSON object deterministically: sorted keys, two-space
/// indent, exact scalars. A nonempty `timestamp` is added as a top-level
/// "timestamp" field; it is the only part that may differ between runs
/// with equal payloads. Throws ParseError on malformed payloads.
std::string render_json_report(const std::string& payload_json,
                               const std::string& timestamp = "");

/// Human-readable rendering of the same payload: nested "key: value" lines
/// with two-space indentation; scalar arrays inline; object arrays as
/// numbered items.
std::string render_text_report(const std::string& payload_json);

/// RFC 3339 UTC wall-clock timestamp.
std::string current_timestamp();

}  // namespace patchcat
