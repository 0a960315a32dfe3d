#include "patchcat/report.hpp"

#include <algorithm>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "patchcat/errors.hpp"

namespace patchcat {

namespace {

using nlohmann::json;

json parse_payload(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ParseError("report payload must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid report payload: ") + e.what());
  }
}

bool is_scalar(const json& j) {
  return j.is_primitive();  // null, bool, number, string
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const json& j, int depth, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value)) {
        out << pad << key << ": " << scalar_text(value) << "\n";
      } else if (value.is_array() &&
                 std::all_of(value.begin(), value.end(),
                             [](const json& e) { return is_scalar(e); })) {
        out << pad << key << ": [";
        for (std::size_t i = 0; i < value.size(); ++i)
          out << (i ? ", " : "") << scalar_text(value.at(i));
        out << "]\n";
      } else {
        out << pad << key << ":\n";
        render(value, depth + 1, out);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad << "- item " << i << "\n";
      render(j.at(i), depth + 1, out);
    }
    return;
  }
  out << pad << scalar_text(j) << "\n";
}

}  // namespace

std::string render_json_report(const std::string& payload_json,
                               const std::string& timestamp) {
  json j = parse_payload(payload_json);
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

std::string render_text_report(const std::string& payload_json) {
  json j = parse_payload(payload_json);
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

std::string current_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace patchcat
