#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "coorbit/besov.hpp"
#include "coorbit/error.hpp"
#include "coorbit/matgroup.hpp"
#include "json.hpp"

namespace coorbit {

/// Input that does not match the schema; `pointer` is the JSON pointer of the offending value.
class SchemaError : public ConfigurationError {
 public:
  SchemaError(const std::string& pointer, const std::string& message)
      : ConfigurationError((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

nlohmann::json load_json(const std::filesystem::path& path);

/// {"kind", "dim", "generator" | "matrix" | "generators", "frame", "support": {"kind", "normal", "transform"}}
GroupSpec parse_group(const nlohmann::json& j, const std::string& pointer = "");
/// {"a": group, "b": group}
std::pair<GroupSpec, GroupSpec> parse_pair(const nlohmann::json& j);
/// {"functions": [{"center", "widths" | "width", "modulation", "scale"}]}
std::vector<Packet> parse_battery(const nlohmann::json& j, int dim);

nlohmann::json group_to_json(const GroupSpec& spec);

/// Pretty JSON with a trailing LF.
std::string dump(const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace coorbit
