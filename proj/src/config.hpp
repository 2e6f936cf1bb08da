#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zkd {

enum class Command {
  kSimulate,
  kRegularizedFamily,
  kStrichartzScan,
  kWeylScan,
  kKernelScan,
  kVdcScan,
  kConvergence,
  kCommutatorScan,
};

Command ParseCommand(std::string_view name);
const char* CommandName(Command c);
std::vector<std::string> CommandNames();

struct ConfigValue {
  std::string key;
  std::string value;
  std::string origin;  // "default", "preset <name>", "<file>:<line>", "override"
};

// Resolved key/value configuration for one command. Layers, lowest first:
// schema defaults, the named preset, the config file, then overrides. Every
// value is type-checked against the command's schema during Resolve, so the
// typed getters below only fail on programming errors.
class Config {
 public:
  // `file_text` uses the documented format:
  //   # comment
  //   [section]          prefixes following keys with "section."
  //   key = value
  // Overrides are "key=value" strings. Throws kParse (with line numbers) for
  // malformed text or duplicate keys, kValidation for unknown keys or bad
  // values, kDomain for alpha / beta outside the admissible range.
  static Config Resolve(Command command, std::string_view file_text,
                        const std::string& file_name,
                        const std::vector<std::string>& overrides);

  Command command() const noexcept { return command_; }
  const std::vector<ConfigValue>& values() const noexcept { return values_; }

  bool Has(std::string_view key) const;
  const std::string& Str(std::string_view key) const;
  double Double(std::string_view key) const;
  std::int64_t Int(std::string_view key) const;
  bool Bool(std::string_view key) const;
  std::vector<double> DoubleList(std::string_view key) const;

  // Text in the input format, one key per line in schema order, with the
  // origin of each value as a trailing comment.
  std::string Echo() const;

 private:
  const ConfigValue& Find(std::string_view key) const;

  Command command_ = Command::kSimulate;
  std::vector<ConfigValue> values_;
};

// Presets available for a command, in declaration order.
std::vector<std::string> PresetNames(Command command);

// Value parsers shared with the C API; all throw kValidation naming `key`.
double ParseDouble(std::string_view key, std::string_view text);
std::int64_t ParseInt(std::string_view key, std::string_view text);
bool ParseBool(std::string_view key, std::string_view text);
std::vector<double> ParseDoubleList(std::string_view key, std::string_view text);

}  // namespace zkd
