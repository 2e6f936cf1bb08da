#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "error.hpp"

namespace zkd {
namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::kSimulate, "simulate"},
    {Command::kRegularizedFamily, "regularized-family"},
    {Command::kStrichartzScan, "strichartz-scan"},
    {Command::kWeylScan, "weyl-scan"},
    {Command::kKernelScan, "kernel-scan"},
    {Command::kVdcScan, "vdc-scan"},
    {Command::kConvergence, "convergence"},
    {Command::kCommutatorScan, "commutator-scan"},
};

enum class Type { kString, kInt, kDouble, kBool, kDoubleList, kEnum, kAutoDouble };

using Mask = unsigned;
constexpr Mask Bit(Command c) { return 1u << static_cast<unsigned>(c); }
constexpr Mask kSim = Bit(Command::kSimulate);
constexpr Mask kFam = Bit(Command::kRegularizedFamily);
constexpr Mask kStr = Bit(Command::kStrichartzScan);
constexpr Mask kWeyl = Bit(Command::kWeylScan);
constexpr Mask kKer = Bit(Command::kKernelScan);
constexpr Mask kVdc = Bit(Command::kVdcScan);
constexpr Mask kConv = Bit(Command::kConvergence);
constexpr Mask kComm = Bit(Command::kCommutatorScan);
constexpr Mask kAll = 0xffu;
constexpr Mask kRuns = kSim | kFam | kConv;

struct KeySpec {
  Mask commands;
  const char* key;
  Type type;
  const char* fallback;
  std::optional<double> lo = std::nullopt;
  std::optional<double> hi = std::nullopt;
  const char* choices = nullptr;  // "|"-separated, for kEnum
};

const std::vector<KeySpec>& Schema() {
  static const std::vector<KeySpec> schema = {
      {kAll, "preset", Type::kString, ""},
      {kAll, "seed", Type::kInt, "1", 0.0},
      {kAll, "workers", Type::kInt, "0", 0.0, 4096.0},

      {kRuns | kStr | kKer, "equation.alpha", Type::kInt, "1"},
      {kRuns | kStr | kKer, "equation.beta", Type::kDouble, "1"},
      {kRuns | kStr | kKer, "equation.sign", Type::kEnum, "+", {}, {}, "+|-"},
      {kSim | kConv, "equation.mu", Type::kDouble, "0", 0.0},

      {kRuns, "grid.nx", Type::kInt, "64", 4.0, 4096.0},
      {kRuns, "grid.ny", Type::kInt, "64", 4.0, 4096.0},
      {kComm, "grid.nx", Type::kInt, "32", 4.0, 1024.0},
      {kComm, "grid.ny", Type::kInt, "32", 4.0, 1024.0},

      {kRuns, "solver.dt", Type::kDouble, "1e-3", 0.0},
      {kRuns, "solver.t_end", Type::kDouble, "1", 0.0},
      {kRuns, "solver.integrator", Type::kEnum, "etdrk4", {}, {}, "etdrk4|ifrk4"},
      {kRuns, "solver.dealias", Type::kBool, "true"},
      {kSim | kFam, "solver.record_every", Type::kInt, "100", 1.0},

      {kRuns, "initial.profile", Type::kEnum, "two-mode", {}, {},
       "zero|single-mode|cos-x|two-mode|gaussian|random|file"},
      {kRuns, "initial.amplitude", Type::kDouble, "1"},
      {kRuns, "initial.m", Type::kInt, "1"},
      {kRuns, "initial.n", Type::kInt, "0"},
      {kRuns, "initial.width", Type::kDouble, "0.5", 0.0},
      {kRuns, "initial.band", Type::kInt, "8", 1.0},
      {kRuns, "initial.path", Type::kString, ""},

      {kSim | kFam, "diagnostics.sobolev_s", Type::kDoubleList, "1,2"},
      {kSim, "diagnostics.l1t_s1", Type::kAutoDouble, "auto"},
      {kSim, "diagnostics.l1t_s2", Type::kAutoDouble, "auto"},
      {kSim, "output.snapshots", Type::kBool, "false"},
      {kSim, "output.snapshot_format", Type::kEnum, "binary", {}, {}, "binary|json"},

      {kFam, "regularized.mu_list", Type::kDoubleList, "1e-2,1e-3,1e-4"},

      {kConv, "convergence.mode", Type::kEnum, "temporal", {}, {}, "temporal|spatial"},
      {kConv, "convergence.dt_list", Type::kDoubleList, "0.04,0.02,0.01,0.005,0.0025"},
      {kConv, "convergence.n_list", Type::kDoubleList, "16,32,64"},

      {kStr, "scan.j_min", Type::kInt, "3", 1.0, 12.0},
      {kStr, "scan.j_max", Type::kInt, "7", 1.0, 12.0},
      {kStr, "scan.k_min", Type::kInt, "3", 0.0, 12.0},
      {kStr, "scan.k_max", Type::kInt, "7", 0.0, 12.0},
      {kStr, "scan.trials", Type::kInt, "20", 1.0},
      {kStr, "scan.time_samples", Type::kInt, "64", 64.0},
      {kStr, "scan.refinement", Type::kInt, "4", 1.0, 16.0},
      {kStr | kKer, "scan.epsilon", Type::kDouble, "0.05", 0.0},
      {kKer, "scan.j_min", Type::kInt, "4", 1.0, 19.0},
      {kKer, "scan.j_max", Type::kInt, "8", 1.0, 19.0},
      {kKer, "scan.k_min", Type::kInt, "4", 1.0, 19.0},
      {kKer, "scan.k_max", Type::kInt, "8", 1.0, 19.0},
      {kKer, "scan.samples_per_cell", Type::kInt, "128", 1.0},
      {kKer, "scan.mode", Type::kEnum, "decay", {}, {}, "decay|counting"},
      {kKer, "scan.l_rule", Type::kEnum, "admissible", {}, {}, "admissible|proof-window"},
      {kKer, "scan.l_span", Type::kInt, "2", 0.0, 30.0},

      {kWeyl, "weyl.degree", Type::kInt, "3", 1.0, 6.0},
      {kWeyl, "weyl.n_min", Type::kInt, "16", 1.0},
      {kWeyl, "weyl.n_max", Type::kInt, "2048", 1.0, 1048576.0},
      {kWeyl, "weyl.trials", Type::kInt, "10000", 1.0},
      {kWeyl, "weyl.delta", Type::kDouble, "0.01", 0.0},
      {kWeyl, "weyl.lambda_rule", Type::kEnum, "dyadic", {}, {}, "dyadic|power-n|fixed"},
      {kWeyl, "weyl.lambda", Type::kInt, "64", 1.0},
      {kWeyl, "weyl.leading_grid", Type::kInt, "0", 0.0},

      {kVdc, "vdc.i_min", Type::kInt, "0", 0.0, 40.0},
      {kVdc, "vdc.i_max", Type::kInt, "12", 0.0, 40.0},
      {kVdc, "vdc.draws", Type::kInt, "100", 0.0},
      {kVdc, "vdc.quadrature_n", Type::kInt, "1024", 1024.0},

      {kComm, "commutator.pairs", Type::kInt, "200", 1.0},
      {kComm, "commutator.band", Type::kInt, "8", 1.0},
      {kComm, "commutator.s_list", Type::kDoubleList, "1,1.5,2"},
  };
  return schema;
}

struct Preset {
  Mask commands;
  const char* name;
  std::vector<std::pair<const char*, const char*>> values;
};

const std::vector<Preset>& Presets() {
  static const std::vector<Preset> presets = {
      {kSim, "minimal",
       {{"grid.nx", "32"}, {"grid.ny", "32"}, {"solver.dt", "1e-3"}, {"solver.t_end", "0.1"}}},
      {kSim, "reference", {}},
      {kSim, "zero",
       {{"initial.profile", "zero"}, {"grid.nx", "16"}, {"grid.ny", "16"},
        {"solver.t_end", "0.1"}, {"solver.record_every", "10"}}},
      {kFam, "identity", {{"regularized.mu_list", "1e-2,1e-3"}, {"solver.t_end", "0.5"}}},
      {kFam, "trend", {}},
      {kConv, "temporal", {}},
      {kConv, "spatial",
       {{"convergence.mode", "spatial"}, {"initial.profile", "gaussian"},
        {"initial.width", "0.8"}, {"initial.amplitude", "0.2"}, {"solver.t_end", "0.1"}}},
      {kStr, "alpha1-small",
       {{"scan.j_min", "2"}, {"scan.j_max", "4"}, {"scan.k_min", "2"}, {"scan.k_max", "4"},
        {"scan.trials", "4"}}},
      {kStr, "alpha1", {{"equation.alpha", "1"}}},
      {kStr, "alpha2", {{"equation.alpha", "2"}}},
      {kStr, "alpha3", {{"equation.alpha", "3"}}},
      {kKer, "small",
       {{"scan.j_min", "2"}, {"scan.j_max", "4"}, {"scan.k_min", "2"}, {"scan.k_max", "4"},
        {"scan.samples_per_cell", "16"}}},
      {kKer, "alpha1", {}},
      {kKer, "counting", {{"scan.mode", "counting"}}},
      {kWeyl, "small", {{"weyl.trials", "200"}, {"weyl.n_max", "256"}}},
      {kWeyl, "cubic", {}},
      {kWeyl, "linear-exhaustive",
       {{"weyl.degree", "1"}, {"weyl.leading_grid", "64"}, {"weyl.n_max", "256"}}},
      {kVdc, "small", {{"vdc.draws", "10"}, {"vdc.i_max", "6"}}},
      {kComm, "small", {{"commutator.pairs", "20"}}},
  };
  return presets;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a comment introduced by '#' at the start or after whitespace.
std::string_view StripComment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool ValidKeyChars(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

std::string Unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

const KeySpec* Lookup(Command command, std::string_view key) {
  for (const auto& spec : Schema()) {
    if ((spec.commands & Bit(command)) && key == spec.key) return &spec;
  }
  return nullptr;
}

[[noreturn]] void BadValue(std::string_view key, std::string_view text, const std::string& why) {
  Fail(ErrorCode::kValidation,
       "config key '" + std::string(key) + "': " + why + " (got '" + std::string(text) + "')");
}

void CheckRange(const KeySpec& spec, double v, std::string_view text) {
  if (spec.lo && v < *spec.lo) {
    std::ostringstream os;
    os << "must be >= " << *spec.lo;
    BadValue(spec.key, text, os.str());
  }
  if (spec.hi && v > *spec.hi) {
    std::ostringstream os;
    os << "must be <= " << *spec.hi;
    BadValue(spec.key, text, os.str());
  }
}

void CheckValue(const KeySpec& spec, std::string_view text) {
  switch (spec.type) {
    case Type::kString:
      break;
    case Type::kInt:
      CheckRange(spec, static_cast<double>(ParseInt(spec.key, text)), text);
      break;
    case Type::kDouble: {
      const double v = ParseDouble(spec.key, text);
      CheckRange(spec, v, text);
      // strict lower bounds for step sizes and widths
      if (spec.lo && *spec.lo == 0.0 && v == 0.0 && std::string_view(spec.key) != "equation.mu") {
        BadValue(spec.key, text, "must be > 0");
      }
      break;
    }
    case Type::kAutoDouble:
      if (text != "auto") ParseDouble(spec.key, text);
      break;
    case Type::kBool:
      ParseBool(spec.key, text);
      break;
    case Type::kDoubleList:
      ParseDoubleList(spec.key, text);
      break;
    case Type::kEnum: {
      std::string_view choices = spec.choices;
      std::size_t pos = 0;
      while (pos <= choices.size()) {
        const auto bar = choices.find('|', pos);
        const auto item = choices.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
        if (item == text) return;
        if (bar == std::string_view::npos) break;
        pos = bar + 1;
      }
      BadValue(spec.key, text, "expected one of " + std::string(spec.choices));
    }
  }
}

void CheckDomain(const Config& c) {
  if (!c.Has("equation.alpha")) return;
  const auto alpha = c.Int("equation.alpha");
  const double beta = c.Double("equation.beta");
  const std::string hypothesis =
      "the well-posedness hypothesis requires alpha in {1,2,3} and beta in (0,1]";
  Require(alpha >= 1 && alpha <= 3, ErrorCode::kDomain,
          "equation.alpha = " + std::to_string(alpha) + " rejected: " + hypothesis);
  Require(beta > 0.0 && beta <= 1.0, ErrorCode::kDomain,
          "equation.beta = " + c.Str("equation.beta") + " rejected: " + hypothesis);
}

}  // namespace

Command ParseCommand(std::string_view name) {
  for (const auto& [c, s] : kCommands) {
    if (name == s) return c;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown command '" + std::string(name) + "'");
}

const char* CommandName(Command c) {
  for (const auto& [d, s] : kCommands) {
    if (c == d) return s;
  }
  return "?";
}

std::vector<std::string> CommandNames() {
  std::vector<std::string> out;
  for (const auto& [c, s] : kCommands) out.emplace_back(s);
  return out;
}

std::vector<std::string> PresetNames(Command command) {
  std::vector<std::string> out;
  for (const auto& p : Presets()) {
    if (p.commands & Bit(command)) out.emplace_back(p.name);
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view text) {
  text = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadValue(key, text, "expected a number");
  }
  if (!std::isfinite(v)) BadValue(key, text, "must be finite");
  return v;
}

std::int64_t ParseInt(std::string_view key, std::string_view text) {
  text = Trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadValue(key, text, "expected an integer");
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  BadValue(key, text, "expected true or false");
}

std::vector<double> ParseDoubleList(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = Trim(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (item.empty()) BadValue(key, text, "expected a comma-separated list of numbers");
    out.push_back(ParseDouble(key, item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Config Config::Resolve(Command command, std::string_view file_text, const std::string& file_name,
                       const std::vector<std::string>& overrides) {
  struct Raw {
    std::string value;
    std::string origin;
  };
  std::map<std::string, Raw, std::less<>> file_values;
  std::vector<std::pair<std::string, Raw>> override_values;

  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < file_text.size()) {
    const auto nl = file_text.find('\n', pos);
    const auto raw_line = file_text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? file_text.size() : nl + 1;
    ++line_no;
    const auto line = Trim(StripComment(raw_line));
    if (line.empty()) continue;
    const std::string where = file_name + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      Require(line.back() == ']' && line.size() > 2, ErrorCode::kParse,
              where + ": malformed section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      Require(ValidKeyChars(section), ErrorCode::kParse, where + ": bad section name");
      continue;
    }
    const auto eq = line.find('=');
    Require(eq != std::string_view::npos, ErrorCode::kParse,
            where + ": expected 'key = value'");
    const auto key_part = Trim(line.substr(0, eq));
    Require(ValidKeyChars(key_part), ErrorCode::kParse,
            where + ": bad key '" + std::string(key_part) + "'");
    const std::string key = section.empty() ? std::string(key_part)
                                            : section + "." + std::string(key_part);
    if (auto it = file_values.find(key); it != file_values.end()) {
      Fail(ErrorCode::kParse,
           where + ": duplicate key '" + key + "' (first set at " + it->second.origin + ")");
    }
    file_values[key] = {Unquote(Trim(line.substr(eq + 1))), where};
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    Require(eq != std::string::npos, ErrorCode::kParse,
            "override '" + o + "' is not of the form key=value");
    const std::string key(Trim(std::string_view(o).substr(0, eq)));
    Require(ValidKeyChars(key), ErrorCode::kParse, "override has a bad key '" + key + "'");
    override_values.push_back({key, {Unquote(Trim(std::string_view(o).substr(eq + 1))), "override"}});
  }

  auto check_known = [&](const std::string& key, const std::string& origin) {
    Require(Lookup(command, key) != nullptr, ErrorCode::kValidation,
            origin + ": unknown config key '" + key + "' for command '" + CommandName(command) +
                "'");
  };
  for (const auto& [k, v] : file_values) check_known(k, v.origin);
  for (const auto& [k, v] : override_values) check_known(k, v.origin);

  // The preset itself may come from the file or an override.
  std::string preset_name;
  if (auto it = file_values.find("preset"); it != file_values.end()) preset_name = it->second.value;
  for (const auto& [k, v] : override_values) {
    if (k == "preset") preset_name = v.value;
  }
  const Preset* preset = nullptr;
  if (!preset_name.empty()) {
    for (const auto& p : Presets()) {
      if ((p.commands & Bit(command)) && preset_name == p.name) preset = &p;
    }
    if (preset == nullptr) {
      std::string known;
      for (const auto& n : PresetNames(command)) known += (known.empty() ? "" : ", ") + n;
      Fail(ErrorCode::kValidation, "config key 'preset': unknown preset '" + preset_name +
                                       "' for command '" + CommandName(command) +
                                       "' (known: " + known + ")");
    }
  }

  Config config;
  config.command_ = command;
  for (const auto& spec : Schema()) {
    if (!(spec.commands & Bit(command))) continue;
    ConfigValue v{spec.key, spec.fallback, "default"};
    if (preset) {
      for (const auto& [k, val] : preset->values) {
        if (v.key == k) v = {spec.key, val, std::string("preset ") + preset->name};
      }
    }
    if (auto it = file_values.find(v.key); it != file_values.end()) {
      v.value = it->second.value;
      v.origin = it->second.origin;
    }
    for (const auto& [k, val] : override_values) {
      if (k == v.key) {
        v.value = val.value;
        v.origin = val.origin;
      }
    }
    if (v.key == "preset") v.value = preset_name;
    CheckValue(spec, v.value);
    config.values_.push_back(std::move(v));
  }
  CheckDomain(config);
  return config;
}

const ConfigValue& Config::Find(std::string_view key) const {
  for (const auto& v : values_) {
    if (v.key == key) return v;
  }
  Fail(ErrorCode::kInternal, "config key '" + std::string(key) + "' is not in the schema of '" +
                                 CommandName(command_) + "'");
}

bool Config::Has(std::string_view key) const {
  return std::any_of(values_.begin(), values_.end(), [&](const auto& v) { return v.key == key; });
}

const std::string& Config::Str(std::string_view key) const { return Find(key).value; }
double Config::Double(std::string_view key) const { return ParseDouble(key, Str(key)); }
std::int64_t Config::Int(std::string_view key) const { return ParseInt(key, Str(key)); }
bool Config::Bool(std::string_view key) const { return ParseBool(key, Str(key)); }
std::vector<double> Config::DoubleList(std::string_view key) const {
  return ParseDoubleList(key, Str(key));
}

std::string Config::Echo() const {
  std::ostringstream os;
  os << "# resolved configuration for '" << CommandName(command_) << "'\n";
  std::string section;
  for (const auto& v : values_) {
    const auto dot = v.key.find('.');
    const std::string sec = dot == std::string::npos ? "" : v.key.substr(0, dot);
    const std::string name = dot == std::string::npos ? v.key : v.key.substr(dot + 1);
    if (sec != section) {
      os << "\n[" << sec << "]\n";
      section = sec;
    }
    const bool quote = v.value.empty() || v.value.find('#') != std::string::npos;
    os << name << " = " << (quote ? "\"" + v.value + "\"" : v.value) << "  # " << v.origin
       << "\n";
  }
  return os.str();
}

}  // namespace zkd
