// zkdisp command-line front end. Talks to the library only through the C API.
#include <zkdisp/zkdisp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<std::string> Lines(const char* text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string Join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion-generalized ZK simulator and estimates lab"};
  app.set_version_flag("--version", std::string(zkd_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  long long workers = -1;
  long long seed = -1;
  bool list_presets = false;

  const auto commands = Lines(zkd_command_names());
  for (const auto& name : commands) {
    const auto presets = Lines(zkd_preset_names(name.c_str()));
    auto* sub = app.add_subcommand(name, "run " + name + " (presets: " + Join(presets) + ")");
    sub->add_option("-c,--config", config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir,
                    "output directory (default: $ZKDISP_OUT/<command> or ./zkdisp_out/<command>)");
    sub->add_option("-s,--set", overrides, "override a config key, key=value (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("-w,--workers", workers, "worker threads, 0 = all cores")
        ->check(CLI::Range(0LL, 4096LL));
    sub->add_option("--seed", seed, "RNG seed")->check(CLI::NonNegativeNumber);
    sub->add_flag("--list-presets", list_presets, "print the presets for this command and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (list_presets) {
    for (const auto& p : Lines(zkd_preset_names(command.c_str()))) std::cout << p << "\n";
    return 0;
  }
  if (out_dir.empty()) {
    const char* env = std::getenv("ZKDISP_OUT");
    out_dir = std::string(env && *env ? env : "zkdisp_out") + "/" + command;
  }
  if (workers >= 0) overrides.push_back("workers=" + std::to_string(workers));
  if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));

  std::vector<const char*> raw;
  for (const auto& o : overrides) raw.push_back(o.c_str());
  const zkd_status status =
      zkd_experiment_run(command.c_str(), config_path.empty() ? nullptr : config_path.c_str(),
                         out_dir.c_str(), raw.data(), raw.size());
  if (status != ZKD_OK) {
    nlohmann::ordered_json j;
    j["status"] = "error";
    j["code"] = zkd_status_name(status);
    j["exit_code"] = zkd_exit_code(status);
    j["message"] = zkd_last_error();
    std::cerr << j.dump() << "\n";
    return zkd_exit_code(status);
  }
  std::cout << out_dir << "\n";
  return 0;
}
