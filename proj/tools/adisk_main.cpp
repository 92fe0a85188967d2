#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adisk/experiment.hpp"

namespace {

int run_command(const std::string& command, const std::string& config_path,
                const adisk::CliOverrides& ov) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  // The subcommand must agree with the config's command field; a config
  // without one inherits the subcommand.
  std::string text = buf.str();
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.contains("command")) j["command"] = command;
    if (j.at("command") != command) {
      std::cerr << "error: config command '" << j.at("command").get<std::string>()
                << "' does not match subcommand '" << command << "'\n";
      return 2;
    }
    text = j.dump();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  adisk::RunResult res = adisk::run_experiment(text, ov);
  if (res.exit_code != 0) {
    std::cerr << "error: " << res.message << "\n";
  } else {
    for (const std::string& a : res.artifacts) std::cout << a << "\n";
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adisk: a numerical laboratory for sequences of analytic disks"};
  app.set_version_flag("--version", std::string(adisk::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  adisk::CliOverrides ov;
  std::uint64_t seed = 0;
  int grid_n = 0, threads = -1;
  std::string out_dir;

  const char* names[] = {"measure", "glue", "envelope", "hull", "leaf", "report"};
  const char* descs[] = {
      "push-forward measures, moments and Jensen checks",
      "disk gluing: convergence profile toward the mixture measure",
      "Poletsky disk-functional envelope sweeps",
      "polynomial-hull membership / separation certificates",
      "finite leaves: cluster samples, essentiality, midrib",
      "verify a manifest by replaying its config"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--grid-n", grid_n, "override the boundary grid size");
    sub->add_option("--threads", threads, "worker pool size (0 = logical cores)");
    sub->add_option("--out", out_dir, "override the output directory");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 6; ++i) {
    if (subs[i]->parsed()) {
      if (subs[i]->count("--seed")) ov.seed = seed;
      if (subs[i]->count("--grid-n")) ov.grid_n = grid_n;
      if (subs[i]->count("--threads")) ov.threads = threads;
      if (subs[i]->count("--out")) ov.output_dir = out_dir;
      return run_command(names[i], config_path, ov);
    }
  }
  std::cerr << app.help() << "\n";
  return 2;
}
