// Command-line front end: runs a JSON job config through one of the analysis
// commands and writes report.json / sweep.csv into the output directory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aplab/jobs.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& command, const std::string& config_path, const std::string& out_dir,
        const std::string& preset, const std::string& shape, long seed,
        const std::string& gallery_id, bool gallery_verify_flag) {
  std::string config;
  if (!config_path.empty()) {
    config = read_file(config_path);
    auto cfg = nlohmann::json::parse(config);
    if (!cfg.contains("command")) cfg["command"] = command;
    if (cfg.at("command").get<std::string>() != command) {
      std::cerr << "config command disagrees with the subcommand\n";
      return 1;
    }
    config = cfg.dump();
  } else if (command == "gallery") {
    nlohmann::json cfg;
    cfg["command"] = "gallery";
    if (!gallery_id.empty()) cfg["gallery"] = {{"id", gallery_id}, {"verify", gallery_verify_flag}};
    config = cfg.dump();
  } else {
    std::cerr << "--config is required for this command\n";
    return 1;
  }

  aplab::JobOutcome out = aplab::run_job(config, preset, shape, seed);
  if (out.exit_code == 1 && out.report_json.empty()) {
    std::cerr << "error: " << out.error << "\n";
    return 1;
  }
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream rep(out_dir + "/report.json");
    rep << out.report_json << "\n";
  }
  if (!out.sweep_csv.empty()) {
    std::ofstream csv(out_dir + "/sweep.csv");
    csv << out.sweep_csv;
  }
  std::cout << out.report_json << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for windowed almost-periodicity analysis"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", preset = "standard", shape, gallery_id;
  long seed = 0;
  bool verify = false;

  auto add_common = [&](CLI::App* cmd, bool need_config) {
    auto* opt = cmd->add_option("--config", config_path, "job config JSON path");
    if (need_config) opt->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--preset", preset, "fast|standard|deep")
        ->check(CLI::IsMember({"fast", "standard", "deep"}));
    cmd->add_option("--window-shape", shape, "cube|ball")
        ->check(CLI::IsMember({"cube", "ball"}));
    cmd->add_option("--seed", seed, "report seed (stamped into the output)");
  };

  add_common(app.add_subcommand("seminorm", "window seminorm / boundedness sweep"), true);
  add_common(app.add_subcommand("classify", "class membership report"), true);
  add_common(app.add_subcommand("condition", "averaging condition A / sliding condition B"), true);
  add_common(app.add_subcommand("operator", "convolution / semigroup / fixed point"), true);
  auto* gal = app.add_subcommand("gallery", "example catalogue");
  add_common(gal, false);
  gal->add_option("id", gallery_id, "entry id (omit to list the manifest)");
  gal->add_flag("--verify", verify, "run the entry's verification recipes");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, config_path, out_dir, preset, shape, seed, gallery_id, verify);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
