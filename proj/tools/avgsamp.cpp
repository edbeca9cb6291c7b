// avgsamp: run averaged-sampling experiments and write CSV/JSON reports.
//
//   avgsamp list [--json]
//   avgsamp <kind> [--config FILE] [--seed S] [--out DIR] [--threads K]
//                  [--param key=value]... [--stamp STR]
//
// Exit status: 0 success, 1 usage or validation error, 2 assertion failure.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "avgsamp/cli.hpp"
#include "avgsamp/errors.hpp"

namespace {

namespace cli = avgsamp::cli;
namespace fs = std::filesystem;

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out_dir = ".";
  std::vector<std::string> params;
  std::string stamp;
};

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", &tm);
  return buf;
}

cli::ExperimentConfig load_config(const std::string& kind, const RunFlags& f) {
  cli::ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw cli::UsageError("cannot read config file '" + f.config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto j = cli::json::parse(ss.str(), nullptr, false);
    if (j.is_discarded()) throw cli::UsageError("config file '" + f.config_path + "' is not valid JSON");
    c = cli::config_from_json(j);
    if (!c.kind.empty() && c.kind != kind)
      throw cli::UsageError("config kind '" + c.kind + "' does not match the requested '" + kind + "'");
  }
  c.kind = kind;
  if (f.seed) c.seed = *f.seed;
  if (f.threads) c.threads = *f.threads;
  for (const auto& p : f.params) {
    auto [key, value] = cli::parse_param_override(p);
    c.params[key] = value;
  }
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int run(const std::string& kind, const RunFlags& flags) {
  const cli::ExperimentConfig config = load_config(kind, flags);
  const cli::RunResult result = cli::run_experiment(config);
  for (const auto& line : result.summary) std::cout << line << '\n';

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  const std::string stem = kind + "-" + (flags.stamp.empty() ? utc_stamp() : flags.stamp);
  write_file(dir / (stem + ".csv"), result.csv);
  write_file(dir / (stem + ".json"), result.report.dump(2) + "\n");
  std::cout << fmt::format("{}: {} (wrote {})\n", kind, result.passed ? "PASS" : "FAIL",
                           (dir / (stem + ".{csv,json}")).string());
  return cli::exit_status(result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(cli::kVersion) + ": averaged sampling experiments"};
  app.set_version_flag("--version", std::string(cli::kVersion));
  app.require_subcommand(0, 1);

  bool as_json = false;
  auto* list = app.add_subcommand("list", "Print the experiment catalog");
  list->add_flag("--json", as_json, "JSON schema instead of text");

  RunFlags flags;
  std::string chosen;
  for (const auto& entry : cli::catalog()) {
    auto* sub = app.add_subcommand(entry.kind, entry.summary);
    sub->add_option("--config", flags.config_path, "JSON config {kind, seed, threads, params}");
    sub->add_option("--seed", flags.seed, "experiment seed (overrides the config)");
    sub->add_option("--out", flags.out_dir, "output directory");
    sub->add_option("--threads", flags.threads, "worker threads (overrides the config)");
    sub->add_option("--param", flags.params, "parameter override key=value (repeatable)");
    sub->add_option("--stamp", flags.stamp, "file name stamp instead of the UTC time");
    sub->callback([&chosen, kind = entry.kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list->parsed() || chosen.empty()) {
    std::cout << (as_json ? cli::catalog_json().dump(2) + "\n" : cli::catalog_text());
    return 0;
  }
  try {
    return run(chosen, flags);
  } catch (const cli::UsageError& e) {
    std::cerr << "avgsamp: " << e.what() << '\n';
    return 1;
  } catch (const avgsamp::InvalidArgument& e) {
    std::cerr << "avgsamp: invalid parameter: " << e.what() << '\n';
    return 1;
  } catch (const avgsamp::NotRieszBasis& e) {
    std::cerr << "avgsamp: invalid kernel: " << e.what() << '\n';
    return 1;
  } catch (const avgsamp::DerivativeOrderExceeded& e) {
    std::cerr << "avgsamp: invalid parameter: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "avgsamp: experiment failed: " << e.what() << '\n';
    return 2;
  }
}
