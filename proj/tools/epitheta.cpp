#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "epitheta/cli.hpp"

namespace fs = std::filesystem;
using namespace epitheta;

namespace {

// --out, redirected into $EPITHETA_OUT_DIR when set; empty means stdout.
std::string output_path(const std::string& out, const std::string& command, const std::string& format) {
  const char* dir = std::getenv("EPITHETA_OUT_DIR");
  if (!dir || !*dir) return out;
  std::string name = out.empty() ? command + "." + format : fs::path(out).filename().string();
  return (fs::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite checks for epipelagic theta correspondence data"};
  app.require_subcommand(1);
  std::string config, out, format = "json";
  std::uint64_t seed = 0, budget = 0;
  int workers = Executor::hardware(), max_rank = 0;
  bool quiet = false;

  std::vector<CLI::App*> subs;
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "seed for all sampling");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--budget", budget, "enumeration budget")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "report path (default stdout)");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "md"}));
    sub->add_flag("--quiet", quiet, "no progress on stderr");
    if (name == "classify" || name == "selftest") sub->add_option("--max-rank", max_rank, "largest rank")->check(CLI::Range(1, 3));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::exit_pass : cli::exit_config;
  }

  CLI::App* sub = nullptr;
  for (auto* s : subs)
    if (s->parsed()) sub = s;
  const std::string command = sub->get_name();

  cli::Overrides ov;
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--budget")) ov.budget = budget;
  if (auto* o = sub->get_option_no_throw("--max-rank"); o && o->count()) ov.max_rank = max_rank;

  try {
    cli::Config cfg = config.empty() ? cli::Config() : cli::Config::load(config);
    Executor exec(workers);
    auto t0 = std::chrono::steady_clock::now();
    cli::Report rep = cli::run(command, cfg, ov, exec);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string text = format == "md" ? rep.markdown() : rep.json_text();
    std::string path = output_path(out, command, format);
    if (path.empty()) {
      std::cout << text;
    } else {
      if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
      std::ofstream f(path, std::ios::binary);
      if (!f) throw cli::ConfigError(path + ": cannot write report");
      f << text;
    }
    if (!quiet) {
      std::cerr << command << ": " << (rep.pass() ? "pass" : "FAIL") << ", " << rep.failures() << " failed checks, " << secs
                << " s with " << exec.workers() << " workers" << (path.empty() ? "" : ", report " + path) << "\n";
      for (const auto& s : rep.sections)
        for (const auto& c : s.checks)
          if (!c.pass) std::cerr << "  FAIL " << c.name << " (" << c.anchor << "): " << c.witness << "\n";
    }
    return rep.pass() ? cli::exit_pass : cli::exit_fail;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::exit_config;
  }
}
