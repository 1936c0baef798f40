// inflow_waves: classification reports, profiles, wave snapshots and solver
// runs from a JSON scenario. Exit codes: 0 success, 2 configuration error,
// 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "inflow/cli/commands.hpp"
#include "inflow/kernels.hpp"

namespace {

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("INFLOW_WAVES_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace inflow;
  CLI::App app{"Inflow boundary layer / rarefaction composite waves"};
  app.require_subcommand(1);

  std::string config;
  std::string out = ".";
  int n_override = 0;
  double t_end_override = 0.0;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "scenario JSON file")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--n", n_override, "grid cell count override");
    sub->add_option("--t-end", t_end_override, "final time override");
    sub->add_flag("--quiet", quiet, "no progress output");
  };
  auto* classify = app.add_subcommand("classify", "existence classification table");
  auto* profile = app.add_subcommand("profile", "boundary-layer profile and decay report");
  auto* wave = app.add_subcommand("wave", "composite wave snapshots and source terms");
  auto* simulate = app.add_subcommand("simulate", "solver run with norm history and snapshots");
  auto* report = app.add_subcommand("report", "pass/fail checks on a prior simulate run");
  for (auto* sub : {classify, profile, wave, simulate, report}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto s = cli::load_scenario(config);
    if (n_override != 0) {
      if (n_override < 64) throw Error(ErrorKind::Config, "--n must be at least 64");
      s.N = n_override;
    }
    if (t_end_override != 0.0) {
      if (!(t_end_override > 0.0)) throw Error(ErrorKind::Config, "--t-end must be positive");
      s.sim.t_end = t_end_override;
    }
    cli::CommandOptions opts;
    opts.out = out;
    opts.threads = thread_cap();
    opts.log = quiet ? nullptr : &std::cout;
    if (simulate->parsed() && opts.log) *opts.log << "face kernel: " << kernels::selected_kernel_name() << '\n';

    if (classify->parsed()) cli::cmd_classify(s, opts);
    if (profile->parsed()) cli::cmd_profile(s, opts);
    if (wave->parsed()) cli::cmd_wave(s, opts);
    if (simulate->parsed()) cli::cmd_simulate(s, opts);
    if (report->parsed()) cli::cmd_report(s, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code(e.kind());
  }
  return 0;
}
