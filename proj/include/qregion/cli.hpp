#pragma once

// The `qregion` command-line front end. Exit codes: 0 success, 1 usage
// error, 2 validation or numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qregion/capacity.hpp"
#include "qregion/channel_spec.hpp"
#include "qregion/protocol_sim.hpp"

namespace qregion {

/// Fixed CSV number format: 9 significant digits, '.' decimal point, no
/// negative zero.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace cli_detail {

struct ChannelArgs {
  std::string channel = "depolarizing";
  double eps = 0.0;
  std::size_t dim = 2;

  KrausChannel build() const {
    if (channel == "depolarizing") return depolarizing(eps);
    if (channel == "identity") return identity_channel(dim);
    if (!channel.empty() && channel.front() == '{') return parse_channel_spec(channel);
    return parse_channel_spec(read_text_file(channel));
  }
};

struct OptimizerArgs {
  std::size_t restarts = 32;
  std::optional<std::size_t> max_iters;
  double tol = 1e-7;
  std::uint64_t seed = 0;

  // Block-2 searches have 16x the parameters; they get a larger default
  // per-start budget and fewer starts.
  OptimizerConfig config(std::size_t block = 1) const {
    OptimizerConfig cfg{.restarts = restarts, .max_iters = 2000, .tol = tol, .seed = seed};
    if (block > 1) {
      cfg.max_iters = 30000;
      if (restarts == 32) cfg.restarts = 8;
    }
    if (max_iters) cfg.max_iters = *max_iters;
    return cfg;
  }
};

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }
  void field(const std::string& name, double v) { row({name, format_number(v)}); }
  void field(const std::string& name, const std::string& v) { row({name, v}); }

 private:
  std::ostream& os_;
};

inline void add_channel_flags(CLI::App* cmd, ChannelArgs& args, const std::string& suffix = "") {
  cmd->add_option("--channel" + suffix, args.channel,
                  "depolarizing, identity, inline JSON or path to a channel spec");
  cmd->add_option("--eps" + suffix, args.eps, "depolarizing parameter")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--dim" + suffix, args.dim, "identity channel dimension")
      ->check(CLI::PositiveNumber);
}

inline void add_optimizer_flags(CLI::App* cmd, OptimizerArgs& args) {
  cmd->add_option("--restarts", args.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", args.max_iters, "iterations per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", args.tol, "optimizer tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "random seed (default 0)");
}

}  // namespace cli_detail

/// Parses `argv` and runs one subcommand. CSV goes to `--out` when given,
/// otherwise to `out`; diagnostics go to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Capacity regions with unreliable entanglement assistance", "qregion"};
  app.require_subcommand(1);
  std::string out_path;

  ChannelArgs chan, chan2;
  OptimizerArgs opt;

  auto* capacity = app.add_subcommand("capacity", "single-letter channel capacity quantity");
  std::string which = "chi";
  std::size_t block = 1;
  add_channel_flags(capacity, chan);
  add_optimizer_flags(capacity, opt);
  capacity->add_option("--which", which, "chi | ea | coherent")
      ->check(CLI::IsMember({"chi", "ea", "coherent"}));
  capacity->add_option("--block", block, "channel uses per letter (chi only)")
      ->check(CLI::IsMember({1, 2}));
  capacity->add_option("--out", out_path, "output file");

  auto* region = app.add_subcommand("region", "rate pair of one ensemble");
  std::string ensemble_path;
  add_channel_flags(region, chan);
  region->add_option("--ensemble", ensemble_path, "ensemble spec file")->required();
  region->add_option("--out", out_path, "output file");

  auto* sweep = app.add_subcommand("sweep", "superposition-family sweep with time-division endpoints");
  std::size_t betas = 101;
  add_channel_flags(sweep, chan);
  add_optimizer_flags(sweep, opt);
  sweep->add_option("--betas", betas, "number of beta grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "output file");

  auto* timediv = app.add_subcommand("timediv", "time-division line");
  double c = 1.0, c_ea = 2.0;
  std::size_t lambdas = 11;
  timediv->add_option("--c", c, "unassisted capacity")->required();
  timediv->add_option("--cea", c_ea, "entanglement-assisted capacity")->required();
  timediv->add_option("--lambdas", lambdas, "number of lambda grid points")
      ->check(CLI::PositiveNumber);
  timediv->add_option("--out", out_path, "output file");

  auto* qpoint = app.add_subcommand("quantum-point", "quantum rate pair of one ansatz");
  std::string ansatz_path;
  add_channel_flags(qpoint, chan);
  qpoint->add_option("--ansatz", ansatz_path, "ansatz spec file")->required();
  qpoint->add_option("--out", out_path, "output file");

  auto* broadcast = app.add_subcommand("broadcast", "two-receiver information bounds");
  add_channel_flags(broadcast, chan, "1");
  add_channel_flags(broadcast, chan2, "2");
  broadcast->add_option("--ensemble", ensemble_path, "ensemble spec file")->required();
  broadcast->add_option("--out", out_path, "output file");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo time-division protocol");
  SimConfig sim;
  simulate->add_option("--n", sim.n, "blocklength")->check(CLI::PositiveNumber);
  simulate->add_option("--lambda", sim.lambda, "dense-coding fraction")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--trials", sim.trials, "number of blocks")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "random seed (default 0)");
  simulate->add_flag("--assisted", sim.assisted, "entanglement resource delivered");
  simulate->add_option("--eps", sim.channel_eps, "depolarizing parameter")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--out", out_path, "output file");
  sim.assisted = false;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qregion: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream buffer;
  Csv csv(buffer);
  try {
    if (capacity->parsed()) {
      const auto n = chan.build();
      if (which == "chi") {
        const auto est = holevo_chi(n, opt.config(block), block);
        std::size_t support = 0;
        for (double p : est.witness.probs()) support += p > 1e-6 ? 1 : 0;
        csv.row({"field", "value"});
        csv.field("which", "chi");
        csv.field("block", static_cast<double>(block));
        csv.field("value", est.value);
        csv.field("converged", est.converged ? "true" : "false");
        csv.field("evaluations", static_cast<double>(est.evaluations));
        csv.field("witness_letters", static_cast<double>(est.witness.letters()));
        csv.field("witness_support", static_cast<double>(support));
      } else {
        if (block != 1) throw ValidationError("--block applies to --which chi only");
        const auto est = which == "ea" ? ea_capacity(n, opt.config()) : coherent_capacity(n, opt.config());
        csv.row({"field", "value"});
        csv.field("which", which);
        csv.field("block", 1.0);
        csv.field("value", est.value);
        csv.field("converged", est.converged ? "true" : "false");
        csv.field("evaluations", static_cast<double>(est.evaluations));
        csv.field("witness_entanglement_entropy", entanglement_entropy(est.witness));
      }
    } else if (region->parsed()) {
      const auto p = classical_region_point(chan.build(), parse_ensemble_spec(read_text_file(ensemble_path)));
      csv.row({"field", "value"});
      csv.field("R", p.r);
      csv.field("Rprime", p.r_prime);
    } else if (sweep->parsed()) {
      const auto n = chan.build();
      const auto reg = superposition_sweep(n, uniform_grid(betas));
      const double c_val = holevo_chi(n, opt.config()).value;
      const double cea_val = ea_capacity(n, opt.config()).value;
      csv.row({"beta", "R", "Rprime"});
      for (const auto& p : reg.points)
        csv.row({format_number(p.params.at("beta")), format_number(p.r), format_number(p.r_prime)});
      csv.row({"timediv", format_number(c_val), format_number(0.0)});
      csv.row({"timediv", format_number(0.0), format_number(cea_val)});
    } else if (timediv->parsed()) {
      const auto reg = time_division_region(c, c_ea, uniform_grid(lambdas));
      csv.row({"lambda", "R", "Rprime"});
      for (const auto& p : reg.points)
        csv.row({format_number(p.params.at("lambda")), format_number(p.r), format_number(p.r_prime)});
    } else if (qpoint->parsed()) {
      const auto p = quantum_region_point(chan.build(), parse_ansatz_spec(read_text_file(ansatz_path)));
      csv.row({"field", "value"});
      csv.field("Q", p.r);
      csv.field("Qprime", p.r_prime);
    } else if (broadcast->parsed()) {
      const auto b = broadcast_region_point(chan.build(), chan2.build(),
                                            parse_ensemble_spec(read_text_file(ensemble_path)));
      csv.row({"field", "value"});
      csv.field("R0", b.r0);
      csv.field("R1", b.r1);
      csv.field("Rsum", b.r_sum);
    } else if (simulate->parsed()) {
      const auto rep = run_protocol(sim);
      csv.row({"field", "value"});
      csv.field("n", static_cast<double>(sim.n));
      csv.field("lambda", sim.lambda);
      csv.field("assisted", sim.assisted ? "true" : "false");
      csv.field("eps", sim.channel_eps);
      csv.field("trials", static_cast<double>(rep.trials));
      csv.field("guaranteed_rate", rep.guaranteed_rate);
      csv.field("excess_rate", rep.excess_rate);
      csv.field("err_guaranteed", rep.err_guaranteed);
      csv.field("err_excess", rep.err_excess);
      csv.field("excess_symbol_error", rep.excess_symbol_error);
    }
  } catch (const Error& e) {
    err << "qregion: " << e.what() << '\n';
    return 2;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "qregion: cannot write '" << out_path << "'\n";
      return 2;
    }
    f << buffer.str();
  }
  return 0;
}

}  // namespace qregion
