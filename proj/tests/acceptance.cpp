// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qregion/qregion.hpp"
#include "test_support.hpp"

namespace {

using namespace qregion;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const OptimizerConfig kSingleLetter{.restarts = 32, .max_iters = 2000, .tol = 1e-7, .seed = 0};
const OptimizerConfig kTwoLetter{.restarts = 8, .max_iters = 30000, .tol = 1e-7, .seed = 0};

Outcome unassisted_capacity() {
  Outcome o;
  double worst_err = 0.0, worst_time = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double eps = testing::kEpsGrid[i];
    const auto t0 = Clock::now();
    const double v = holevo_chi(depolarizing(eps), kSingleLetter).value;
    const double dt = seconds_since(t0);
    const double err = std::abs(v - testing::kChi[i]);
    worst_err = std::max(worst_err, err);
    worst_time = std::max(worst_time, dt);
    o.require(err <= 1e-3, fmt("eps=%.2f chi=%.6f expected %.6f", eps, v, testing::kChi[i]));
    o.require(dt <= 60.0, fmt("eps=%.2f took %.1fs", eps, dt));
  }
  if (o.ok) o.detail = fmt("max |err| %.2e, slowest %.2fs", worst_err, worst_time);
  return o;
}

Outcome assisted_capacity() {
  Outcome o;
  double worst_err = 0.0, witness_entropy = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double eps = testing::kEpsGrid[i];
    const auto est = ea_capacity(depolarizing(eps), kSingleLetter);
    const double err = std::abs(est.value - testing::kEa[i]);
    worst_err = std::max(worst_err, err);
    o.require(err <= 1e-3, fmt("eps=%.2f I=%.6f expected %.6f", eps, est.value, testing::kEa[i]));
    if (eps == 0.5) witness_entropy = entanglement_entropy(est.witness);
  }
  o.require(witness_entropy >= 0.99, fmt("witness entanglement %.4f at eps=0.5", witness_entropy));
  if (o.ok) o.detail = fmt("max |err| %.2e, witness entanglement %.4f bits", worst_err, witness_entropy);
  return o;
}

Outcome noiseless_qubit_region() {
  Outcome o;
  const auto grid = uniform_grid(11);
  const auto td = time_division_region(1.0, 2.0, grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    o.require(td.points[k].r == 1.0 - grid[k] && td.points[k].r_prime == 2.0 * grid[k],
              fmt("time division differs at lambda=%.1f", grid[k]));

  const auto sweep = superposition_sweep(0.0, uniform_grid(101));
  const auto& first = sweep.points.front();
  const auto& last = sweep.points.back();
  o.require(std::abs(first.r - 1.0) <= 1e-6 && std::abs(first.r_prime) <= 1e-6,
            fmt("beta=0 point (%.8f, %.8f)", first.r, first.r_prime));
  o.require(std::abs(last.r) <= 1e-6 && std::abs(last.r_prime - 2.0) <= 1e-6,
            fmt("beta=1 point (%.8f, %.8f)", last.r, last.r_prime));

  // λn must be integral, so the simulated grid is λ = k/8.
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const auto rep = run_protocol({.n = 8, .lambda = k / 8.0, .trials = 1000, .seed = 0, .assisted = true});
    worst = std::max({worst, rep.err_guaranteed, rep.err_excess});
  }
  const double dt = seconds_since(t0);
  o.require(worst == 0.0, fmt("simulator error %.4f", worst));
  o.require(dt <= 10.0, fmt("simulation took %.1fs", dt));
  if (o.ok) o.detail = fmt("endpoints exact to 1e-6, simulator 9 lambdas x 1000 trials in %.2fs", dt);
  return o;
}

Outcome half_depolarizing_sweep() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto n = depolarizing(0.5);
  const double c = holevo_chi(n, kSingleLetter).value;
  const double c_ea = ea_capacity(n, kSingleLetter).value;
  const auto sweep = superposition_sweep(n, uniform_grid(101));
  const double dt = seconds_since(t0);

  o.require(sweep.points.size() == 101, "sweep does not have 101 points");
  o.require(std::abs(c - (1.0 - binary_entropy(0.25))) <= 1e-3, fmt("C endpoint %.6f", c));
  o.require(std::abs(c_ea - testing::kEa[2]) <= 1e-3, fmt("C_EA endpoint %.6f", c_ea));
  o.require(std::abs(sweep.points.front().r - testing::kChi[2]) <= 1e-3 &&
                std::abs(sweep.points.back().r_prime - testing::kEa[2]) <= 1e-3,
            "sweep endpoints off the closed forms");

  double best = -1.0, best_beta = 0.0;
  const double norm = std::hypot(c, c_ea);
  for (const auto& p : sweep.points) {
    const double margin = (p.r * c_ea + p.r_prime * c - c * c_ea) / norm;
    if (margin > best) {
      best = margin;
      best_beta = p.params.at("beta");
    }
  }
  o.require(best > 1e-3, fmt("largest margin %.2e", best));
  o.require(dt <= 120.0, fmt("sweep took %.1fs", dt));
  if (o.ok) o.detail = fmt("max margin %.4f at beta=%.2f, %.2fs", best, best_beta, dt);
  return o;
}

Outcome additivity() {
  Outcome o;
  const auto t0 = Clock::now();
  std::string d;
  for (double eps : {0.25, 0.5}) {
    const auto n = depolarizing(eps);
    const double one = holevo_chi(n, kSingleLetter).value;
    const double two = holevo_chi(n, kTwoLetter, 2).value;
    o.require(std::abs(two - one) <= 5e-3, fmt("eps=%.2f block1 %.6f block2 %.6f", eps, one, two));
    d += fmt("eps=%.2f |diff| %.1e ", eps, std::abs(two - one));
  }
  const double dt = seconds_since(t0);
  o.require(dt <= 600.0, fmt("took %.1fs", dt));
  if (o.ok) o.detail = d + fmt("in %.0fs", dt);
  return o;
}

Outcome property_suite() {
  Outcome o;
  testing::Rng rng(20240601);
  std::size_t cases = 0;

  // (U ⊗ 1)|Φ⟩ = (1 ⊗ Uᵀ)|Φ⟩
  for (int i = 0; i < 2000; ++i, ++cases) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    const auto u = testing::haar_unitary(d, rng);
    const auto phi = maximally_entangled(d).amplitudes();
    const double diff =
        (kron(u, identity(d)) * phi - kron(identity(d), ComplexMatrix(u.transpose())) * phi).cwiseAbs().maxCoeff();
    o.require(diff <= 1e-12, fmt("ricochet defect %.2e", diff));
  }
  // Channel outputs validate as states.
  for (int i = 0; i < 2000; ++i, ++cases) {
    const std::size_t din = 2 + static_cast<std::size_t>(i % 2), dout = 1 + static_cast<std::size_t>(i % 3);
    const auto ch = testing::random_channel(din, dout, 1 + static_cast<std::size_t>(i % 4), rng);
    try {
      const auto rho = testing::random_density({2, din}, rng, 1 + static_cast<std::size_t>(i % 4));
      const auto out = apply_channel(ch, rho, 1);
      const DensityOperator recheck(out.matrix(), out.dims());
      o.require(std::abs(recheck.matrix().trace().real() - 1.0) <= 1e-9, "output trace off");
    } catch (const Error& e) {
      o.require(false, std::string("channel output rejected: ") + e.what());
    }
  }
  // Purification round trip.
  for (int i = 0; i < 2000; ++i, ++cases) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    const auto rho = testing::random_density({d}, rng, 1 + static_cast<std::size_t>(i) % d);
    const double diff = testing::max_abs_diff(purify(rho).reduce({0}).matrix(), rho.matrix());
    o.require(diff <= 1e-10, fmt("purification defect %.2e", diff));
  }
  // 0 ≤ H ≤ log d.
  for (int i = 0; i < 2000; ++i, ++cases) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 7);
    const double h = von_neumann(testing::random_density({d}, rng, 1 + static_cast<std::size_t>(i) % d));
    o.require(h >= -1e-12 && h <= std::log2(static_cast<double>(d)) + 1e-12, fmt("entropy %.6f", h));
  }
  // Strong subadditivity.
  for (int i = 0; i < 2000; ++i, ++cases) {
    const auto rho = testing::random_density({2, 2, 2}, rng, 1 + static_cast<std::size_t>(i % 8));
    const double v = cond_mutual_info(rho, {.a = {0}, .b = {1}, .c = {2}});
    o.require(v >= -1e-9, fmt("I(A;B|C) = %.3e", v));
  }
  // Data processing for mutual information.
  for (int i = 0; i < 1500; ++i, ++cases) {
    const auto rho = testing::random_density({2, 2}, rng, 1 + static_cast<std::size_t>(i % 4));
    const auto ch = testing::random_channel(2, 1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i % 4), rng);
    const double before = mutual_info(rho, {.a = {0}, .b = {1}});
    const double after = mutual_info(apply_channel(ch, rho, 1), {.a = {0}, .b = {1}});
    o.require(after <= before + 1e-9, fmt("I grew from %.6f to %.6f", before, after));
  }
  // Min-entropy bounds and extremes.
  for (int i = 0; i < 60; ++i, ++cases) {
    const std::size_t db = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = testing::random_density({2, db}, rng, 1 + static_cast<std::size_t>(i % 3));
    const double h = min_entropy_cond_optimized(rho, {.restarts = 4, .seed = 1}).value;
    o.require(h >= -1.0 - 1e-9 && h <= 1.0 + 1e-9, fmt("H_min = %.6f", h));
    o.require(h <= cond_entropy(rho, {.a = {0}, .b = {1}}) + 1e-9, fmt("H_min %.6f above H", h));
  }
  const double hphi = min_entropy_cond_optimized(maximally_entangled(2).density()).value;
  const double hmix = min_entropy_cond_optimized(
                          tensor(DensityOperator::maximally_mixed(2), testing::random_density({2}, rng)))
                          .value;
  cases += 2;
  o.require(std::abs(hphi + 1.0) <= 1e-6, fmt("H_min(Phi) = %.8f", hphi));
  o.require(std::abs(hmix - 1.0) <= 1e-6, fmt("H_min(I/2 x rho) = %.8f", hmix));

  o.require(cases >= 10000, fmt("only %.0f cases", static_cast<double>(cases)));
  if (o.ok) o.detail = fmt("%.0f randomized cases", static_cast<double>(cases));
  return o;
}

Outcome simulator_statistics() {
  Outcome o;
  const SimConfig cfg{.n = 8, .lambda = 1.0, .trials = 10000, .seed = 0, .assisted = false, .channel_eps = 0.0};
  const auto rep = run_protocol(cfg);
  o.require(std::abs(rep.excess_symbol_error - 0.75) <= 0.02,
            fmt("unassisted symbol error %.4f", rep.excess_symbol_error));
  o.require(run_protocol(cfg) == rep, "repeated seed gave a different report");
  SimConfig noisy{.n = 8, .lambda = 0.5, .trials = 2000, .seed = 11, .assisted = true, .channel_eps = 0.4};
  o.require(run_protocol(noisy) == run_protocol(noisy), "noisy report not reproducible");
  if (o.ok) o.detail = fmt("symbol error %.4f over 10^4 trials, reports bit-identical", rep.excess_symbol_error);
  return o;
}

Outcome broadcast_bounds() {
  Outcome o;
  const Ensemble basis({0.5, 0.5}, tensor(PureState::basis(2, 0), PureState::basis(2, 0)),
                       {identity_channel(2), unitary_channel(pauli_x())});
  const auto b = broadcast_region_point(identity_channel(2), identity_channel(2), basis);
  o.require(std::abs(b.r0 - 1.0) <= 1e-9 && std::abs(b.r1) <= 1e-9 && std::abs(b.r_sum - 1.0) <= 1e-9,
            fmt("basis signaling gave (%.10f, %.10f, %.10f)", b.r0, b.r1, b.r_sum));

  testing::Rng rng(77);
  std::uniform_int_distribution<std::size_t> letters_d(1, 5), a0_d(1, 3), a1_d(1, 2), k_d(1, 3);
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t letters = letters_d(rng), da0 = a0_d(rng), da1 = a1_d(rng);
    std::vector<double> p(letters);
    double s = 0.0;
    for (auto& v : p) s += (v = ex(rng));
    for (auto& v : p) v /= s;
    std::vector<KrausChannel> enc;
    for (std::size_t x = 0; x < letters; ++x) enc.push_back(testing::random_channel(da0, 2, k_d(rng), rng));
    const Ensemble e(std::move(p), testing::random_pure({da0, da1}, rng), std::move(enc));
    const auto r = broadcast_region_point(testing::random_channel(2, 2, k_d(rng), rng),
                                          testing::random_channel(2, 2, k_d(rng), rng), e);
    o.require(r.r1 <= r.r_sum + 1e-9, fmt("r1 %.6f > r_sum %.6f", r.r1, r.r_sum));
    o.require(r.r0 >= 0.0, fmt("r0 %.3e negative", r.r0));
  }
  if (o.ok) o.detail = "basis signaling exact, 100 random ensembles ordered";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"unassisted capacity of depolarizing channel", unassisted_capacity},
      {"entanglement-assisted capacity of depolarizing channel", assisted_capacity},
      {"noiseless qubit region", noiseless_qubit_region},
      {"superposition sweep beats time division at eps=1/2", half_depolarizing_sweep},
      {"two-letter Holevo additivity", additivity},
      {"randomized property suite", property_suite},
      {"protocol simulator statistics", simulator_statistics},
      {"broadcast bounds", broadcast_bounds},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %s  (%s)\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
