#pragma once

// Single-letter capacity quantities and rate regions for communication with
// unreliable entanglement assistance.
//
// Rate pairs (R, R') are in bits per channel use: R is the guaranteed rate
// (decodable without the entanglement resource), R' the excess rate that is
// decodable only when the resource arrives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qregion/info_measures.hpp"
#include "qregion/quantum_objects.hpp"
#include "qregion/simplex.hpp"

namespace qregion {

inline constexpr double kRateClampTol = 1e-9;

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  double tol = 1e-7;
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts == 0 || max_iters == 0 || !(tol > 0.0))
      throw ValidationError("optimizer config needs positive restarts, max_iters and tol");
  }

  MultiStartOptions multistart() const {
    validate();
    return {.restarts = restarts,
            .seed = seed,
            .init_scale = 1.0,
            .simplex = {.max_iters = max_iters, .tol = tol, .step = 0.5, .polish_rounds = 3}};
  }
};

/// Generating parameters of a rate point, e.g. {"beta": 0.3}.
using ParamRecord = std::map<std::string, double>;

struct RatePoint {
  double r = 0.0;
  double r_prime = 0.0;
  ParamRecord params;
};

/// Builds a rate point, clamping round-off negatives to zero. Values below
/// −kRateClampTol indicate a numerical fault and are rejected.
inline RatePoint make_rate_point(double r, double r_prime, ParamRecord params = {}) {
  if (!(r >= -kRateClampTol) || !(r_prime >= -kRateClampTol) || !std::isfinite(r) ||
      !std::isfinite(r_prime))
    throw ValidationError("rate point (" + std::to_string(r) + ", " + std::to_string(r_prime) +
                          ") has a negative or non-finite coordinate");
  return {std::max(0.0, r), std::max(0.0, r_prime), std::move(params)};
}

struct RateRegion {
  std::vector<RatePoint> points;
  std::vector<RatePoint> frontier;  // upper-right boundary, ordered by increasing r
};

/// Classical input ensemble for the unreliable-assistance region: letter
/// distribution p_X, shared resource |φ⟩ on A0 ⊗ A1 and one encoder
/// F^(x): A0 → A per letter.
class Ensemble {
 public:
  Ensemble(std::vector<double> probs, PureState resource, std::vector<KrausChannel> encoders)
      : probs_(std::move(probs)), resource_(std::move(resource)), encoders_(std::move(encoders)) {
    validate();
  }

  const std::vector<double>& probs() const noexcept { return probs_; }
  const PureState& resource() const noexcept { return resource_; }
  const std::vector<KrausChannel>& encoders() const noexcept { return encoders_; }
  std::size_t letters() const noexcept { return probs_.size(); }
  std::size_t input_dim() const noexcept { return encoders_.front().output_dim(); }
  std::size_t reference_dim() const noexcept { return resource_.dims()[1]; }

 private:
  void validate() const {
    if (probs_.empty()) throw ValidationError("ensemble needs at least one letter");
    if (encoders_.size() != probs_.size())
      throw ValidationError("ensemble needs one encoder per letter");
    (void)shannon_entropy(probs_);  // validates the distribution
    if (resource_.dims().size() != 2)
      throw ShapeError("ensemble resource must be bipartite A0 x A1");
    const auto& f0 = encoders_.front();
    for (const auto& f : encoders_)
      if (f.input_dim() != f0.input_dim() || f.output_dim() != f0.output_dim())
        throw ShapeError("ensemble encoders must share input/output dimensions");
    if (f0.input_dim() != resource_.dims()[0])
      throw ShapeError("encoder input dimension does not match resource system A0");
    const std::size_t da = f0.output_dim();
    if (probs_.size() > da * da + 1)
      throw ValidationError("ensemble has " + std::to_string(probs_.size()) +
                            " letters; cardinality bound is " + std::to_string(da * da + 1));
  }

  std::vector<double> probs_;
  PureState resource_;
  std::vector<KrausChannel> encoders_;
};

/// Pure state on A1 ⊗ A2 ⊗ A for the quantum region.
class QuantumAnsatz {
 public:
  explicit QuantumAnsatz(PureState state) : state_(std::move(state)) {
    if (state_.dims().size() != 3)
      throw ShapeError("quantum ansatz must be tripartite A1 x A2 x A");
  }
  const PureState& state() const noexcept { return state_; }

 private:
  PureState state_;
};

/// Classical-quantum state ω_{X B A1} = Σ p(x)|x⟩⟨x| ⊗ (N∘F^(x) ⊗ id)(φ_{A0A1}),
/// with subsystems ordered (X, B, A1).
inline DensityOperator classical_quantum_state(const KrausChannel& n, const Ensemble& e) {
  if (e.input_dim() != n.input_dim())
    throw ShapeError("ensemble input dimension " + std::to_string(e.input_dim()) +
                     " does not match channel input " + std::to_string(n.input_dim()));
  const std::size_t letters = e.letters();
  const std::size_t block = n.output_dim() * e.reference_dim();
  const auto total = static_cast<Eigen::Index>(letters * block);
  ComplexMatrix omega = ComplexMatrix::Zero(total, total);
  const DensityOperator phi = e.resource().density();
  for (std::size_t x = 0; x < letters; ++x) {
    if (e.probs()[x] == 0.0) continue;
    const auto encoded = apply_channel(e.encoders()[x], phi, 0);
    const auto out = apply_channel(n, encoded, 0);
    const auto off = static_cast<Eigen::Index>(x * block);
    omega.block(off, off, out.matrix().rows(), out.matrix().cols()) =
        e.probs()[x] * out.matrix();
  }
  return DensityOperator(std::move(omega), DimList{letters, n.output_dim(), e.reference_dim()});
}

/// (I(X;B)_ω, I(A1;B|X)_ω) for the given ensemble.
inline RatePoint classical_region_point(const KrausChannel& n, const Ensemble& e,
                                        ParamRecord params = {}) {
  const auto omega = classical_quantum_state(n, e);
  const double r = mutual_info(omega, {.a = {0}, .b = {1}});
  const double rp = cond_mutual_info(omega, {.a = {2}, .b = {1}, .c = {0}});
  return make_rate_point(r, rp, std::move(params));
}

/// The superposition family: |u_β⟩ = √(1−β)|00⟩ + √β|Φ⟩ (normalized) on
/// A0 ⊗ A1, equiprobable letters, encoders ρ ↦ X^x ρ X^x.
inline Ensemble superposition_ensemble(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("superposition: beta outside [0,1]");
  ComplexVector u = ComplexVector::Zero(4);
  u(0) = std::sqrt(1.0 - beta);
  u += std::sqrt(beta) * maximally_entangled(2).amplitudes();
  return Ensemble({0.5, 0.5}, PureState::normalized(u, DimList{2, 2}),
                  {identity_channel(2), unitary_channel(pauli_x())});
}

/// n evenly spaced points covering [0,1] (n ≥ 2), or {0} for n = 1.
inline std::vector<double> uniform_grid(std::size_t n) {
  if (n == 0) throw DomainError("grid needs at least one point");
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n && n > 1; ++i)
    g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) g.back() = 1.0;
  return g;
}

/// Upper-right boundary of the down-closed convex hull of `points`. Frontier
/// points are the input points lying on that boundary (collinear boundary
/// points are kept), ordered by increasing r.
inline RateRegion pareto_frontier(std::vector<RatePoint> points) {
  if (points.empty()) throw DomainError("pareto_frontier: no points");
  constexpr double kCollinearTol = 1e-12;

  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].r != points[b].r) return points[a].r < points[b].r;
    return points[a].r_prime > points[b].r_prime;
  });

  // Chain endpoints: highest r' (ties → largest r), highest r (ties → largest r').
  double top_rp = -1.0, top_r = -1.0;
  for (const auto& p : points) top_rp = std::max(top_rp, p.r_prime);
  for (const auto& p : points)
    if (p.r_prime == top_rp) top_r = std::max(top_r, p.r);
  double right_r = -1.0, right_rp = -1.0;
  for (const auto& p : points) right_r = std::max(right_r, p.r);
  for (const auto& p : points)
    if (p.r == right_r) right_rp = std::max(right_rp, p.r_prime);

  std::vector<std::size_t> chain;
  for (std::size_t k : idx) {
    const auto& p = points[k];
    if (p.r < top_r || p.r_prime < right_rp) continue;
    if (!chain.empty() && points[chain.back()].r == p.r &&
        points[chain.back()].r_prime == p.r_prime)
      continue;  // duplicate
    if (!chain.empty() && points[chain.back()].r == p.r) continue;  // lower point, same r
    while (chain.size() >= 2) {
      const auto& o = points[chain[chain.size() - 2]];
      const auto& a = points[chain.back()];
      const double cross = (a.r - o.r) * (p.r_prime - o.r_prime) -
                           (a.r_prime - o.r_prime) * (p.r - o.r);
      if (cross > kCollinearTol) chain.pop_back();  // a lies below segment o→p
      else break;
    }
    chain.push_back(k);
  }

  RateRegion region;
  for (std::size_t k : chain) region.frontier.push_back(points[k]);
  region.points = std::move(points);
  return region;
}

/// Time division between an unassisted code (rate c) and a fully assisted
/// one (rate c_ea): points ((1−λ)c, λ·c_ea).
inline RateRegion time_division_region(double c, double c_ea, const std::vector<double>& lambdas) {
  if (!(c >= 0.0) || !(c_ea >= 0.0)) throw DomainError("time division: negative capacity");
  if (lambdas.empty()) throw DomainError("time division: empty lambda grid");
  std::vector<RatePoint> pts;
  pts.reserve(lambdas.size());
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw DomainError("time division: lambda outside [0,1]");
    pts.push_back(make_rate_point((1.0 - l) * c, l * c_ea, {{"lambda", l}}));
  }
  return pareto_frontier(std::move(pts));
}

/// Evaluates the superposition family against a qubit channel.
inline RateRegion superposition_sweep(const KrausChannel& n, const std::vector<double>& betas) {
  if (betas.empty()) throw DomainError("superposition sweep: empty beta grid");
  std::vector<RatePoint> pts;
  pts.reserve(betas.size());
  for (double b : betas)
    pts.push_back(classical_region_point(n, superposition_ensemble(b), {{"beta", b}}));
  return pareto_frontier(std::move(pts));
}

inline RateRegion superposition_sweep(double eps, const std::vector<double>& betas) {
  return superposition_sweep(depolarizing(eps), betas);
}

// ---------------------------------------------------------------------------
// Optimized single-letter quantities

template <class Witness>
struct CapacityEstimate {
  double value = 0.0;  // attained by `witness`; a lower bound on the maximum
  Witness witness;
  bool converged = false;
  std::size_t evaluations = 0;
};

namespace detail {

// Normalized complex vector from 2d unconstrained reals.
inline ComplexVector unit_vector(const double* x, std::size_t d) {
  ComplexVector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = Complex(x[2 * i], x[2 * i + 1]);
  const double n = v.norm();
  if (!(n > 1e-12) || !std::isfinite(n)) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

inline std::vector<double> softmax(const double* x, std::size_t n) {
  std::vector<double> p(x, x + n);
  const double m = *std::max_element(p.begin(), p.end());
  double s = 0.0;
  for (auto& v : p) {
    v = std::exp(v - m);
    s += v;
  }
  for (auto& v : p) v /= s;
  return p;
}

// (1 ⊗ K) applied to a vector on (left, d_in) with the output on (left, d_out).
inline ComplexVector apply_right(const ComplexMatrix& k, const ComplexVector& v, std::size_t left) {
  const auto din = k.cols(), dout = k.rows();
  ComplexVector out(static_cast<Eigen::Index>(left) * dout);
  for (std::size_t l = 0; l < left; ++l) {
    const auto li = static_cast<Eigen::Index>(l);
    out.segment(li * dout, dout) = k * v.segment(li * din, din);
  }
  return out;
}

// ω_{A1B} = (id ⊗ N)(φ_{A1A}) for φ on (left, d_in).
inline ComplexMatrix apply_channel_right(const KrausChannel& n, const ComplexVector& phi,
                                         std::size_t left) {
  const auto dim = static_cast<Eigen::Index>(left * n.output_dim());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : n.kraus_ops()) {
    const ComplexVector w = apply_right(k, phi, left);
    out.noalias() += w * w.adjoint();
  }
  return out;
}

// Maximizes `value(ω_{A1B})` over pure φ on A1 ⊗ A with dim A1 = dim A.
template <class Value>
CapacityEstimate<PureState> optimize_bipartite_input(const KrausChannel& n,
                                                     const OptimizerConfig& cfg, Value value) {
  const std::size_t d = n.input_dim();
  const DimList out_dims{d, n.output_dim()};
  auto objective = [&](const std::vector<double>& x) {
    const ComplexVector phi = unit_vector(x.data(), d * d);
    return value(apply_channel_right(n, phi, d), out_dims);
  };
  const auto res = maximize_multistart(objective, 2 * d * d, cfg.multistart());
  CapacityEstimate<PureState> out{
      .value = 0.0,
      .witness = PureState(unit_vector(res.best.x.data(), d * d), DimList{d, d}),
      .converged = res.best.converged,
      .evaluations = res.total_evaluations};
  return out;
}

}  // namespace detail

/// Holevo information χ(N^{⊗b})/b maximized over pure-state ensembles with
/// dim(A)^2 letters. The returned value is re-evaluated from the witness
/// ensemble through classical_region_point.
inline CapacityEstimate<Ensemble> holevo_chi(const KrausChannel& n, const OptimizerConfig& cfg = {},
                                             std::size_t block = 1) {
  const KrausChannel nb = channel_tensor(n, block);
  const std::size_t d = nb.input_dim();
  const std::size_t letters = d * d;
  const std::size_t per_letter = 2 * d + 1;

  auto decode = [&](const std::vector<double>& x) {
    std::vector<double> logits(letters);
    std::vector<ComplexVector> states;
    states.reserve(letters);
    for (std::size_t i = 0; i < letters; ++i) {
      const double* p = x.data() + i * per_letter;
      states.push_back(detail::unit_vector(p, d));
      logits[i] = p[2 * d];
    }
    return std::pair{detail::softmax(logits.data(), letters), std::move(states)};
  };

  auto objective = [&](const std::vector<double>& x) {
    const auto [probs, states] = decode(x);
    const auto out_dim = static_cast<Eigen::Index>(nb.output_dim());
    ComplexMatrix avg = ComplexMatrix::Zero(out_dim, out_dim);
    double cond = 0.0;
    for (std::size_t i = 0; i < letters; ++i) {
      const ComplexMatrix o = nb.apply_pure(states[i]);
      avg += probs[i] * o;
      cond += probs[i] * detail::entropy_bits(o);
    }
    return detail::entropy_bits(avg) - cond;
  };

  const auto res = maximize_multistart(objective, letters * per_letter, cfg.multistart());
  auto [probs, states] = decode(res.best.x);
  std::vector<KrausChannel> encoders;
  encoders.reserve(letters);
  for (const auto& s : states) encoders.push_back(replacement_channel(1, PureState(s)));
  // Letters are prepared from a trivial resource, so A0 and A1 are 1-dimensional.
  Ensemble witness(std::move(probs), PureState(ComplexVector::Ones(1), DimList{1, 1}),
                   std::move(encoders));
  const double value = classical_region_point(nb, witness).r / static_cast<double>(block);
  return {.value = value,
          .witness = std::move(witness),
          .converged = res.best.converged,
          .evaluations = res.total_evaluations};
}

/// I(N) = max over pure φ_{A1A} of I(A1;B), which equals the
/// entanglement-assisted classical capacity.
inline CapacityEstimate<PureState> ea_capacity(const KrausChannel& n, const OptimizerConfig& cfg = {}) {
  auto mi = [](const ComplexMatrix& omega, const DimList& dims) {
    return detail::entropy_bits(partial_trace(omega, dims, {0})) +
           detail::entropy_bits(partial_trace(omega, dims, {1})) - detail::entropy_bits(omega);
  };
  auto est = detail::optimize_bipartite_input(n, cfg, mi);
  const auto omega = apply_channel(n, est.witness, 1);
  est.value = std::max(0.0, mutual_info(omega, {.a = {0}, .b = {1}}));
  return est;
}

/// max(0, max over pure φ_{A1A} of I(A1⟩B)). A trivial A1 always attains 0.
inline CapacityEstimate<PureState> coherent_capacity(const KrausChannel& n,
                                                     const OptimizerConfig& cfg = {}) {
  auto ci = [](const ComplexMatrix& omega, const DimList& dims) {
    return detail::entropy_bits(partial_trace(omega, dims, {1})) - detail::entropy_bits(omega);
  };
  auto est = detail::optimize_bipartite_input(n, cfg, ci);
  const auto omega = apply_channel(n, est.witness, 1);
  est.value = std::max(0.0, coherent_info(omega, {.a = {0}, .b = {1}}));
  return est;
}

/// Entanglement entropy of a bipartite pure state across its cut.
inline double entanglement_entropy(const PureState& psi) {
  if (psi.dims().size() != 2) throw ShapeError("entanglement_entropy: state must be bipartite");
  return von_neumann(psi.reduce({0}));
}

/// Corner point (Q, Q') of the quantum region for one ansatz, with
/// cap_q = max(0, min(I(A1⟩B), H(A1|A2))), cap_tot = max(0, ½ I(A2;B)),
/// Q = min(cap_q, cap_tot) and Q' = cap_tot − Q.
inline RatePoint quantum_region_point(const KrausChannel& n, const QuantumAnsatz& a,
                                      ParamRecord params = {}) {
  const auto& dims = a.state().dims();
  if (dims[2] != n.input_dim())
    throw ShapeError("ansatz system A has dimension " + std::to_string(dims[2]) +
                     ", channel expects " + std::to_string(n.input_dim()));
  const auto omega = apply_channel(n, a.state(), 2);  // (A1, A2, B)
  const double coh = coherent_info(omega, {.a = {0}, .b = {2}});
  const double h12 = cond_entropy(omega, {.a = {0}, .b = {1}});
  const double i2b = mutual_info(omega, {.a = {1}, .b = {2}});
  const double cap_q = std::max(0.0, std::min(coh, h12));
  const double cap_tot = std::max(0.0, 0.5 * i2b);
  const double q = std::min(cap_q, cap_tot);
  return make_rate_point(q, cap_tot - q, std::move(params));
}

struct BroadcastBounds {
  double r0 = 0.0;     // I(X;B2)
  double r1 = 0.0;     // I(A1;B1|X)
  double r_sum = 0.0;  // I(X A1;B1)
};

/// Information bounds of the two-receiver region: receiver 2 sees n2 without
/// the resource, receiver 1 sees n1 with it.
inline BroadcastBounds broadcast_region_point(const KrausChannel& n1, const KrausChannel& n2,
                                              const Ensemble& e) {
  const auto w1 = classical_quantum_state(n1, e);  // (X, B1, A1)
  const auto w2 = classical_quantum_state(n2, e);  // (X, B2, A1)
  auto clamp = [](double v) {
    if (v < -kRateClampTol) throw ValidationError("broadcast bound is negative");
    return std::max(0.0, v);
  };
  return {.r0 = clamp(mutual_info(w2, {.a = {0}, .b = {1}})),
          .r1 = clamp(cond_mutual_info(w1, {.a = {2}, .b = {1}, .c = {0}})),
          .r_sum = clamp(mutual_info(w1, {.a = {0, 2}, .b = {1}}))};
}

}  // namespace qregion
