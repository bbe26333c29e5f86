#pragma once

// Finite-blocklength Monte Carlo simulation of time division between basis
// signaling and super-dense coding over a (possibly depolarizing) qubit
// channel, with the entanglement resource either delivered or lost.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "qregion/quantum_objects.hpp"
#include "qregion/simplex.hpp"

namespace qregion {

struct SimConfig {
  std::size_t n = 8;         // blocklength (channel uses)
  double lambda = 0.0;       // fraction of uses spent on super-dense coding
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool assisted = true;
  double channel_eps = 0.0;  // depolarizing parameter, 0 = noiseless

  /// Number of dense-coded positions λn; throws unless λn is an integer.
  std::size_t dense_uses() const {
    if (n == 0) throw ValidationError("simulation blocklength must be >= 1");
    if (trials == 0) throw ValidationError("simulation needs at least one trial");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda outside [0,1]");
    if (!(channel_eps >= 0.0 && channel_eps <= 1.0))
      throw ValidationError("channel eps outside [0,1]");
    const double ln = lambda * static_cast<double>(n);
    const double k = std::round(ln);
    if (std::abs(ln - k) > 1e-9)
      throw ValidationError("lambda * n = " + std::to_string(ln) + " is not an integer");
    return static_cast<std::size_t>(k);
  }
};

struct SimReport {
  double guaranteed_rate = 0.0;  // 1 − λ
  double excess_rate = 0.0;      // 2λ
  double err_guaranteed = 0.0;   // fraction of trials with m decoded wrongly
  double err_excess = 0.0;       // fraction of trials with m' decoded wrongly
  double excess_symbol_error = 0.0;  // per dense-coded pair; 0 when λ = 0
  std::size_t trials = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Bell basis (Σ(a,b) ⊗ 1)|Φ⟩ indexed by j = 2a + b.
inline std::array<PureState, 4> bell_basis() {
  const auto phi = maximally_entangled(2);
  auto bell = [&](std::size_t a, std::size_t b) {
    return PureState(kron(heisenberg_weyl(2, a, b), identity(2)) * phi.amplitudes(),
                     DimList{2, 2});
  };
  return {bell(0, 0), bell(0, 1), bell(1, 0), bell(1, 1)};
}

/// Joint state of (channel output, Bob's half) after Alice encodes symbol
/// m' = 2a + b with Σ(a,b) on her half of Φ and sends it through
/// depolarizing(eps).
inline DensityOperator superdense_state(std::size_t m_prime, double eps) {
  if (m_prime > 3) throw DomainError("super-dense symbol must lie in [0,3]");
  const auto phi = maximally_entangled(2);
  const PureState encoded(
      kron(heisenberg_weyl(2, m_prime >> 1, m_prime & 1), identity(2)) * phi.amplitudes(),
      DimList{2, 2});
  return apply_channel(depolarizing(eps), encoded, 0);
}

/// Born-rule distribution of the Bell measurement outcome.
inline std::array<double, 4> superdense_outcome_distribution(std::size_t m_prime, double eps) {
  const auto rho = superdense_state(m_prime, eps);
  const auto basis = bell_basis();
  std::array<double, 4> p{};
  for (std::size_t j = 0; j < 4; ++j)
    p[j] = std::max(0.0, (basis[j].amplitudes().adjoint() * rho.matrix() *
                          basis[j].amplitudes())(0, 0).real());
  return p;
}

/// Outcome distribution when only the channel output is available and is
/// measured in the computational basis.
inline std::array<double, 2> unassisted_outcome_distribution(std::size_t m_prime, double eps) {
  const auto received = superdense_state(m_prime, eps).reduce({0});
  return {std::max(0.0, received.matrix()(0, 0).real()),
          std::max(0.0, received.matrix()(1, 1).real())};
}

namespace detail {

template <std::size_t N, class Rng>
std::size_t sample(const std::array<double, N>& p, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < N; ++j) {
    acc += p[j];
    if (u < acc) return j;
  }
  return N - 1;
}

// Symbol guessed from a single computational-basis outcome when the
// resource is absent.
inline std::size_t naive_symbol(std::size_t outcome) { return outcome << 1; }

}  // namespace detail

/// Encodes, transmits and Bell-measures one super-dense symbol; returns the
/// decoded symbol.
template <class Rng>
std::size_t superdense_roundtrip(std::size_t m_prime, double eps, Rng& rng) {
  return detail::sample(superdense_outcome_distribution(m_prime, eps), rng);
}

/// Runs `cfg.trials` independent blocks. Trial t draws from its own stream
/// derived from (seed, t), so the report is independent of execution order.
inline SimReport run_protocol(const SimConfig& cfg) {
  const std::size_t dense = cfg.dense_uses();
  const std::size_t basis_uses = cfg.n - dense;

  // Exact Born-rule tables, computed once.
  std::array<std::array<double, 4>, 4> assisted_table{};
  std::array<std::array<double, 2>, 4> unassisted_table{};
  for (std::size_t s = 0; s < 4; ++s) {
    assisted_table[s] = superdense_outcome_distribution(s, cfg.channel_eps);
    unassisted_table[s] = unassisted_outcome_distribution(s, cfg.channel_eps);
  }
  const auto chan = depolarizing(cfg.channel_eps);
  std::array<std::array<double, 2>, 2> bit_table{};
  for (std::size_t b = 0; b < 2; ++b) {
    const ComplexMatrix out = chan.apply(DensityOperator::basis(2, b).matrix());
    bit_table[b] = {std::max(0.0, out(0, 0).real()), std::max(0.0, out(1, 1).real())};
  }

  std::size_t guaranteed_failures = 0, excess_failures = 0, symbol_errors = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto rng = stream_rng(cfg.seed, t);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<std::size_t> symbol(0, 3);

    bool m_ok = true;
    for (std::size_t i = 0; i < basis_uses; ++i) {
      const auto b = static_cast<std::size_t>(bit(rng));
      if (detail::sample(bit_table[b], rng) != b) m_ok = false;
    }
    bool mp_ok = true;
    for (std::size_t i = 0; i < dense; ++i) {
      const std::size_t s = symbol(rng);
      const std::size_t decoded =
          cfg.assisted ? detail::sample(assisted_table[s], rng)
                       : detail::naive_symbol(detail::sample(unassisted_table[s], rng));
      if (decoded != s) {
        mp_ok = false;
        ++symbol_errors;
      }
    }
    guaranteed_failures += m_ok ? 0 : 1;
    excess_failures += mp_ok ? 0 : 1;
  }

  const double trials = static_cast<double>(cfg.trials);
  SimReport rep;
  rep.guaranteed_rate = 1.0 - cfg.lambda;
  rep.excess_rate = 2.0 * cfg.lambda;
  rep.err_guaranteed = static_cast<double>(guaranteed_failures) / trials;
  rep.err_excess = static_cast<double>(excess_failures) / trials;
  rep.excess_symbol_error =
      dense == 0 ? 0.0 : static_cast<double>(symbol_errors) / (trials * static_cast<double>(dense));
  rep.trials = cfg.trials;
  return rep;
}

}  // namespace qregion
