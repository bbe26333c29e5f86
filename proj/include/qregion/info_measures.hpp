#pragma once

// Entropic quantities in bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qregion/quantum_objects.hpp"
#include "qregion/simplex.hpp"

namespace qregion {

/// Eigenvalues at or below this are treated as exactly zero in entropy sums.
inline constexpr double kEntropyCutoff = 1e-12;

/// Subsystem groupings A, B and optionally C of a multipartite state.
struct Partition {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::vector<std::size_t> c;  // conditioning block; empty when unused

  void validate(std::size_t subsystems) const {
    std::vector<bool> seen(subsystems, false);
    auto mark = [&](const std::vector<std::size_t>& block, const char* name) {
      for (auto k : block) {
        if (k >= subsystems)
          throw ShapeError(std::string("partition block ") + name + " references subsystem " +
                           std::to_string(k) + " of " + std::to_string(subsystems));
        if (seen[k]) throw ShapeError("partition blocks overlap at subsystem " + std::to_string(k));
        seen[k] = true;
      }
    };
    mark(a, "A");
    mark(b, "B");
    mark(c, "C");
  }
};

namespace detail {

inline double entropy_of_spectrum(const RealVector& ev) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kEntropyCutoff) h -= ev(i) * std::log2(ev(i));
  return h;
}

// Entropy of a (trusted) density matrix without validation.
inline double entropy_bits(const ComplexMatrix& rho) {
  return entropy_of_spectrum(eigvals_unchecked(rho));
}

inline std::vector<std::size_t> join(const std::vector<std::size_t>& x,
                                     const std::vector<std::size_t>& y) {
  auto out = x;
  out.insert(out.end(), y.begin(), y.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Entropy of the marginal on `keep`; an empty block is a trivial system.
inline double marginal_entropy(const DensityOperator& rho, std::vector<std::size_t> keep) {
  if (keep.empty()) return 0.0;
  std::sort(keep.begin(), keep.end());
  return entropy_bits(partial_trace(rho.matrix(), rho.dims(), keep));
}

}  // namespace detail

/// −Σ p log₂ p with 0·log 0 = 0.
inline double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw ValidationError("probability vector has a negative or non-finite entry");
    sum += x;
  }
  if (p.empty() || std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("probability vector sums to " + std::to_string(sum) + ", not 1");
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

inline double shannon_entropy(std::initializer_list<double> p) {
  return shannon_entropy(std::span<const double>(p.begin(), p.size()));
}

/// H₂(t) = −t log t − (1−t) log(1−t).
inline double binary_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("binary_entropy: t outside [0,1]");
  return shannon_entropy({t, 1.0 - t});
}

inline double von_neumann(const DensityOperator& rho) {
  return detail::entropy_of_spectrum(rho.eigenvalues());
}

/// H(A|B) = H(AB) − H(B).
inline double cond_entropy(const DensityOperator& rho, const Partition& part) {
  part.validate(rho.dims().size());
  return detail::marginal_entropy(rho, detail::join(part.a, part.b)) -
         detail::marginal_entropy(rho, part.b);
}

/// I(A;B) = H(A) + H(B) − H(AB).
inline double mutual_info(const DensityOperator& rho, const Partition& part) {
  part.validate(rho.dims().size());
  return detail::marginal_entropy(rho, part.a) + detail::marginal_entropy(rho, part.b) -
         detail::marginal_entropy(rho, detail::join(part.a, part.b));
}

/// I(A;B|C) = H(AC) + H(BC) − H(ABC) − H(C).
inline double cond_mutual_info(const DensityOperator& rho, const Partition& part) {
  part.validate(rho.dims().size());
  const auto ac = detail::join(part.a, part.c);
  const auto bc = detail::join(part.b, part.c);
  const auto abc = detail::join(ac, part.b);
  return detail::marginal_entropy(rho, ac) + detail::marginal_entropy(rho, bc) -
         detail::marginal_entropy(rho, abc) - detail::marginal_entropy(rho, part.c);
}

/// I(A⟩B) = −H(A|B).
inline double coherent_info(const DensityOperator& rho, const Partition& part) {
  return -cond_entropy(rho, part);
}

// ---------------------------------------------------------------------------
// Conditional min-entropy

namespace detail {

struct InverseSqrt {
  ComplexMatrix value;   // pseudo-inverse square root on the support
  ComplexMatrix kernel;  // projector onto the kernel
};

inline InverseSqrt inverse_sqrt_on_support(const ComplexMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (sigma + sigma.adjoint()));
  const auto n = sigma.rows();
  RealVector inv(n);
  RealVector ker(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = es.eigenvalues()(i);
    const bool on = l > kEntropyCutoff;
    inv(i) = on ? 1.0 / std::sqrt(l) : 0.0;
    ker(i) = on ? 0.0 : 1.0;
  }
  const auto& v = es.eigenvectors();
  return {v * inv.cast<Complex>().asDiagonal() * v.adjoint(),
          v * ker.cast<Complex>().asDiagonal() * v.adjoint()};
}

// −log₂ λ_max((1⊗σ^{-1/2}) ρ (1⊗σ^{-1/2})); returns −∞ when supp ρ_B ⊄ supp σ.
inline double min_entropy_for(const ComplexMatrix& rho_ab, std::size_t dim_a,
                              const ComplexMatrix& rho_b, const ComplexMatrix& sigma_b) {
  const auto s = inverse_sqrt_on_support(sigma_b);
  const double leak = (s.kernel * rho_b).trace().real();
  if (leak > 1e-9) return -std::numeric_limits<double>::infinity();
  const ComplexMatrix w = kron(identity(dim_a), s.value);
  const ComplexMatrix m = w * rho_ab * w;
  const double lmax = eigvals_unchecked(m).maxCoeff();
  return -std::log2(lmax);
}

}  // namespace detail

/// H_min(ρ_AB|σ_B) for a bipartite ρ (dims (d_A, d_B)) and fixed σ_B. A
/// rank-deficient σ_B is inverted on its support; supp ρ_B must lie inside it.
inline double min_entropy_cond(const DensityOperator& rho_ab, const DensityOperator& sigma_b) {
  if (rho_ab.dims().size() != 2)
    throw ShapeError("min_entropy_cond: state must be bipartite");
  if (sigma_b.dim() != rho_ab.dims()[1])
    throw ShapeError("min_entropy_cond: sigma_B dimension does not match B");
  const ComplexMatrix rho_b = partial_trace(rho_ab.matrix(), rho_ab.dims(), {1});
  const double h = detail::min_entropy_for(rho_ab.matrix(), rho_ab.dims()[0], rho_b,
                                           sigma_b.matrix());
  if (std::isinf(h)) throw DomainError("min_entropy_cond: supp(rho_B) not inside supp(sigma_B)");
  return h;
}

struct MinEntropyOptions {
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  SimplexOptions simplex{.max_iters = 4000, .tol = 1e-12, .step = 0.5, .polish_rounds = 4};
};

struct MinEntropyResult {
  double value = 0.0;  // achieved by `sigma_b`, hence a lower bound on the supremum
  ComplexMatrix sigma_b;
  bool converged = false;
};

/// Conditional min-entropy H_min(A|B) = sup over σ_B of H_min(ρ_AB|σ_B).
/// σ_B = LL†/tr(LL†) with L complex lower triangular, searched by multi-start
/// Nelder-Mead.
inline MinEntropyResult min_entropy_cond_optimized(const DensityOperator& rho_ab,
                                                   const MinEntropyOptions& opts = {}) {
  if (rho_ab.dims().size() != 2)
    throw ShapeError("min_entropy_cond: state must be bipartite");
  const std::size_t da = rho_ab.dims()[0];
  const std::size_t db = rho_ab.dims()[1];
  const ComplexMatrix rho_b = partial_trace(rho_ab.matrix(), rho_ab.dims(), {1});

  auto sigma_from = [db](const std::vector<double>& x) {
    const auto n = static_cast<Eigen::Index>(db);
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      l(i, i) = x[k++];
      for (Eigen::Index j = 0; j < i; ++j) {
        l(i, j) = Complex(x[k], x[k + 1]);
        k += 2;
      }
    }
    ComplexMatrix s = l * l.adjoint();
    const double tr = s.trace().real();
    if (!(tr > 0.0)) return ComplexMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(db));
    return ComplexMatrix(s / tr);
  };
  auto objective = [&](const std::vector<double>& x) {
    return detail::min_entropy_for(rho_ab.matrix(), da, rho_b, sigma_from(x));
  };

  // The maximally mixed σ_B (L = 1) is always a feasible start.
  // Row i of L occupies entries [i², (i+1)²), diagonal first.
  std::vector<double> flat(db * db, 0.0);
  for (std::size_t i = 0; i < db; ++i) flat[i * i] = 1.0;

  MultiStartOptions ms{.restarts = opts.restarts, .seed = opts.seed, .init_scale = 1.0,
                       .simplex = opts.simplex};
  const auto best = maximize_multistart(objective, db * db, ms, {flat});
  MinEntropyResult out;
  out.sigma_b = sigma_from(best.best.x);
  out.value = detail::min_entropy_for(rho_ab.matrix(), da, rho_b, out.sigma_b);
  out.converged = best.best.converged;
  return out;
}

}  // namespace qregion
