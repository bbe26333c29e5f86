#pragma once

// States, channels and structured operators.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qregion/tensor_core.hpp"

namespace qregion {

inline constexpr double kPureNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kCptpTol = 1e-8;

class PureState;

/// Hermitian, positive semidefinite, unit-trace operator over a tensor
/// factorization. Construction validates; instances are immutable.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, DimList dims)
      : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    validate();
  }

  /// Single-system convenience constructor.
  explicit DensityOperator(ComplexMatrix matrix)
      : DensityOperator(matrix, DimList{static_cast<std::size_t>(matrix.rows())}) {}

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const DimList& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// Eigenvalues in descending order.
  RealVector eigenvalues() const { return herm_eigvals(matrix_); }

  /// Reduced state on the kept subsystems.
  DensityOperator reduce(const std::vector<std::size_t>& keep) const {
    return DensityOperator(partial_trace(matrix_, dims_, keep), dims_.select(keep));
  }

  static DensityOperator maximally_mixed(std::size_t d) {
    return DensityOperator(identity(d) / static_cast<double>(d));
  }

  static DensityOperator basis(std::size_t d, std::size_t k) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d));
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    return DensityOperator(std::move(m));
  }

  friend DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator(kron(a.matrix_, b.matrix_), concat(a.dims_, b.dims_));
  }

 private:
  void validate() const {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
      throw ValidationError("density operator must be a nonempty square matrix");
    if (dims_.total() != dim())
      throw ShapeError("density operator dims " + dims_.str() +
                       " do not factorize dimension " + std::to_string(dim()));
    if (!all_finite(matrix_))
      throw ValidationError("density operator has non-finite entries");
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
      throw ValidationError("density operator trace " + std::to_string(tr) +
                            " differs from 1");
    RealVector ev;
    try {
      ev = herm_eigvals(matrix_);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("density operator: ") + e.what());
    }
    if (ev.minCoeff() < -kPsdTol)
      throw ValidationError("density operator has negative eigenvalue " +
                            std::to_string(ev.minCoeff()));
  }

  ComplexMatrix matrix_;
  DimList dims_;
};

/// Unit vector over a tensor factorization. Global phase is unconstrained.
class PureState {
 public:
  PureState(ComplexVector amplitudes, DimList dims)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (dims_.total() != static_cast<std::size_t>(amplitudes_.size()))
      throw ShapeError("pure state dims " + dims_.str() +
                       " do not match amplitude count " +
                       std::to_string(amplitudes_.size()));
    const double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kPureNormTol)
      throw ValidationError("pure state norm " + std::to_string(norm) +
                            " differs from 1");
  }

  explicit PureState(ComplexVector amplitudes)
      : PureState(amplitudes, DimList{static_cast<std::size_t>(amplitudes.size())}) {}

  /// Normalizes `v` before validating; throws for the zero vector.
  static PureState normalized(const ComplexVector& v, DimList dims) {
    const double n = v.norm();
    if (!(n > 0.0)) throw ValidationError("cannot normalize zero vector");
    return PureState(v / n, std::move(dims));
  }

  static PureState basis(std::size_t d, std::size_t k) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return PureState(std::move(v));
  }

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  const DimList& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  DensityOperator density() const { return DensityOperator(projector(), dims_); }

  /// Reduced state on the kept subsystems.
  DensityOperator reduce(const std::vector<std::size_t>& keep) const {
    return DensityOperator(partial_trace_pure(amplitudes_, dims_, keep),
                           dims_.select(keep));
  }

  friend PureState tensor(const PureState& a, const PureState& b) {
    return PureState(kron(a.amplitudes_, b.amplitudes_), concat(a.dims_, b.dims_));
  }

 private:
  ComplexVector amplitudes_;
  DimList dims_;
};

/// |⟨a|b⟩|², insensitive to global phase.
inline double overlap(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ShapeError("overlap: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("Kraus family must be nonempty");
    output_dim_ = static_cast<std::size_t>(ops_.front().rows());
    input_dim_ = static_cast<std::size_t>(ops_.front().cols());
    if (input_dim_ == 0 || output_dim_ == 0)
      throw ValidationError("Kraus operators must be nonempty");
    for (const auto& k : ops_) {
      if (static_cast<std::size_t>(k.rows()) != output_dim_ ||
          static_cast<std::size_t>(k.cols()) != input_dim_)
        throw ShapeError("Kraus operators have inconsistent shapes");
      if (!all_finite(k)) throw ValidationError("Kraus operator has non-finite entries");
    }
    const double residual = completeness_residual(ops_);
    if (residual > kCptpTol)
      throw ValidationError("Kraus family violates completeness: max |sum K^dag K - I| = " +
                            std::to_string(residual));
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return output_dim_; }
  const std::vector<ComplexMatrix>& kraus_ops() const noexcept { return ops_; }

  /// Largest entry magnitude of Σ K†K − 1.
  static double completeness_residual(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return 1.0;
    ComplexMatrix sum = ComplexMatrix::Zero(ops.front().cols(), ops.front().cols());
    for (const auto& k : ops) sum += k.adjoint() * k;
    return (sum - ComplexMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
  }

  /// Applies the channel to a bare matrix on its full space.
  ComplexMatrix apply(const ComplexMatrix& rho) const {
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(output_dim_),
                                            static_cast<Eigen::Index>(output_dim_));
    for (const auto& k : ops_) out.noalias() += k * rho * k.adjoint();
    return out;
  }

  /// Output state for a pure input vector, Σ (Kψ)(Kψ)†.
  ComplexMatrix apply_pure(const ComplexVector& psi) const {
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(output_dim_),
                                            static_cast<Eigen::Index>(output_dim_));
    for (const auto& k : ops_) {
      const ComplexVector v = k * psi;
      out.noalias() += v * v.adjoint();
    }
    return out;
  }

 private:
  std::vector<ComplexMatrix> ops_;
  std::size_t input_dim_ = 0;
  std::size_t output_dim_ = 0;
};

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// (1/√d) Σ_j |j⟩|j⟩ on dims (d, d).
inline PureState maximally_entangled(std::size_t d) {
  if (d < 2) throw DomainError("maximally_entangled: d must be >= 2");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) v(static_cast<Eigen::Index>(j * d + j)) = a;
  return PureState(std::move(v), DimList{d, d});
}

/// Purification on dims (d, d) built from the spectral decomposition of rho;
/// the reference system has the same dimension as rho.
inline PureState purify(const DensityOperator& rho) {
  const auto eig = herm_eig(rho.matrix());
  const std::size_t d = rho.dim();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t k = 0; k < d; ++k) {
    const double w = std::sqrt(std::max(0.0, eig.values(static_cast<Eigen::Index>(k))));
    if (w == 0.0) continue;
    ComplexVector ref = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    ref(static_cast<Eigen::Index>(k)) = 1.0;
    v += w * kron(ComplexVector(eig.vectors.col(static_cast<Eigen::Index>(k))), ref);
  }
  // Clipping negative eigenvalues may leave the norm slightly off.
  return PureState::normalized(v, DimList{d, d});
}

/// Heisenberg-Weyl operator Σ_X^a Σ_Z^b with Σ_X|j⟩ = |j+1 mod d⟩ and
/// Σ_Z|j⟩ = e^{2πij/d}|j⟩.
inline ComplexMatrix heisenberg_weyl(std::size_t d, std::size_t a, std::size_t b) {
  if (d < 1 || a >= d || b >= d)
    throw DomainError("heisenberg_weyl: indices must satisfy 0 <= a,b < d");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  ComplexMatrix phase = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j) {
    shift(static_cast<Eigen::Index>((j + 1) % d), static_cast<Eigen::Index>(j)) = 1.0;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(d);
    // Exact values at the quarter turns keep Pauli matrices integer-valued.
    phase(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) =
        (2 * j == d) ? Complex(-1.0, 0.0) : std::polar(1.0, theta);
  }
  ComplexMatrix out = identity(d);
  for (std::size_t i = 0; i < a; ++i) out = out * shift;
  for (std::size_t i = 0; i < b; ++i) out = out * phase;
  return out;
}

inline KrausChannel identity_channel(std::size_t d) {
  return KrausChannel({identity(d)});
}

inline KrausChannel unitary_channel(const ComplexMatrix& u) {
  return KrausChannel({u});
}

/// Channel that discards its input and prepares `psi`.
inline KrausChannel replacement_channel(std::size_t input_dim, const PureState& psi) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(input_dim);
  for (std::size_t i = 0; i < input_dim; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(psi.dim()),
                                          static_cast<Eigen::Index>(input_dim));
    k.col(static_cast<Eigen::Index>(i)) = psi.amplitudes();
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

/// Qubit depolarizing channel ρ ↦ (1−ε)ρ + ε·1/2 in Pauli-Kraus form.
inline KrausChannel depolarizing(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw DomainError("depolarizing: eps must lie in [0,1]");
  const double w0 = std::sqrt(1.0 - 0.75 * eps);
  const double w = std::sqrt(0.25 * eps);
  return KrausChannel({w0 * identity(2), w * pauli_x(), w * pauli_y(), w * pauli_z()});
}

namespace detail {

inline ComplexMatrix embed(const ComplexMatrix& op, std::size_t left, std::size_t right) {
  return kron(kron(identity(left), op), identity(right));
}

}  // namespace detail

/// Applies `n` to subsystem `target` of `rho`, leaving the rest untouched.
inline DensityOperator apply_channel(const KrausChannel& n, const DensityOperator& rho,
                                     std::size_t target) {
  const auto& dims = rho.dims();
  if (target >= dims.size())
    throw ShapeError("apply_channel: target subsystem out of range");
  if (dims[target] != n.input_dim())
    throw ShapeError("apply_channel: subsystem dimension " + std::to_string(dims[target]) +
                     " does not match channel input " + std::to_string(n.input_dim()));
  std::size_t left = 1, right = 1;
  for (std::size_t k = 0; k < target; ++k) left *= dims[k];
  for (std::size_t k = target + 1; k < dims.size(); ++k) right *= dims[k];

  const auto out_dim = static_cast<Eigen::Index>(left * n.output_dim() * right);
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (const auto& k : n.kraus_ops()) {
    const ComplexMatrix big = detail::embed(k, left, right);
    out.noalias() += big * rho.matrix() * big.adjoint();
  }
  return DensityOperator(std::move(out), dims.with(target, n.output_dim()));
}

/// Applies `n` to subsystem `target` of a pure state and returns the mixed
/// output.
inline DensityOperator apply_channel(const KrausChannel& n, const PureState& psi,
                                     std::size_t target) {
  const auto& dims = psi.dims();
  if (target >= dims.size() || dims[target] != n.input_dim())
    throw ShapeError("apply_channel: channel does not match target subsystem");
  std::size_t left = 1, right = 1;
  for (std::size_t k = 0; k < target; ++k) left *= dims[k];
  for (std::size_t k = target + 1; k < dims.size(); ++k) right *= dims[k];
  const auto out_dim = static_cast<Eigen::Index>(left * n.output_dim() * right);
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (const auto& k : n.kraus_ops()) {
    const ComplexVector v = detail::embed(k, left, right) * psi.amplitudes();
    out.noalias() += v * v.adjoint();
  }
  return DensityOperator(std::move(out), dims.with(target, n.output_dim()));
}

inline constexpr std::size_t kDefaultTensorPowerCap = 2;

/// b-fold tensor power of a channel. The Kraus family has |K|^b elements.
inline KrausChannel channel_tensor(const KrausChannel& n, std::size_t b,
                                   std::size_t cap = kDefaultTensorPowerCap) {
  if (b < 1 || b > cap)
    throw DimensionLimitError("channel_tensor: power " + std::to_string(b) +
                              " outside [1, " + std::to_string(cap) + "]");
  std::vector<ComplexMatrix> ops = n.kraus_ops();
  for (std::size_t i = 1; i < b; ++i) {
    std::vector<ComplexMatrix> next;
    next.reserve(ops.size() * n.kraus_ops().size());
    for (const auto& a : ops)
      for (const auto& k : n.kraus_ops()) next.push_back(kron(a, k));
    ops = std::move(next);
  }
  return KrausChannel(std::move(ops));
}

/// Parallel composition n1 ⊗ n2.
inline KrausChannel channel_product(const KrausChannel& n1, const KrausChannel& n2) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(n1.kraus_ops().size() * n2.kraus_ops().size());
  for (const auto& a : n1.kraus_ops())
    for (const auto& b : n2.kraus_ops()) ops.push_back(kron(a, b));
  return KrausChannel(std::move(ops));
}

}  // namespace qregion
