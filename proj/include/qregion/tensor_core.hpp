#pragma once

// Dense complex linear algebra over tensor-product spaces.
//
// Subsystem ordering follows the Kronecker convention: for dims (d0, d1, ...)
// subsystem 0 is the most significant index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qregion/errors.hpp"

namespace qregion {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::size_t kDefaultDimensionCap = 4096;
inline constexpr double kHermitianTol = 1e-8;
inline constexpr double kEigenResidualTol = 1e-9;

/// Ordered list of subsystem dimensions annotating a matrix or vector.
class DimList {
 public:
  DimList() = default;
  DimList(std::initializer_list<std::size_t> dims) : dims_(dims) { check(); }
  explicit DimList(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    check();
  }

  std::size_t size() const noexcept { return dims_.size(); }
  bool empty() const noexcept { return dims_.empty(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& values() const noexcept { return dims_; }

  std::size_t total() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           std::multiplies<>());
  }

  /// Product of the dimensions of the listed subsystems.
  std::size_t total(const std::vector<std::size_t>& subsystems) const {
    std::size_t p = 1;
    for (auto s : subsystems) p *= dims_.at(s);
    return p;
  }

  DimList with(std::size_t index, std::size_t dim) const {
    auto copy = dims_;
    copy.at(index) = dim;
    return DimList(std::move(copy));
  }

  DimList select(const std::vector<std::size_t>& subsystems) const {
    std::vector<std::size_t> out;
    out.reserve(subsystems.size());
    for (auto s : subsystems) out.push_back(dims_.at(s));
    return DimList(std::move(out));
  }

  friend DimList concat(const DimList& a, const DimList& b) {
    auto v = a.dims_;
    v.insert(v.end(), b.dims_.begin(), b.dims_.end());
    return DimList(std::move(v));
  }

  friend bool operator==(const DimList&, const DimList&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(dims_[i]);
    }
    return s + ")";
  }

 private:
  void check() const {
    for (auto d : dims_)
      if (d == 0) throw ShapeError("subsystem dimension must be >= 1");
  }

  std::vector<std::size_t> dims_;
};

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                 static_cast<Eigen::Index>(d));
}

/// Kronecker product a ⊗ b. Throws DimensionLimitError when either result
/// dimension exceeds `cap`.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t cap = kDefaultDimensionCap) {
  const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
  const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
  if (rows > cap || cols > cap)
    throw DimensionLimitError("kron result " + std::to_string(rows) + "x" +
                              std::to_string(cols) + " exceeds cap " +
                              std::to_string(cap));
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace detail {

// Splits every basis index of a multipartite space into the index within the
// kept subsystems and the index within the traced-out subsystems.
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
};

inline IndexSplit split_indices(const DimList& dims,
                                const std::vector<bool>& keep_mask) {
  IndexSplit s;
  const std::size_t n = dims.total();
  s.kept.resize(n);
  s.traced.resize(n);
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep_mask[k]) s.kept_dim *= dims[k];
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rem = idx;
    std::size_t kept = 0, traced = 0, kept_stride = 1, traced_stride = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      const std::size_t digit = rem % dims[k];
      rem /= dims[k];
      if (keep_mask[k]) {
        kept += digit * kept_stride;
        kept_stride *= dims[k];
      } else {
        traced += digit * traced_stride;
        traced_stride *= dims[k];
      }
    }
    s.kept[idx] = kept;
    s.traced[idx] = traced;
  }
  return s;
}

}  // namespace detail

/// Partial trace keeping the listed subsystems (in their original order).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const DimList& dims,
                                   const std::vector<std::size_t>& keep) {
  if (m.rows() != m.cols()) throw ShapeError("partial_trace: matrix not square");
  if (dims.empty() || dims.total() != static_cast<std::size_t>(m.rows()))
    throw ShapeError("partial_trace: dims " + dims.str() +
                     " do not factorize a " + std::to_string(m.rows()) +
                     "-dimensional matrix");
  std::vector<bool> mask(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size())
      throw ShapeError("partial_trace: subsystem index " + std::to_string(k) +
                       " out of range");
    mask[k] = true;
  }

  const auto split = detail::split_indices(dims, mask);
  const auto kd = static_cast<Eigen::Index>(split.kept_dim);
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  const auto n = static_cast<std::size_t>(m.rows());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (split.traced[r] == split.traced[c])
        out(static_cast<Eigen::Index>(split.kept[r]),
            static_cast<Eigen::Index>(split.kept[c])) +=
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

/// Reduced density matrix of a pure state vector on the kept subsystems.
/// Equivalent to partial_trace(|v><v|, ...) without forming the projector.
inline ComplexMatrix partial_trace_pure(const ComplexVector& v,
                                        const DimList& dims,
                                        const std::vector<std::size_t>& keep) {
  if (dims.total() != static_cast<std::size_t>(v.size()))
    throw ShapeError("partial_trace_pure: dims " + dims.str() +
                     " do not factorize the vector");
  std::vector<bool> mask(dims.size(), false);
  for (auto k : keep) mask.at(k) = true;
  const auto split = detail::split_indices(dims, mask);
  const std::size_t traced_dim = dims.total() / split.kept_dim;
  // Reshape into kept x traced, then M M^dagger.
  ComplexMatrix mat = ComplexMatrix::Zero(
      static_cast<Eigen::Index>(split.kept_dim),
      static_cast<Eigen::Index>(traced_dim));
  for (std::size_t idx = 0; idx < split.kept.size(); ++idx)
    mat(static_cast<Eigen::Index>(split.kept[idx]),
        static_cast<Eigen::Index>(split.traced[idx])) =
        v(static_cast<Eigen::Index>(idx));
  return mat * mat.adjoint();
}

/// Hermitian spectral decomposition with the tolerance checks applied.
struct HermitianEigen {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns match `values`
};

namespace detail {

inline double hermitian_defect(const ComplexMatrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

// Eigenvalues of the Hermitian part, ascending, no validation.
inline RealVector eigvals_unchecked(const ComplexMatrix& h) {
  if (h.rows() == 1) return RealVector::Constant(1, h(0, 0).real());
  if (h.rows() == 2) {
    // Closed form for 2x2 keeps optimizer inner loops cheap.
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(b));
    RealVector out(2);
    out << mean - rad, mean + rad;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace detail

inline HermitianEigen herm_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw ShapeError("herm_eig: matrix must be square and nonempty");
  if (!all_finite(h)) throw DomainError("herm_eig: non-finite entries");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success)
    throw DomainError("herm_eig: eigensolver failed");
  const double spectral_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double defect = detail::hermitian_defect(h);
  if (defect > kHermitianTol * spectral_norm)
    throw DomainError("herm_eig: matrix is not Hermitian (defect " +
                      std::to_string(defect) + ")");

  HermitianEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  const ComplexMatrix recon =
      out.vectors * out.values.cast<Complex>().asDiagonal() *
      out.vectors.adjoint();
  const double residual = (recon - sym).norm();
  if (residual > kEigenResidualTol * std::max(1.0, spectral_norm))
    throw DomainError("herm_eig: reconstruction residual " +
                      std::to_string(residual) + " too large");
  return out;
}

/// Real eigenvalues of a Hermitian matrix in descending order.
inline RealVector herm_eigvals(const ComplexMatrix& h) {
  return herm_eig(h).values;
}

/// Normalized trace distance ½‖a − b‖₁ between two Hermitian matrices.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("trace_distance: dimension mismatch");
  // Fixed operand order makes the result bitwise symmetric.
  const auto key = [](const Complex& z) { return std::pair{z.real(), z.imag()}; };
  const bool swap = std::lexicographical_compare(
      b.data(), b.data() + b.size(), a.data(), a.data() + a.size(),
      [&](const Complex& x, const Complex& y) { return key(x) < key(y); });
  return 0.5 * herm_eigvals(swap ? ComplexMatrix(b - a) : ComplexMatrix(a - b)).cwiseAbs().sum();
}

}  // namespace qregion
