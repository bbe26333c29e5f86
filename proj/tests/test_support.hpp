#pragma once

// Random instances and small independent oracles shared by the test suites.

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qregion/quantum_objects.hpp"

namespace qregion::testing {

using Rng = std::mt19937_64;

inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  return m;
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
inline ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) {
    const Complex ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

inline PureState random_pure(const DimList& dims, Rng& rng) {
  const ComplexMatrix v = ginibre(dims.total(), 1, rng);
  return PureState::normalized(v.col(0), dims);
}

/// Random mixed state of the given rank (full rank when rank == 0).
inline DensityOperator random_density(const DimList& dims, Rng& rng, std::size_t rank = 0) {
  const std::size_t d = dims.total();
  const ComplexMatrix g = ginibre(d, rank == 0 ? d : rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityOperator(m, dims);
}

/// Random CPTP map built from slices of a Haar isometry. The Kraus count is
/// raised to ceil(din/dout) when needed, since no isometry exists below it.
inline KrausChannel random_channel(std::size_t din, std::size_t dout, std::size_t kraus_count,
                                   Rng& rng) {
  kraus_count = std::max(kraus_count, (din + dout - 1) / dout);
  const ComplexMatrix u = haar_unitary(dout * kraus_count, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus_count; ++k)
    ops.push_back(u.block(static_cast<Eigen::Index>(k * dout), 0,
                          static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din)));
  return KrausChannel(std::move(ops));
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                        static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Frozen oracle values (20-digit evaluation of the closed forms):
//   H(5/8, 1/8, 1/8, 1/8) = 1.5487949406953985326
//   1 − H₂(ε/2) and 2 − H(1−3ε/4, ε/4, ε/4, ε/4) for ε = 0, ¼, ½, ¾, 1.
inline constexpr double kEntropyDepolHalf = 1.5487949406953985326;
inline constexpr double kChi[5] = {1.0, 0.45643555680040359401, 0.18872187554086713609,
                                   0.045565997075035035463, 0.0};
inline constexpr double kEa[5] = {2.0, 1.0066072709896373803, 0.45120505930460146742,
                                  0.11975918505585214907, 0.0};
inline constexpr double kEpsGrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace qregion::testing
