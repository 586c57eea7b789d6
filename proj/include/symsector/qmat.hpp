#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "symsector/types.hpp"

namespace symsector {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPivotTol = 1e-9;

namespace detail {

constexpr int product_dim(int a, int b) {
  return (a == Eigen::Dynamic || b == Eigen::Dynamic) ? Eigen::Dynamic : a * b;
}

// Real-scalar matrices have a trivial complex conjugation; keep one code path.
template <typename Scalar>
Scalar unit_phase_of(Scalar v) {
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    double a = std::abs(v);
    return a > 0 ? v / a : Scalar(1);
  } else {
    return v < 0 ? Scalar(-1) : Scalar(1);
  }
}

}  // namespace detail

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                      typename DB::Scalar>::ReturnType;
  constexpr int R = detail::product_dim(DA::RowsAtCompileTime, DB::RowsAtCompileTime);
  constexpr int C = detail::product_dim(DA::ColsAtCompileTime, DB::ColsAtCompileTime);
  Eigen::Matrix<Scalar, R, C> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Scalar(a(i, j)) * b.template cast<Scalar>();
  return out;
}

template <typename DA, typename DB, typename DC>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
          const Eigen::MatrixBase<DC>& c) {
  return kron(a, kron(b, c));
}

// ||M - M^dagger||_F / ||M||_F, zero for the zero matrix.
template <typename D>
double hermitian_defect(const Eigen::MatrixBase<D>& m) {
  double n = m.norm();
  return n > 0 ? (m - m.adjoint()).norm() / n : 0.0;
}

template <typename D>
double skew_defect(const Eigen::MatrixBase<D>& m) {
  double n = m.norm();
  return n > 0 ? (m + m.adjoint()).norm() / n : 0.0;
}

template <typename D>
double unitary_defect(const Eigen::MatrixBase<D>& u) {
  using Plain = typename D::PlainObject;
  return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).norm();
}

template <typename D>
void require_hermitian(const Eigen::MatrixBase<D>& m, const char* what) {
  if (m.rows() != m.cols()) throw ValidationError(std::string(what) + ": matrix is not square");
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
  if (hermitian_defect(m) > kHermitianTol)
    throw ValidationError(std::string(what) + ": matrix is not Hermitian");
}

template <typename MatrixType>
struct HermEig {
  Eigen::Matrix<double, MatrixType::RowsAtCompileTime, 1> values;  // descending
  MatrixType vectors;                                               // columns
};

// Eigenvalues descending; vectors inside a degenerate cluster are re-orthonormalized in
// index order and every vector's largest entry is made real positive, so equal inputs
// give equal outputs.
template <typename D>
HermEig<typename D::PlainObject> herm_eig(const Eigen::MatrixBase<D>& m) {
  using Plain = typename D::PlainObject;
  using Scalar = typename D::Scalar;
  require_hermitian(m, "herm_eig");
  Plain h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver failed");
  const Eigen::Index n = h.rows();
  HermEig<Plain> out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && std::abs(out.values(stop) - out.values(start)) < 1e-9 * scale) ++stop;
    for (Eigen::Index k = start; k < stop; ++k) {
      for (Eigen::Index j = start; j < k; ++j)
        out.vectors.col(k) -= out.vectors.col(j).dot(out.vectors.col(k)) * out.vectors.col(j);
      out.vectors.col(k).normalize();
    }
    start = stop;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index imax = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      double a = std::abs(out.vectors(i, k));
      if (a > best + 1e-12) best = a, imax = i;
    }
    Scalar ph = detail::unit_phase_of(out.vectors(imax, k));
    out.vectors.col(k) *= Eigen::numext::conj(ph);
  }
  return out;
}

// e^{F t} for skew-Hermitian F through the spectrum of the Hermitian matrix iF.
template <typename D>
auto expm_skew(const Eigen::MatrixBase<D>& f, double t) {
  using Out = Eigen::Matrix<cplx, D::RowsAtCompileTime, D::ColsAtCompileTime>;
  if (f.rows() != f.cols()) throw ValidationError("expm_skew: matrix is not square");
  if (skew_defect(f) > kHermitianTol) throw ValidationError("expm_skew: matrix is not skew-Hermitian");
  Out h = I1 * f.template cast<cplx>();
  h = (h + h.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Out> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("expm_skew: eigensolver failed");
  auto phases = (-I1 * t * es.eigenvalues().template cast<cplx>()).array().exp().matrix();
  Out r = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return r;
}

template <typename Real>
struct RrefResult {
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> reduced;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> transform;  // transform * M == reduced
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

// Gauss-Jordan with partial pivoting; the accumulated row operations are returned too.
template <typename D>
RrefResult<typename D::Scalar> rref_with_transform(const Eigen::MatrixBase<D>& m) {
  using Real = typename D::Scalar;
  static_assert(!Eigen::NumTraits<Real>::IsComplex, "rref expects a real matrix");
  RrefResult<Real> out;
  out.reduced = m;
  out.transform = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Identity(m.rows(), m.rows());
  auto& a = out.reduced;
  auto& t = out.transform;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv;
    Real best = a.col(col).tail(a.rows() - row).cwiseAbs().maxCoeff(&piv);
    piv += row;
    if (best <= kPivotTol) {
      a.col(col).tail(a.rows() - row).setZero();
      continue;
    }
    a.row(row).swap(a.row(piv));
    t.row(row).swap(t.row(piv));
    Real p = a(row, col);
    a.row(row) /= p;
    t.row(row) /= p;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      Real f = a(r, col);
      if (f == Real(0)) continue;
      a.row(r) -= f * a.row(row);
      t.row(r) -= f * t.row(row);
    }
    a(row, col) = Real(1);
    out.pivots.push_back(col);
    ++row;
  }
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(a.data()[i]) <= kPivotTol * 1e-3) a.data()[i] = Real(0);
  return out;
}

template <typename D>
auto rref(const Eigen::MatrixBase<D>& m) {
  return rref_with_transform(m).reduced;
}

enum Subsystem : unsigned { QubitA = 4u, QubitB = 2u, QubitC = 1u };

// Reduced density matrix on the kept qubits (bit mask of Subsystem values); qubit A is
// the most significant index bit.
CMatrix partial_trace(const Mat8& rho, unsigned keep);

// Largest principal angle between the column spans of a and b (equal dimension).
double max_principal_angle(const CMatrix& a, const CMatrix& b);

// |<a|b>|^2 / (|a|^2 |b|^2)
template <typename DA, typename DB>
double fidelity(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0 || nb == 0) return 0.0;
  return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace symsector
