#include "symsector/qmat.hpp"

#include <bit>

namespace symsector {

CMatrix partial_trace(const Mat8& rho, unsigned keep) {
  require_hermitian(rho, "partial_trace");
  if (keep > 7u) throw ValidationError("partial_trace: unknown subsystem");
  const unsigned traced = 7u & ~keep;
  const int dk = 1 << std::popcount(keep);
  const int dt = 1 << std::popcount(traced);

  // scatter the bits of a compact index into the positions selected by mask
  auto spread = [](unsigned value, unsigned mask) {
    unsigned out = 0;
    int pos = std::popcount(mask) - 1;
    for (int bit = 2; bit >= 0; --bit) {
      if (!(mask & (1u << bit))) continue;
      if (value & (1u << pos)) out |= 1u << bit;
      --pos;
    }
    return out;
  };

  CMatrix out = CMatrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c)
      for (int k = 0; k < dt; ++k) {
        unsigned tk = spread(static_cast<unsigned>(k), traced);
        out(r, c) += rho(spread(r, keep) | tk, spread(c, keep) | tk);
      }
  return out;
}

double max_principal_angle(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("max_principal_angle: subspaces of different shape");
  Eigen::HouseholderQR<CMatrix> qa(a), qb(b);
  CMatrix ua = qa.householderQ() * CMatrix::Identity(a.rows(), a.cols());
  CMatrix ub = qb.householderQ() * CMatrix::Identity(b.rows(), b.cols());
  // sines from the residual keep small angles accurate; cosines take over near pi/2
  CMatrix resid = ub - ua * (ua.adjoint() * ub);
  double smax = Eigen::JacobiSVD<CMatrix>(resid).singularValues().maxCoeff();
  if (smax < 0.7) return std::asin(smax);
  double cmin = Eigen::JacobiSVD<CMatrix>(ua.adjoint() * ub).singularValues().minCoeff();
  return std::acos(std::clamp(cmin, -1.0, 1.0));
}

}  // namespace symsector
