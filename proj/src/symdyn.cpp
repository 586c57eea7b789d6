#include "symsector/symdyn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "symsector/qmat.hpp"

namespace symsector {

namespace {

const double kS3 = std::sqrt(3.0);

Generators build_generators() {
  Generators g;
  g.sx << 0, kS3 * I1, 0, 0,  //
      kS3 * I1, 0, 2.0 * I1, 0,  //
      0, 2.0 * I1, 0, kS3 * I1,  //
      0, 0, kS3 * I1, 0;
  g.sx /= 2.0;
  g.sy << 0, -kS3, 0, 0,  //
      kS3, 0, -2, 0,  //
      0, 2, 0, -kS3,  //
      0, 0, kS3, 0;
  g.sy /= 2.0;
  g.sz = Vec4(3.0 * I1, I1, -I1, -3.0 * I1).asDiagonal();
  g.sz /= 2.0;
  g.hzz4 = Vec4(3, -1, -1, 3).asDiagonal();
  g.j << 0, 0, 0, 1,  //
      0, 0, -1, 0,  //
      0, 1, 0, 0,  //
      -1, 0, 0, 0;
  g.r << 0, 1, 0, 0,  //
      -1, 0, -kS3, 0,  //
      0, kS3, 0, 1,  //
      0, 0, -1, 0;
  g.h = Vec4(0, I1 / 2.0, -I1 / 2.0, 0).asDiagonal();
  return g;
}

LieImages build_images() {
  LieImages m;
  m.jx << 0, 0, 0, 1,  //
      0, 0, 1, 0,  //
      0, -1, 0, 0,  //
      -1, 0, 0, 0;
  m.jy << 0, 1, 0, 0,  //
      -1, 0, 0, 0,  //
      0, 0, 0, 1,  //
      0, 0, -1, 0;
  m.jz << 0, 0, 1, 0,  //
      0, 0, 0, -1,  //
      -1, 0, 0, 0,  //
      0, 1, 0, 0;
  m.jx /= 2;
  m.jy /= 2;
  m.jz /= 2;
  return m;
}

RMat4 form() { return generators().j.real(); }

// Basis of the real algebra commuting with J and the matching 2x2 complex matrices.
struct AlgebraBasis {
  std::array<RMat4, 8> big;
  std::array<Mat2, 8> small;
};

const AlgebraBasis& algebra_basis() {
  static const AlgebraBasis b = [] {
    const LieImages& m = lie_images();
    const RMat4 j = form();
    const Mat2 sx = (Mat2() << 0, 1, 1, 0).finished();
    const Mat2 sy = (Mat2() << 0, -I1, I1, 0).finished();  // textbook sign here
    const Mat2 sz = (Mat2() << 1, 0, 0, -1).finished();
    AlgebraBasis out;
    out.big = {RMat4::Identity(), j, 2 * m.jx, 2 * m.jy, 2 * m.jz, j * (2 * m.jx), j * (2 * m.jy), j * (2 * m.jz)};
    out.small = {Mat2::Identity(), I1 * Mat2::Identity(), I1 * sx, I1 * sy, I1 * sz, -sx, -sy, -sz};
    return out;
  }();
  return b;
}

double wrap_pi(double a) {
  double r = std::remainder(a, 2 * M_PI);
  return r <= -M_PI ? r + 2 * M_PI : r;
}

}  // namespace

const Generators& generators() {
  static const Generators g = build_generators();
  return g;
}

const LieImages& lie_images() {
  static const LieImages m = build_images();
  return m;
}

Mat2 to_u2(const Mat4& l) {
  const AlgebraBasis& b = algebra_basis();
  const RMat4 re = l.real();
  Mat2 u = Mat2::Zero();
  for (int k = 0; k < 8; ++k) u += (b.big[k].cwiseProduct(re).sum() / 4.0) * b.small[k];
  return u;
}

Mat4 from_u2(const Mat2& u) {
  const AlgebraBasis& b = algebra_basis();
  RMat4 out = RMat4::Zero();
  for (int k = 0; k < 8; ++k) {
    // coefficients are real because {small} is a real basis of M2(C)
    double c = (b.small[k].adjoint() * u).trace().real() / 2.0;
    out += c * b.big[k];
  }
  return out.cast<cplx>();
}

bool is_in_S(const Mat4& f, double tol) {
  const Mat4 j = generators().j;
  return (f * j + j * f.transpose()).norm() < tol;
}

bool in_complement(const Mat4& f, double tol) {
  const Mat4 j = generators().j;
  return (f - j * f.transpose() * j.inverse()).norm() < tol;
}

bool in_sp_group(const Mat4& k, double tol) {
  const Mat4 j = generators().j;
  return unitary_defect(k) < tol && (k * j * k.transpose() - j).norm() < tol;
}

bool in_l_group(const Mat4& l, double tol) {
  return l.imag().norm() < tol && in_sp_group(l, tol);
}

Mat4 project_S(const Mat4& f) {
  const Mat4 j = generators().j;
  return (f + j * f.transpose() * j) / 2.0;
}

Mat4 project_complement(const Mat4& f) {
  const Mat4 j = generators().j;
  return (f - j * f.transpose() * j) / 2.0;
}

Mat4 a_factor(double z, double w) {
  Vec4 d(std::exp(I1 * (z + 3 * w)), std::exp(I1 * (z - w)), std::exp(I1 * (z - w)),
         std::exp(I1 * (z + 3 * w)));
  return d.asDiagonal();
}

namespace {

Vec4 unit(int k) {
  Vec4 e = Vec4::Zero();
  e(k) = 1.0;
  return e;
}

struct Eigenspace {
  cplx value;
  CMatrix basis;  // orthonormal columns
  Vec4 project(const Vec4& v) const { return basis * (basis.adjoint() * v); }
};

// Group eigenvectors of a normal matrix into eigenspaces of (numerically) equal eigenvalue.
std::vector<Eigenspace> group_eigenspaces(const Eigen::Vector4cd& values, const Mat4& vectors,
                                          double tol) {
  std::vector<Eigenspace> out;
  std::vector<bool> used(4, false);
  for (int i = 0; i < 4; ++i) {
    if (used[i]) continue;
    std::vector<int> idx{i};
    used[i] = true;
    for (int k = i + 1; k < 4; ++k)
      if (!used[k] && std::abs(values(k) - values(i)) < tol) idx.push_back(k), used[k] = true;
    Eigenspace e;
    e.value = 0;
    e.basis.resize(4, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      e.basis.col(c) = vectors.col(idx[c]);
      e.value += values(idx[c]);
    }
    e.value /= double(idx.size());
    Eigen::HouseholderQR<CMatrix> qr(e.basis);
    e.basis = qr.householderQ() * CMatrix::Identity(4, idx.size());
    out.push_back(e);
  }
  return out;
}

// Pick the eigenspace holding most of the seeds; return the seed's normalized projection.
Vec4 seeded_vector(const std::vector<Eigenspace>& spaces, const std::vector<Vec4>& exclude,
                   const std::array<int, 2>& seeds, int& seed_used) {
  double best = -1;
  Vec4 out = Vec4::Zero();
  for (int s : seeds)
    for (const Eigenspace& e : spaces) {
      Vec4 v = e.project(unit(s));
      for (const Vec4& x : exclude) v -= x.dot(v) * x;
      v = e.project(v);
      if (v.norm() > best + 1e-12) best = v.norm(), out = v, seed_used = s;
    }
  if (best < 1e-6) throw NumericalError("spectral step found no usable eigenvector");
  return out.normalized();
}

Mat4 random_sp(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0, 1);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) g(i, k) = cplx(n(gen), n(gen));
  Mat4 f = project_S(Mat4((g - g.adjoint()) / 2.0));
  return expm_skew(f, 1.0);
}

struct OuterAttempt {
  bool ok = false;
  OuterKak result;
};

OuterAttempt outer_once(const Mat4& u) {
  const Mat4 j = generators().j;
  Mat4 w = u * j * u.transpose() * j.transpose();
  Eigen::ComplexSchur<Mat4> schur(w);
  Eigen::Vector4cd values = schur.matrixT().diagonal();
  Mat4 vectors = schur.matrixU();

  auto spaces = group_eigenspaces(values, vectors, 1e-7);
  // expect two doublets or one quadruplet
  for (const auto& s : spaces)
    if (s.basis.cols() % 2 != 0) return {};

  Mat4 k1;
  int seed = 0;
  if (spaces.size() == 1) {
    k1 = Mat4::Identity();
  } else {
    Vec4 u1 = seeded_vector(spaces, {}, {0, 3}, seed);
    Vec4 u4;
    if (seed == 0) {
      u4 = -j * u1.conjugate();
    } else {
      u4 = u1;
      u1 = j * u4.conjugate();
    }
    Vec4 u2 = seeded_vector(spaces, {u1, u4}, {1, 2}, seed);
    Vec4 u3;
    if (seed == 1) {
      u3 = j * u2.conjugate();
    } else {
      u3 = u2;
      u2 = -j * u3.conjugate();
    }
    k1 << u1, u2, u3, u4;
  }
  Mat4 d = k1.adjoint() * w * k1;
  Mat4 off = d;
  off.diagonal().setZero();
  if (off.norm() > 1e-7) return {};

  const cplx mu_a = (d(0, 0) + d(3, 3)) / 2.0, mu_b = (d(1, 1) + d(2, 2)) / 2.0;
  const double alpha = std::arg(mu_a) / 2, beta = std::arg(mu_b) / 2;

  // alpha and beta are fixed mod pi (sign flips live in the symplectic group); choose the
  // representative with z in (-pi/4, pi/4], w in (-pi/2, pi/2], smallest |w|
  double best_z = 0, best_w = 0, best_key = 1e9;
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      double a = alpha + m * M_PI, b = beta + n * M_PI;
      double z = (a + 3 * b) / 4, ww = (a - b) / 4;
      if (!(z > -M_PI / 4 + 1e-12 && z <= M_PI / 4 + 1e-12)) continue;
      if (!(ww > -M_PI / 2 + 1e-12 && ww <= M_PI / 2 + 1e-12)) continue;
      double key = std::abs(ww) + (ww < 0 ? 1e-9 : 0);
      if (key < best_key - 1e-12) best_key = key, best_z = z, best_w = ww;
    }

  OuterAttempt out;
  out.result.k1 = k1;
  out.result.z = best_z;
  out.result.w = best_w;
  out.result.k2 = a_factor(best_z, best_w).adjoint() * k1.adjoint() * u;
  out.ok = in_sp_group(out.result.k1) && in_sp_group(out.result.k2) &&
           (k1 * a_factor(best_z, best_w) * out.result.k2 - u).norm() < 1e-9;
  return out;
}

}  // namespace

OuterKak kak_outer(const Mat4& u, std::uint64_t seed) {
  if (!u.allFinite() || unitary_defect(u) > 1e-10) throw ValidationError("kak_outer: input is not unitary");
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    // attempts after the first factor S U for a random S in the symplectic group
    Mat4 s = attempt == 0 ? Mat4::Identity() : random_sp(gen);
    OuterAttempt a = outer_once(s * u);
    if (!a.ok) continue;
    a.result.k1 = s.adjoint() * a.result.k1;
    return a.result;
  }
  throw NumericalError("kak_outer: spectral factorization failed after 3 attempts");
}

InnerKak kak_inner(const Mat4& k) {
  if (!k.allFinite() || !in_sp_group(k)) throw ValidationError("kak_inner: input is not in the symplectic group");
  const RMat4 j = form();
  Mat4 v = k * k.transpose();
  const RMat4 vr = (v.real() + v.real().transpose()) / 2, vi = (v.imag() + v.imag().transpose()) / 2;

  // real orthonormal joint eigenbasis of the commuting pair (Re V, Im V)
  Eigen::SelfAdjointEigenSolver<RMat4> er(vr);
  RMat4 q = er.eigenvectors();
  Eigen::Vector4d rv = er.eigenvalues();
  for (int start = 0; start < 4;) {
    int stop = start + 1;
    while (stop < 4 && std::abs(rv(stop) - rv(start)) < 1e-8) ++stop;
    const int n = stop - start;
    if (n > 1) {
      Eigen::MatrixXd block = q.middleCols(start, n);
      Eigen::MatrixXd sub = block.transpose() * vi * block;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ei((sub + sub.transpose()) / 2);
      q.middleCols(start, n) = block * ei.eigenvectors();
    }
    start = stop;
  }
  Eigen::Vector4cd values;
  for (int c = 0; c < 4; ++c) values(c) = (q.col(c).transpose().cast<cplx>() * v * q.col(c).cast<cplx>())(0, 0);

  auto spaces = group_eigenspaces(values, q.cast<cplx>(), 1e-7);
  for (auto& s : spaces) s.basis = s.basis.real().cast<cplx>();  // real up to the QR sign choice
  int seed = 0;
  Vec4 o1 = seeded_vector(spaces, {}, {0, 3}, seed).real().cast<cplx>();
  Vec4 o4;
  if (seed == 0) {
    o4 = -j.cast<cplx>() * o1;
  } else {
    o4 = o1;
    o1 = j.cast<cplx>() * o4;
  }
  Vec4 o2 = seeded_vector(spaces, {o1, o4}, {1, 2}, seed).real().cast<cplx>();
  Vec4 o3;
  if (seed == 1) {
    o3 = j.cast<cplx>() * o2;
  } else {
    o3 = o2;
    o2 = -j.cast<cplx>() * o3;
  }
  Mat4 o;
  o << o1, o2, o3, o4;
  Mat4 d = o.transpose() * v * o;
  const cplx p = std::sqrt(d(0, 0)), qv = std::sqrt(d(1, 1));
  InnerKak out;
  out.x = 2.0 * std::arg(p) / 3.0;
  out.y = 2.0 * std::arg(qv) - out.x;
  const Vec4 ahat(p, qv, std::conj(qv), std::conj(p));
  out.l1 = o;
  out.l2 = ahat.cwiseInverse().asDiagonal() * o.transpose() * k;
  if (!in_l_group(out.l1) || !in_l_group(out.l2) ||
      (out.l1 * Mat4(ahat.asDiagonal()) * out.l2 - k).norm() > 1e-9)
    throw NumericalError("kak_inner: factorization failed");
  out.l2 = out.l2.real().cast<cplx>();
  return out;
}

namespace {

// Rotation parameters of exp(G t) in U(2): e^{i phase t} exp(-i rate t axis . sigma).
struct AxisRate {
  Eigen::Vector3d axis;
  double rate, phase;
};

AxisRate axis_rate(const Mat4& g) {
  const LieImages& m = lie_images();
  const RMat4 re = g.real();
  double cj = form().cwiseProduct(re).sum() / 4.0;
  Eigen::Vector3d c(m.jx.cwiseProduct(re).sum(), m.jy.cwiseProduct(re).sum(), m.jz.cwiseProduct(re).sum());
  // c . (i sigma / 2) = -i (|c|/2) (-c/|c|) . sigma
  return {-c.normalized(), c.norm() / 2.0, cj};
}

// unit quaternion (w, x, y, z) <-> w 1 - i (x sx + y sy + z sz)
Mat2 su2_of(const Eigen::Quaterniond& q) {
  Mat2 out;
  out << cplx(q.w(), -q.z()), cplx(-q.y(), -q.x()), cplx(q.y(), -q.x()), cplx(q.w(), q.z());
  return out;
}

}  // namespace

Mat4 euler_matrix(const EulerAngles& a) {
  const Generators& g = generators();
  return expm_skew(g.sy, a.t1) * expm_skew(g.r, a.t2) * expm_skew(g.sy, a.t3) * expm_skew(g.j, a.t4);
}

EulerAngles euler_L(const Mat4& l) {
  if (!l.allFinite() || !in_l_group(l)) throw ValidationError("euler_L: input is not in e^L");
  const Generators& g = generators();
  const AxisRate ay = axis_rate(g.sy), ar = axis_rate(g.r);
  const Mat2 u = to_u2(l);
  const double phi = std::arg(u.determinant()) / 2;
  const Mat2 su = u * std::exp(-I1 * phi);

  // frame with the Sy axis along z and the R axis in the xz half-plane x > 0
  const Eigen::Vector3d a = ay.axis, b = ar.axis;
  const double cosc = a.dot(b);
  const double sinc = std::sqrt(std::max(0.0, 1 - cosc * cosc));
  Eigen::Matrix3d frame;
  frame.row(2) = a.transpose();
  frame.row(0) = ((b - cosc * a) / sinc).transpose();
  frame.row(1) = frame.row(2).cross(frame.row(0));
  const Mat2 v = su2_of(Eigen::Quaterniond(frame));
  const Mat2 gp = v * su * v.adjoint();

  // gp = exp(-i al sz) exp(-i be (sinc sx + cosc sz)) exp(-i ga sz)
  const cplx g11 = gp(0, 0), g21 = gp(1, 0);
  double s = std::abs(g21) / sinc;
  if (s > 1 + 1e-12) throw NumericalError("euler_L: element is outside the reach of the Sy-R-Sy form");
  s = std::min(s, 1.0);
  double al, be, ga;
  if (std::abs(g21) < 1e-13) {
    be = 0;
    ga = 0;
    al = -std::arg(g11);
  } else {
    be = std::asin(s);
    double sum = std::arg(cplx(std::cos(be), -std::sin(be) * cosc)) - std::arg(g11);
    double diff = std::arg(g21) + M_PI / 2;
    al = (sum + diff) / 2;
    ga = (sum - diff) / 2;
  }
  EulerAngles out;
  out.t1 = wrap_pi(al / ay.rate);
  out.t2 = be / ar.rate;
  out.t3 = wrap_pi(ga / ay.rate);
  // remaining central phase
  Mat4 head = expm_skew(g.sy, out.t1) * expm_skew(g.r, out.t2) * expm_skew(g.sy, out.t3);
  Mat2 rest = to_u2(Mat4(head.transpose() * l));
  out.t4 = std::arg(rest.trace());
  if ((euler_matrix(out) - l).norm() > 1e-9) throw NumericalError("euler_L: reassembly check failed");
  return out;
}

std::string_view factor_name(Factor f) {
  switch (f) {
    case Factor::Sy: return "Sy";
    case Factor::R: return "R";
    case Factor::J: return "J";
    case Factor::Sz: return "Sz";
    case Factor::H: return "H";
    case Factor::Phase: return "phase";
    case Factor::Hzz: return "Hzz";
  }
  return "?";
}

bool changes_entanglement(Factor f) {
  return f == Factor::R || f == Factor::J || f == Factor::H || f == Factor::Hzz;
}

Mat4 factor_matrix(Factor f, double angle) {
  const Generators& g = generators();
  switch (f) {
    case Factor::Sy: return expm_skew(g.sy, angle);
    case Factor::R: return expm_skew(g.r, angle);
    case Factor::J: return expm_skew(g.j, angle);
    case Factor::Sz: return expm_skew(g.sz, angle);
    case Factor::H: return expm_skew(g.h, angle);
    case Factor::Phase: return a_factor(angle, 0);
    case Factor::Hzz: return a_factor(0, angle);
  }
  return Mat4::Identity();
}

Mat4 k_matrix(const std::array<double, 10>& t) {
  Mat4 out = Mat4::Identity();
  for (int s = 0; s < 10; ++s) out = out * factor_matrix(kKSlots[s], t[s]);
  return out;
}

Mat4 reassemble(const FactoredEvolution& f) { return k_matrix(f.k1) * a_factor(f.z, f.w) * k_matrix(f.k2); }

Mat4 preserving_part(const FactoredEvolution& f) {
  Mat4 out = Mat4::Identity();
  auto take = [&](const std::array<double, 10>& t) {
    for (int s = 0; s < 10; ++s)
      if (!changes_entanglement(kKSlots[s])) out = out * factor_matrix(kKSlots[s], t[s]);
  };
  take(f.k1);
  out = out * factor_matrix(Factor::Phase, f.z);
  take(f.k2);
  return out;
}

namespace {

// element of SU(2) x SU(2) acting on span{e1, e4} and span{e2, e3}; commutes with every A
Mat4 random_centralizer(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0, 1);
  auto su2 = [&] {
    Eigen::Quaterniond q(n(gen), n(gen), n(gen), n(gen));
    q.normalize();
    return su2_of(q);
  };
  Mat2 g1 = su2(), g2 = su2();
  Mat4 m = Mat4::Zero();
  m(0, 0) = g1(0, 0), m(0, 3) = g1(0, 1), m(3, 0) = g1(1, 0), m(3, 3) = g1(1, 1);
  m(1, 1) = g2(0, 0), m(1, 2) = g2(0, 1), m(2, 1) = g2(1, 0), m(2, 2) = g2(1, 1);
  return m;
}

bool split_k(const Mat4& k, std::array<double, 10>& t) {
  InnerKak in = kak_inner(k);
  EulerAngles e1, e2;
  try {
    e1 = euler_L(in.l1);
    e2 = euler_L(in.l2);
  } catch (const NumericalError&) {
    return false;
  }
  // J is central in L, so e^{J t} can lead the second block
  t = {e1.t1, e1.t2, e1.t3, e1.t4, in.x, in.y, e2.t4, e2.t1, e2.t2, e2.t3};
  return true;
}

}  // namespace

FactoredEvolution factorize_full(const Mat4& u, std::uint64_t seed) {
  OuterKak outer = kak_outer(u, seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  constexpr int kMaxGauge = 200;
  for (int attempt = 0; attempt < kMaxGauge; ++attempt) {
    // U = (K1 M) A (M^-1 K2) for M in the centralizer of A; M = 1 first
    Mat4 m = attempt == 0 ? Mat4::Identity() : random_centralizer(gen);
    FactoredEvolution f;
    if (!split_k(outer.k1 * m, f.k1) || !split_k(m.adjoint() * outer.k2, f.k2)) continue;
    f.z = outer.z;
    f.w = outer.w;
    f.gauge_attempts = attempt + 1;
    f.fidelity = std::pow(std::abs((u.adjoint() * reassemble(f)).trace()) / 4.0, 2);
    if (f.fidelity < 1 - 1e-8) throw NumericalError("factorize_full: reassembly check failed");
    return f;
  }
  throw NumericalError("factorize_full: no gauge choice reached the Sy-R-Sy form");
}

}  // namespace symsector
