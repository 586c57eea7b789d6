#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace symsector {

using cplx = std::complex<double>;

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;
using RMat4 = Eigen::Matrix4d;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx I1{0.0, 1.0};

// Bad input: non-Hermitian where Hermitian is required, zero parameters, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symsector
