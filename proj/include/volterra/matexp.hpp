#pragma once

#include <Eigen/Dense>

namespace volterra {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

/// Matrix exponential of a square matrix with finite entries.
Matrix expm(const Matrix& a);

/// Affine state map across a weight-w impulse driving x' = G x u + b u.
/// The post-impulse state is x_plus = j * x_minus + d.
struct ImpulseJump {
  Matrix j;
  Vector d;
};

/// Computes the jump map from the exponential of the augmented matrix
/// [[G, b], [0, 0]] scaled by the impulse weight.
ImpulseJump impulse_jump(const Matrix& g, const Vector& b, double w);

}  // namespace volterra
