#include "volterra/matexp.hpp"

#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace volterra {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  if (a.rows() == 0) {
    throw std::invalid_argument("expm: empty matrix");
  }
  require_finite(a, "expm");
  return a.exp();
}

ImpulseJump impulse_jump(const Matrix& g, const Vector& b, double w) {
  const auto n = g.rows();
  if (g.cols() != n) {
    throw std::invalid_argument("impulse_jump: G must be square");
  }
  if (b.size() != n) {
    throw std::invalid_argument("impulse_jump: b dimension mismatch");
  }
  require_finite(g, "impulse_jump G");
  require_finite(b, "impulse_jump b");
  if (!std::isfinite(w)) {
    throw std::invalid_argument("impulse_jump: weight must be finite");
  }

  Matrix m = Matrix::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = g;
  m.topRightCorner(n, 1) = b;

  const Matrix e = expm(w * m);
  ImpulseJump jump;
  jump.j = e.topLeftCorner(n, n);
  jump.d = e.topRightCorner(n, 1);
  return jump;
}

}  // namespace volterra
