#include "ymlab/lie.hpp"

#include "ymlab/error.hpp"

#include <cmath>
#include <sstream>

namespace ymlab {

namespace {

Quaternion normalized(const Quaternion& q) {
  const double n = std::sqrt(q.norm2());
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

}  // namespace

GroupElement GroupElement::from_quaternion(const Quaternion& q, double tolerance) {
  const double n2 = q.norm2();
  if (!(std::abs(n2 - 1.0) <= tolerance)) {
    std::ostringstream os;
    os << "quaternion is not a unit quaternion (|q|^2 = " << n2 << ")";
    fail(ErrorCode::invalid_input, os.str());
  }
  return unchecked(normalized(q));
}

double GroupElement::unitarity_defect() const {
  // g* g = |q|^2 I for the quaternion embedding.
  return std::sqrt(2.0) * std::abs(q_.norm2() - 1.0);
}

double GroupElement::det_defect() const { return std::abs(q_.norm2() - 1.0); }

std::array<std::array<double, 2>, 4> GroupElement::matrix() const {
  const auto& q = q_;
  return {{{q.w, q.x}, {q.y, q.z}, {-q.y, q.z}, {q.w, -q.x}}};
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement::unchecked(normalized(a.quaternion() * b.quaternion()));
}

GroupElement exp_map(const LieElement& u) {
  // U^2 = -|u|^2 I, so exp(U) = cos|u| I + sin|u| U/|u|.
  const double theta = std::sqrt(u.c[0] * u.c[0] + u.c[1] * u.c[1] + u.c[2] * u.c[2]);
  if (theta < 1e-8) {
    // sin(t)/t = 1 - t^2/6 + O(t^4)
    const double s = 1.0 - theta * theta / 6.0;
    return GroupElement::unchecked(
        normalized({std::cos(theta), s * u.c[0], s * u.c[1], s * u.c[2]}));
  }
  const double s = std::sin(theta) / theta;
  return GroupElement::unchecked(
      normalized({std::cos(theta), s * u.c[0], s * u.c[1], s * u.c[2]}));
}

LieElement adjoint(const GroupElement& g, const LieElement& b) {
  const Quaternion& q = g.quaternion();
  if (!(std::abs(q.norm2() - 1.0) <= 1e-9)) {
    fail(ErrorCode::invalid_input, "adjoint: group element is not unitary");
  }
  return (q.conj() * Quaternion::pure(b) * q).imag();
}

}  // namespace ymlab
