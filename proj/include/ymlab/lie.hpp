#ifndef YMLAB_LIE_HPP
#define YMLAB_LIE_HPP

#include <array>
#include <cmath>

namespace ymlab {

// Element of su(2) in the basis
//   s1 = diag(i, -i),  s2 = [[0, 1], [-1, 0]],  s3 = [[0, i], [i, 0]],
// which multiply like the quaternion units i, j, k. Every basis vector has
// Killing norm sqrt(2).
struct LieElement {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr LieElement() = default;
  constexpr LieElement(double a, double b, double d) : c{a, b, d} {}

  double& operator[](int a) { return c[a]; }
  double operator[](int a) const { return c[a]; }

  LieElement& operator+=(const LieElement& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
    return *this;
  }
  LieElement& operator*=(double s) {
    c[0] *= s; c[1] *= s; c[2] *= s;
    return *this;
  }

  static constexpr int dimension = 3;
  static LieElement basis(int a) {
    LieElement e;
    e.c[a] = 1.0;
    return e;
  }
};

inline LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
inline LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
inline LieElement operator-(const LieElement& a) { return {-a.c[0], -a.c[1], -a.c[2]}; }
inline LieElement operator*(double s, LieElement a) { return a *= s; }
inline LieElement operator*(LieElement a, double s) { return a *= s; }

// [B, C] = BC - CB. With the basis above [s_a, s_b] = 2 eps_abc s_c.
inline LieElement bracket(const LieElement& b, const LieElement& d) {
  return {2.0 * (b.c[1] * d.c[2] - b.c[2] * d.c[1]),
          2.0 * (b.c[2] * d.c[0] - b.c[0] * d.c[2]),
          2.0 * (b.c[0] * d.c[1] - b.c[1] * d.c[0])};
}

// <B, C> = -Tr(BC).
inline double killing_inner(const LieElement& b, const LieElement& d) {
  return 2.0 * (b.c[0] * d.c[0] + b.c[1] * d.c[1] + b.c[2] * d.c[2]);
}

inline double killing_norm2(const LieElement& b) { return killing_inner(b, b); }

// Quaternion w + x i + y j + z k, identified with the 2x2 matrix
// w I + x s1 + y s2 + z s3.
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  LieElement imag() const { return {x, y, z}; }
  static Quaternion pure(const LieElement& u) { return {0.0, u.c[0], u.c[1], u.c[2]}; }
};

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Quaternion operator*(double s, const Quaternion& a) {
  return {s * a.w, s * a.x, s * a.y, s * a.z};
}

// Element of SU(2), stored as a unit quaternion.
class GroupElement {
 public:
  GroupElement() = default;

  // Normalizes q; throws invalid_input if |q|^2 is not within `tolerance` of 1.
  static GroupElement from_quaternion(const Quaternion& q, double tolerance = 1e-9);
  // No normalization and no check; used for raw input that is validated later.
  static GroupElement unchecked(const Quaternion& q) {
    GroupElement g;
    g.q_ = q;
    return g;
  }

  const Quaternion& quaternion() const { return q_; }
  GroupElement inverse() const { return unchecked(q_.conj()); }

  // ||g* g - I||_F and |det g - 1|.
  double unitarity_defect() const;
  double det_defect() const;

  // Entries of the 2x2 matrix, row-major: {re, im} pairs.
  std::array<std::array<double, 2>, 4> matrix() const;

 private:
  Quaternion q_{};
};

// Product with renormalization.
GroupElement operator*(const GroupElement& a, const GroupElement& b);

GroupElement exp_map(const LieElement& u);

// g^{-1} B g. Throws invalid_input if g is not unitary to 1e-9.
LieElement adjoint(const GroupElement& g, const LieElement& b);

}  // namespace ymlab

#endif
