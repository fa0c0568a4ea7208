#ifndef MCDECK_TRANSFORM_HPP
#define MCDECK_TRANSFORM_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mcdeck {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// 3x3 matrix, row-major. Rows of a transform-card matrix hold the auxiliary
// axes expressed in the main system (MCNP tr-card layout b1..b9).
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static Mat3 identity() { return {}; }
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);

  std::array<double, 3>& operator[](std::size_t r) { return m[r]; }
  const std::array<double, 3>& operator[](std::size_t r) const { return m[r]; }

  Vec3 row(std::size_t r) const { return {m[r][0], m[r][1], m[r][2]}; }
  Mat3 transposed() const;
  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& v) const;
  double det() const;

  // Max absolute elementwise deviation from another matrix.
  double distance(const Mat3& o) const;
  bool is_orthonormal(double tol) const;
};

// Rigid transform in MCNP card form: rotation matrix M (rows = aux axes in
// the main frame) plus displacement T (aux origin in the main frame).
// A point with coordinates p in the auxiliary system sits at M^T*p + T in the
// main system; apply_to_point() maps deck coordinates through that rule.
struct Transform3D {
  Mat3 rotation;
  Vec3 translation;

  static Transform3D identity() { return {}; }
  bool is_identity(double tol = 0.0) const;
};

struct EulerXzx {
  double a = 0.0; // degrees
  double b = 0.0; // degrees, in [0, 180]
  double g = 0.0; // degrees
};

enum class Axis { X, Y, Z };

// Card whose forward action rotates deck geometry by angle_deg about the axis
// (right-handed, about the origin), then shifts it by `shift`.
Transform3D axis_rotation(Axis axis, double angle_deg, const Vec3& shift = {});
Transform3D arbitrary_axis_rotation(const Vec3& axis_dir, double angle_deg,
                                    const Vec3& shift = {});

Vec3 apply_to_point(const Transform3D& t, const Vec3& p);
// Inverse of apply_to_point: main-frame coordinates back to the aux frame.
Vec3 apply_inverse_to_point(const Transform3D& t, const Vec3& p);

// Update rule for a transform reached through a surface card when the whole
// deck is moved by `incoming`: the composed forward map equals
// incoming.forward ∘ old.forward.
Transform3D compose_surface_transform(const Transform3D& old_t,
                                      const Transform3D& incoming);

// Update rule for a trcl/fill transform: the cell transform acts on surfaces
// that are themselves moved by `incoming`, hence the conjugated form
// incoming.forward ∘ old.forward ∘ incoming.forward⁻¹.
Transform3D compose_cell_transform(const Transform3D& old_t,
                                   const Transform3D& incoming);

// Elementwise cos() of a degrees-form (*tr) rotation entry list.
std::vector<double> degrees_to_cosines(const std::vector<double>& degrees);

// Convert an M = -1 card (displacement given as the main origin expressed in
// the aux system) to the forward convention.
Transform3D reverse_to_forward(const Transform3D& reverse);

// Angles such that the active rotation M^T equals Rz(g)*Rx(b)*Rz(a), with
// b in [0, 180]. When sin(b) < 1e-9 the whole rotation folds into `a` and
// g = 0. Chosen so euler_to_matrix(euler_xzx(M)) == M including at b = 0.
EulerXzx euler_xzx(const Mat3& m);
Mat3 euler_to_matrix(const EulerXzx& e);

// Flat card entry list o1 o2 o3 b1..b9.
std::array<double, 12> to_tr_entries(const Transform3D& t);
Transform3D from_tr_entries(const std::array<double, 12>& e);

// Completion of partial rotation entry lists (0, 5, 6 or 9 entries) to a full
// matrix. Returns a repaired orthonormal matrix; sets `repaired` when a
// Gram-Schmidt pass was needed beyond the 1e-6 tolerance. Throws
// NonOrthonormal on reflections or degenerate input.
Mat3 complete_rotation(const std::vector<double>& entries, bool& repaired);

} // namespace mcdeck

#endif
