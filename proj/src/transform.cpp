#include "mcdeck/transform.hpp"

#include <cmath>
#include <cstdlib>

#include "mcdeck/errors.hpp"

namespace mcdeck {

namespace {
constexpr double kPi = 3.14159265358979323846;
double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }
} // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
  double n = norm();
  if (n == 0.0) throw NonOrthonormal("cannot normalize zero vector");
  return {x / n, y / n, z / n};
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
  Mat3 out;
  out.m = {{{r0.x, r0.y, r0.z}, {r1.x, r1.y, r1.z}, {r2.x, r2.y, r2.z}}};
  return out;
}

Mat3 Mat3::transposed() const {
  Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.m[r][c] = m[c][r];
  return out;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[r][k] * o.m[k][c];
      out.m[r][c] = s;
    }
  return out;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

double Mat3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double Mat3::distance(const Mat3& o) const {
  double d = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) d = std::max(d, std::fabs(m[r][c] - o.m[r][c]));
  return d;
}

bool Mat3::is_orthonormal(double tol) const {
  Mat3 mtm = transposed() * (*this);
  return mtm.distance(Mat3::identity()) <= tol;
}

bool Transform3D::is_identity(double tol) const {
  return rotation.distance(Mat3::identity()) <= tol &&
         std::fabs(translation.x) <= tol && std::fabs(translation.y) <= tol &&
         std::fabs(translation.z) <= tol;
}

Transform3D axis_rotation(Axis axis, double angle_deg, const Vec3& shift) {
  double c = std::cos(deg2rad(angle_deg));
  double s = std::sin(deg2rad(angle_deg));
  // Card matrix is the transpose of the active rotation R(angle): the forward
  // map M^T*p + T must rotate points by +angle.
  Mat3 m;
  switch (axis) {
    case Axis::X:
      m = Mat3::from_rows({1, 0, 0}, {0, c, s}, {0, -s, c});
      break;
    case Axis::Y:
      m = Mat3::from_rows({c, 0, -s}, {0, 1, 0}, {s, 0, c});
      break;
    case Axis::Z:
      m = Mat3::from_rows({c, s, 0}, {-s, c, 0}, {0, 0, 1});
      break;
  }
  return {m, shift};
}

Transform3D arbitrary_axis_rotation(const Vec3& axis_dir, double angle_deg,
                                    const Vec3& shift) {
  Vec3 u = axis_dir.normalized();
  double c = std::cos(deg2rad(angle_deg));
  double s = std::sin(deg2rad(angle_deg));
  // Rodrigues form of the active rotation, stored transposed (card form).
  Mat3 active;
  active[0] = {c + u.x * u.x * (1 - c), u.x * u.y * (1 - c) - u.z * s,
               u.x * u.z * (1 - c) + u.y * s};
  active[1] = {u.y * u.x * (1 - c) + u.z * s, c + u.y * u.y * (1 - c),
               u.y * u.z * (1 - c) - u.x * s};
  active[2] = {u.z * u.x * (1 - c) - u.y * s, u.z * u.y * (1 - c) + u.x * s,
               c + u.z * u.z * (1 - c)};
  return {active.transposed(), shift};
}

Vec3 apply_to_point(const Transform3D& t, const Vec3& p) {
  return t.rotation.transposed() * p + t.translation;
}

Vec3 apply_inverse_to_point(const Transform3D& t, const Vec3& p) {
  return t.rotation * (p - t.translation);
}

Transform3D compose_surface_transform(const Transform3D& old_t,
                                      const Transform3D& incoming) {
  Transform3D out;
  out.rotation = old_t.rotation * incoming.rotation;
  out.translation = incoming.rotation.transposed() * old_t.translation +
                    incoming.translation;
  return out;
}

Transform3D compose_cell_transform(const Transform3D& old_t,
                                   const Transform3D& incoming) {
  Transform3D out;
  Mat3 min_t = incoming.rotation.transposed();
  out.rotation = min_t * old_t.rotation * incoming.rotation;
  out.translation = min_t * old_t.translation -
                    out.rotation.transposed() * incoming.translation +
                    incoming.translation;
  return out;
}

std::vector<double> degrees_to_cosines(const std::vector<double>& degrees) {
  std::vector<double> out;
  out.reserve(degrees.size());
  for (double d : degrees) out.push_back(std::cos(deg2rad(d)));
  return out;
}

Transform3D reverse_to_forward(const Transform3D& reverse) {
  Transform3D out;
  out.rotation = reverse.rotation;
  out.translation = -(reverse.rotation.transposed() * reverse.translation);
  return out;
}

EulerXzx euler_xzx(const Mat3& m) {
  EulerXzx e;
  double cb = std::max(-1.0, std::min(1.0, m[2][2]));
  // atan2 keeps b well conditioned near 0 and 180, where acos(cb) loses
  // half the significant digits.
  double sb = std::hypot(m[0][2], m[1][2]);
  e.b = rad2deg(std::atan2(sb, cb));
  if (sb < 1e-9) {
    e.g = 0.0;
    if (cb > 0.0) {
      e.a = rad2deg(std::atan2(m[0][1], m[0][0]));
    } else {
      e.a = rad2deg(std::atan2(-m[1][0], m[0][0]));
    }
  } else {
    e.a = rad2deg(std::atan2(m[0][2], m[1][2]));
    e.g = rad2deg(std::atan2(m[2][0], -m[2][1]));
  }
  return e;
}

Mat3 euler_to_matrix(const EulerXzx& e) {
  auto rz = [](double deg) {
    double c = std::cos(deg2rad(deg)), s = std::sin(deg2rad(deg));
    return Mat3::from_rows({c, -s, 0}, {s, c, 0}, {0, 0, 1});
  };
  auto rx = [](double deg) {
    double c = std::cos(deg2rad(deg)), s = std::sin(deg2rad(deg));
    return Mat3::from_rows({1, 0, 0}, {0, c, -s}, {0, s, c});
  };
  // Active rotation Rz(g)*Rx(b)*Rz(a); card matrix is its transpose.
  return (rz(e.g) * rx(e.b) * rz(e.a)).transposed();
}

std::array<double, 12> to_tr_entries(const Transform3D& t) {
  std::array<double, 12> e{};
  e[0] = t.translation.x;
  e[1] = t.translation.y;
  e[2] = t.translation.z;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e[3 + 3 * r + c] = t.rotation[r][c];
  return e;
}

Transform3D from_tr_entries(const std::array<double, 12>& e) {
  Transform3D t;
  t.translation = {e[0], e[1], e[2]};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t.rotation[r][c] = e[3 + 3 * r + c];
  return t;
}

Mat3 complete_rotation(const std::vector<double>& entries, bool& repaired) {
  repaired = false;
  Mat3 m;
  switch (entries.size()) {
    case 0:
      return Mat3::identity();
    case 9:
      m = Mat3::from_rows({entries[0], entries[1], entries[2]},
                          {entries[3], entries[4], entries[5]},
                          {entries[6], entries[7], entries[8]});
      break;
    case 6: {
      Vec3 r0{entries[0], entries[1], entries[2]};
      Vec3 r1{entries[3], entries[4], entries[5]};
      m = Mat3::from_rows(r0, r1, r0.cross(r1));
      break;
    }
    case 5: {
      Vec3 r0{entries[0], entries[1], entries[2]};
      double b4 = entries[3], b5 = entries[4], b6;
      if (std::fabs(r0.z) > 1e-12) {
        b6 = -(r0.x * b4 + r0.y * b5) / r0.z;
      } else {
        b6 = std::sqrt(std::max(0.0, 1.0 - b4 * b4 - b5 * b5));
      }
      Vec3 r1{b4, b5, b6};
      m = Mat3::from_rows(r0, r1, r0.cross(r1));
      break;
    }
    default:
      throw SyntaxError("rotation entry count must be 0, 5, 6 or 9 (got " +
                        std::to_string(entries.size()) + ")");
  }
  if (!m.is_orthonormal(1e-6)) {
    // Gram-Schmidt on rows; the third row is rebuilt from the cross product,
    // which would silently flip a reflection, so check the determinant first.
    if (m.det() < 0.0)
      throw NonOrthonormal("rotation entries describe a reflection (det < 0)");
    Vec3 r0 = m.row(0).normalized();
    Vec3 r1 = m.row(1) - r0 * m.row(1).dot(r0);
    r1 = r1.normalized();
    m = Mat3::from_rows(r0, r1, r0.cross(r1));
    repaired = true;
  }
  if (m.det() < 0.0)
    throw NonOrthonormal("rotation entries describe a reflection (det < 0)");
  if (!m.is_orthonormal(1e-6))
    throw NonOrthonormal("rotation entries are not orthonormal");
  return m;
}

} // namespace mcdeck
