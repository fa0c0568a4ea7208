#include <cmath>
#include <random>

#include <doctest.h>

#include "mcdeck/errors.hpp"
#include "mcdeck/transform.hpp"

using namespace mcdeck;

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat3 random_rotation(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double u1 = u(rng), u2 = u(rng), u3 = u(rng);
  double w = std::sqrt(1.0 - u1) * std::sin(2 * kPi * u2);
  double x = std::sqrt(1.0 - u1) * std::cos(2 * kPi * u2);
  double y = std::sqrt(u1) * std::sin(2 * kPi * u3);
  double z = std::sqrt(u1) * std::cos(2 * kPi * u3);
  return Mat3::from_rows(
      {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
      {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
      {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)});
}

Vec3 random_vec(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return {d(rng), d(rng), d(rng)};
}

bool close(const Vec3& a, const Vec3& b, double tol = 1e-12) {
  return (a - b).norm() <= tol;
}

} // namespace

TEST_CASE("axis rotations move points the right way") {
  // Forward action p -> M^T p: a 90 degree Z rotation sends x-hat to y-hat.
  CHECK(close(apply_to_point(axis_rotation(Axis::Z, 90), {1, 0, 0}),
              {0, 1, 0}, 1e-15));
  CHECK(close(apply_to_point(axis_rotation(Axis::X, 90), {0, 1, 0}),
              {0, 0, 1}, 1e-15));
  CHECK(close(apply_to_point(axis_rotation(Axis::Y, 90), {0, 0, 1}),
              {1, 0, 0}, 1e-15));
  CHECK(close(apply_to_point(axis_rotation(Axis::Z, 90, {5, 6, 7}), {1, 0, 0}),
              {5, 7, 7}, 1e-15));
}

TEST_CASE("arbitrary axis rotation matches the coordinate-axis form") {
  for (double deg : {-170.0, -30.0, 0.0, 12.5, 45.0, 90.0, 179.0}) {
    Mat3 a = arbitrary_axis_rotation({0, 0, 1}, deg).rotation;
    Mat3 b = axis_rotation(Axis::Z, deg).rotation;
    CHECK(a.distance(b) < 1e-14);
  }
  // 120 degrees about the body diagonal permutes the basis vectors.
  Transform3D t = arbitrary_axis_rotation({1, 1, 1}, 120.0);
  CHECK(close(apply_to_point(t, {1, 0, 0}), {0, 1, 0}, 1e-14));
  CHECK(close(apply_to_point(t, {0, 1, 0}), {0, 0, 1}, 1e-14));
  // Direction vectors need not be normalized.
  Mat3 scaled = arbitrary_axis_rotation({2, 2, 2}, 120.0).rotation;
  CHECK(scaled.distance(t.rotation) < 1e-14);
}

TEST_CASE("apply_inverse_to_point undoes apply_to_point") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Transform3D t{random_rotation(rng), random_vec(rng, -20, 20)};
    Vec3 p = random_vec(rng, -50, 50);
    CHECK(close(apply_inverse_to_point(t, apply_to_point(t, p)), p, 1e-10));
  }
}

TEST_CASE("euler xzx reconstruction is exact on random rotations") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Mat3 m = random_rotation(rng);
    EulerXzx e = euler_xzx(m);
    CHECK(e.b >= 0.0);
    CHECK(e.b <= 180.0);
    CHECK(euler_to_matrix(e).distance(m) < 1e-9);
  }
}

TEST_CASE("euler xzx handles the degenerate cases") {
  // Pure Z rotations have b = 0 and fold entirely into a.
  EulerXzx e = euler_xzx(axis_rotation(Axis::Z, 137.0).rotation);
  CHECK(e.a == doctest::Approx(137.0).epsilon(1e-12));
  CHECK(e.b == doctest::Approx(0.0));
  CHECK(e.g == doctest::Approx(0.0));

  // b = 180: reconstruction must still be exact.
  Mat3 flip = axis_rotation(Axis::X, 180.0).rotation;
  CHECK(euler_to_matrix(euler_xzx(flip)).distance(flip) < 1e-12);

  EulerXzx id = euler_xzx(Mat3::identity());
  CHECK(id.a == 0.0);
  CHECK(id.b == 0.0);
  CHECK(id.g == 0.0);
}

TEST_CASE("reverse displacement cards convert to the forward convention") {
  std::mt19937 rng(23);
  for (int i = 0; i < 50; ++i) {
    Mat3 m = random_rotation(rng);
    Vec3 d = random_vec(rng, -30, 30); // main origin, in aux coordinates
    Transform3D fwd = reverse_to_forward({m, d});
    CHECK(fwd.rotation.distance(m) == 0.0);
    // The aux point d is the main origin, so it must map to zero.
    CHECK(close(apply_to_point(fwd, d), {0, 0, 0}, 1e-10));
  }
}

TEST_CASE("composition rules against hand-worked cases") {
  Transform3D t1 = axis_rotation(Axis::Z, 45.0, {1, 0, 0});
  Transform3D shift{Mat3::identity(), {0, 5, 0}};

  Transform3D s = compose_surface_transform(t1, shift);
  CHECK(s.rotation.distance(t1.rotation) == 0.0);
  CHECK(close(s.translation, {1, 5, 0}, 1e-15));

  // Composing with the identity leaves both rules unchanged.
  Transform3D id = Transform3D::identity();
  CHECK(compose_surface_transform(t1, id).rotation.distance(t1.rotation) == 0.0);
  CHECK(close(compose_surface_transform(t1, id).translation, t1.translation));
  CHECK(compose_cell_transform(id, t1).is_identity(1e-14));
}

TEST_CASE("composition rules replay as sequential maps") {
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    Transform3D t1{random_rotation(rng), random_vec(rng, -40, 40)};
    Transform3D t2{random_rotation(rng), random_vec(rng, -40, 40)};
    Transform3D s = compose_surface_transform(t1, t2);
    Transform3D c = compose_cell_transform(t1, t2);
    for (int k = 0; k < 10; ++k) {
      Vec3 p = random_vec(rng, -80, 80);
      Vec3 seq = apply_to_point(t2, apply_to_point(t1, p));
      CHECK(close(apply_to_point(s, p), seq, 1e-10));
      CHECK(close(apply_to_point(c, apply_to_point(t2, p)), seq, 1e-10));
    }
  }
}

TEST_CASE("degrees form converts elementwise") {
  std::vector<double> deg = {0, 90, 90, 90, 0, 90, 90, 90, 0};
  std::vector<double> cos = degrees_to_cosines(deg);
  REQUIRE(cos.size() == 9);
  CHECK(cos[0] == doctest::Approx(1.0));
  CHECK(std::fabs(cos[1]) < 1e-12);
  CHECK(cos[4] == doctest::Approx(1.0));
  CHECK(cos[8] == doctest::Approx(1.0));
}

TEST_CASE("tr entry lists round trip") {
  std::mt19937 rng(5);
  Transform3D t{random_rotation(rng), {1.5, -2.25, 3.75}};
  auto e = to_tr_entries(t);
  CHECK(e[0] == 1.5);
  CHECK(e[4] == t.rotation[0][1]);
  Transform3D back = from_tr_entries(e);
  CHECK(back.rotation.distance(t.rotation) == 0.0);
  CHECK(close(back.translation, t.translation, 0.0));
}

TEST_CASE("partial rotation entries complete to a full matrix") {
  bool repaired = false;

  CHECK(complete_rotation({}, repaired).distance(Mat3::identity()) == 0.0);
  CHECK_FALSE(repaired);

  Mat3 two_rows = complete_rotation({1, 0, 0, 0, 1, 0}, repaired);
  CHECK(two_rows.distance(Mat3::identity()) < 1e-15);

  // Five entries: the second row is completed via orthogonality.
  Mat3 five = complete_rotation({1, 0, 0, 0, 1}, repaired);
  CHECK(five.distance(Mat3::identity()) < 1e-15);

  // Slightly noisy input is repaired to an orthonormal matrix.
  std::mt19937 rng(3);
  Mat3 m = random_rotation(rng);
  std::vector<double> noisy;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) noisy.push_back(m[r][c] + 1e-5 * ((r + c) % 2));
  Mat3 fixed = complete_rotation(noisy, repaired);
  CHECK(repaired);
  CHECK(fixed.is_orthonormal(1e-12));

  // Reflections are rejected outright.
  CHECK_THROWS_AS(complete_rotation({1, 0, 0, 0, 1, 0, 0, 0, -1}, repaired),
                  NonOrthonormal);
  CHECK_THROWS_AS(complete_rotation({1, 2, 3}, repaired), SyntaxError);
}
