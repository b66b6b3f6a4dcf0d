#include <doctest.h>

#include <cmath>
#include <limits>

#include "pmc/projections.hpp"
#include "test_support.hpp"

using namespace pmc;

namespace {

// theta with sum (sigma - theta)_+ = radius, by bisection.
double bisect_theta(const Vector& sigma, double radius) {
  double lo = 0.0;
  double hi = sigma.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((sigma.array() - mid).cwiseMax(0.0).sum() > radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Matrix bisection_projection(const Matrix& x, double radius) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector sigma = svd.singularValues();
  if (sigma.sum() <= radius) return x;
  const double theta = bisect_theta(sigma, radius);
  return svd.matrixU() * (sigma.array() - theta).cwiseMax(0.0).matrix().asDiagonal() *
         svd.matrixV().transpose();
}

// Projected gradient on the factored form Y = A B^T, where
// ||Y||_* = min (||A||^2 + ||B||^2)/2 turns the nuclear ball into a Euclidean
// ball in (A, B). Uses no SVD.
Matrix factored_projection(const Matrix& x, double radius, Rng& rng) {
  const int k = static_cast<int>(std::min(x.rows(), x.cols()));
  Matrix a = testing::random_matrix(rng, static_cast<int>(x.rows()), k, -0.1, 0.1);
  Matrix b = testing::random_matrix(rng, static_cast<int>(x.cols()), k, -0.1, 0.1);
  const double step = 0.05;
  Matrix last = a * b.transpose();
  for (int it = 0; it < 200000; ++it) {
    const Matrix residual = a * b.transpose() - x;
    const Matrix grad_a = residual * b;
    const Matrix grad_b = residual.transpose() * a;
    a -= step * grad_a;
    b -= step * grad_b;
    const double size = 0.5 * (a.squaredNorm() + b.squaredNorm());
    if (size > radius) {
      a *= std::sqrt(radius / size);
      b *= std::sqrt(radius / size);
    }
    if (it % 1000 == 999) {
      const Matrix y = a * b.transpose();
      if ((y - last).norm() < 1e-14) break;
      last = y;
    }
  }
  return a * b.transpose();
}

// 0.5 ||Y - X||^2 + tau ||Y||_* for 2x2 matrices, nuclear norm in closed form
// sqrt(||Y||_F^2 + 2 |det Y|).
double prox_objective_2x2(double y00, double y01, double y10, double y11, const Matrix& x, double tau) {
  const double fro = y00 * y00 + y01 * y01 + y10 * y10 + y11 * y11;
  const double det = y00 * y11 - y01 * y10;
  const double dist = (y00 - x(0, 0)) * (y00 - x(0, 0)) + (y01 - x(0, 1)) * (y01 - x(0, 1)) +
                      (y10 - x(1, 0)) * (y10 - x(1, 0)) + (y11 - x(1, 1)) * (y11 - x(1, 1));
  return 0.5 * dist + tau * std::sqrt(fro + 2.0 * std::abs(det));
}

double prox_objective(const Matrix& y, const Matrix& x, double tau) {
  return 0.5 * (y - x).squaredNorm() + tau * nuclear_norm(y);
}

} // namespace

TEST_SUITE("projections") {

TEST_CASE("project_box clamps") {
  const FeasibleRegion region{2, 2, 3.0, 1.0, 1};
  Matrix x(2, 2);
  x << 0, 5, 2, 2;
  Matrix expected(2, 2);
  expected << 1, 3, 2, 2;
  CHECK(project_box(x, region) == expected);
  CHECK(project_box(expected, region) == expected);
  CHECK_THROWS_AS(project_box(Matrix::Ones(3, 2), region), Error);
}

TEST_CASE("project_box is the nearest box point (2x2 grid search)") {
  const FeasibleRegion region{2, 2, 2.0, 0.5, 1};
  Rng rng(12);
  const int n = 31;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = testing::random_matrix(rng, 2, 2, -1.0, 3.5);
    // The squared distance separates over entries, but search the full grid.
    double best = std::numeric_limits<double>::infinity();
    Matrix arg(2, 2);
    auto level = [&](int k) { return region.beta + (region.alpha - region.beta) * k / (n - 1.0); };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            Matrix y(2, 2);
            y << level(a), level(b), level(c), level(d);
            const double dist = (y - x).squaredNorm();
            if (dist < best) {
              best = dist;
              arg = y;
            }
          }
    const Matrix p = project_box(x, region);
    CHECK((p - x).squaredNorm() <= best + 1e-12);
    CHECK((p - arg).cwiseAbs().maxCoeff() <= 0.5 * (region.alpha - region.beta) / (n - 1.0) + 1e-12);
  }
}

TEST_CASE("project_box is idempotent and 1-Lipschitz") {
  const FeasibleRegion region{4, 3, 2.0, 1.0, 1};
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix x = testing::random_matrix(rng, 4, 3, -1.0, 4.0);
    const Matrix y = testing::random_matrix(rng, 4, 3, -1.0, 4.0);
    const Matrix px = project_box(x, region);
    CHECK(project_box(px, region) == px);
    CHECK((px - project_box(y, region)).norm() <= (x - y).norm() + 1e-15);
  }
}

TEST_CASE("project_nuclear_ball hand case") {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 3.0;
  x(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  const Matrix p = project_nuclear_ball(x, 2.0);
  CHECK((p - expected).norm() < 1e-12);
  CHECK(bisect_theta(singular_values(x), 2.0) == doctest::Approx(1.0));
  CHECK(nuclear_ball_threshold(singular_values(x), 2.0) == doctest::Approx(1.0));

  // Inside the ball: unchanged.
  CHECK(project_nuclear_ball(x, 4.0) == x);
  CHECK(project_nuclear_ball(x, 10.0) == x);
  CHECK_THROWS_AS(project_nuclear_ball(x, 0.0), Error);
  CHECK_THROWS_AS(project_nuclear_ball(x, -1.0), Error);
}

TEST_CASE("project_nuclear_ball matches the bisection oracle") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 2 + static_cast<int>(rng.next_u64() % 4);
    const int cols = 2 + static_cast<int>(rng.next_u64() % 3);
    const Matrix x = testing::random_matrix(rng, rows, cols, -3.0, 3.0);
    const double radius = rng.uniform(0.05, 1.2) * nuclear_norm(x);
    const Matrix p = project_nuclear_ball(x, radius);
    CHECK((p - bisection_projection(x, radius)).norm() <= 1e-8);
    CHECK(nuclear_norm(p) <= radius * (1.0 + 1e-8));
    CHECK((project_nuclear_ball(p, radius) - p).norm() <= 1e-10);
  }
}

TEST_CASE("project_nuclear_ball matches a factored projected-gradient solver") {
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = testing::random_matrix(rng, 4, 3, -2.0, 2.0);
    const double radius = 0.5 * nuclear_norm(x);
    const Matrix p = project_nuclear_ball(x, radius);
    CHECK(std::abs(nuclear_norm(p) - radius) <= 1e-8 * radius);
    CHECK((p - factored_projection(x, radius, rng)).norm() <= 1e-5);
  }
}

TEST_CASE("svt basics") {
  Rng rng(15);
  const Matrix x = testing::random_matrix(rng, 4, 3, -2.0, 2.0);
  CHECK((svt(x, 0.0) - x).norm() <= 1e-10);

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3.0, 2.0, 0.5;
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << 2.0, 1.0, 0.0;
  CHECK((svt(d, 1.0) - expected).norm() <= 1e-12);
  CHECK(svt(d, 5.0).norm() == 0.0);
  CHECK_THROWS_AS(svt(x, -0.1), Error);
}

TEST_CASE("svt shrinks singular values by tau") {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix x = testing::random_matrix(rng, 5, 4, -2.0, 2.0);
    const double tau = rng.uniform(0.0, 2.0);
    const Vector before = singular_values(x);
    const Vector after = singular_values(svt(x, tau));
    CHECK((after - (before.array() - tau).cwiseMax(0.0).matrix()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("svt beats random probes of the prox objective") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = testing::random_matrix(rng, 3, 3, -2.0, 2.0);
    const double tau = 0.7;
    const Matrix y = svt(x, tau);
    const double best = prox_objective(y, x, tau);
    for (int probe = 0; probe < 1000; ++probe) {
      const double scale = probe < 500 ? 1e-3 : 0.3;
      const Matrix candidate = y + testing::random_matrix(rng, 3, 3, -scale, scale);
      CHECK(best <= prox_objective(candidate, x, tau) + 1e-12);
    }
  }
}

TEST_CASE("svt matches exhaustive grid minimization on 2x2") {
  Rng rng(18);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix x = testing::random_matrix(rng, 2, 2, -1.0, 1.0);
    const double tau = 0.3;
    const int n = 41;
    const double lo = -1.5;
    const double hi = 1.5;
    const double h = (hi - lo) / (n - 1);
    double best = std::numeric_limits<double>::infinity();
    Matrix arg(2, 2);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const double v = prox_objective_2x2(lo + a * h, lo + b * h, lo + c * h, lo + d * h, x, tau);
            if (v < best) {
              best = v;
              arg << lo + a * h, lo + b * h, lo + c * h, lo + d * h;
            }
          }
    const Matrix y = svt(x, tau);
    CHECK(prox_objective(y, x, tau) <= best + 1e-12);
    // Strong convexity: ||y - arg||^2 <= 2 (f(arg) - f(y)), and f(arg) is
    // within one grid cell of optimal.
    CHECK((y - arg).norm() <= 2.0 * h);
  }
}

TEST_CASE("alternating projection: fixed point") {
  const FeasibleRegion region{3, 3, 4.0, 1.0, 2};
  const Matrix inside = Matrix::Constant(3, 3, 2.0);
  const ProjectionReport rep = alternating_projection(inside, region);
  CHECK(rep.iterations == 1);
  CHECK(rep.final_gap == 0.0);
  CHECK(rep.converged);
  CHECK(rep.result == inside);
}

TEST_CASE("alternating projection: box binds, ball slack") {
  const FeasibleRegion region{4, 4, 3.0, 1.0, 4};
  const Matrix start = Matrix::Constant(4, 4, 2.0 * region.alpha);
  CHECK(nuclear_norm(start) <= region.nuclear_radius() + 1e-9);
  const ProjectionReport rep = alternating_projection(start, region);
  CHECK(rep.converged);
  CHECK((rep.result - Matrix::Constant(4, 4, region.alpha)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(membership(rep.result, region).feasible());
}

TEST_CASE("alternating projection reaches the intersection with nonincreasing gaps") {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int d1 = 3 + static_cast<int>(rng.next_u64() % 4);
    const int d2 = 3 + static_cast<int>(rng.next_u64() % 4);
    const FeasibleRegion region{d1, d2, 2.0, 0.5, 1};
    const Matrix start = testing::random_matrix(rng, d1, d2, -3.0, 6.0);
    const ProjectionReport rep = alternating_projection(start, region, kDefaultProjTol, 5000);
    REQUIRE(rep.converged);
    CHECK(rep.final_gap <= kDefaultProjTol);
    CHECK(membership(rep.result, region, 0.0).in_box);
    CHECK(membership(rep.result, region, kDefaultProjTol).in_nuclear_ball);
    for (std::size_t j = 1; j < rep.gaps.size(); ++j) CHECK(rep.gaps[j] <= rep.gaps[j - 1] + 1e-12);
  }
}

TEST_CASE("alternating projection reports non-convergence without throwing") {
  const FeasibleRegion region{5, 5, 2.0, 0.5, 1};
  Rng rng(20);
  const Matrix start = testing::random_matrix(rng, 5, 5, -3.0, 6.0);
  const ProjectionReport rep = alternating_projection(start, region, 1e-15, 1);
  CHECK(rep.iterations == 1);
  CHECK_FALSE(rep.converged);
  CHECK(membership(rep.result, region, 0.0).in_box);
  CHECK_THROWS_AS(alternating_projection(start, region, 0.0, 10), Error);
  CHECK_THROWS_AS(alternating_projection(start, region, 1e-6, 0), Error);
}

} // TEST_SUITE
