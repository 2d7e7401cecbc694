#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "riskgrad/complexity.hpp"
#include "riskgrad/rng.hpp"

using namespace riskgrad;

TEST_CASE("lipschitz_neutral formula values") {
  CHECK(lipschitz_neutral(0.0, 1.0, 1.0, 1.0) == 2.0);
  CHECK(lipschitz_neutral(0.99, 1.0, 1.0, 1.0) == doctest::Approx(20000.0).epsilon(1e-12));
  // Linear in r_max.
  double l1 = lipschitz_neutral(0.9, 3.0, 1.5, 0.7);
  double l2 = lipschitz_neutral(0.9, 6.0, 1.5, 0.7);
  CHECK(l2 == doctest::Approx(2.0 * l1).epsilon(1e-12));
  CHECK_THROWS_AS(lipschitz_neutral(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_neutral(0.5, -1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("alpha_ratio as printed: e^{|b|x}/(|b|x)") {
  double e = std::exp(1.0);
  CHECK(alpha_ratio(-1.0, 1.0) == doctest::Approx(e).epsilon(1e-12));
  CHECK(alpha_ratio(-0.5, 2.0) == doctest::Approx(e).epsilon(1e-12));
  CHECK(alpha_ratio(2.0, 0.5) == doctest::Approx(e).epsilon(1e-12));
  // Minimized at |beta| x = 1 with value e.
  CHECK(alpha_ratio(-1.0, 0.5) > e);
  CHECK(alpha_ratio(-1.0, 2.0) > e);
  CHECK_THROWS_AS(alpha_ratio(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_ratio(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_ratio(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("alpha_ratio is strictly convex in x with minimizer 1/|beta| (grid)") {
  for (double beta : {-2.0, -0.5, -0.1, 0.3}) {
    double x_star = 1.0 / std::abs(beta);
    double best = alpha_ratio(beta, x_star);
    double prev = alpha_ratio(beta, x_star * 0.01);
    // Strictly decreasing before the minimizer, strictly increasing after.
    for (int k = 2; k <= 100; ++k) {
      double x = x_star * 0.01 * k;
      double v = alpha_ratio(beta, x);
      if (x < x_star) CHECK(v < prev);
      if (x > x_star) CHECK(v > prev);
      CHECK(v >= best);
      prev = v;
    }
    // Midpoint convexity on a coarse grid.
    for (double a = 0.2; a <= 3.0; a += 0.4) {
      for (double b = a + 0.4; b <= 3.4; b += 0.4) {
        double xa = x_star * a, xb = x_star * b;
        double mid = alpha_ratio(beta, 0.5 * (xa + xb));
        double chord = 0.5 * (alpha_ratio(beta, xa) + alpha_ratio(beta, xb));
        CHECK(mid < chord + 1e-12);
      }
    }
  }
}

TEST_CASE("alpha_ratio text-minimum convention attains beta^2 e at 1/|beta|") {
  for (double beta : {-0.5, -0.3, 0.2}) {
    double x_star = 1.0 / std::abs(beta);
    CHECK(alpha_ratio(beta, x_star, AlphaConvention::kTextMinimum) ==
          doctest::Approx(alpha_min(beta)).epsilon(1e-12));
    CHECK(alpha_ratio(beta, x_star * 0.7, AlphaConvention::kTextMinimum) > alpha_min(beta));
    CHECK(alpha_ratio(beta, x_star * 1.3, AlphaConvention::kTextMinimum) > alpha_min(beta));
  }
  CHECK(alpha_ratio(-0.5, 2.0, AlphaConvention::kTextMinimum) ==
        doctest::Approx(0.25 * std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("alpha_min values and symmetry") {
  double root = std::exp(-0.5);
  CHECK(std::abs(alpha_min(root) - 1.0) < 1e-12);
  CHECK(std::abs(alpha_min(-root) - 1.0) < 1e-12);
  CHECK(alpha_min(-0.5) == doctest::Approx(0.25 * std::exp(1.0)).epsilon(1e-12));
  CHECK(alpha_min(-0.5) == doctest::Approx(0.67957).epsilon(1e-5));
  for (double b : {0.1, 0.37, 2.5}) CHECK(alpha_min(b) == alpha_min(-b));
  CHECK_THROWS_AS(alpha_min(0.0), std::invalid_argument);
}

TEST_CASE("lipschitz_sensitive scales L by alpha") {
  CHECK(lipschitz_sensitive(123.0, 1.0) == 123.0);
  CHECK(lipschitz_sensitive(20000.0, 0.5) == 10000.0);
  for (double alpha : {0.1, 0.7, 0.99}) CHECK(lipschitz_sensitive(50.0, alpha) < 50.0);
  CHECK_THROWS_AS(lipschitz_sensitive(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_sensitive(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("beta_admissible_range endpoints") {
  BetaRange r = beta_admissible_range(0.99, 1.0);
  CHECK(r.lower == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(std::abs(r.upper - 0.6065307) < 1e-6);
  CHECK(r.nonempty);

  BetaRange empty = beta_admissible_range(0.0, 1.0);
  CHECK(empty.lower == 1.0);
  CHECK_FALSE(empty.nonempty);

  // The upper endpoint is the constant e^{-1/2}.
  CHECK(beta_admissible_range(0.5, 7.0).upper == r.upper);
  CHECK(beta_admissible_range(0.999, 0.01).upper == r.upper);
  CHECK_THROWS_AS(beta_admissible_range(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("range consistency: every admissible beta has alpha_min < 1") {
  BetaRange r = beta_admissible_range(0.99, 1.0);
  for (double frac : {0.001, 0.1, 0.5, 0.9, 0.999}) {
    double b = r.lower + frac * (r.upper - r.lower);
    CHECK(alpha_min(b) < 1.0);
    CHECK(alpha_min(-b) < 1.0);
  }
}

TEST_CASE("iterations_lower_bound examples and scaling") {
  CHECK(iterations_lower_bound(1.0, 1.0, 0.0, 1.0, 0.0, 0.1) ==
        doctest::Approx(1200.0).epsilon(1e-12));

  // eps^-4 when the A term dominates, eps^-2 when B dominates.
  double a_fine = iterations_lower_bound(1.0, 1.0, 1.0, 0.0, 0.0, 0.05);
  double a_coarse = iterations_lower_bound(1.0, 1.0, 1.0, 0.0, 0.0, 0.1);
  CHECK(a_fine / a_coarse == doctest::Approx(16.0).epsilon(1e-12));
  double b_fine = iterations_lower_bound(1.0, 1.0, 0.0, 1.0, 0.0, 0.05);
  double b_coarse = iterations_lower_bound(1.0, 1.0, 0.0, 1.0, 0.0, 0.1);
  CHECK(b_fine / b_coarse == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(iterations_lower_bound(1.0, 1.0, 0.0, 0.0, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(iterations_lower_bound(1.0, 1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("ratio identity: n(alpha L) = alpha n(L) over a 100-point grid") {
  Rng rng(404);
  int points = 0;
  while (points < 100) {
    double delta0 = rng.uniform(0.1, 10.0);
    double lipschitz = rng.uniform(0.5, 5e4);
    double a = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 4.0);
    double b = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 4.0);
    double c = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 4.0);
    double eps = rng.uniform(0.01, 0.5);
    double alpha = rng.uniform(0.01, 1.5);
    if (std::max(b, std::max(12.0 * delta0 * a / (eps * eps), 2.0 * c / (eps * eps))) == 0.0)
      continue;
    double n = iterations_lower_bound(delta0, lipschitz, a, b, c, eps);
    double n_beta = iterations_lower_bound(delta0, alpha * lipschitz, a, b, c, eps);
    CHECK(n_beta / n == doctest::Approx(alpha).epsilon(1e-12));
    ++points;
  }
}

TEST_CASE("stepsize_corollary2 term selection") {
  CHECK(stepsize_corollary2(1.0, 0.0, 2.0, 0.0, 50.0, 0.1) == doctest::Approx(0.5));
  CHECK(stepsize_corollary2(1.0, 1.0, 0.0, 0.0, 100.0, 0.1) == doctest::Approx(0.1));
  // Non-increasing in T while the A term binds.
  double prev = stepsize_corollary2(2.0, 1.0, 0.0, 0.0, 10.0, 0.1);
  for (double t : {100.0, 1000.0, 1e6}) {
    double eta = stepsize_corollary2(2.0, 1.0, 0.0, 0.0, t, 0.1);
    CHECK(eta <= prev);
    prev = eta;
  }
  CHECK_THROWS_AS(stepsize_corollary2(1.0, 0.0, 0.0, 0.0, 10.0, 0.1), std::domain_error);
}

TEST_CASE("corollary1_bound closed-form spot checks") {
  // All constants zero: 2 delta0 / (2 eta T).
  CHECK(corollary1_bound(3.0, 1.0, 0.0, 0.0, 0.0, 0.01, 500.0) ==
        doctest::Approx(3.0 / (0.01 * 500.0)).epsilon(1e-12));

  // Worked example: 2/(0.5*100*1.5) + 0.5/1.5 = 0.36.
  CHECK(corollary1_bound(1.0, 1.0, 0.0, 1.0, 1.0, 0.5, 100.0) ==
        doctest::Approx(0.36).epsilon(1e-12));

  // Increasing in C.
  double prev = 0.0;
  for (double c : {0.0, 0.5, 1.0, 4.0}) {
    double v = corollary1_bound(1.0, 1.0, 0.0, 1.0, c, 0.5, 100.0);
    CHECK(v >= prev);
    prev = v;
  }

  CHECK_THROWS_AS(corollary1_bound(1.0, 1.0, 0.0, 1.0, 0.0, 2.5, 100.0),
                  std::invalid_argument); // eta >= 2/(L B)
  CHECK_THROWS_AS(corollary1_bound(1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 100.0),
                  std::invalid_argument);
}

TEST_CASE("corollary1_bound power factor stays finite in log-space at T = 1e8") {
  double t = 1e8, a = 1.0, lb = 1.0;
  double eta = stepsize_corollary2(lb, a, 0.0, 0.0, t, 0.1); // 1/sqrt(T) = 1e-4
  double v = corollary1_bound(1.0, lb, a, 0.0, 0.0, eta, t);
  CHECK(std::isfinite(v));
  // (1 + 1/T)^T -> e, so the bound is 2 delta0 e / (eta T (2 - 0)) = e / (eta T).
  CHECK(v == doctest::Approx(std::exp(1.0) / (eta * t)).epsilon(1e-6));
}

TEST_CASE("corollary consistency: bound at Corollary-2 stepsize and T = ceil(n_beta) "
          "is at most eps^2") {
  std::vector<double> delta0s = {0.5, 1.0, 5.0};
  std::vector<double> lipschitzes = {0.5, 2.0, 100.0};
  std::vector<std::array<double, 3>> abcs = {
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},   {0.0, 0.0, 1.0},
      {1.0, 1.0, 1.0}, {0.01, 1.0, 10.0}, {2.0, 0.5, 0.1}};
  std::vector<double> epsilons = {0.05, 0.1, 0.5};

  int points = 0;
  for (double delta0 : delta0s)
    for (double lb : lipschitzes)
      for (const auto& abc : abcs)
        for (double eps : epsilons) {
          double n_beta = iterations_lower_bound(delta0, lb, abc[0], abc[1], abc[2], eps);
          double t = std::ceil(n_beta);
          double eta = stepsize_corollary2(lb, abc[0], abc[1], abc[2], t, eps);
          double bound = corollary1_bound(delta0, lb, abc[0], abc[1], abc[2], eta, t);
          CHECK(bound <= eps * eps + 1e-9);
          ++points;
        }
  CHECK(points == 162);
}

TEST_CASE("analyze_sweep rows: flags, ordering, ratio identity") {
  ComplexityInputs inputs;
  inputs.gamma = 0.99;
  inputs.r_max = 1.0;
  inputs.f1 = 1.0;
  inputs.f2 = 1.0;
  inputs.b = 1.0;
  inputs.delta0 = 1.0;
  inputs.epsilon = 0.1;

  auto rows = analyze_sweep(inputs, {-0.01, -0.1, -1.0});
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].in_range);
  CHECK(rows[1].in_range);
  CHECK_FALSE(rows[2].in_range);
  for (const auto& row : rows) {
    CHECK(row.lipschitz == doctest::Approx(20000.0));
    CHECK(row.ratio == doctest::Approx(row.alpha_min).epsilon(1e-12));
    if (row.in_range) CHECK(row.n_beta < row.n);
  }

  inputs.epsilon = -1.0;
  CHECK_THROWS_AS(analyze_sweep(inputs, {-0.1}), std::invalid_argument);
}
