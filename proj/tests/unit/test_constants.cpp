#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "qsym/constants.hpp"
#include "qsym/errors.hpp"
#include "qsym/special.hpp"

using namespace qsym;

TEST_CASE("euler_beta matches the tanh-sinh quadrature oracle") {
  for (double x : {0.05, 0.2, 0.5, 1.0, 2.5, 7.0}) {
    for (double y : {0.1, 0.5, 1.0, 3.0, 12.0}) {
      CAPTURE(x);
      CAPTURE(y);
      CHECK(oracle::rel_err(euler_beta(x, y), oracle::beta_by_quadrature(x, y)) <= 1e-12);
    }
  }
}

TEST_CASE("euler_beta closed forms and symmetry") {
  CHECK(euler_beta(0.5, 0.5) == doctest::Approx(oracle::kPi).epsilon(1e-14));
  CHECK(euler_beta(0.3, 1.0) == doctest::Approx(1.0 / 0.3).epsilon(1e-14));
  CHECK(euler_beta(3.0, 4.0) == doctest::Approx(2.0 * 6.0 / 720.0).epsilon(1e-14));
  CHECK(euler_beta(0.7, 2.2) == doctest::Approx(euler_beta(2.2, 0.7)).epsilon(1e-15));
  // B(x, y + 1) = B(x, y) y / (x + y)
  CHECK(euler_beta(1.3, 3.4) == doctest::Approx(euler_beta(1.3, 2.4) * 2.4 / 3.7).epsilon(1e-13));
  CHECK(log_euler_beta(200.0, 300.0) ==
        doctest::Approx(std::lgamma(200.0) + std::lgamma(300.0) - std::lgamma(500.0)).epsilon(1e-13));
  CHECK(euler_beta(100.0, 100.0) > 0.0);
  CHECK_THROWS_AS(euler_beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(euler_beta(1.0, -2.0), DomainError);
}

TEST_CASE("ball, sphere and cap measures") {
  CHECK(unit_ball_volume(2) == doctest::Approx(oracle::kPi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * oracle::kPi / 3.0).epsilon(1e-15));
  CHECK(unit_ball_volume(4) == doctest::Approx(oracle::kPi * oracle::kPi / 2.0).epsilon(1e-15));
  for (double th : {0.1, oracle::kPi / 8, oracle::kPi / 4, 1.2, oracle::kPi / 2}) {
    CAPTURE(th);
    CHECK(oracle::rel_err(cap_measure(th, 2), 2.0 * th) <= 1e-14);
    CHECK(oracle::rel_err(cap_measure(th, 3), 2.0 * oracle::kPi * (1.0 - std::cos(th))) <= 1e-14);
    CHECK(oracle::rel_err(cap_measure(th, 4), 4.0 * oracle::kPi * (th / 2 - std::sin(2 * th) / 4)) <= 1e-13);
    CHECK(oracle::rel_err(cone_measure({th, 1.7}, 3), cap_measure(th, 3) * std::pow(1.7, 3) / 3) <= 1e-15);
  }
  CHECK(cap_measure(oracle::kPi / 2, 3) == doctest::Approx(unit_sphere_area(3) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(cap_measure(0.0, 2), DomainError);
  CHECK_THROWS_AS(cap_measure(2.0, 2), DomainError);
}

TEST_CASE("alpha_pq") {
  CHECK(alpha_pq({1.0, kInf, 2}) == doctest::Approx(0.5));
  CHECK(alpha_pq({1.0, 4.0, 2}) == doctest::Approx(1.0 / 3.0));
  CHECK(alpha_pq({2.0, 4.0, 2}) == doctest::Approx(1.0));
  CHECK(alpha_pq({1.5, 6.0, 3}) == doctest::Approx(1.5 * 3.0 / (3.0 * 4.5)));
  CHECK_THROWS_AS(alpha_pq({3.0, 4.0, 2}), DomainError);
  CHECK_THROWS_AS(alpha_pq({1.0, 2.0, 2}), DomainError);
}

TEST_CASE("Morrey constants: beta integral oracle and the p = inf limit") {
  for (int N : {2, 3}) {
    for (double p : {N + 0.5, N + 1.0, 2.0 * N, 10.0}) {
      CAPTURE(N);
      CAPTURE(p);
      const double pc = p / (p - 1.0);
      const double integral = oracle::tanh_sinh_01([&](double t, double s) {
        return std::pow(s, pc) * std::pow(t, -(N - 1.0) / N * pc);
      });
      CHECK(oracle::rel_err(morrey_cone_constant(p, N, 1.3), 1.3 / N * std::pow(integral, 1.0 / pc)) <= 1e-12);
    }
    CHECK(oracle::rel_err(morrey_cone_constant(kInf, N, 2.0), 2.0 * N / (N + 1.0)) <= 1e-14);
    CHECK(oracle::rel_err(morrey_domain_constant(kInf, N, 0.4), N / (N + 1.0)) <= 1e-14);
  }
  CHECK(morrey_cone_constant(1e9, 2, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK_THROWS_AS(morrey_cone_constant(2.0, 2, 1.0), DomainError);
  CHECK_THROWS_AS(morrey_domain_constant(1.5, 2, 0.5), DomainError);
}

TEST_CASE("two_term_minimize examples") {
  SUBCASE("single decaying term") {
    const auto r = two_term_minimize(2.0, 0.0, 0.5, -0.5, 1.0, TwoTermMode::Power);
    CHECK(r.sigma == 0.0);
    CHECK(r.value == 0.0);
  }
  SUBCASE("unconstrained minimum beyond a") {
    const auto r = two_term_minimize(1.0, 1.0, 0.5, -0.5, 1.0, TwoTermMode::Power);
    double arg = 0;
    const double g = oracle::grid_min([](double s) { return std::sqrt(s) + 1.0 / std::sqrt(s); }, 1e-6, 1.0,
                                      1000000, &arg);
    CHECK(r.sigma == doctest::Approx(1.0));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(r.value - g) <= 1e-9);
  }
  SUBCASE("interior power minimum") {
    const auto r = two_term_minimize(4.0, 1.0, 1.0, -1.0, 1.0, TwoTermMode::Power);
    CHECK(r.sigma == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("log mode: A = 10 B has an interior minimum") {
    const auto r = two_term_minimize(10.0, 1.0, 1.0, 0.0, 1.0, TwoTermMode::Log);
    const double g = oracle::grid_min([](double s) { return 10.0 * s - std::log(s); }, 1e-7, 1.0 / M_E, 1000000);
    CHECK(r.sigma == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(r.value - g) <= 1e-9);
  }
  SUBCASE("log mode: A = e B puts the minimum at sigma = a/e") {
    const auto r = two_term_minimize(M_E, 1.0, 1.0, 0.0, 1.0, TwoTermMode::Log);
    const double g = oracle::grid_min([](double s) { return M_E * s - std::log(s); }, 1e-7, 1.0 / M_E, 1000000);
    CHECK(r.sigma == doctest::Approx(1.0 / M_E).epsilon(1e-9));
    CHECK(std::abs(r.value - g) <= 1e-9);
  }
  SUBCASE("p = 1 endpoint: expA/expB from q = inf, N = 2") {
    const auto r = two_term_minimize(2.0, 1.0, 1.0, -1.0, 1.0, TwoTermMode::Power);
    CHECK(r.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(two_term_minimize(-1.0, 1.0, 1.0, -1.0, 1.0, TwoTermMode::Power), DomainError);
  CHECK_THROWS_AS(two_term_minimize(1.0, 1.0, 1.0, 0.5, 1.0, TwoTermMode::Power), DomainError);
}

TEST_CASE("oscillation_bound") {
  const double theta = oracle::kPi / 4, a = 1.0, vol = oracle::kPi;
  CHECK(oscillation_bound({0.0, 0.0}, {1.0, kInf, 2}, theta, a, vol) == 0.0);
  CHECK(oscillation_bound({0.0, 0.0}, {2.0, kInf, 2}, theta, a, vol) == 0.0);
  CHECK(oscillation_bound({0.0, 0.0}, {4.0, kInf, 2}, theta, a, vol) == 0.0);

  SUBCASE("p > N is twice the pointwise domain constant") {
    CHECK(oscillation_bound({1.0, 0.0}, {kInf, kInf, 2}, theta, a, vol) == doctest::Approx(4.0 / 3.0));
    CHECK(oscillation_bound({2.0, 0.0}, {4.0, kInf, 2}, theta, 0.5, vol) ==
          doctest::Approx(2.0 * morrey_domain_constant(4.0, 2, theta) * std::sqrt(0.5) * std::pow(vol, 0.25) * 2.0));
  }
  SUBCASE("p < N against a direct sigma sweep") {
    const double np = 0.8, nq = 1.3;
    const double ratio = vol / cone_measure({theta, a}, 2);
    const double A = 2.0 * nq, B = std::pow(ratio, 1.0) * np;  // coef_q(2, inf) = 2, coef_p(2, 1) = 1
    const double g = oracle::grid_min([&](double t) { return A * t + B / t; }, 1e-6, 1.0, 1000000);
    CHECK(std::abs(oscillation_bound({np, nq}, {1.0, kInf, 2}, theta, a, vol) - 2.0 * (a / 2) * g) <= 1e-8);
  }
  SUBCASE("p = N = 2, q = inf against a direct sigma sweep, monotone in sigma") {
    const double n2 = 1.0, ninf = 1.0;
    const double ratio = vol / cone_measure({theta, a}, 2);
    auto obj = [&](double t) { return ninf * t + std::sqrt(ratio) * n2 * std::log(1.0 / t); };
    double arg = 0;
    const double g = oracle::grid_min(obj, 1e-7, 1.0 / M_E, 1000000, &arg);
    const double bound = oscillation_bound({n2, ninf}, {2.0, kInf, 2}, theta, a, vol);
    CHECK(std::abs(bound - 2.0 * a * g) <= 1e-8);
    for (double t = arg; t <= 1.0 / M_E; t += 0.01) CHECK(2.0 * a * obj(t) >= bound - 1e-12);
  }
  CHECK_THROWS_AS(oscillation_bound({1.0, 1.0}, {1.0, 2.0, 2}, theta, a, vol), DomainError);
  CHECK_THROWS_AS(oscillation_bound({-1.0, 1.0}, {1.0, kInf, 2}, theta, a, vol), DomainError);
}

TEST_CASE("psi_profile closed forms and limits") {
  for (double s : {0.0, 1e-3, 0.2, 2.0}) {
    CHECK(psi_profile(s, 2, Regularity::C2) == s);
    CHECK(psi_profile(s, 3, Regularity::C2Gamma) == s);
  }
  CHECK(psi_profile(0.01, 4, Regularity::C2) == doctest::Approx(0.01 * std::log(100.0)));
  CHECK(psi_profile(0.9, 4, Regularity::C2) == doctest::Approx(0.9));
  for (int N : {5, 6, 9}) {
    CAPTURE(N);
    const double s = 0.05;
    CHECK(psi_profile(s, N, Regularity::C2Gamma) == doctest::Approx(std::pow(s, 4.0 / N)).epsilon(1e-14));
    const double q = 3.0 * N;
    const double tau = 4.0 / N - 2.0 * (N - 4.0) / (N * (q - 2.0));
    CHECK(psi_profile(s, N, Regularity::C2, q) == doctest::Approx(std::pow(s, tau)).epsilon(1e-14));
    // q -> inf recovers tau = 4/N
    CHECK(psi_profile(s, N, Regularity::C2, 1e12) == doctest::Approx(std::pow(s, 4.0 / N)).epsilon(1e-10));
    CHECK(psi_profile(s, N, Regularity::C2, kInf) == doctest::Approx(std::pow(s, 4.0 / N)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(psi_profile(-0.1, 2, Regularity::C2), DomainError);
  CHECK_THROWS_AS(psi_profile(0.1, 1, Regularity::C2), DomainError);
  CHECK_THROWS_AS(psi_profile(0.1, 6, Regularity::C2, 5.0), DomainError);
}

TEST_CASE("serrin_profile_exponent closed forms and limits") {
  for (int N : {4, 5, 8}) {
    CAPTURE(N);
    CHECK(serrin_profile_exponent(N, kInf, Regularity::C2) == doctest::Approx(4.0 / (N + 1.0)).epsilon(1e-15));
    CHECK(serrin_profile_exponent(N, 7.0, Regularity::C2Gamma) == doctest::Approx(4.0 / (N + 1.0)).epsilon(1e-15));
    const double q = 2.0 * N;
    CHECK(serrin_profile_exponent(N, q, Regularity::C2) == doctest::Approx(3.0 / N).epsilon(1e-14));
    CHECK(serrin_profile_exponent(N, 1e12, Regularity::C2) == doctest::Approx(4.0 / (N + 1.0)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(serrin_profile_exponent(3, kInf, Regularity::C2), DomainError);
  CHECK_THROWS_AS(serrin_profile_exponent(5, 4.0, Regularity::C2), DomainError);
}

TEST_CASE("gradient and depth bounds") {
  CHECK(gradient_bound_M(2, 2.0, 1.0) == doctest::Approx(9.0));
  CHECK(min_depth_bound(2, 1.0, 2.0, 1.0, true) == doctest::Approx(1.0 / std::sqrt(2.0)));
  // 1 + (N^2-1)/(2N) t (1+t) with t = 2: 1 + 0.75 * 6 = 5.5
  CHECK(min_depth_bound(2, 1.0, 2.0, 1.0, false) == doctest::Approx(1.0 / std::sqrt(2.0 * 5.5)));
  CHECK(min_depth_bound(3, 1.0, 2.0, 1.0, false) < min_depth_bound(3, 1.0, 2.0, 1.0, true));
  CHECK_THROWS_AS(gradient_bound_M(2, 0.0, 1.0), DomainError);
}

TEST_CASE("weighted Poincare range and constant") {
  CHECK(weighted_poincare_admissible(2, 4.0, 2.0, 0.5));
  CHECK(weighted_poincare_admissible(2, 6.0, 1.5, 0.0));
  CHECK_FALSE(weighted_poincare_admissible(2, 4.5, 2.0, 0.5));
  CHECK_FALSE(weighted_poincare_admissible(2, 4.0, 2.0, 0.0));
  CHECK_FALSE(weighted_poincare_admissible(2, 1.0, 2.0, 0.5));
  DomainScalars s{2, oracle::kPi, 2 * oracle::kPi, 2.0, 1.0, 2.0, 1.0};
  const double c1 = weighted_poincare_structural_constant(2, 4.0, 2.0, 0.5, s, true, 1.0);
  CHECK(c1 == doctest::Approx(std::pow(oracle::kPi, 0.25) * 4.0));
  CHECK(weighted_poincare_structural_constant(2, 4.0, 2.0, 0.5, s, true, 3.0) == doctest::Approx(3.0 * c1));
  CHECK(weighted_poincare_structural_constant(2, 4.0, 2.0, 0.5, s, false, 1.0) > c1);
  CHECK_THROWS_AS(weighted_poincare_structural_constant(2, 9.0, 2.0, 0.5, s, true), DomainError);
}

TEST_CASE("constant table and domain scalar consistency") {
  DomainScalars s{2, oracle::kPi, 2 * oracle::kPi, 2.0, 1.0, 2.0, 1.0};
  CHECK(s.violations().empty());
  DomainScalars bad = s;
  bad.inradius = 1.5;
  CHECK_FALSE(bad.violations().empty());
  for (int N : {2, 3}) {
    const auto t = constant_table(N, s);
    CHECK(t.size() >= 10);
    for (const auto& r : t) {
      CAPTURE(r.name);
      CHECK(std::isfinite(r.value));
      CHECK_FALSE(r.provenance.empty());
    }
  }
}

TEST_CASE("exponent helpers") {
  CHECK(conjugate(2.0) == 2.0);
  CHECK(conjugate(1.0) == kInf);
  CHECK(conjugate(kInf) == 1.0);
  CHECK(reciprocal(kInf) == 0.0);
  CHECK(format_exponent(kInf) == "inf");
  CHECK(format_exponent(1.5) == "1.5");
}
