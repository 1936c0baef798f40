#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "inflow/numerics.hpp"

using namespace inflow;

TEST_CASE("incomplete gamma matches boost across the series/fraction split") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.5, 40.0), ux(0.0, 80.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = ua(rng), x = ux(rng);
    const double p = num::gamma_p(a, x), q = num::gamma_q(a, x);
    CHECK(p == doctest::Approx(boost::math::gamma_p(a, x)).epsilon(1e-12));
    if (boost::math::gamma_q(a, x) > 1e-300) {
      CHECK(q == doctest::Approx(boost::math::gamma_q(a, x)).epsilon(1e-11));
    }
  }
  CHECK(num::gamma_p(21.0, 0.0) == 0.0);
  CHECK_THROWS_AS(num::gamma_p(-1.0, 1.0), Error);
}

TEST_CASE("quadrature of smooth and peaked integrands") {
  CHECK(num::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(num::integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  // y^20 e^-y / 20! peaks at 20 and integrates to P(21, 60)
  const double lg = std::lgamma(21.0);
  const double v = num::integrate([&](double y) { return std::exp(20.0 * std::log(y) - y - lg); }, 1e-300, 60.0);
  CHECK(v == doctest::Approx(boost::math::gamma_p(21.0, 60.0)).epsilon(1e-12));
  CHECK(num::integrate([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("bisection") {
  const double r = num::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(num::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), Error);
}

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double v : x) y.push_back(3.0 - 0.5 * v);
  const auto f = num::fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.5));
  CHECK(f.intercept == doctest::Approx(3.0));
  CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("Dormand-Prince hits targets exactly and keeps relative accuracy") {
  using DP = num::DormandPrince<2>;
  // harmonic oscillator
  DP dp([](double, const DP::State& y) { return DP::State{y[1], -y[0]}; }, 1e-11, 1e-14);
  double x = 0.0, h = 0.0;
  DP::State y{1.0, 0.0};
  for (int k = 1; k <= 10; ++k) {
    dp.advance(x, y, 0.7 * k, h);
    CHECK(x == 0.7 * k);
    CHECK(y[0] == doctest::Approx(std::cos(x)).epsilon(1e-9));
  }
  // exponential decay over many e-folds with tiny atol
  num::DormandPrince<1> e([](double, const num::DormandPrince<1>::State& z) {
    return num::DormandPrince<1>::State{-2.0 * z[0]};
  }, 1e-10, 1e-300);
  double s = 0.0, hs = 0.0;
  num::DormandPrince<1>::State z{1.0};
  e.advance(s, z, 15.0, hs);
  CHECK(z[0] == doctest::Approx(std::exp(-30.0)).epsilon(1e-8));
}
