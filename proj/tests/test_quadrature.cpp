#include <doctest.h>

#include <cmath>

#include "nhising/quadrature.hpp"

using namespace nhising;

TEST_CASE("smooth integrand") {
  const double v = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand with known antiderivative") {
  // int_0^pi k sin(40 k) dk = -pi cos(40 pi)/40 + sin(40 pi)/1600
  const double exact = -M_PI * std::cos(40.0 * M_PI) / 40.0;
  const double v = integrate_oscillatory(
      [](double k) { return k * std::sin(40.0 * k); }, 0.0, M_PI, 40.0, 1e-12);
  CHECK(v == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("interior kink handled by explicit cut") {
  auto f = [](double k) { return std::abs(k - 1.0); };
  const double v = integrate_oscillatory(f, 0.0, 2.0, 1.0, 1e-13, {1.0});
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complex integrand") {
  auto f = [](double k) { return std::exp(cplx(0.0, 3.0) * k); };
  const cplx v = integrate_oscillatory_c(f, 0.0, M_PI, 3.0, 1e-13);
  const cplx exact = (std::exp(cplx(0.0, 3.0 * M_PI)) - 1.0) / cplx(0.0, 3.0);
  CHECK(std::abs(v - exact) < 1e-12);
}

TEST_CASE("failure on a genuinely singular integrand") {
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10),
                  QuadratureFailure);
}
