#include <doctest.h>

#include <cmath>
#include <random>

#include "nhising/specfun.hpp"

using namespace nhising;

namespace {

// Arithmetic-geometric-mean oracle for K(m), real m < 1.
double agm_k(double m) {
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

// Power-series oracle for the complete E(m), |m| < 1.
cplx series_e(cplx m) {
  cplx sum = 1.0;
  double ratio = 1.0;  // ((2n-1)!!/(2n)!!)^2 accumulated
  cplx mp = 1.0;
  for (int n = 1; n <= 64; ++n) {
    ratio *= (2.0 * n - 1.0) / (2.0 * n);
    mp *= m;
    sum -= ratio * ratio * mp / (2.0 * n - 1.0);
  }
  return M_PI / 2.0 * sum;
}

// Bisection oracle for w e^w = x on the principal branch.
double bisect_w(double x) {
  double lo = -1.0, hi = 1000.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("complete elliptic integrals, degenerate parameters") {
  CHECK(std::abs(elliptic_e(cplx(M_PI / 2.0), cplx(0.0)) - M_PI / 2.0) < 1e-14);
  CHECK(std::abs(elliptic_e(cplx(M_PI / 2.0), cplx(1.0)) - 1.0) < 1e-14);
  CHECK(std::abs(elliptic_k(cplx(0.0)) - M_PI / 2.0) < 1e-14);
  CHECK_THROWS_AS(elliptic_k(cplx(1.0)), PoleAtOne);
}

TEST_CASE("K against the AGM oracle") {
  CHECK(elliptic_k(cplx(-1.0)).real() == doctest::Approx(agm_k(-1.0)).epsilon(1e-13));
  CHECK(elliptic_k(cplx(-1.0)).real() == doctest::Approx(1.3110287771).epsilon(1e-9));
  CHECK(elliptic_k(cplx(0.25)).real() == doctest::Approx(agm_k(0.25)).epsilon(1e-13));
  CHECK(elliptic_k(cplx(0.25)).real() == doctest::Approx(1.6857503548).epsilon(1e-9));
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> um(-10.0, 0.99);
  for (int i = 0; i < 100; ++i) {
    const double m = um(gen);
    CHECK(std::abs(elliptic_k(cplx(m)).real() - agm_k(m)) < 1e-10 * agm_k(m));
  }
}

TEST_CASE("complex-parameter E against the series oracle") {
  const cplx m(0.5, 0.3);
  CHECK(std::abs(elliptic_e(m) - series_e(m)) < 1e-12);
  // keep |m| <= 0.6 so the 64-term series tail sits below 1e-13
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-0.42, 0.42);
  for (int i = 0; i < 100; ++i) {
    const cplx mm(u(gen), u(gen));
    CHECK(std::abs(elliptic_e(mm) - series_e(mm)) < 1e-10);
  }
}

TEST_CASE("incomplete E at m = 0 equals the amplitude") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> up(0.0, M_PI / 2.0);
  for (int i = 0; i < 50; ++i) {
    const double phi = up(gen);
    CHECK(std::abs(elliptic_e(cplx(phi), cplx(0.0)) - phi) < 1e-13);
  }
}

TEST_CASE("incomplete E consistency: E(pi/2|m) matches the complete value") {
  const cplx m(-2.0, 1.5);
  CHECK(std::abs(elliptic_e(cplx(M_PI / 2.0), m) - elliptic_e(m)) < 1e-12);
}

TEST_CASE("lambert W0") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(10.0) == doctest::Approx(bisect_w(10.0)).epsilon(1e-12));
  CHECK(lambert_w0(10.0) == doctest::Approx(1.7455280027).epsilon(1e-9));
  CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
  // residual bound across the domain
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> ux(-0.36, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(gen);
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-13 * std::max(1.0, std::abs(x)));
  }
  // asymptotic approach to ln z - ln ln z, monotone in the decade
  double prev = 1e9;
  for (int j = 3; j <= 8; ++j) {
    const double z = std::pow(10.0, j);
    const double w = lambert_w0(z);
    const double rel = std::abs(w - (std::log(z) - std::log(std::log(z)))) / w;
    CHECK(rel < prev);
    prev = rel;
  }
}
