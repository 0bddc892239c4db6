#include "nhising/specfun.hpp"

#include <cmath>
#include <limits>

namespace nhising {

namespace {

constexpr int kMaxDuplications = 100;
// Relative spread at which the 6th-order Taylor tail is below 1e-16.
constexpr double kSpreadTolSq = 1e-6;

double magsq(cplx z) { return std::norm(z); }

double spread_sq(cplx a, cplx x, cplx y, cplx z) {
  return std::max({magsq(a - x), magsq(a - y), magsq(a - z)}) / magsq(a);
}

}  // namespace

// Duplication algorithm of Carlson; the arguments contract geometrically
// toward their mean, then a fifth-order Taylor tail is added.
cplx carlson_rf(cplx x, cplx y, cplx z) {
  cplx a = (x + y + z) / 3.0;
  int it = 0;
  while (spread_sq(a, x, y, z) > kSpreadTolSq) {
    if (++it > kMaxDuplications)
      throw NonConvergence("carlson_rf: duplication failed to contract");
    const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const cplx lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
  }
  const cplx dx = (a - x) / a, dy = (a - y) / a, dz = (a - z) / a;
  const cplx e2 = dx * dy + dy * dz + dz * dx;
  const cplx e3 = dx * dy * dz;
  const cplx s = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
  return s / std::sqrt(a);
}

cplx carlson_rd(cplx x, cplx y, cplx z) {
  cplx sum = 0.0;
  double fac = 1.0;
  cplx a = (x + y + 3.0 * z) / 5.0;
  int it = 0;
  while (spread_sq(a, x, y, z) > kSpreadTolSq) {
    if (++it > kMaxDuplications)
      throw NonConvergence("carlson_rd: duplication failed to contract");
    const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const cplx lam = sx * sy + sy * sz + sz * sx;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
  }
  const cplx dx = (a - x) / a, dy = (a - y) / a;
  const cplx dz = -(dx + dy) / 3.0;
  const cplx ea = dx * dy;
  const cplx eb = dz * dz;
  const cplx ec = ea - eb;
  const cplx ed = ea - 6.0 * eb;
  const cplx ee = ed + ec + ec;
  const cplx s = 1.0 +
                 ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (9.0 / 52.0) * dz * ee) +
                 dz * (ee / 6.0 + dz * (-(9.0 / 22.0) * ec + (3.0 / 26.0) * dz * ea));
  return 3.0 * sum + fac * s / (a * std::sqrt(a));
}

cplx elliptic_e(cplx phi, cplx m) {
  const cplx s = std::sin(phi);
  const cplx c = std::cos(phi);
  if (std::abs(m - 1.0) < 1e-14) return s;  // E(phi|1) = sin(phi)
  const cplx s2 = s * s;
  const cplx c2 = c * c;
  const cplx y = 1.0 - m * s2;
  return s * carlson_rf(c2, y, 1.0) - (m / 3.0) * s * s2 * carlson_rd(c2, y, 1.0);
}

cplx elliptic_e(cplx m) {
  if (std::abs(m - 1.0) < 1e-14) return 1.0;
  return carlson_rf(0.0, 1.0 - m, 1.0) - (m / 3.0) * carlson_rd(0.0, 1.0 - m, 1.0);
}

cplx elliptic_k(cplx m) {
  if (std::abs(m - 1.0) < 1e-14) throw PoleAtOne("elliptic_k: pole at m = 1");
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144233;  // 1/e
  if (!(x >= -kInvE)) throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.3) {
    // Series around the branch point w = -1.
    const double pp = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    w = -1.0 + pp - pp * pp / 3.0 + 11.0 / 72.0 * pp * pp * pp;
  } else if (x < std::exp(1.0)) {
    w = x / (1.0 + x);  // crude but inside the Halley basin
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double r = w * ew - x;
    if (std::abs(r) <= 1e-14 * std::max(1.0, std::abs(x))) return w;
    const double d1 = ew * (w + 1.0);
    const double step = r / (d1 - (w + 2.0) * r / (2.0 * w + 2.0));
    w -= step;
  }
  const double r = w * std::exp(w) - x;
  if (std::abs(r) <= 1e-13 * std::max(1.0, std::abs(x))) return w;
  throw NonConvergence("lambert_w0: Halley iteration stalled");
}

}  // namespace nhising
