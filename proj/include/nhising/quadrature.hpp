#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "nhising/errors.hpp"

namespace nhising {

using cplx = std::complex<double>;

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double vnorm(double x) { return std::abs(x); }
inline double vnorm(const cplx& x) { return std::abs(x); }

template <class T, class F>
void gk15(const F& f, double a, double b, T& integral, double& error) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);

  const T fc = f(c);
  T resk = kGK15WeightsK[7] * fc;
  T resg = kGK15WeightsG[3] * fc;
  double resabs = kGK15WeightsK[7] * vnorm(fc);
  T fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kGK15Nodes[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    resk += kGK15WeightsK[j] * (f1 + f2);
    resabs += kGK15WeightsK[j] * (vnorm(f1) + vnorm(f2));
    if (j % 2 == 1) resg += kGK15WeightsG[j / 2] * (f1 + f2);
  }
  const T mean = resk * 0.5;
  double resasc = kGK15WeightsK[7] * vnorm(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kGK15WeightsK[j] * (vnorm(fv[j] - mean) + vnorm(fv[14 - j] - mean));

  integral = resk * hl;
  resabs *= std::abs(hl);
  resasc *= std::abs(hl);
  double err = vnorm(resk - resg) * std::abs(hl);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(eps50 * resabs, err);
  error = err;
}

template <class T>
struct Segment {
  double a, b;
  T integral;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive GK15 over the union of [breaks[i], breaks[i+1]].
// Absolute tolerance; QuadratureFailure when the error cannot be met.
template <class T, class F>
T adaptive_gk(const F& f, const std::vector<double>& breaks, double abs_tol,
              int max_segments = 4000) {
  std::priority_queue<detail::Segment<T>> heap;
  T total{};
  double total_err = 0.0;
  int nseg = 0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    detail::Segment<T> s{breaks[i], breaks[i + 1], T{}, 0.0};
    detail::gk15(f, s.a, s.b, s.integral, s.error);
    total += s.integral;
    total_err += s.error;
    heap.push(s);
    ++nseg;
  }
  while (!(total_err <= abs_tol)) {
    if (!std::isfinite(total_err) || !std::isfinite(detail::vnorm(total)))
      throw QuadratureFailure("adaptive_gk: integrand not finite");
    if (nseg >= max_segments)
      throw QuadratureFailure("adaptive_gk: error target not reached");
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw QuadratureFailure("adaptive_gk: interval too small to bisect");
    detail::Segment<T> left{worst.a, mid, T{}, 0.0}, right{mid, worst.b, T{}, 0.0};
    detail::gk15(f, left.a, left.b, left.integral, left.error);
    detail::gk15(f, right.a, right.b, right.integral, right.error);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++nseg;
  }
  return total;
}

template <class T, class F>
T adaptive_gk(const F& f, double a, double b, double abs_tol, int max_segments = 4000) {
  return adaptive_gk<T>(f, std::vector<double>{a, b}, abs_tol, max_segments);
}

// Breakpoint list for integrands carrying sin(kx)/cos(kx) factors: panel
// width pi/max(8, x/2) resolves the fastest oscillation; interior_cuts are
// inserted exactly (integrand kinks such as k = q).
std::vector<double> oscillatory_breaks(double a, double b, double osc_x,
                                       const std::vector<double>& interior_cuts = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double osc_x, double abs_tol,
                             const std::vector<double>& interior_cuts = {});

cplx integrate_oscillatory_c(const std::function<cplx(double)>& f, double a, double b,
                             double osc_x, double abs_tol,
                             const std::vector<double>& interior_cuts = {});

}  // namespace nhising
