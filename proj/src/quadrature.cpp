#include "nhising/quadrature.hpp"

namespace nhising {

std::vector<double> oscillatory_breaks(double a, double b, double osc_x,
                                       const std::vector<double>& interior_cuts) {
  const double width = M_PI / std::max(8.0, 0.5 * std::abs(osc_x));
  std::vector<double> breaks;
  breaks.push_back(a);
  for (double c : interior_cuts)
    if (c > a && c < b) breaks.push_back(c);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());

  std::vector<double> out;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    for (int j = 0; j < n; ++j) out.push_back(lo + (hi - lo) * j / n);
  }
  out.push_back(b);
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  return adaptive_gk<double>(f, a, b, abs_tol);
}

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double osc_x, double abs_tol,
                             const std::vector<double>& interior_cuts) {
  return adaptive_gk<double>(f, oscillatory_breaks(a, b, osc_x, interior_cuts),
                             abs_tol);
}

cplx integrate_oscillatory_c(const std::function<cplx(double)>& f, double a, double b,
                             double osc_x, double abs_tol,
                             const std::vector<double>& interior_cuts) {
  return adaptive_gk<cplx>(f, oscillatory_breaks(a, b, osc_x, interior_cuts), abs_tol);
}

}  // namespace nhising
