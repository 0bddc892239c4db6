#include "nhising/krylov.hpp"

#include <cmath>

#include "nhising/correlations.hpp"
#include "nhising/evolution.hpp"
#include "nhising/quadrature.hpp"
#include "nhising/specfun.hpp"

namespace nhising {

namespace {

double mode_weight(double k, const ModelParams& p) {
  return bogoliubov_coeffs(k, p).w;
}

// |A_+(k;t)|^2 / (1 + |A_+|^2) through D = exp(-2 i Lambda t), overflow-free.
double mode_spread_t(double k, double t, const ModelParams& p) {
  const auto [Rx, Rz] = bloch_vector(k, p);
  const cplx lam = lambda_spectrum(k, p).lambda();
  const cplx D = std::exp(cplx(0.0, -2.0) * lam * t);
  const cplx num = -(Rx / lam) * (1.0 - D);
  const cplx den = (1.0 + D) + (Rz / lam) * (1.0 - D);
  const double n2 = std::norm(num);
  return n2 / (std::norm(den) + n2);
}

double spread_quadrature(const ModelParams& p) {
  std::vector<double> cuts;
  if (p.h <= p.J) cuts.push_back(soft_mode_q(p));
  auto f = [&](double k) { return mode_weight(k, p); };
  return integrate_oscillatory(f, 0.0, M_PI, 1.0, 1e-12, cuts) / M_PI;
}

double spread_closed_form(const ModelParams& p) {
  const double J = p.J, h = p.h, g = p.gamma;
  if (g == 0.0) {
    if (h <= J) return 0.5 + 1.0 / M_PI;
    const double m = -4.0 * h * J / ((h - J) * (h - J));
    const double E = elliptic_e(cplx(m)).real();
    const double K = elliptic_k(cplx(m)).real();
    return 0.5 + ((h - J) / h * E + (h + J) / h * K) / (2.0 * M_PI);
  }
  const cplx den = cplx(4.0 * (h - J), g);
  const cplx zeta = -16.0 * J * cplx(4.0 * h, g) / (den * den);
  // One prefactor serves both phases on the principal elliptic branch; the
  // k-integral of Lambda validates this to 1e-10 across the plane.
  const cplx pref = 1.0 + cplx(0.0, 4.0 * (J - h) / g);
  if (g <= gamma_critical(p)) {
    const double q = soft_mode_q(p);
    const cplx val = pref * (elliptic_e(zeta) - 2.0 * elliptic_e(cplx(0.5 * q), zeta));
    return 0.5 - val.real() / M_PI;
  }
  return 0.5 + (pref * elliptic_e(zeta)).real() / M_PI;
}

}  // namespace

SpreadValue spread_density_infinite(const ModelParams& p, SpreadMethod method) {
  switch (method) {
    case SpreadMethod::Quadrature:
      return {spread_quadrature(p), method};
    case SpreadMethod::Contraction: {
      const ModelParams pe =
          (p.gamma > 0.0) ? p : ModelParams{p.J, p.h, 1e-8 * p.J};
      return {0.5 * (1.0 + contraction_ba(0, pe)), method};
    }
    case SpreadMethod::ClosedForm:
      return {spread_closed_form(p), method};
  }
  throw DomainError("spread_density_infinite: unknown method");
}

std::vector<DerivativeSample> spread_derivative_scan(const ModelParams& base,
                                                     Axis axis, double from,
                                                     double to, int steps) {
  if (steps < 1) throw DomainError("spread_derivative_scan: steps >= 1");
  auto eval = [&](double v) {
    ModelParams p = base;
    (axis == Axis::H ? p.h : p.gamma) = v;
    return spread_closed_form(p);
  };
  std::vector<DerivativeSample> out;
  out.reserve(steps);
  const double spacing =
      (steps > 1) ? std::abs(to - from) / (steps - 1) : std::abs(to - from);
  for (int i = 0; i < steps; ++i) {
    const double v = (steps == 1) ? from : from + (to - from) * i / (steps - 1);
    const double edge = std::min(std::abs(v - from), std::abs(v - to));
    const double s = std::clamp(0.1 * std::max(edge, 0.5 * spacing),
                                1e-8 * base.J, 1e-4 * base.J);
    const double cp = eval(v + s), c0 = eval(v), cm = eval(v - s);
    const double d2raw = cp - 2.0 * c0 + cm;
    const double noise =
        std::numeric_limits<double>::epsilon() * std::max({cp, c0, cm, 1e-300});
    double d2 = d2raw / (s * s);
    if (std::abs(d2raw) <= 100.0 * noise) {
      d2 = 0.0;  // flat to machine resolution
    } else if (noise / std::abs(d2raw) > 1e-6) {
      throw StepTooSmall("spread_derivative_scan: second difference lost to roundoff");
    }
    out.push_back({v, (cp - cm) / (2.0 * s), d2});
  }
  return out;
}

double spread_density_time(double t, const ModelParams& p, double abs_tol) {
  if (!is_gapped(p)) throw GaplessPhase("spread_density_time: gapped phase required");
  if (t < 0.0) throw DomainError("spread_density_time: t >= 0");
  std::vector<double> cuts;
  if (p.h <= p.J) cuts.push_back(soft_mode_q(p));
  const double osc = std::max(1.0, 4.0 * (p.J + p.h + p.gamma) * t);
  auto f = [&](double k) { return mode_spread_t(k, t, p); };
  return integrate_oscillatory(f, 0.0, M_PI, osc, abs_tol, cuts) / M_PI;
}

double spread_gapless_time_avg(const ModelParams& p, int N, double horizon) {
  if (!(p.h < p.J) || !(p.gamma > 0.0) || !(p.gamma < gamma_critical(p)))
    throw GappedPhase("spread_gapless_time_avg: requires the gapless phase");
  if (N < 4 || N % 2 != 0)
    throw DomainError("spread_gapless_time_avg: N must be even and >= 4");

  const double q = soft_mode_q(p);
  std::vector<double> modes;  // K^+ without the pair bracketing q
  int jq = -1;
  double best = 1e300;
  std::vector<double> kplus(N / 2);
  for (int j = 1; j <= N / 2; ++j) {
    kplus[j - 1] = (2.0 * j - 1.0) * M_PI / N;
    const double d = std::abs(kplus[j - 1] - q);
    if (d < best) {
      best = d;
      jq = j - 1;
    }
  }
  for (int j = 0; j < N / 2; ++j)
    if (j != jq) modes.push_back(kplus[j]);

  const double t_star = stationary_time(p, modes).t_star;
  if (!(horizon > t_star))
    throw DomainError("spread_gapless_time_avg: horizon below t_star");

  const double Eq = lambda_spectrum(q, p).E;
  const double lq = std::atan(p.gamma / (2.0 * Eq));
  auto total_spread = [&](double t) {
    const double sq = std::sin(Eq * t);
    const double cq = std::cos(Eq * t + lq);
    double c = 2.0 * sq * sq / (sq * sq + cq * cq);
    for (double k : modes) c += 2.0 * mode_spread_t(k, t, p);
    return c;
  };

  const double lam_max = 2.0 * std::sqrt((p.J + p.h) * (p.J + p.h) +
                                         p.gamma * p.gamma / 16.0);
  const double dt = std::min((horizon - t_star) / 400.0, 0.05 * M_PI / lam_max);
  const int n = static_cast<int>(std::ceil((horizon - t_star) / dt));
  double acc = 0.0;  // trapezoid
  for (int i = 0; i <= n; ++i) {
    const double t = t_star + (horizon - t_star) * i / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * total_spread(t);
  }
  return acc / n / N;
}

BulkSaddle bulk_saddle(const ModelParams& p) {
  if (!is_gapped(p)) throw GaplessPhase("bulk_saddle: gapped phase required");
  BulkSaddle s{};
  s.kbar = slowest_mode_kbar(p);

  // 7-point central stencils, step 1e-4.
  const double hstep = 1e-4;
  double Ev[7], Gv[7];
  for (int i = -3; i <= 3; ++i) {
    const auto sp = lambda_spectrum(s.kbar + i * hstep, p);
    Ev[i + 3] = sp.E;
    Gv[i + 3] = sp.Gamma;
  }
  auto d1 = [&](const double* f) {
    return (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) /
           (60.0 * hstep);
  };
  auto d2 = [&](const double* f) {
    return (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] -
            27.0 * f[5] + 2.0 * f[6]) /
           (180.0 * hstep * hstep);
  };
  s.E = Ev[3];
  s.Gamma = Gv[3];
  s.Ep = d1(Ev);
  s.Epp = d2(Ev);
  s.Gpp = d2(Gv);
  s.Lpp_abs = std::hypot(s.Epp, s.Gpp);

  const double g = p.gamma;
  const double G = s.Gamma;
  s.X = (2.0 * G / (g * M_PI)) * (0.5 - G / g) / (0.5 + G / g);
  const double hc = p.h - p.J * std::cos(s.kbar);
  s.Y = -(2.0 / (g * M_PI)) * (0.5 - G / g) *
        (cplx(g * hc, -G * G) / cplx(2.0 * hc, -G));
  s.gamma_y = 2.0 * G + s.Ep * s.Ep * s.Gpp / (s.Lpp_abs * s.Lpp_abs);
  s.omega_y = 2.0 * s.E - s.Ep * s.Ep * s.Epp / (s.Lpp_abs * s.Lpp_abs);
  return s;
}

namespace {

double boundary_i0(double t, const ModelParams& p) {
  return -std::sqrt(16.0 * (p.h - p.J) * (p.h - p.J) + p.gamma * p.gamma) /
         (4.0 * p.J) * std::exp(-p.gamma * t);
}

double boundary_ipi(double t, const ModelParams& p) {
  return -std::sqrt(16.0 * (p.h + p.J) * (p.h + p.J) + p.gamma * p.gamma) /
         (4.0 * p.J) * std::exp(-p.gamma * t);
}

double bulk_ib1(double t, const BulkSaddle& s) {
  return 0.25 * s.X * std::sqrt(M_PI / (std::abs(s.Gpp) * t)) *
         std::exp(4.0 * s.Gamma * t);
}

double bulk_ib2(double t, const BulkSaddle& s) {
  // Gaussian saddle of the oscillating bulk term; the quadratic form is
  // a = (Gpp + i Epp) t, linear phase b = 2 i Ep t.
  const cplx a(s.Gpp * t, s.Epp * t);
  const cplx gauss = std::sqrt(-M_PI / a) *
                     std::exp(s.Ep * s.Ep * t * cplx(s.Gpp, -s.Epp) /
                              (s.Lpp_abs * s.Lpp_abs));
  const cplx osc = std::exp(cplx(2.0 * s.Gamma * t, 2.0 * s.E * t));
  return 2.0 * (s.Y * osc * gauss).real();
}

}  // namespace

FidelityTrace fidelity(std::span<const double> tgrid, const ModelParams& p) {
  if (!is_gapped(p)) throw GaplessPhase("fidelity: gapped phase required");
  const auto s = bulk_saddle(p);
  FidelityTrace tr;
  tr.gamma_y = s.gamma_y;
  tr.omega_y = s.omega_y;
  std::vector<double> cuts;
  if (p.h <= p.J) cuts.push_back(soft_mode_q(p));
  for (double t : tgrid) {
    auto diff = [&](double k) {
      return mode_spread_t(k, t, p) - mode_weight(k, p);
    };
    const double osc = std::max(1.0, 4.0 * (p.J + p.h + p.gamma) * t);
    const double f =
        integrate_oscillatory(diff, 0.0, M_PI, osc, 1e-13, cuts) / M_PI;
    tr.times.push_back(t);
    tr.f_exact.push_back(std::abs(f));
    tr.i0.push_back(boundary_i0(t, p));
    tr.ipi.push_back(boundary_ipi(t, p));
    tr.ib1.push_back(bulk_ib1(t, s));
    tr.ib2.push_back(bulk_ib2(t, s));
  }
  return tr;
}

CharacteristicTimes characteristic_times(const ModelParams& p, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("characteristic_times: eps in (0,1)");
  if (!is_gapped(p)) throw GaplessPhase("characteristic_times: gapped phase required");
  const auto s = bulk_saddle(p);
  const double g = p.gamma;
  const double splus = std::sqrt(16.0 * (p.h + p.J) * (p.h + p.J) + g * g);
  const double sminus = std::sqrt(16.0 * (p.h - p.J) * (p.h - p.J) + g * g);
  CharacteristicTimes ct{};
  ct.t1 = std::log((splus + sminus) / (4.0 * p.J * eps)) / g;
  const double aG = std::abs(s.Gamma);
  const double arg2 = M_PI * s.X * s.X * aG / (2.0 * eps * eps * std::abs(s.Gpp));
  const double arg3 = 8.0 * M_PI * std::norm(s.Y) * std::abs(s.gamma_y) /
                      (eps * eps * s.Lpp_abs);
  if (!(arg2 > 0.0) || !(arg3 > 0.0))
    throw DomainError("characteristic_times: nonpositive Lambert argument");
  ct.t2 = lambert_w0(arg2) / (8.0 * aG);
  ct.t3 = lambert_w0(arg3) / (2.0 * std::abs(s.gamma_y));
  ct.t1s = 1.0 / g;
  ct.t2s = 1.0 / (4.0 * aG);
  ct.t3s = 1.0 / std::abs(s.gamma_y);
  return ct;
}

DynamicalPhase classify_dynamical_phase(const ModelParams& p) {
  if (p.gamma <= gamma_critical(p) || p.gamma == 0.0)
    return {DynPhase::GaplessNone, std::numeric_limits<double>::quiet_NaN()};
  const auto s = bulk_saddle(p);
  const double r1 = p.gamma;
  const double r2 = 4.0 * std::abs(s.Gamma);
  const double r3 = std::abs(s.gamma_y);
  const double rmin = std::min({r1, r2, r3});
  DynPhase label = DynPhase::Phase1Gamma;
  if (r2 == rmin) label = DynPhase::Phase2GammaBar;
  if (r3 == rmin) label = DynPhase::Phase3GammaY;
  if (r1 == rmin) label = DynPhase::Phase1Gamma;
  return {label, 1.0 / rmin};
}

const char* to_string(DynPhase label) {
  switch (label) {
    case DynPhase::Phase1Gamma:
      return "1-gamma";
    case DynPhase::Phase2GammaBar:
      return "2-gammabar";
    case DynPhase::Phase3GammaY:
      return "3-gammay";
    case DynPhase::GaplessNone:
      return "gapless-none";
  }
  return "?";
}

}  // namespace nhising
