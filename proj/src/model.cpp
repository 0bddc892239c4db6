#include "nhising/model.hpp"

#include <cmath>

namespace nhising {

BlochVector bloch_vector(double k, const ModelParams& p) {
  return {cplx(2.0 * p.J * std::sin(k), 0.0),
          cplx(2.0 * (p.h - p.J * std::cos(k)), 0.5 * p.gamma)};
}

SpectrumPoint lambda_spectrum(double k, const ModelParams& p) {
  const auto [Rx, Rz] = bloch_vector(k, p);
  const cplx lam2 = Rx * Rx + Rz * Rz;
  cplx lam = std::sqrt(lam2);
  const double s = (p.J * std::cos(k) >= p.h) ? 1.0 : -1.0;  // sgn(0) = +1
  lam *= s;
  if (lam.imag() > 0.0) lam = std::conj(lam);
  return {k, lam.real(), lam.imag()};
}

double gamma_critical(const ModelParams& p) {
  if (p.h >= p.J) return 0.0;
  return 4.0 * p.J * std::sqrt(1.0 - (p.h / p.J) * (p.h / p.J));
}

double soft_mode_q(const ModelParams& p) {
  if (p.h > p.J) throw DomainError("soft_mode_q: requires h <= J");
  return std::acos(p.h / p.J);
}

PhaseRegion classify_static(const ModelParams& p, double rel_tol) {
  std::optional<double> q;
  if (p.h <= p.J) q = soft_mode_q(p);
  if (p.gamma == 0.0) return {StaticRegion::HermitianLine, q};
  if (p.h < p.J) {
    const double gc = gamma_critical(p);
    if (std::abs(p.gamma - gc) <= rel_tol * gc) return {StaticRegion::IV, q};
    return {p.gamma < gc ? StaticRegion::I : StaticRegion::II, q};
  }
  if (p.h == p.J) return {StaticRegion::II, q};
  return {StaticRegion::III, q};
}

BogoliubovCoeffs bogoliubov_coeffs(double k, const ModelParams& p) {
  const auto [Rx, Rz] = bloch_vector(k, p);
  const cplx lam = lambda_spectrum(k, p).lambda();

  if (Rx == 0.0) {
    // k = 0 or +-pi: Lambda = -Rz on our branch, eigenvector limit (0,1).
    return {cplx(0.0), cplx(1.0), cplx(0.0), true, cplx(0.0), 1.0};
  }

  // u ~ Lambda + Rz, v ~ Rx.  Near k = 0, pi the sum cancels; use
  // Lambda + Rz = Rx^2 / (Lambda - Rz) on that side to keep full accuracy.
  cplx u_raw;
  if (std::abs(lam + Rz) >= std::abs(lam - Rz))
    u_raw = lam + Rz;
  else
    u_raw = Rx * Rx / (lam - Rz);

  const cplx norm = std::sqrt(u_raw * u_raw + Rx * Rx);
  const cplx u = u_raw / norm;
  const cplx v = Rx / norm;
  const cplx tau = Rx / u_raw;
  const double t2 = std::norm(tau);
  const double w = t2 / (1.0 + t2);
  const cplx f = (std::abs(lam) > 0.0) ? u_raw / lam : cplx(0.0);
  return {u, v, tau, false, f, w};
}

double slowest_mode_kbar(const ModelParams& p) {
  if (!is_gapped(p))
    throw GaplessPhase("slowest_mode_kbar: spectrum is gapless (gamma <= gamma_c)");
  const double c = 16.0 * p.h * p.J / (16.0 * p.h * p.h + p.gamma * p.gamma);
  return std::acos(c);
}

}  // namespace nhising
