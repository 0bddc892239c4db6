#pragma once

#include <complex>
#include <optional>

#include "nhising/errors.hpp"

namespace nhising {

using cplx = std::complex<double>;

// Ising chain in a complex transverse field h + i*gamma/4, hopping J.
struct ModelParams {
  double J;
  double h;
  double gamma;

  ModelParams(double J_, double h_, double gamma_) : J(J_), h(h_), gamma(gamma_) {
    if (!(J > 0.0)) throw DomainError("ModelParams: J must be positive");
    if (!(h >= 0.0)) throw DomainError("ModelParams: h must be nonnegative");
    if (!(gamma >= 0.0)) throw DomainError("ModelParams: gamma must be nonnegative");
  }
};

// Complex Bloch vector of the k-mode matrix (Ry is identically zero).
struct BlochVector {
  cplx Rx;  // 2 J sin k
  cplx Rz;  // 2 (h - J cos k) + i gamma/2
};

// Lambda(k) = E(k) + i Gamma(k) on the branch with Gamma <= 0.
struct SpectrumPoint {
  double k;
  double E;
  double Gamma;

  cplx lambda() const { return {E, Gamma}; }
};

enum class StaticRegion { I, II, III, IV, HermitianLine };

struct PhaseRegion {
  StaticRegion tag;
  std::optional<double> q;  // soft-mode wavenumber arccos(h/J), defined for h <= J
};

// Per-mode rotation data (u,v) with u^2 + v^2 = 1 (complex identity).
// At Rx = 0 the eigenvector limit is (u,v) = (0,1): tau is at infinity and w = 1.
struct BogoliubovCoeffs {
  cplx u;
  cplx v;
  cplx tau;             // v/u, meaningless when tau_at_infinity
  bool tau_at_infinity;
  cplx f;               // f_k = 1 + Rz/Lambda
  double w;             // |tau|^2 / (1 + |tau|^2) in [0,1]
};

BlochVector bloch_vector(double k, const ModelParams& p);

// Dispersion with the branch fixed by: principal sqrt of Lambda^2, times
// sgn(J cos k - h) with sgn(0) = +1, then conjugated if the imaginary part
// came out positive.  Guarantees Gamma(k) <= 0 for all k.
SpectrumPoint lambda_spectrum(double k, const ModelParams& p);

// Critical curve 4 J sqrt(1 - h^2/J^2) for h < J, 0 for h >= J.
double gamma_critical(const ModelParams& p);

// arccos(h/J); DomainError for h > J.
double soft_mode_q(const ModelParams& p);

PhaseRegion classify_static(const ModelParams& p, double rel_tol = 1e-9);

BogoliubovCoeffs bogoliubov_coeffs(double k, const ModelParams& p);

// Gapped-phase mode with the smallest |Gamma(k)|; GaplessPhase otherwise.
double slowest_mode_kbar(const ModelParams& p);

inline bool is_gapped(const ModelParams& p) { return p.gamma > gamma_critical(p); }

}  // namespace nhising
