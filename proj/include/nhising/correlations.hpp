#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nhising/model.hpp"

namespace nhising {

// Wick pair contractions at separation x (even, lattice units).
// <A0 Ax> is purely imaginary for x > 0; <B0 A_{+x}> and <B0 A_{-x}> are real.
struct ContractionSet {
  cplx aa;
  double ba_plus;
  double ba_minus;
  int x;
};

enum class CzzRegime {
  OscillatoryGapless,
  CriticalLine,
  IsingCritical,
  DisorderedHermitian,
  DisorderedNonHermitian,
  HermitianGSFerro,
  HermitianGSPara,
  HermitianGSCritical,
};

struct AsymptoticResult {
  double value;
  CzzRegime regime;
  std::optional<double> xi;  // correlation length when decay is exponential
  double leading_power;
};

// Quadrature of the simplified contraction integrals; gamma > 0 required.
cplx contraction_aa(int x, const ModelParams& p, double abs_tol = 1e-11);
double contraction_ba(int x_signed, const ModelParams& p, double abs_tol = 1e-11);

ContractionSet contractions(int x, const ModelParams& p, double abs_tol = 1e-11);

// C^zz(x) assembled from the contractions.  For gamma = 0 pass
// hermitian_limit = true: the integrands are evaluated at gamma = 1e-8 J,
// which is the sign-convention-preserving limit of the non-Hermitian model.
double czz_quadrature(int x, const ModelParams& p, bool hermitian_limit = false,
                      double abs_tol = 1e-11);

// Leading closed-form asymptotics per regime (see table of regimes above).
AsymptoticResult czz_asymptotic(int x, const ModelParams& p,
                                std::optional<CzzRegime> regime_override = {});

// Ground-state correlator of the Hermitian chain (gamma identically zero),
// via the Green's functions G(x), F(x); exact closed form at h = J.
double hermitian_gs_czz(int x, const ModelParams& p, double abs_tol = 1e-12);

// External branch point z1 = (-gamma + 4 i h)/(4 J) and the oscillatory
// factors of the gapped asymptotics.
cplx branch_point_z1(const ModelParams& p);
double kappa_plus(int x, const ModelParams& p);
double kappa_minus(int x, const ModelParams& p);
double nu_factor(int x, const ModelParams& p);
double chi_factor(int x, const ModelParams& p);

struct PowerLawFit {
  double exponent;
  double stderr_;
};

// Least-squares slope of ln|y| against ln x over [lo, hi); points with
// nonpositive y are skipped, fewer than 6 usable points is a DegenerateFit.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys,
                          std::size_t lo, std::size_t hi);

}  // namespace nhising
