#pragma once

#include <span>
#include <vector>

#include "nhising/model.hpp"

namespace nhising {

enum class SpreadMethod { Quadrature, Contraction, ClosedForm };

struct SpreadValue {
  double value;  // in [0, 1]
  SpreadMethod method;
};

// Infinite-time Krylov spread density by three independent routes:
// the k-integral of the mode weights, the same-site contraction, and the
// elliptic-integral closed form.  All three agree to ~1e-8.
SpreadValue spread_density_infinite(const ModelParams& p, SpreadMethod method);

enum class Axis { H, Gamma };

struct DerivativeSample {
  double param;
  double d1;
  double d2;
};

// Central finite differences of the ClosedForm spread along a parameter ray.
// The per-point step shrinks near the ray ends so divergence fits stay local;
// StepTooSmall is raised when the second difference is dominated by roundoff.
std::vector<DerivativeSample> spread_derivative_scan(const ModelParams& base,
                                                     Axis axis, double from,
                                                     double to, int steps);

// Time-dependent spread density of the evolving vacuum (gapped phase).
double spread_density_time(double t, const ModelParams& p, double abs_tol = 1e-12);

// Finite-size gapless spread averaged over [t_star, horizon], per site.
// The grid pair bracketing +-q is replaced by the zero-mode term.
double spread_gapless_time_avg(const ModelParams& p, int N, double horizon);

// Saddle data at the slowest mode kbar: derivatives of E and Gamma from
// 7-point stencils, the bulk amplitudes X, Y, and the effective decay gamma_Y.
struct BulkSaddle {
  double kbar;
  double E, Gamma;      // at kbar
  double Ep, Epp, Gpp;  // E', E'', Gamma''
  double Lpp_abs;       // |Lambda''|
  double X;
  cplx Y;
  double gamma_y;  // 2 Gamma + E'^2 Gamma'' / |Lambda''|^2  (negative)
  double omega_y;
};

BulkSaddle bulk_saddle(const ModelParams& p);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> f_exact;
  std::vector<double> i0, ipi, ib1, ib2;
  double gamma_y;
  double omega_y;
};

// Exact F(t) = |C(t) - C_Omega| by quadrature of the difference integrand,
// plus its four asymptotic components (two boundary, two bulk-saddle).
FidelityTrace fidelity(std::span<const double> tgrid, const ModelParams& p);

struct CharacteristicTimes {
  double t1, t2, t3;     // at finite epsilon
  double t1s, t2s, t3s;  // epsilon-free, units of |ln eps|
};

CharacteristicTimes characteristic_times(const ModelParams& p, double eps);

enum class DynPhase { Phase1Gamma, Phase2GammaBar, Phase3GammaY, GaplessNone };

struct DynamicalPhase {
  DynPhase label;
  double t_star_eps_free;  // 1/slowest rate; NaN in the gapless phase
};

// Largest of {1/gamma, 1/(4|Gamma(kbar)|), 1/|gamma_Y|} decides the label.
DynamicalPhase classify_dynamical_phase(const ModelParams& p);

const char* to_string(DynPhase label);

}  // namespace nhising
