#pragma once

#include <array>
#include <span>
#include <vector>

#include "nhising/model.hpp"

namespace nhising {

// Per-mode evolution data for exp(-i H(k) t) acting on the pair vacuum.
// state2 holds the normalized coefficients of (|1/2,-1/2>_k, |1/2,+1/2>_k).
struct ModeAmplitudes {
  cplx a_plus;
  cplx a_z;
  cplx l;
  std::array<cplx, 2> state2;
};

// Everything is evaluated through D = exp(-2 i Lambda t), |D| <= 1 for
// Gamma <= 0, so no growing exponential ever appears.
ModeAmplitudes mode_amplitudes(double k, double t, const ModelParams& p);

struct StationaryModeTime {
  double k;
  double t_k;
  double beta;
  double m;
  bool flagged;  // m^2 < beta: log argument would be complex, t_k pinned to 0
};

struct StationaryTimeData {
  double t_star;
  std::vector<StationaryModeTime> per_mode;
};

StationaryTimeData stationary_time(const ModelParams& p, std::span<const double> kgrid);

struct GaplessAmplitudes {
  double lambda_q;  // tan(lambda_q) = gamma / (2 E(q))
  double a_t;
  cplx amp;         // coefficient of |Omega> in the stationary superposition
};

GaplessAmplitudes gapless_stationary(double t, const ModelParams& p);

}  // namespace nhising
