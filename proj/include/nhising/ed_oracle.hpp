#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhising/model.hpp"

namespace nhising {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Anti-periodic-boundary momentum grid; excludes 0 and pi, closed under k -> -k.
struct MomentumSet {
  int N;
  std::vector<double> ks;  // sorted
  std::vector<double> positive() const;
};

MomentumSet discrete_momenta(int N);

// Dense Fock-space representation of the fermion chain with c_{N+1} = -c_1.
// Per-site dense matrices are materialized for N <= 10; the Hamiltonian and
// every vector-level operation support N up to 12.
struct FockOperatorSet {
  int N;
  std::vector<Mat> c;     // annihilation, site index 0-based
  std::vector<Mat> cdag;
  Mat hamiltonian;
};

FockOperatorSet build_hamiltonian(int N, const ModelParams& p);

// Vector-level site/momentum operators (basis: bit j of the index = n_{j+1}).
void apply_c_site(int N, int site, const Vec& in, Vec& out);     // site 1..N
void apply_cdag_site(int N, int site, const Vec& in, Vec& out);
Vec apply_ck(int N, double k, const Vec& in);
Vec apply_ck_dagger(int N, double k, const Vec& in);
Vec apply_eta(int N, double k, const ModelParams& p, const Vec& in);

// Right Bogoliubov vacuum as a paired state over the Fock vacuum.
Vec vacuum_state(int N, const ModelParams& p);

// exp(-i H t) |psi0> normalized, through a cached dense eigendecomposition.
class Evolver {
 public:
  explicit Evolver(const Mat& H);
  Vec evolve_normalized(const Vec& psi0, double t) const;

 private:
  Mat V_;
  Eigen::VectorXcd evals_;
  Eigen::PartialPivLU<Mat> lu_;
};

Vec evolve_normalized(const Mat& H, const Vec& psi0, double t);

// Spread sum_n n |<K_n|psi(t)>|^2 in the Gram-Schmidt basis of {H^n psi0},
// built with modified Gram-Schmidt and double reorthogonalization.
double krylov_spread_exact(const Mat& H, const Vec& psi0, double t);

// The same Krylov basis, exposed for orthonormality checks.
std::vector<Vec> krylov_basis(const Mat& H, const Vec& psi0, double trunc_tol = 1e-10);

// <sigma^z_0 sigma^z_x> - <sigma^z_0><sigma^z_x> in the vacuum, 0 <= x < N.
double czz_exact(int N, const ModelParams& p, int x);

// Discrete-sum Wick contractions (finite-N analogs of the k-integrals).
cplx contraction_aa_discrete(int N, const ModelParams& p, int x);
double contraction_ba_discrete(int N, const ModelParams& p, int x_signed);

}  // namespace nhising
