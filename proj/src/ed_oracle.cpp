#include "nhising/ed_oracle.hpp"

#include <bit>
#include <cmath>

namespace nhising {

namespace {

void require_size(int N) {
  if (N < 2 || N > 12 || N % 2 != 0)
    throw DomainError("ed_oracle: N must be even with 2 <= N <= 12");
}

// Basis-state action of c_site / c_site^dagger with the Jordan-Wigner sign
// (-1)^{number of occupied modes below `site`}; site is 1-based, bit site-1
// of the index holds the occupation.
inline bool bs_c(int site, unsigned b, unsigned& b2, double& sign) {
  const unsigned bit = 1u << (site - 1);
  if (!(b & bit)) return false;
  const unsigned below = b & (bit - 1u);
  sign = (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
  b2 = b ^ bit;
  return true;
}

inline bool bs_cdag(int site, unsigned b, unsigned& b2, double& sign) {
  const unsigned bit = 1u << (site - 1);
  if (b & bit) return false;
  const unsigned below = b & (bit - 1u);
  sign = (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
  b2 = b ^ bit;
  return true;
}

// Exact anticommutator check, column by column over the whole basis.
void check_anticommutators(int N) {
  const unsigned dim = 1u << N;
  for (int i = 1; i <= N; ++i) {
    for (int j = i; j <= N; ++j) {
      for (unsigned b = 0; b < dim; ++b) {
        unsigned b1 = 0, b2 = 0;
        double s1 = 0.0, s2 = 0.0;
        // {c_i, c_j^dag} e_b
        cplx acc = 0.0;
        if (bs_cdag(j, b, b1, s1) && bs_c(i, b1, b2, s2)) acc += s1 * s2;
        if (bs_c(i, b, b1, s1) && bs_cdag(j, b1, b2, s2)) acc += s1 * s2;
        const double want = (i == j) ? 1.0 : 0.0;
        if (std::abs(acc - want) > 1e-12)
          throw NumericError("ed_oracle: {c_i, c_j^dag} violated");
        // {c_i, c_j} e_b
        acc = 0.0;
        if (bs_c(j, b, b1, s1) && bs_c(i, b1, b2, s2)) acc += s1 * s2;
        if (bs_c(i, b, b1, s1) && bs_c(j, b1, b2, s2)) acc += s1 * s2;
        if (std::abs(acc) > 1e-12)
          throw NumericError("ed_oracle: {c_i, c_j} violated");
      }
    }
  }
}

}  // namespace

std::vector<double> MomentumSet::positive() const {
  std::vector<double> out;
  for (double k : ks)
    if (k > 0.0) out.push_back(k);
  return out;
}

MomentumSet discrete_momenta(int N) {
  require_size(N);
  MomentumSet ms{N, {}};
  const int ceil_half = (N - 1) / 2 + ((N - 1) % 2 != 0);  // ceil((N-1)/2)
  for (int n = 0; n < N; ++n)
    ms.ks.push_back(2.0 * M_PI / N * (-ceil_half + n + 0.5));
  std::sort(ms.ks.begin(), ms.ks.end());
  return ms;
}

void apply_c_site(int N, int site, const Vec& in, Vec& out) {
  const unsigned dim = 1u << N;
  out.setZero(dim);
  for (unsigned b = 0; b < dim; ++b) {
    if (in[b] == cplx(0.0)) continue;
    unsigned b2;
    double s;
    if (bs_c(site, b, b2, s)) out[b2] += s * in[b];
  }
}

void apply_cdag_site(int N, int site, const Vec& in, Vec& out) {
  const unsigned dim = 1u << N;
  out.setZero(dim);
  for (unsigned b = 0; b < dim; ++b) {
    if (in[b] == cplx(0.0)) continue;
    unsigned b2;
    double s;
    if (bs_cdag(site, b, b2, s)) out[b2] += s * in[b];
  }
}

Vec apply_ck(int N, double k, const Vec& in) {
  const cplx twist = std::exp(cplx(0.0, M_PI / 4.0)) / std::sqrt(double(N));
  Vec out = Vec::Zero(in.size()), tmp(in.size());
  for (int j = 1; j <= N; ++j) {
    apply_c_site(N, j, in, tmp);
    out += twist * std::exp(cplx(0.0, -k * j)) * tmp;
  }
  return out;
}

Vec apply_ck_dagger(int N, double k, const Vec& in) {
  const cplx twist = std::exp(cplx(0.0, -M_PI / 4.0)) / std::sqrt(double(N));
  Vec out = Vec::Zero(in.size()), tmp(in.size());
  for (int j = 1; j <= N; ++j) {
    apply_cdag_site(N, j, in, tmp);
    out += twist * std::exp(cplx(0.0, k * j)) * tmp;
  }
  return out;
}

Vec apply_eta(int N, double k, const ModelParams& p, const Vec& in) {
  const auto bc = bogoliubov_coeffs(k, p);
  if (bc.tau_at_infinity)
    throw ExceptionalPoint("apply_eta: mode with tau at infinity");
  return bc.u * apply_ck(N, k, in) + bc.v * apply_ck_dagger(N, -k, in);
}

FockOperatorSet build_hamiltonian(int N, const ModelParams& p) {
  require_size(N);
  check_anticommutators(N);
  const unsigned dim = 1u << N;
  FockOperatorSet ops;
  ops.N = N;
  if (N <= 10) {
    ops.c.resize(N);
    ops.cdag.resize(N);
    for (int j = 1; j <= N; ++j) {
      ops.c[j - 1] = Mat::Zero(dim, dim);
      ops.cdag[j - 1] = Mat::Zero(dim, dim);
      for (unsigned b = 0; b < dim; ++b) {
        unsigned b2;
        double s;
        if (bs_c(j, b, b2, s)) ops.c[j - 1](b2, b) = s;
        if (bs_cdag(j, b, b2, s)) ops.cdag[j - 1](b2, b) = s;
      }
    }
  }

  ops.hamiltonian = Mat::Zero(dim, dim);
  const cplx field(p.h, 0.25 * p.gamma);
  for (unsigned b = 0; b < dim; ++b) {
    ops.hamiltonian(b, b) -= field * cplx(N - 2 * std::popcount(b));
    for (int j = 1; j <= N; ++j) {
      const int jp = (j == N) ? 1 : j + 1;
      const double bnd = (j == N) ? -1.0 : 1.0;  // c_{N+1} = -c_1
      unsigned b1 = 0, b2 = 0;
      double s1 = 0.0, s2 = 0.0;
      // c_j^dag c_{jp}
      if (bs_c(jp, b, b1, s1) && bs_cdag(j, b1, b2, s2))
        ops.hamiltonian(b2, b) += -p.J * bnd * s1 * s2;
      // c_{jp}^dag c_j
      if (bs_c(j, b, b1, s1) && bs_cdag(jp, b1, b2, s2))
        ops.hamiltonian(b2, b) += -p.J * bnd * s1 * s2;
      // c_j^dag c_{jp}^dag
      if (bs_cdag(jp, b, b1, s1) && bs_cdag(j, b1, b2, s2))
        ops.hamiltonian(b2, b) += -p.J * bnd * s1 * s2;
      // c_{jp} c_j
      if (bs_c(j, b, b1, s1) && bs_c(jp, b1, b2, s2))
        ops.hamiltonian(b2, b) += -p.J * bnd * s1 * s2;
    }
  }
  return ops;
}

Vec vacuum_state(int N, const ModelParams& p) {
  require_size(N);
  const auto ms = discrete_momenta(N);
  // Lambda has a square-root branch at an exceptional point, so rounded
  // critical parameters leave |Lambda| at the sqrt(eps) scale, not eps.
  for (double k : ms.positive())
    if (std::abs(lambda_spectrum(k, p).lambda()) < 1e-6 * p.J)
      throw ExceptionalPoint("vacuum_state: exceptional point on the grid");
  const unsigned dim = 1u << N;
  Vec psi = Vec::Zero(dim);
  psi[0] = 1.0;
  for (double k : ms.positive()) {
    const auto bc = bogoliubov_coeffs(k, p);
    const Vec pair = apply_ck_dagger(N, k, apply_ck_dagger(N, -k, psi));
    psi -= bc.tau * pair;
  }
  psi.normalize();
  return psi;
}

Evolver::Evolver(const Mat& H) {
  Eigen::ComplexEigenSolver<Mat> es(H, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw EigendecompositionFailure("Evolver: eigendecomposition failed");
  V_ = es.eigenvectors();
  evals_ = es.eigenvalues();
  lu_ = V_.partialPivLu();
  if (!(lu_.rcond() > 1e-12))
    throw EigendecompositionFailure("Evolver: eigenvector matrix near defective");
}

Vec Evolver::evolve_normalized(const Vec& psi0, double t) const {
  Vec y = lu_.solve(psi0);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    y[i] *= std::exp(cplx(0.0, -t) * evals_[i]);
  Vec psi = V_ * y;
  const double n = psi.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw EigendecompositionFailure("Evolver: evolution produced a null state");
  return psi / n;
}

Vec evolve_normalized(const Mat& H, const Vec& psi0, double t) {
  return Evolver(H).evolve_normalized(psi0, t);
}

std::vector<Vec> krylov_basis(const Mat& H, const Vec& psi0, double trunc_tol) {
  std::vector<Vec> basis;
  basis.push_back(psi0.normalized());
  const Eigen::Index dim = psi0.size();
  for (Eigen::Index n = 1; n < dim; ++n) {
    Vec w = H * basis.back();
    const double scale = w.norm();
    if (!(scale > 0.0)) break;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : basis) w -= q.dot(w) * q;
    const double res = w.norm();
    if (!std::isfinite(res))
      throw BasisBreakdown("krylov_basis: reorthogonalization failed");
    if (res < trunc_tol * scale) break;
    basis.push_back(w / res);
  }
  return basis;
}

double krylov_spread_exact(const Mat& H, const Vec& psi0, double t) {
  const auto basis = krylov_basis(H, psi0);
  const Vec psit = evolve_normalized(H, psi0, t);
  double spread = 0.0;
  for (std::size_t n = 1; n < basis.size(); ++n)
    spread += double(n) * std::norm(basis[n].dot(psit));
  return spread;
}

double czz_exact(int N, const ModelParams& p, int x) {
  require_size(N);
  if (x < 0 || x >= N) throw DomainError("czz_exact: need 0 <= x < N");
  const Vec psi = vacuum_state(N, p);
  const unsigned dim = 1u << N;
  const unsigned bit0 = 1u;             // site 1
  const unsigned bitx = 1u << x;        // site 1 + x
  double zz = 0.0, z0 = 0.0, zx = 0.0;
  for (unsigned b = 0; b < dim; ++b) {
    const double w = std::norm(psi[b]);
    const double s0 = (b & bit0) ? -1.0 : 1.0;
    const double sx = (b & bitx) ? -1.0 : 1.0;
    zz += w * s0 * sx;
    z0 += w * s0;
    zx += w * sx;
  }
  return zz - z0 * zx;
}

cplx contraction_aa_discrete(int N, const ModelParams& p, int x) {
  require_size(N);
  cplx acc = 0.0;
  for (double k : discrete_momenta(N).positive()) {
    const auto bc = bogoliubov_coeffs(k, p);
    const cplx uv = bc.u * std::conj(bc.v);
    const double den = std::norm(bc.u) + std::norm(bc.v);
    acc += std::sin(k * x) * (uv - std::conj(uv)) / den;
  }
  return (x == 0 ? 1.0 : 0.0) + 2.0 / N * acc;
}

double contraction_ba_discrete(int N, const ModelParams& p, int x_signed) {
  require_size(N);
  double acc = 0.0;
  for (double k : discrete_momenta(N).positive()) {
    const auto bc = bogoliubov_coeffs(k, p);
    const double den = std::norm(bc.u) + std::norm(bc.v);
    const double diff = std::norm(bc.u) - std::norm(bc.v);
    const double cross = 2.0 * (bc.u * std::conj(bc.v)).real();
    acc += (-std::cos(k * x_signed) * diff + std::sin(k * x_signed) * cross) / den;
  }
  return 2.0 / N * acc;
}

}  // namespace nhising
