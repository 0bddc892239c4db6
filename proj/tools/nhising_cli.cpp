// Command-line front end: single-point reports, phase-diagram scans, and the
// exact-diagonalization comparison suite.  JSON/CSV output for plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "nhising/correlations.hpp"
#include "nhising/ed_oracle.hpp"
#include "nhising/evolution.hpp"
#include "nhising/krylov.hpp"
#include "nhising/model.hpp"

using json = nlohmann::ordered_json;
using namespace nhising;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* region_name(StaticRegion r) {
  switch (r) {
    case StaticRegion::I: return "I";
    case StaticRegion::II: return "II";
    case StaticRegion::III: return "III";
    case StaticRegion::IV: return "IV";
    case StaticRegion::HermitianLine: return "hermitian-line";
  }
  return "?";
}

struct ScanConfig {
  double h_min = 0.0, h_max = 1.0;
  int h_steps = 2;
  double g_min = 0.0, g_max = 5.0;
  int g_steps = 2;
  double J = 1.0;
  std::string output_path;
};

ScanConfig parse_scan_config(const json& j) {
  ScanConfig cfg;
  auto range = [&](const char* key, double& lo, double& hi, int& steps) {
    if (!j.contains(key)) return;
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 3)
      throw std::runtime_error(std::string("config field '") + key +
                               "' must be [min, max, steps]");
    lo = r[0].get<double>();
    hi = r[1].get<double>();
    steps = r[2].get<int>();
    if (steps < 2)
      throw std::runtime_error(std::string("config field '") + key +
                               "': steps must be >= 2");
    if (lo < 0.0 || hi < lo)
      throw std::runtime_error(std::string("config field '") + key +
                               "': range must be nonnegative and ordered");
  };
  range("h_range", cfg.h_min, cfg.h_max, cfg.h_steps);
  range("gamma_range", cfg.g_min, cfg.g_max, cfg.g_steps);
  if (j.contains("J")) cfg.J = j.at("J").get<double>();
  if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
  return cfg;
}

std::string scan_row(double h, double g, double J) {
  const ModelParams p{J, h * J, g * J};
  std::ostringstream row;
  row << fmt17(h) << ',' << fmt17(g) << ',';
  row << region_name(classify_static(p).tag) << ',';
  const auto dyn = classify_dynamical_phase(p);
  row << to_string(dyn.label) << ',';
  row << fmt17(spread_density_infinite(p, SpreadMethod::ClosedForm).value) << ',';
  // correlation length, defined for the exponential-decay regimes
  std::optional<double> xi;
  if (is_gapped(p)) {
    xi = 1.0 / (2.0 * std::log(std::abs(branch_point_z1(p))));
  } else if (p.gamma == 0.0 && p.h > p.J) {
    xi = 1.0 / (2.0 * std::log(p.h / p.J));
  }
  if (xi) row << fmt17(*xi / J);
  row << ',';
  if (dyn.label != DynPhase::GaplessNone) {
    const auto s = bulk_saddle(p);
    row << fmt17(1.0 / (p.gamma / J)) << ','
        << fmt17(1.0 / (4.0 * std::abs(s.Gamma) / J)) << ','
        << fmt17(1.0 / (std::abs(s.gamma_y) / J));
  } else {
    row << ",,";
  }
  return row.str();
}

int run_scan(const ScanConfig& cfg, int threads) {
  const int total = cfg.h_steps * cfg.g_steps;
  std::vector<std::string> rows(total);
  auto work = [&](int begin, int end) {
    for (int idx = begin; idx < end; ++idx) {
      const int ih = idx / cfg.g_steps;   // h-major ordering
      const int ig = idx % cfg.g_steps;
      const double h = cfg.h_min + (cfg.h_max - cfg.h_min) * ih / (cfg.h_steps - 1);
      const double g = cfg.g_min + (cfg.g_max - cfg.g_min) * ig / (cfg.g_steps - 1);
      rows[idx] = scan_row(h, g, cfg.J);
    }
  };
  if (threads <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int b = std::min(total, t * chunk);
      const int e = std::min(total, (t + 1) * chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) {
      std::cerr << "scan: cannot open output path " << cfg.output_path << "\n";
      return kExitUsage;
    }
    out = &file;
  }
  *out << "# nhising scan, energies in units of J (J = " << fmt17(cfg.J) << ")\n";
  *out << "h,gamma,region,dyn_phase,spread,xi,t1_star,t2_star,t3_star\n";
  for (const auto& r : rows) *out << r << "\n";
  return 0;
}

json run_report(const ModelParams& p, const std::vector<int>& xs,
                const std::vector<double>& ts, double eps, double tol) {
  json doc;
  doc["params"] = {{"J", p.J}, {"h", p.h}, {"gamma", p.gamma}};
  const auto reg = classify_static(p);
  doc["static_region"] = region_name(reg.tag);
  if (reg.q) doc["q"] = *reg.q;
  doc["gamma_c"] = gamma_critical(p);
  const bool gapped = is_gapped(p);
  if (gapped) doc["kbar"] = slowest_mode_kbar(p);
  doc["spread"] = {
      {"quadrature", spread_density_infinite(p, SpreadMethod::Quadrature).value},
      {"contraction", spread_density_infinite(p, SpreadMethod::Contraction).value},
      {"closed", spread_density_infinite(p, SpreadMethod::ClosedForm).value}};
  doc["czz"] = json::array();
  for (int x : xs) {
    json e;
    e["x"] = x;
    e["quadrature"] = czz_quadrature(x, p, p.gamma == 0.0, tol);
    if (x > 0) {
      try {
        const auto a = czz_asymptotic(x, p);
        e["asymptotic"] = a.value;
        switch (a.regime) {
          case CzzRegime::OscillatoryGapless: e["regime"] = "oscillatory-gapless"; break;
          case CzzRegime::CriticalLine: e["regime"] = "critical-line"; break;
          case CzzRegime::IsingCritical: e["regime"] = "ising-critical"; break;
          case CzzRegime::DisorderedHermitian: e["regime"] = "disordered-hermitian"; break;
          case CzzRegime::DisorderedNonHermitian: e["regime"] = "disordered-non-hermitian"; break;
          default: e["regime"] = "hermitian-gs"; break;
        }
        if (a.xi) e["xi"] = *a.xi;
      } catch (const UndefinedRegime&) {
        e["regime"] = "undefined";
      }
    }
    doc["czz"].push_back(e);
  }
  if (gapped) {
    doc["fidelity"] = json::array();
    const auto tr = fidelity(ts, p);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      doc["fidelity"].push_back({{"t", tr.times[i]},
                                 {"exact", tr.f_exact[i]},
                                 {"i0", tr.i0[i]},
                                 {"ipi", tr.ipi[i]},
                                 {"ib1", tr.ib1[i]},
                                 {"ib2", tr.ib2[i]}});
    }
    const auto ct = characteristic_times(p, eps);
    doc["times"] = {{"t1", ct.t1},   {"t2", ct.t2},   {"t3", ct.t3},
                    {"t1s", ct.t1s}, {"t2s", ct.t2s}, {"t3s", ct.t3s}};
  }
  doc["dynamical_phase"] = to_string(classify_dynamical_phase(p).label);
  return doc;
}

int run_oracle(int N, const ModelParams& p, std::ostream& out) {
  int failures = 0;
  auto line = [&](const char* name, bool ok, double value) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "  (" << value << ")\n";
    if (!ok) ++failures;
  };
  const auto ops = build_hamiltonian(N, p);  // anticommutators checked inside
  out << "[PASS] site anticommutators  (checked at build)\n";

  // even-sector spectrum vs analytic level sums
  {
    Eigen::ComplexEigenSolver<Mat> es(ops.hamiltonian, true);
    if (es.info() != Eigen::Success)
      throw EigendecompositionFailure("oracle: eigendecomposition failed");
    std::vector<cplx> even, expect;
    const auto ms = discrete_momenta(N);
    cplx e0 = 0.0;
    for (double k : ms.positive()) e0 -= lambda_spectrum(k, p).lambda();
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      cplx e = e0;
      for (int i = 0; i < N; ++i)
        if (mask & (1u << i)) e += lambda_spectrum(ms.ks[i], p).lambda();
      expect.push_back(e);
    }
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const Vec v = es.eigenvectors().col(i);
      double par = 0.0;
      for (int b = 0; b < v.size(); ++b)
        par += (std::popcount(unsigned(b)) % 2 == 0 ? 1.0 : -1.0) * std::norm(v[b]);
      if (par > 0.0) even.push_back(es.eigenvalues()[i]);
    }
    double worst = even.size() == expect.size() ? 0.0 : 1e300;
    std::vector<bool> used(expect.size(), false);
    if (even.size() == expect.size())
      for (const cplx& x : even) {
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t j = 0; j < expect.size(); ++j)
          if (!used[j] && std::abs(x - expect[j]) < best) {
            best = std::abs(x - expect[j]);
            bi = j;
          }
        used[bi] = true;
        worst = std::max(worst, best);
      }
    line("even-sector spectrum vs analytic sums", worst < 1e-9, worst);
  }

  // vacuum annihilation and eigenvalue
  {
    const Vec om = vacuum_state(N, p);
    double worst = 0.0;
    for (double k : discrete_momenta(N).ks)
      worst = std::max(worst, apply_eta(N, k, p, om).norm());
    line("eta_k |Omega> residual", worst <= 1e-10, worst);
    cplx e0 = 0.0;
    for (double k : discrete_momenta(N).positive())
      e0 -= lambda_spectrum(k, p).lambda();
    const double r = (ops.hamiltonian * om - e0 * om).norm();
    line("H |Omega> = E_Omega |Omega>", r < 1e-9, r);
  }

  // evolution vs the per-mode product state
  {
    const Evolver ev(ops.hamiltonian);
    Vec psi0 = Vec::Zero(1 << N);
    psi0[0] = 1.0;
    double worst = 0.0;
    for (double t : {0.3, 0.9, 1.7, 3.1}) {
      Vec prod = Vec::Zero(1 << N);
      prod[0] = 1.0;
      for (double k : discrete_momenta(N).positive()) {
        const auto ma = mode_amplitudes(k, t, p);
        prod += ma.a_plus * apply_ck_dagger(N, k, apply_ck_dagger(N, -k, prod));
      }
      prod.normalize();
      worst = std::max(worst,
                       1.0 - std::abs(prod.dot(ev.evolve_normalized(psi0, t))));
    }
    line("per-mode evolution overlap deficit", worst <= 1e-10, worst);
  }

  // Wick assembly of the correlator from discrete sums
  {
    double worst = 0.0;
    for (int x = 0; x < N; ++x) {
      const double lhs = czz_exact(N, p, x);
      double rhs;
      if (x == 0) {
        const double ba0 = contraction_ba_discrete(N, p, 0);
        rhs = 1.0 - ba0 * ba0;
      } else {
        const cplx aa = contraction_aa_discrete(N, p, x);
        rhs = -contraction_ba_discrete(N, p, x) *
                  contraction_ba_discrete(N, p, -x) -
              (aa * aa).real();
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    line("czz vs discrete Wick assembly", worst < 1e-9, worst);
  }
  return failures == 0 ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Hermitian Ising chain laboratory"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the field
  app.require_subcommand(1);

  std::string config_path, out_path;
  double J = 1.0, h = 0.5, gamma = 1.0, eps = 1e-4, tol = 1e-11;
  int threads = 0, oracle_N = 8;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output path");
  app.add_option("--threads", threads, "worker threads (env NHIL_THREADS)");
  app.add_option("--eps", eps, "fidelity epsilon");
  app.add_option("--tol", tol, "quadrature tolerance");
  app.add_option("--J", J, "coupling");
  app.add_option("--h", h, "real field (units of J)");
  app.add_option("--gamma", gamma, "imaginary field scale (units of J)");

  auto* rep = app.add_subcommand("report", "single-point JSON report");
  auto* scan = app.add_subcommand("scan", "phase-diagram CSV scan");
  auto* orc = app.add_subcommand("oracle", "exact-diagonalization comparison");
  orc->add_option("--N", oracle_N, "site count (even, <= 12)");
  for (auto* sub : {rep, scan, orc}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("NHIL_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = 1;
  }

  json cfg_json;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "cannot open config " << config_path << "\n";
      return kExitUsage;
    }
    try {
      cfg_json = json::parse(f);
    } catch (const json::parse_error& e) {
      std::cerr << "config parse failure at byte " << e.byte << ": " << e.what()
                << "\n";
      return kExitUsage;
    }
  }

  try {
    if (*scan) {
      ScanConfig cfg;
      try {
        cfg = parse_scan_config(cfg_json);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (app.count("--J")) cfg.J = J;
      if (!out_path.empty()) cfg.output_path = out_path;
      return run_scan(cfg, threads);
    }

    if (*rep) {
      if (cfg_json.contains("J")) J = cfg_json["J"].get<double>();
      if (cfg_json.contains("h")) h = cfg_json["h"].get<double>();
      if (cfg_json.contains("gamma")) gamma = cfg_json["gamma"].get<double>();
      std::vector<int> xs{0, 2, 4, 8, 16};
      std::vector<double> ts{0.0, 0.5, 1.0, 2.0, 4.0};
      if (cfg_json.contains("x_list")) xs = cfg_json["x_list"].get<std::vector<int>>();
      if (cfg_json.contains("t_list"))
        ts = cfg_json["t_list"].get<std::vector<double>>();
      std::optional<ModelParams> p;
      try {
        p.emplace(J, h * J, gamma * J);
      } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
      }
      const json doc = run_report(*p, xs, ts, eps, tol);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << doc.dump(2) << "\n";
      } else {
        std::cout << doc.dump(2) << "\n";
      }
      return 0;
    }

    if (*orc) {
      std::optional<ModelParams> p;
      try {
        p.emplace(J, h * J, gamma * J);
      } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
      }
      if (oracle_N < 2 || oracle_N > 12 || oracle_N % 2 != 0) {
        std::cerr << "oracle: N must be even with 2 <= N <= 12\n";
        return kExitUsage;
      }
      return run_oracle(oracle_N, *p, std::cout);
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
