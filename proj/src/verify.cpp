#include "sas/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sas/oracle.hpp"
#include "sas/parallel.hpp"

namespace sas::verify {

states::Spectrum sample_spectrum_mixture(int n_qubits, uint64_t seed) {
  const int d = n_qubits + 1;
  states::RandomStream rng(seed);
  // flat Dirichlet draw
  std::vector<double> l(static_cast<size_t>(d));
  double sum = 0.0;
  for (double& x : l) {
    x = -std::log(rng.u01());
    sum += x;
  }
  for (double& x : l) x /= sum;
  // shrink toward the center by a squared-uniform factor; populates the
  // witness regions, which occupy a small ball around uniform
  const double c = rng.u01() * rng.u01();
  double total = 0.0;
  for (double& x : l) {
    x = 1.0 / d + c * (x - 1.0 / d);
    total += x;
  }
  for (double& x : l) x /= total;
  return states::Spectrum(n_qubits, std::move(l));
}

bool any_witness_certifies(const states::Spectrum& s, const witness::YParams& y_ext, bool include_w2,
                           bool inject_fault) {
  double m1 = witness::w1_margin(s);
  if (inject_fault) m1 = -m1;  // harness self-test: deliberately unsound
  if (m1 >= -1e-12) return true;
  if (witness::w0_check(s).certified) return true;
  if (witness::w3_check(s).certified) return true;
  if (include_w2 && witness::w2_check(s, y_ext).certified) return true;
  return false;
}

namespace {

struct CertifiedSample {
  states::Spectrum spectrum;
  uint64_t seed;
};

std::vector<CertifiedSample> collect_certified(int N, const SweepConfig& cfg) {
  const witness::YParams y_ext = witness::extremal_y(N);
  std::vector<CertifiedSample> out;
  const long budget = cfg.spectra_per_n * cfg.max_draws_factor;
  uint64_t base = cfg.seed ^ (0x517cc1b727220a95ULL * static_cast<uint64_t>(N));
  if (cfg.inject_fault) {
    // guaranteed-unsound sample: a pure spectrum flagged as certified
    std::vector<double> pure(static_cast<size_t>(N) + 1, 0.0);
    pure[0] = 1.0;
    out.push_back({states::Spectrum(N, std::move(pure)), 0});
  }
  for (long i = 0; static_cast<long>(out.size()) < cfg.spectra_per_n && i < budget; ++i) {
    const uint64_t s_seed = par::mix_seed(base, static_cast<uint64_t>(i));
    states::Spectrum s = sample_spectrum_mixture(N, s_seed);
    if (any_witness_certifies(s, y_ext, cfg.include_w2, cfg.inject_fault)) {
      out.push_back({std::move(s), s_seed});
    }
  }
  return out;
}

}  // namespace

SweepReport run_soundness_sweep(const SweepConfig& cfg) {
  SweepReport report;
  for (int N = cfg.n_min; N <= cfg.n_max; ++N) {
    const auto samples = collect_certified(N, cfg);
    report.certified_spectra += static_cast<long>(samples.size());

    const long total = static_cast<long>(samples.size()) * cfg.unitaries;
    std::vector<double> min_eigs(static_cast<size_t>(total), 0.0);
    par::parallel_for(total, cfg.parallel, [&](long idx) {
      const auto& sample = samples[static_cast<size_t>(idx / cfg.unitaries)];
      const long u = idx % cfg.unitaries;
      const uint64_t u_seed = par::mix_seed(sample.seed ^ 0x2545F4914F6CDD1DULL, static_cast<uint64_t>(u));
      const Eigen::MatrixXcd V = states::haar_random_unitary(N + 1, u_seed);
      Eigen::VectorXd diag(N + 1);
      for (int k = 0; k <= N; ++k) diag(k) = sample.spectrum[k];
      states::SymmetricState state(N, V * diag.asDiagonal() * V.adjoint());
      min_eigs[static_cast<size_t>(idx)] = oracle::sym_pt_min_eigenvalue_all_cuts(state);
    });

    for (long idx = 0; idx < total; ++idx) {
      report.states_checked += 1;
      if (min_eigs[static_cast<size_t>(idx)] < -cfg.pt_tol) {
        const auto& sample = samples[static_cast<size_t>(idx / cfg.unitaries)];
        Violation v;
        v.n_qubits = N;
        v.spectrum_seed = sample.seed;
        v.unitary_seed = par::mix_seed(sample.seed ^ 0x2545F4914F6CDD1DULL,
                                       static_cast<uint64_t>(idx % cfg.unitaries));
        v.min_pt_eigenvalue = min_eigs[static_cast<size_t>(idx)];
        v.lambdas = sample.spectrum.lambdas();
        report.violations.push_back(std::move(v));
      }
    }
  }
  completeness_gap_n2(cfg, report);
  return report;
}

void completeness_gap_n2(const SweepConfig& cfg, SweepReport& report) {
  const witness::YParams y_ext = witness::extremal_y(2);
  const long target = std::max<long>(2000, cfg.spectra_per_n);
  long exact_sas = 0, w2_hits = 0, w0_hits = 0;
  const uint64_t base = cfg.seed ^ 0xA0761D6478BD642FULL;
  for (long i = 0; exact_sas < target && i < target * 100; ++i) {
    states::Spectrum s = states::random_spectrum(3, par::mix_seed(base, static_cast<uint64_t>(i)));
    if (!oracle::exact_sas_n2(s)) continue;
    exact_sas += 1;
    if (witness::w2_check(s, y_ext).certified) w2_hits += 1;
    if (witness::w0_check(s).certified) w0_hits += 1;
  }
  report.n2_exact_sas_samples = exact_sas;
  if (exact_sas > 0) {
    report.n2_fraction_w2 = static_cast<double>(w2_hits) / static_cast<double>(exact_sas);
    report.n2_fraction_w0 = static_cast<double>(w0_hits) / static_cast<double>(exact_sas);
  }
}

}  // namespace sas::verify
