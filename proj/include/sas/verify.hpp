#ifndef SAS_VERIFY_HPP
#define SAS_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sas/states.hpp"
#include "sas/witnesses.hpp"

namespace sas::verify {

struct SweepConfig {
  int n_min = 2;
  int n_max = 4;
  long spectra_per_n = 1000;   // certified spectra collected per N
  long unitaries = 50;          // Haar samples per certified spectrum
  uint64_t seed = 42;
  double pt_tol = 1e-8;         // PT eigenvalues below -pt_tol are violations
  long max_draws_factor = 400;  // sampling budget per certified spectrum
  bool include_w2 = true;       // run W2(extremal) in the certification filter
  bool inject_fault = false;    // self-test hook: flips the W1 sign
  bool parallel = true;
};

struct Violation {
  int n_qubits = 0;
  uint64_t spectrum_seed = 0;
  uint64_t unitary_seed = 0;
  double min_pt_eigenvalue = 0.0;
  std::vector<double> lambdas;
};

struct SweepReport {
  long certified_spectra = 0;
  long states_checked = 0;
  std::vector<Violation> violations;

  // N = 2 completeness-gap statistics: fractions of exact-SAS spectra
  // certified by W2(extremal) and by W0. Expected strictly between the W0
  // fraction and 1.
  long n2_exact_sas_samples = 0;
  double n2_fraction_w2 = 0.0;
  double n2_fraction_w0 = 0.0;

  bool sound() const { return violations.empty(); }
  bool gap_consistent() const {
    return n2_fraction_w2 < 1.0 && n2_fraction_w2 > n2_fraction_w0;
  }
};

/// Draw spectra concentrated around the maximally mixed state (uniform
/// simplex samples shrunk by a random factor), so every witness regime is
/// populated. Deterministic per (seed, index).
states::Spectrum sample_spectrum_mixture(int n_qubits, uint64_t seed);

/// Certification by any of W0, W1, W3 and optionally W2(extremal).
bool any_witness_certifies(const states::Spectrum& s, const witness::YParams& y_ext, bool include_w2,
                           bool inject_fault);

/// Soundness sweep: certified spectra x Haar unitaries must stay PPT
/// across every cut; also gathers the N = 2 completeness statistics.
SweepReport run_soundness_sweep(const SweepConfig& cfg);

/// N = 2 completeness gap on exact-SAS spectra.
void completeness_gap_n2(const SweepConfig& cfg, SweepReport& report);

}  // namespace sas::verify

#endif
