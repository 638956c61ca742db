#ifndef SAS_ORACLE_HPP
#define SAS_ORACLE_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "sas/states.hpp"

namespace sas::oracle {

/// Isometry from the Dicke basis into the 2^N computational basis;
/// column k has binom(N,k) entries equal to binom(N,k)^(-1/2).
Eigen::MatrixXd dicke_embedding(int n_qubits);

/// Embed a symmetric state into the full 2^N-dimensional space.
/// Guarded to N <= 12 (memory).
Eigen::MatrixXcd embed(const states::SymmetricState& state);

/// Minimum eigenvalue of the partial transpose over the first `cut`
/// qubits of a full 2^N density matrix (first qubits = most significant
/// index bits). Dense reference route; the eigensolve is capped at
/// n_qubits <= eig_cap by default.
double min_pt_eigenvalue(const Eigen::MatrixXcd& rho_full, int n_qubits, int cut, int eig_cap = 10);

/// Same quantity computed without leaving the symmetric sector: a
/// permutation-symmetric state viewed across a cut is supported on
/// Sym_A (x) Sym_B, so its partial transpose is the compressed
/// (cut+1)(N-cut+1) block padded with zeros. Exact up to roundoff and
/// cross-checked against the dense route in the tests.
double sym_pt_min_eigenvalue(const states::SymmetricState& state, int cut);

/// Smallest PT eigenvalue across all cuts 1..floor(N/2).
double sym_pt_min_eigenvalue_all_cuts(const states::SymmetricState& state);

/// p GHZ + (1-p) rho_0 in the Dicke basis.
states::SymmetricState ghz_mixture(int n_qubits, double p);

/// NPT threshold radius of the GHZ family: bisection on p of the minimal
/// PT eigenvalue over all cuts; returns r(p*) = p* sqrt(N/(N+1)).
double ghz_radius(int n_qubits, double p_tol = 1e-10);

/// Radius of the largest ball of absolutely separable states in the full
/// (non-symmetric) N-qubit space: 1/sqrt(2^N (2^N - 1)).
double r_ns(int n_qubits);

/// Exact two-qubit criterion: sqrt(lambda_1) + sqrt(lambda_2) >= 1.
bool exact_sas_n2(const states::Spectrum& s);

/// Minimum of lambda . sigma(Delta) over all permutations, exhaustively
/// (guarded to N <= 6).
double permutation_min_p0(const states::Spectrum& s);

/// Minimum of the north-pole truncated P over sampled Haar orbits
/// V Lambda V^dagger; never undercuts permutation_min_p0.
double orbit_p0_min(const states::Spectrum& s, long n_samples, uint64_t seed, bool parallel = true);

}  // namespace sas::oracle

#endif
