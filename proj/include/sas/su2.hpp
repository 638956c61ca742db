#ifndef SAS_SU2_HPP
#define SAS_SU2_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sas/exact.hpp"
#include "sas/halfint.hpp"

namespace sas::su2 {

// Index conventions used throughout:
//   * length-(N+1) vectors over the symmetric basis are Dicke-indexed
//     k = 0..N with k = j - m (k = 0 is the highest-weight state |j,j>);
//   * KernelSpectrum::deltas keeps the formula index of Delta_k =
//     (-1)^(N-k) binom(N+1, k); the kernel eigenvalue attached to Dicke
//     index k is deltas[N - k].

/// Condon-Shortley Clebsch-Gordan coefficient C^{JM}_{j1 m1 j2 m2}, exact.
/// Out-of-range quantum numbers (triangle violation, |m| > j, mismatched
/// parities, m1 + m2 != M) raise std::domain_error; legitimate zeros of
/// in-range coefficients are returned as exact zero.
ExactRoot clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

double clebsch_gordan_d(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// The (m1, m2)-independent part of the squared CG coefficient:
/// (2J+1) * triangle ratio * (J+M)!(J-M)!.  The radicand of
/// clebsch_gordan(...) factors as cg_prefactor * (perfect square), which
/// lets exact tests sum products of two coefficients sharing (j1, j2).
mpq_class cg_prefactor(HalfInt j1, HalfInt j2, HalfInt J, HalfInt M);

/// Wigner small-d matrix element d^j_{mp,m}(beta) by the standard sum.
double wigner_small_d(HalfInt j, HalfInt mp, HalfInt m, double beta);

/// Full rotation matrix D^{(j)}(alpha, beta, gamma) with
/// D_{m'm} = e^{-i m' alpha} d^j_{m'm}(beta) e^{-i m gamma}, Dicke-indexed
/// (row k' = j - m', column k = j - m), for N = 2j.
Eigen::MatrixXcd rotation_matrix(int n_qubits, double alpha, double beta, double gamma);

/// Spherical harmonic Y_LM(theta, phi), Condon-Shortley phase.
std::complex<double> spherical_harmonic(int L, int M, double theta, double phi);

/// Diagonal of the multipole operator T_{L0} for N qubits, Dicke-indexed:
/// t_L[k] = (-1)^k C^{L0}_{j,j-k; j,k-j}.
std::vector<double> multipole_diag(int n_qubits, int L);

/// Eigenvalues of the s = 1 phase-space kernel, exact integers.
struct KernelSpectrum {
  int n_qubits = 0;
  std::vector<mpz_class> deltas;  // deltas[k] = (-1)^(N-k) binom(N+1, k)

  std::vector<double> as_doubles() const;
  /// Kernel eigenvalue at Dicke index k (as double).
  double dicke(int k) const;
};

KernelSpectrum kernel_eigenvalues(int n_qubits);

/// Independent route to the same eigenvalues through the CG sum
/// Delta_{j+m} = sum_L (-1)^{j-m} C^{L0}_{jm,j-m}
///               sqrt((2L+1)(2j-L)!(2j+L+1)!) / (2j+1)!,
/// returned in the same index order as KernelSpectrum::deltas.
std::vector<double> kernel_eigenvalues_cg_sum(int n_qubits);

/// |Delta|^2 = binom(2N+2, N+1) - 1, exact.
mpz_class delta_norm_sq(int n_qubits);

/// State-independent witness coefficient F(L, mu), exact.
/// The sigma sum runs over even sigma from 0 to min(N, 2L).
mpq_class f_coeff(int n_qubits, int L, int mu);

/// g_L = sqrt((2L+1)/(N+1)) / C^{jj}_{jj,L0}, exact (positive root).
ExactRoot g_coeff(int n_qubits, int L);

/// g_L^2 as a rational, via the closed-form identity for C^{jj}_{jj,L0}.
mpq_class g_coeff_sq(int n_qubits, int L);

/// Heaviside step with Theta(x) = 0 for x <= 0, evaluated at L - j for
/// integer L and j = N/2 (true iff 2L > N).
bool theta_gt_j(int n_qubits, int L);

}  // namespace sas::su2

#endif
