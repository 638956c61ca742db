#ifndef SAS_STATES_HPP
#define SAS_STATES_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sas/exact.hpp"

namespace sas::states {

/// Validation tolerances. `structural` guards inputs we control exactly
/// (hermiticity, traces, sums); `derived` guards quantities that pass
/// through floating-point pipelines (positivity slack, identities).
struct Tolerances {
  double structural = 1e-12;
  double derived = 1e-10;
};

/// Eigenvalue spectrum of a symmetric N-qubit state, canonicalized to
/// descending order at construction. Witnesses never re-sort.
class Spectrum {
 public:
  Spectrum(int n_qubits, std::vector<double> lambdas, const Tolerances& tol = {});

  int n_qubits() const { return n_qubits_; }
  int dim() const { return n_qubits_ + 1; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double operator[](int k) const { return lambdas_[static_cast<size_t>(k)]; }

  /// Exact rational images of the stored doubles.
  std::vector<mpq_class> exact() const;

 private:
  int n_qubits_;
  std::vector<double> lambdas_;
};

/// Hilbert-Schmidt distance to the maximally mixed symmetric state:
/// r = sqrt(sum lambda^2 - 1/(N+1)), computed exactly then rounded.
double spectrum_r(const Spectrum& s);
mpq_class spectrum_r_sq_exact(const Spectrum& s);

/// Density matrix in the Dicke basis (index k = j - m), validated
/// Hermitian / unit trace / positive semidefinite on construction.
class SymmetricState {
 public:
  SymmetricState(int n_qubits, Eigen::MatrixXcd matrix, const Tolerances& tol = {});

  int n_qubits() const { return n_qubits_; }
  int dim() const { return n_qubits_ + 1; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  int n_qubits_;
  Eigen::MatrixXcd m_;
};

/// Multipole components rho_LM = Tr(rho T_LM^dagger).
struct MultipoleComponents {
  int n_qubits = 0;
  std::map<std::pair<int, int>, std::complex<double>> rho_lm;  // (L, M) -> value

  std::complex<double> at(int L, int M) const;
};

/// The multipole operator T_LM as a dense Dicke-basis matrix.
Eigen::MatrixXcd multipole_operator(int n_qubits, int L, int M);

MultipoleComponents multipole_components(const SymmetricState& state, const Tolerances& tol = {});

/// r recovered from components: sqrt(sum_L rho_L0^2 + 2 sum_{M>0} |rho_LM|^2).
double r_from_components(const MultipoleComponents& c);

/// Q_L(rho, Omega) = sum_M rho_LM Y_LM(Omega); real for Hermitian states.
double q_function(const MultipoleComponents& c, int L, double theta, double phi);

/// Truncated P function P_0(rho, Omega).
double truncated_p(const SymmetricState& state, double theta, double phi);

/// North-pole value: sum over Dicke k of Delta_{N-k} rho_kk.
double truncated_p_north(const SymmetricState& state);

/// North-pole value of the diagonal state carrying the spectrum on the
/// Dicke diagonal (lambda_0 on |j,j>, descending).
double truncated_p_north(const Spectrum& s);

/// D(alpha,beta,gamma) rho D^dagger.
SymmetricState rotate_state(const SymmetricState& state, double alpha, double beta, double gamma);

/// Diagonal state with the spectrum on the Dicke diagonal.
SymmetricState state_from_spectrum(const Spectrum& s);

/// Eigenvalues of the state, descending.
std::vector<double> state_eigenvalues(const SymmetricState& state);

/// Deterministic random stream (fully specified generator + explicit
/// Box-Muller, so outputs are reproducible across platforms).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  uint64_t next_u64();
  double u01();     // uniform in (0, 1)
  double normal();  // standard normal

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction. Deterministic given the seed.
Eigen::MatrixXcd haar_random_unitary(int dim, uint64_t seed);

/// Spectrum uniform on the probability simplex (flat Dirichlet), sorted.
Spectrum random_spectrum(int dim, uint64_t seed);

/// V Lambda V^dagger for a Haar-random V; convenient for orbit sampling.
SymmetricState random_state(int n_qubits, uint64_t seed);

/// Integral of f(theta, phi) against the normalized kernel measure
/// (N+1)/(4pi) dOmega, using Gauss-Legendre in cos(theta) (order 2N+2)
/// crossed with a uniform phi rule (4N+4 points). Exact for band limit N.
double sphere_integral(int n_qubits, const std::function<double(double, double)>& f);

/// Gauss-Legendre nodes/weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int order);

}  // namespace sas::states

#endif
