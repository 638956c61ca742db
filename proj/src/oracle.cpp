#include "sas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sas/parallel.hpp"
#include "sas/su2.hpp"

namespace sas::oracle {

Eigen::MatrixXd dicke_embedding(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12) throw UnsupportedError("dicke_embedding: N <= 12 required");
  const long dim_full = 1L << n_qubits;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(dim_full, n_qubits + 1);
  std::vector<double> norm(static_cast<size_t>(n_qubits) + 1);
  for (int k = 0; k <= n_qubits; ++k) {
    norm[static_cast<size_t>(k)] = 1.0 / std::sqrt(binomial(n_qubits, k).get_d());
  }
  for (long x = 0; x < dim_full; ++x) {
    const int k = __builtin_popcountll(static_cast<unsigned long long>(x));
    E(x, k) = norm[static_cast<size_t>(k)];
  }
  return E;
}

Eigen::MatrixXcd embed(const states::SymmetricState& state) {
  const Eigen::MatrixXd E = dicke_embedding(state.n_qubits());
  return E * state.matrix() * E.transpose();
}

double min_pt_eigenvalue(const Eigen::MatrixXcd& rho_full, int n_qubits, int cut, int eig_cap) {
  if (cut < 1 || cut > n_qubits - 1) throw std::domain_error("min_pt_eigenvalue: cut out of range");
  if (n_qubits > eig_cap) {
    throw UnsupportedError("min_pt_eigenvalue: dense eigensolve capped (raise eig_cap to override)");
  }
  const long dim_full = 1L << n_qubits;
  if (rho_full.rows() != dim_full || rho_full.cols() != dim_full) {
    throw std::invalid_argument("min_pt_eigenvalue: matrix is not 2^N x 2^N");
  }
  const long dim_a = 1L << cut;
  const long dim_b = 1L << (n_qubits - cut);
  Eigen::MatrixXcd pt(dim_full, dim_full);
  for (long a = 0; a < dim_a; ++a) {
    for (long b = 0; b < dim_b; ++b) {
      for (long ap = 0; ap < dim_a; ++ap) {
        for (long bp = 0; bp < dim_b; ++bp) {
          pt(a * dim_b + b, ap * dim_b + bp) = rho_full(ap * dim_b + b, a * dim_b + bp);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

// binomial coefficients as doubles, small N
double binom_d(int n, int k) { return binomial(n, k).get_d(); }

}  // namespace

double sym_pt_min_eigenvalue(const states::SymmetricState& state, int cut) {
  const int N = state.n_qubits();
  if (cut < 1 || cut > N - 1) throw std::domain_error("sym_pt_min_eigenvalue: cut out of range");
  const int na = cut, nb = N - cut;
  const int da = na + 1, db = nb + 1;

  // |D^c_N> = sum_a w[c][a] |D^a_na> |D^{c-a}_nb>
  std::vector<std::vector<double>> w(static_cast<size_t>(N) + 1,
                                     std::vector<double>(static_cast<size_t>(da), 0.0));
  for (int c = 0; c <= N; ++c) {
    for (int a = std::max(0, c - nb); a <= std::min(na, c); ++a) {
      w[static_cast<size_t>(c)][static_cast<size_t>(a)] =
          std::sqrt(binom_d(na, a) * binom_d(nb, c - a) / binom_d(N, c));
    }
  }

  const auto& S = state.matrix();
  Eigen::MatrixXcd block(da * db, da * db);
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      for (int ap = 0; ap < da; ++ap) {
        for (int bp = 0; bp < db; ++bp) {
          // PT over A: <a,b| rho^{T_A} |a',b'> = <a',b| rho |a,b'>
          const int c = ap + b, cp = a + bp;
          std::complex<double> v = 0.0;
          if (c <= N && cp <= N) {
            v = S(c, cp) * w[static_cast<size_t>(c)][static_cast<size_t>(ap)] *
                w[static_cast<size_t>(cp)][static_cast<size_t>(a)];
          }
          block(a * db + b, ap * db + bp) = v;
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  const double block_min = es.eigenvalues().minCoeff();
  // the full PT is this block padded with zeros on the orthocomplement
  if (static_cast<long>(da) * db == (1L << N)) return block_min;
  return std::min(0.0, block_min);
}

double sym_pt_min_eigenvalue_all_cuts(const states::SymmetricState& state) {
  double m = std::numeric_limits<double>::infinity();
  for (int cut = 1; cut <= state.n_qubits() / 2; ++cut) {
    m = std::min(m, sym_pt_min_eigenvalue(state, cut));
  }
  return m;
}

states::SymmetricState ghz_mixture(int n_qubits, double p) {
  const int d = n_qubits + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) * ((1.0 - p) / d);
  m(0, 0) += 0.5 * p;
  m(d - 1, d - 1) += 0.5 * p;
  m(0, d - 1) += 0.5 * p;
  m(d - 1, 0) += 0.5 * p;
  return states::SymmetricState(n_qubits, std::move(m));
}

double ghz_radius(int n_qubits, double p_tol) {
  if (n_qubits < 2) throw std::domain_error("ghz_radius: N >= 2 required");
  auto npt = [&](double p) {
    return sym_pt_min_eigenvalue_all_cuts(ghz_mixture(n_qubits, p)) < 0.0;
  };
  if (!npt(1.0)) throw std::logic_error("ghz_radius: pure GHZ must be NPT");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > p_tol) {
    const double mid = 0.5 * (lo + hi);
    (npt(mid) ? hi : lo) = mid;
  }
  const double p_star = 0.5 * (lo + hi);
  return p_star * std::sqrt(static_cast<double>(n_qubits) / (n_qubits + 1));
}

double r_ns(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("r_ns: N >= 1 required");
  const double d = std::pow(2.0, n_qubits);
  return 1.0 / std::sqrt(d * (d - 1.0));
}

bool exact_sas_n2(const states::Spectrum& s) {
  if (s.n_qubits() != 2) throw UnsupportedError("exact_sas_n2: defined for N = 2 only");
  return std::sqrt(s[1]) + std::sqrt(s[2]) >= 1.0;
}

double permutation_min_p0(const states::Spectrum& s) {
  const int N = s.n_qubits();
  if (N > 6) throw UnsupportedError("permutation_min_p0: exhaustive enumeration limited to N <= 6");
  std::vector<double> delta = su2::kernel_eigenvalues(N).as_doubles();
  std::sort(delta.begin(), delta.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double dot = 0.0;
    for (int k = 0; k <= N; ++k) dot += s[k] * delta[static_cast<size_t>(k)];
    best = std::min(best, dot);
  } while (std::next_permutation(delta.begin(), delta.end()));
  return best;
}

double orbit_p0_min(const states::Spectrum& s, long n_samples, uint64_t seed, bool parallel) {
  const int d = s.dim();
  const su2::KernelSpectrum ks = su2::kernel_eigenvalues(s.n_qubits());
  std::vector<double> delta_dicke(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) delta_dicke[static_cast<size_t>(k)] = ks.dicke(k);

  std::vector<double> vals(static_cast<size_t>(n_samples));
  par::parallel_for(n_samples, parallel, [&](long i) {
    const Eigen::MatrixXcd V = states::haar_random_unitary(d, par::mix_seed(seed, static_cast<uint64_t>(i)));
    // P0 at the north pole of V Lambda V^dagger needs only |V_kl|^2
    double acc = 0.0;
    for (int k = 0; k < d; ++k) {
      double diag = 0.0;
      for (int l = 0; l < d; ++l) diag += std::norm(V(k, l)) * s[l];
      acc += delta_dicke[static_cast<size_t>(k)] * diag;
    }
    vals[static_cast<size_t>(i)] = acc;
  });
  double best = std::numeric_limits<double>::infinity();
  for (double v : vals) best = std::min(best, v);
  return best;
}

}  // namespace sas::oracle
