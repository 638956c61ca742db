#include "sas/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sas/su2.hpp"

namespace sas::states {

Spectrum::Spectrum(int n_qubits, std::vector<double> lambdas, const Tolerances& tol)
    : n_qubits_(n_qubits), lambdas_(std::move(lambdas)) {
  if (n_qubits_ < 1) throw std::invalid_argument("Spectrum: need at least one qubit");
  if (lambdas_.size() != static_cast<size_t>(n_qubits_) + 1) {
    throw std::invalid_argument("Spectrum: expected N+1 eigenvalues");
  }
  double sum = 0.0;
  for (double& l : lambdas_) {
    if (!std::isfinite(l)) throw std::invalid_argument("Spectrum: non-finite eigenvalue");
    if (l < 0.0) {
      if (l < -tol.derived) throw std::invalid_argument("Spectrum: negative eigenvalue");
      l = 0.0;  // clamp numerical noise
    }
    sum += l;
  }
  if (std::abs(sum - 1.0) > tol.structural) {
    throw std::invalid_argument("Spectrum: eigenvalues do not sum to 1");
  }
  std::sort(lambdas_.begin(), lambdas_.end(), std::greater<double>());
}

std::vector<mpq_class> Spectrum::exact() const {
  std::vector<mpq_class> out;
  out.reserve(lambdas_.size());
  for (double l : lambdas_) out.push_back(rational_of_double(l));
  return out;
}

mpq_class spectrum_r_sq_exact(const Spectrum& s) {
  mpq_class acc(0);
  for (double l : s.lambdas()) {
    mpq_class q = rational_of_double(l);
    acc += q * q;
  }
  return acc - make_rational(1, s.dim());
}

double spectrum_r(const Spectrum& s) {
  mpq_class r2 = spectrum_r_sq_exact(s);
  if (r2 < 0) return 0.0;  // uniform spectrum up to rounding
  return std::sqrt(r2.get_d());
}

SymmetricState::SymmetricState(int n_qubits, Eigen::MatrixXcd matrix, const Tolerances& tol)
    : n_qubits_(n_qubits), m_(std::move(matrix)) {
  const int d = n_qubits_ + 1;
  if (n_qubits_ < 1 || m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("SymmetricState: matrix must be (N+1)x(N+1)");
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol.structural) {
    throw std::invalid_argument("SymmetricState: matrix is not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > tol.structural || std::abs(m_.trace().imag()) > tol.structural) {
    throw std::invalid_argument("SymmetricState: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.derived) {
    throw std::invalid_argument("SymmetricState: matrix is not positive semidefinite");
  }
}

std::complex<double> MultipoleComponents::at(int L, int M) const {
  auto it = rho_lm.find({L, M});
  if (it == rho_lm.end()) throw std::domain_error("MultipoleComponents: (L, M) out of range");
  return it->second;
}

Eigen::MatrixXcd multipole_operator(int n_qubits, int L, int M) {
  if (L < 0 || L > n_qubits || std::abs(M) > L) {
    throw std::domain_error("multipole_operator: (L, M) out of range");
  }
  const int d = n_qubits + 1;
  const HalfInt j = half_of(n_qubits);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(d, d);
  // T_LM = sum_{m,m'} (-1)^{j-m'} C^{LM}_{jm, j-m'} |j,m><j,m'|, nonzero on
  // the diagonal stripe i' - i = M (Dicke indices).
  for (int i = 0; i < d; ++i) {
    const int ip = i + M;
    if (ip < 0 || ip >= d) continue;
    const HalfInt m = HalfInt::from_twice(j.twice() - 2 * i);
    const HalfInt mp = HalfInt::from_twice(j.twice() - 2 * ip);
    const double c = su2::clebsch_gordan_d(j, m, j, -mp, L, M);
    const int par = ((j - mp).as_int() % 2 == 0) ? 1 : -1;
    T(i, ip) = par * c;
  }
  return T;
}

MultipoleComponents multipole_components(const SymmetricState& state, const Tolerances& tol) {
  const int N = state.n_qubits();
  MultipoleComponents out;
  out.n_qubits = N;
  for (int L = 0; L <= N; ++L) {
    for (int M = -L; M <= L; ++M) {
      Eigen::MatrixXcd T = multipole_operator(N, L, M);
      // Tr(rho T^dagger); T has real entries in this basis.
      std::complex<double> v = (state.matrix() * T.adjoint()).trace();
      out.rho_lm[{L, M}] = v;
    }
  }
  // hermiticity constraint rho_LM^* = (-1)^M rho_{L,-M}
  for (const auto& [lm, v] : out.rho_lm) {
    const auto& [L, M] = lm;
    std::complex<double> mirror = out.at(L, -M);
    const double par = (M % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(std::conj(v) - par * mirror) > tol.derived) {
      throw std::invalid_argument("multipole_components: hermiticity constraint violated");
    }
  }
  return out;
}

double r_from_components(const MultipoleComponents& c) {
  double acc = 0.0;
  for (int L = 1; L <= c.n_qubits; ++L) {
    const double d0 = c.at(L, 0).real();
    acc += d0 * d0;
    for (int M = 1; M <= L; ++M) acc += 2.0 * std::norm(c.at(L, M));
  }
  return std::sqrt(acc);
}

double q_function(const MultipoleComponents& c, int L, double theta, double phi) {
  if (L < 0 || L > c.n_qubits) throw std::domain_error("q_function: L out of range");
  std::complex<double> acc = 0.0;
  for (int M = -L; M <= L; ++M) {
    acc += c.at(L, M) * su2::spherical_harmonic(L, M, theta, phi);
  }
  return acc.real();
}

namespace {

// 1 / C^{jj}_{jj,L0} = sqrt((N-L)!(N+L+1)!/(N+1)) / N!
double inv_cg_top(int N, int L) {
  return std::sqrt(su2::g_coeff_sq(N, L).get_d() * (N + 1) / (2.0 * L + 1.0));
}

}  // namespace

double truncated_p(const SymmetricState& state, double theta, double phi) {
  const int N = state.n_qubits();
  MultipoleComponents c = multipole_components(state);
  double acc = 0.0;
  for (int L = 0; L <= N; ++L) {
    acc += inv_cg_top(N, L) * q_function(c, L, theta, phi);
  }
  return std::sqrt(4.0 * M_PI / (N + 1)) * acc;
}

double truncated_p_north(const SymmetricState& state) {
  const int N = state.n_qubits();
  const su2::KernelSpectrum ks = su2::kernel_eigenvalues(N);
  double acc = 0.0;
  for (int k = 0; k <= N; ++k) acc += ks.dicke(k) * state.matrix()(k, k).real();
  return acc;
}

double truncated_p_north(const Spectrum& s) {
  const su2::KernelSpectrum ks = su2::kernel_eigenvalues(s.n_qubits());
  double acc = 0.0;
  for (int k = 0; k <= s.n_qubits(); ++k) acc += ks.dicke(k) * s[k];
  return acc;
}

SymmetricState rotate_state(const SymmetricState& state, double alpha, double beta, double gamma) {
  Eigen::MatrixXcd D = su2::rotation_matrix(state.n_qubits(), alpha, beta, gamma);
  return SymmetricState(state.n_qubits(), D * state.matrix() * D.adjoint());
}

SymmetricState state_from_spectrum(const Spectrum& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
  for (int k = 0; k < s.dim(); ++k) m(k, k) = s[k];
  return SymmetricState(s.n_qubits(), m);
}

std::vector<double> state_eigenvalues(const SymmetricState& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + state.dim());
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

uint64_t RandomStream::next_u64() {
  // splitmix64
  state_ += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double RandomStream::u01() {
  // 53 random bits into (0, 1); never returns exactly 0
  const uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = u01(), u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Eigen::MatrixXcd haar_random_unitary(int dim, uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("haar_random_unitary: dim >= 2 required");
  RandomStream rng(seed);
  Eigen::MatrixXcd A(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) A(i, k) = std::complex<double>(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    std::complex<double> r = R(k, k);
    const double a = std::abs(r);
    Q.col(k) *= (a > 0) ? r / a : std::complex<double>(1.0, 0.0);
  }
  return Q;
}

Spectrum random_spectrum(int dim, uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("random_spectrum: dim >= 2 required");
  RandomStream rng(seed);
  std::vector<double> l(static_cast<size_t>(dim));
  double sum = 0.0;
  for (double& x : l) {
    x = -std::log(rng.u01());
    sum += x;
  }
  for (double& x : l) x /= sum;
  return Spectrum(dim - 1, std::move(l));
}

SymmetricState random_state(int n_qubits, uint64_t seed) {
  const Spectrum s = random_spectrum(n_qubits + 1, seed);
  const Eigen::MatrixXcd V = haar_random_unitary(n_qubits + 1, seed ^ 0xABCDEF1234567890ULL);
  Eigen::VectorXd diag(n_qubits + 1);
  for (int k = 0; k <= n_qubits; ++k) diag(k) = s[k];
  Eigen::MatrixXcd m = V * diag.asDiagonal() * V.adjoint();
  return SymmetricState(n_qubits, std::move(m));
}

std::vector<std::pair<double, double>> gauss_legendre(int order) {
  // Newton iteration on Legendre polynomials
  std::vector<std::pair<double, double>> nw(static_cast<size_t>(order));
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nw[static_cast<size_t>(i)] = {x, w};
    nw[static_cast<size_t>(order - 1 - i)] = {-x, w};
  }
  return nw;
}

double sphere_integral(int n_qubits, const std::function<double(double, double)>& f) {
  const int gl_order = 2 * n_qubits + 2;
  const int n_phi = 4 * n_qubits + 4;
  const auto nodes = gauss_legendre(gl_order);
  double acc = 0.0;
  for (const auto& [x, w] : nodes) {
    const double theta = std::acos(x);
    double ring = 0.0;
    for (int p = 0; p < n_phi; ++p) {
      ring += f(theta, 2.0 * M_PI * p / n_phi);
    }
    acc += w * ring * (2.0 * M_PI / n_phi);
  }
  // normalized kernel measure: (N+1)/(4pi) dOmega integrates P_0 to 1
  return acc * (n_qubits + 1) / (4.0 * M_PI);
}

}  // namespace sas::states
