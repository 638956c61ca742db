#include "sas/su2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace sas {

const mpz_class& factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative argument");
  thread_local std::deque<mpz_class> table{mpz_class(1)};
  while (static_cast<long>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<long>(table.size()));
  }
  return table[static_cast<size_t>(n)];
}

mpz_class binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class rational_of_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

mpq_class sqrt_exact(const mpq_class& q) {
  if (q < 0) throw std::domain_error("sqrt_exact of negative rational");
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    throw std::domain_error("sqrt_exact: radicand is not a perfect square");
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rational(rn, rd);
}

ExactRoot::ExactRoot(int sign, mpq_class radicand) : sign_(sign), rad_(std::move(radicand)) {
  if (rad_ < 0) throw std::domain_error("ExactRoot: negative radicand");
  if (rad_ == 0) sign_ = 0;
  if (sign_ == 0) rad_ = 0;
}

ExactRoot ExactRoot::from_rational(const mpq_class& q) {
  int s = sgn(q);
  return ExactRoot(s, q * q);
}

ExactRoot ExactRoot::operator*(const ExactRoot& o) const {
  return ExactRoot(sign_ * o.sign_, rad_ * o.rad_);
}

ExactRoot ExactRoot::inverse() const {
  if (sign_ == 0) throw std::domain_error("ExactRoot: inverse of zero");
  return ExactRoot(sign_, 1 / rad_);
}

mpq_class ExactRoot::to_rational() const {
  if (sign_ == 0) return mpq_class(0);
  return sign_ * sqrt_exact(rad_);
}

double ExactRoot::value() const { return sign_ * std::sqrt(rad_.get_d()); }

std::string ExactRoot::str() const {
  if (sign_ == 0) return "0";
  std::string s = sign_ < 0 ? "-" : "";
  return s + "sqrt(" + rational_str(rad_) + ")";
}

std::string rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace sas

namespace sas::su2 {

namespace {

bool same_parity(HalfInt a, HalfInt b) { return ((a.twice() - b.twice()) % 2) == 0; }

void check_cg_domain(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  auto bad = [&](const std::string& why) {
    throw std::domain_error("clebsch_gordan: " + why + " (j1=" + j1.str() + " m1=" + m1.str() +
                            " j2=" + j2.str() + " m2=" + m2.str() + " J=" + J.str() + " M=" + M.str() + ")");
  };
  if (j1.twice() < 0 || j2.twice() < 0 || J.twice() < 0) bad("negative spin");
  if (!same_parity(j1, m1) || !same_parity(j2, m2) || !same_parity(J, M)) bad("j,m parity mismatch");
  if (std::abs(m1.twice()) > j1.twice() || std::abs(m2.twice()) > j2.twice() ||
      std::abs(M.twice()) > J.twice()) {
    bad("projection out of range");
  }
  if (J.twice() < std::abs(j1.twice() - j2.twice()) || J.twice() > j1.twice() + j2.twice()) {
    bad("triangle inequality violated");
  }
  if (((j1 + j2).twice() - J.twice()) % 2 != 0) bad("j1+j2+J not an integer");
  if ((m1 + m2).twice() != M.twice()) bad("m1+m2 != M");
}

}  // namespace

mpq_class cg_prefactor(HalfInt j1, HalfInt j2, HalfInt J, HalfInt M) {
  const long a = (j1 + j2 - J).as_int();
  const long b = (j1 - j2 + J).as_int();
  const long c = ((-j1) + j2 + J).as_int();
  const long d = (j1 + j2 + J).as_int() + 1;
  mpq_class tri = make_rational(factorial(a) * factorial(b) * factorial(c), factorial(d));
  const long jm = (J + M).as_int();
  const long jp = (J - M).as_int();
  return (J.twice() + 1) * tri * mpq_class(factorial(jm) * factorial(jp));
}

ExactRoot clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  check_cg_domain(j1, m1, j2, m2, J, M);

  // Racah sum: every factorial argument below is a true integer.
  const long j1m = (j1 - m1).as_int();
  const long j1p = (j1 + m1).as_int();
  const long j2m = (j2 - m2).as_int();
  const long j2p = (j2 + m2).as_int();
  const long jjJ = (j1 + j2 - J).as_int();
  const long Jj2m1 = (J - j2 + m1).as_int();  // may be negative; bounds below
  const long Jj1m2 = (J - j1 - m2).as_int();

  const long kmin = std::max({0L, -Jj2m1, -Jj1m2});
  const long kmax = std::min({jjJ, j1m, j2p});

  mpq_class sum(0);
  for (long k = kmin; k <= kmax; ++k) {
    mpz_class den = factorial(k) * factorial(jjJ - k) * factorial(j1m - k) * factorial(j2p - k) *
                    factorial(Jj2m1 + k) * factorial(Jj1m2 + k);
    mpq_class term = make_rational((k % 2 == 0) ? 1 : -1, den);
    sum += term;
  }
  if (sum == 0) return ExactRoot::zero();

  mpq_class mpart(factorial(j1m) * factorial(j1p) * factorial(j2m) * factorial(j2p));
  mpq_class rad = cg_prefactor(j1, j2, J, M) * mpart * sum * sum;
  return ExactRoot(sgn(sum), rad);
}

double clebsch_gordan_d(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  return clebsch_gordan(j1, m1, j2, m2, J, M).value();
}

namespace {

double factorial_d(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) {
    throw std::domain_error("factorial_d: argument out of range");
  }
  return table[static_cast<size_t>(n)];
}

}  // namespace

double wigner_small_d(HalfInt j, HalfInt mp, HalfInt m, double beta) {
  if (j.twice() < 0 || !same_parity(j, mp) || !same_parity(j, m) ||
      std::abs(mp.twice()) > j.twice() || std::abs(m.twice()) > j.twice()) {
    throw std::domain_error("wigner_small_d: projections out of range");
  }
  const int jpm = (j + m).as_int();
  const int jmm = (j - m).as_int();
  const int jpmp = (j + mp).as_int();
  const int jmmp = (j - mp).as_int();
  const int mpm = (mp - m).as_int();  // mp - m is always an integer

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double pref =
      std::sqrt(factorial_d(jpmp) * factorial_d(jmmp) * factorial_d(jpm) * factorial_d(jmm));

  const int smin = std::max(0, -mpm);
  const int smax = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = smin; k <= smax; ++k) {
    const double sgn = ((mpm + k) % 2 == 0) ? 1.0 : -1.0;
    const double den = factorial_d(jpm - k) * factorial_d(k) * factorial_d(mpm + k) * factorial_d(jmmp - k);
    sum += sgn * std::pow(c, j.twice() - mpm - 2 * k) * std::pow(s, mpm + 2 * k) / den;
  }
  return pref * sum;
}

Eigen::MatrixXcd rotation_matrix(int n_qubits, double alpha, double beta, double gamma) {
  const int d = n_qubits + 1;
  const HalfInt j = half_of(n_qubits);
  Eigen::MatrixXcd D(d, d);
  const std::complex<double> I(0.0, 1.0);
  for (int kp = 0; kp < d; ++kp) {
    const HalfInt mp = HalfInt::from_twice(j.twice() - 2 * kp);
    for (int k = 0; k < d; ++k) {
      const HalfInt m = HalfInt::from_twice(j.twice() - 2 * k);
      D(kp, k) = std::exp(-I * (mp.value() * alpha)) * wigner_small_d(j, mp, m, beta) *
                 std::exp(-I * (m.value() * gamma));
    }
  }
  return D;
}

std::complex<double> spherical_harmonic(int L, int M, double theta, double phi) {
  if (L < 0 || std::abs(M) > L) throw std::domain_error("spherical_harmonic: |M| > L");
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::domain_error("spherical_harmonic: non-finite angle");
  }
  const int am = std::abs(M);
  const double x = std::cos(theta);
  const double sx = std::sin(theta);

  // Fully normalized associated Legendre recurrence, Condon-Shortley phase
  // built into the seed.
  double pmm = 1.0 / std::sqrt(4.0 * M_PI);
  for (int mm = 1; mm <= am; ++mm) {
    pmm *= -std::sqrt((2.0 * mm + 1.0) / (2.0 * mm)) * sx;
  }
  double p = pmm;
  if (L > am) {
    double pm1 = pmm;
    double pm2 = 0.0;
    for (int l = am + 1; l <= L; ++l) {
      const double l2 = static_cast<double>(l) * l;
      const double lm2 = static_cast<double>(l - 1) * (l - 1);
      const double am2 = static_cast<double>(am) * am;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - am2));
      const double b = std::sqrt((lm2 - am2) / (4.0 * lm2 - 1.0));
      p = a * (x * pm1 - b * pm2);
      pm2 = pm1;
      pm1 = p;
    }
  }
  std::complex<double> y = p * std::exp(std::complex<double>(0.0, am * phi));
  if (M < 0) {
    y = std::conj(y);
    if (am % 2 != 0) y = -y;
  }
  return y;
}

std::vector<double> multipole_diag(int n_qubits, int L) {
  if (n_qubits < 1) throw std::domain_error("multipole_diag: need at least one qubit");
  if (L < 0 || L > n_qubits) throw std::domain_error("multipole_diag: L out of range");
  const HalfInt j = half_of(n_qubits);
  std::vector<double> t(static_cast<size_t>(n_qubits) + 1);
  for (int k = 0; k <= n_qubits; ++k) {
    const HalfInt m = HalfInt::from_twice(j.twice() - 2 * k);
    const double c = clebsch_gordan_d(j, m, j, -m, L, 0);
    t[static_cast<size_t>(k)] = ((k % 2) == 0 ? 1.0 : -1.0) * c;
  }
  return t;
}

std::vector<double> KernelSpectrum::as_doubles() const {
  std::vector<double> v(deltas.size());
  for (size_t i = 0; i < deltas.size(); ++i) v[i] = deltas[i].get_d();
  return v;
}

double KernelSpectrum::dicke(int k) const { return deltas[static_cast<size_t>(n_qubits - k)].get_d(); }

KernelSpectrum kernel_eigenvalues(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("kernel_eigenvalues: N >= 1 required");
  KernelSpectrum ks;
  ks.n_qubits = n_qubits;
  ks.deltas.resize(static_cast<size_t>(n_qubits) + 1);
  for (int k = 0; k <= n_qubits; ++k) {
    mpz_class v = binomial(n_qubits + 1, k);
    if ((n_qubits - k) % 2 != 0) v = -v;
    ks.deltas[static_cast<size_t>(k)] = v;
  }
  return ks;
}

std::vector<double> kernel_eigenvalues_cg_sum(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("kernel_eigenvalues_cg_sum: N >= 1 required");
  const HalfInt j = half_of(n_qubits);
  const mpz_class fN1 = factorial(n_qubits + 1);
  std::vector<double> out(static_cast<size_t>(n_qubits) + 1);
  for (int idx = 0; idx <= n_qubits; ++idx) {
    // formula index idx = j + m, Dicke index k = N - idx
    const HalfInt m = HalfInt::from_twice(2 * idx - j.twice());
    double acc = 0.0;
    for (int L = 0; L <= n_qubits; ++L) {
      ExactRoot cg = clebsch_gordan(j, m, j, -m, L, 0);
      if (cg.is_zero()) continue;
      mpq_class w = make_rational((2 * L + 1) * factorial(n_qubits - L) * factorial(n_qubits + L + 1),
                                  fN1 * fN1);
      ExactRoot term = cg * ExactRoot(1, w);
      const int par = ((j - m).as_int() % 2 == 0) ? 1 : -1;
      acc += par * term.value();
    }
    out[static_cast<size_t>(idx)] = acc;
  }
  return out;
}

mpz_class delta_norm_sq(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("delta_norm_sq: N >= 1 required");
  return binomial(2 * n_qubits + 2, n_qubits + 1) - 1;
}

mpq_class f_coeff(int n_qubits, int L, int mu) {
  if (L < 1 || L > n_qubits) throw std::domain_error("f_coeff: L out of range");
  if (mu < 0 || mu > L) throw std::domain_error("f_coeff: mu out of range");

  const int sigma_max = std::min(n_qubits, 2 * L);
  mpq_class acc(0);
  for (int sigma = 0; sigma <= sigma_max; sigma += 2) {
    ExactRoot c1 = clebsch_gordan(L, 0, L, 0, sigma, 0);
    if (c1.is_zero()) continue;
    if (mu == 0) {
      acc += c1.squared();
    } else {
      ExactRoot c2 = clebsch_gordan(L, mu, L, -mu, sigma, 0);
      // the product of these two coefficients is rational (shared prefactor)
      acc += (c1 * c2).to_rational();
    }
  }
  if (mu == 0) return 1 - acc;
  return (mu % 2 == 0 ? -2 : 2) * acc;
}

mpq_class g_coeff_sq(int n_qubits, int L) {
  if (L < 1 || L > n_qubits) throw std::domain_error("g_coeff: L out of range");
  // g_L^2 = (2L+1)(N-L)!(N+L+1)! / ((N+1)!)^2
  const mpz_class fN1 = factorial(n_qubits + 1);
  return make_rational((2 * L + 1) * factorial(n_qubits - L) * factorial(n_qubits + L + 1), fN1 * fN1);
}

ExactRoot g_coeff(int n_qubits, int L) { return ExactRoot(1, g_coeff_sq(n_qubits, L)); }

bool theta_gt_j(int n_qubits, int L) { return 2 * L > n_qubits; }

}  // namespace sas::su2
