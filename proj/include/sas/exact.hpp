#ifndef SAS_EXACT_HPP
#define SAS_EXACT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sas {

/// Raised when an operation is outside the supported parameter range
/// (as opposed to mathematically invalid input, which is a domain error).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// n! as an exact integer. Values are cached per thread.
const mpz_class& factorial(long n);

/// binomial(n, k) exact; zero for k < 0 or k > n.
mpz_class binomial(long n, long k);

/// A canonicalized rational from a numerator/denominator pair.
mpq_class make_rational(const mpz_class& num, const mpz_class& den);

/// Exact conversion of an IEEE double to a rational (doubles are dyadic).
mpq_class rational_of_double(double x);

/// Exact square root of a rational that is a perfect square.
/// Throws std::domain_error otherwise.
mpq_class sqrt_exact(const mpq_class& q);

/// sign * sqrt(radicand) with radicand a nonnegative canonical rational.
/// Exactly represents Clebsch-Gordan coefficients and related quantities, so
/// squared values stay rational at any spin.
class ExactRoot {
 public:
  ExactRoot() : sign_(0), rad_(0) {}
  ExactRoot(int sign, mpq_class radicand);

  static ExactRoot zero() { return ExactRoot(); }
  /// Exact root equal to the given rational (radicand = q^2).
  static ExactRoot from_rational(const mpq_class& q);

  int sign() const { return sign_; }
  const mpq_class& radicand() const { return rad_; }

  /// sign^2 * radicand, i.e. the exact square of the value.
  mpq_class squared() const { return rad_; }

  ExactRoot operator*(const ExactRoot& o) const;
  ExactRoot operator-() const { return sign_ == 0 ? *this : ExactRoot(-sign_, rad_); }
  ExactRoot inverse() const;

  /// Exact rational value; requires the radicand to be a perfect square.
  mpq_class to_rational() const;
  bool is_zero() const { return sign_ == 0; }

  double value() const;

  /// "sqrt(p/q)", "-sqrt(p/q)" or "0".
  std::string str() const;

 private:
  int sign_;       // -1, 0, +1
  mpq_class rad_;  // >= 0, canonical; 0 iff sign_ == 0
};

/// "p/q" (q printed even when 1, matching the CLI's exact-value schema).
std::string rational_str(const mpq_class& q);

}  // namespace sas

#endif
