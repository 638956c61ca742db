#ifndef SAS_HALFINT_HPP
#define SAS_HALFINT_HPP

#include <compare>
#include <stdexcept>
#include <string>

namespace sas {

/// Half-integer quantum number stored as twice its value, so j = 3/2 is
/// HalfInt::twice(3) and arithmetic stays exact.
class HalfInt {
 public:
  constexpr HalfInt() : twice_(0) {}
  constexpr HalfInt(int whole) : twice_(2 * whole) {}  // NOLINT(google-explicit-constructor)

  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  /// The integer value; throws if this is a genuine half-integer.
  int as_int() const {
    if (!is_integer()) throw std::domain_error("HalfInt: not an integer: " + str());
    return twice_ / 2;
  }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  int twice_;
};

inline HalfInt half_of(int n) { return HalfInt::from_twice(n); }

}  // namespace sas

#endif
