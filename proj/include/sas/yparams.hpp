#ifndef SAS_YPARAMS_HPP
#define SAS_YPARAMS_HPP

#include <vector>

#include "sas/exact.hpp"

namespace sas::witness {

/// Free parameters y_L of the nonlinear witnesses, stored for
/// floor(N/2) < L <= N (y_L with L <= j carries a vanishing Theta factor
/// and is structurally absent). Admissible iff
///   y_L F(L,mu) Theta(L-j) - y_N F(N,1) >= 0  for L = 1..N, mu = 1..L,
/// which reduces to y_N >= 0 plus the Theta = 1 rows.
struct YParams {
  int n_qubits = 0;
  std::vector<double> y;           // indexed by L, size N+1; entries with L <= N/2 are 0
  std::vector<mpq_class> y_exact;  // same indexing; empty when no exact values are known

  static YParams zeros(int n_qubits);
  /// Values for L = floor(N/2)+1 .. N, in that order.
  static YParams from_list(int n_qubits, const std::vector<double>& values);

  bool has_exact() const { return !y_exact.empty(); }
  double at(int L) const { return y[static_cast<size_t>(L)]; }
  int first_l() const { return n_qubits / 2 + 1; }
};

/// Floating-point admissibility check (tolerance on each inequality row).
bool y_admissible(const YParams& y, double tol = 1e-12);

/// Exact admissibility; requires y_exact to be populated.
bool y_admissible_exact(const YParams& y);

}  // namespace sas::witness

#endif
