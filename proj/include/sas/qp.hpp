#ifndef SAS_QP_HPP
#define SAS_QP_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sas/states.hpp"
#include "sas/yparams.hpp"

namespace sas::qp {

/// A point of the Birkhoff polytope (doubly stochastic matrix), validated
/// on construction: entries >= -1e-12, row/column sums 1 within 1e-10.
class BirkhoffPoint {
 public:
  explicit BirkhoffPoint(Eigen::MatrixXd B, double tol_entries = 1e-12, double tol_sums = 1e-10);

  static BirkhoffPoint flat(int dim);
  static BirkhoffPoint permutation(const std::vector<int>& perm);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// The quadratic objective P_LB over the Birkhoff polytope:
///   P_LB(B) = f + sum_L [ g_L (lambda B t_L) + h_L (lambda B t_L)^2 ].
/// In the shifted minor coordinates b' this is f + 2 q b'^T + b' H b'^T
/// with H = sum_L h_L v_L^T v_L.
struct QuadraticObjective {
  int dim = 0;        // d = N+1
  double f = 0.0;     // value at the flat matrix; carries r^2 and y_N F(N,1)/2
  std::vector<double> g;  // indexed by L, size N+1 (entries 1..N used)
  std::vector<double> h;
  Eigen::MatrixXd v;      // row L-1 holds v_L in the N^2 minor coordinates
  std::vector<std::vector<double>> t;  // t[L] = multipole diagonal, Dicke order
  std::vector<double> lambda;          // spectrum in Dicke slots (descending)
  witness::YParams y;                  // provenance

  bool convex() const;  // all h_L >= 0
};

QuadraticObjective build_plb(const states::Spectrum& s, const witness::YParams& y);

double evaluate(const QuadraticObjective& obj, const BirkhoffPoint& B);
Eigen::MatrixXd gradient(const QuadraticObjective& obj, const BirkhoffPoint& B);

/// Exact minimum-cost assignment (Hungarian/Jonker-Volgenant class);
/// returns perm with row i assigned to column perm[i].
std::vector<int> assignment_lmo(const Eigen::MatrixXd& cost);

struct SolverConfig {
  double tol = 1e-9;      // duality-gap stopping rule
  int max_iter = 50000;
  int restarts = 8;       // used only on the non-convex heuristic path
  uint64_t seed = 0x5A5EEDULL;
};

struct FwResult {
  double value = 0.0;
  Eigen::MatrixXd argmin;
  std::string status;  // "converged" | "heuristic" | "inconclusive"
  double gap = 0.0;    // final duality gap (convex path)
  int iterations = 0;
};

/// Frank-Wolfe with the exact assignment LMO and away steps. Convex
/// objectives (all h_L >= 0) get the duality-gap guarantee; any negative
/// h_L switches to multi-restart descent and the result is only an upper
/// bound on the minimum ("heuristic").
FwResult fw_minimize(const QuadraticObjective& obj, const SolverConfig& cfg = {});

/// Closed-form unconstrained minimum f - (1/4) sum_L g_L^2 / h_L.
/// Requires every h_L > 0 (throws std::domain_error otherwise).
double unconstrained_min(const QuadraticObjective& obj);

/// Exact minimum of the objective over the grid {0, 1/M, ..., 1}^4
/// intersected with the B_3 constraints, M = round(1/step). Production
/// kernel: per-axis pruning plus a closed form along b4, OpenMP over rows.
double grid_min_b3(const QuadraticObjective& obj, double step, bool parallel = true);

/// Plain quadruple-loop reference for the same grid (kept for testing).
double grid_min_b3_reference(const QuadraticObjective& obj, double step);

struct UnistochasticCheck {
  bool bistochastic = false;
  double area = 0.0;  // A(b) = 4 b1 b2 b3 b4 - (b1+b2+b3+b4-1-b1b4-b2b3)^2
  bool unistochastic = false;
};

UnistochasticCheck unistochastic_check_d3(const std::array<double, 4>& b, double tol = 1e-12);

/// The 3x3 bistochastic matrix B(b) of the four-parameter minor form.
Eigen::MatrixXd birkhoff_from_b3(const std::array<double, 4>& b);

}  // namespace sas::qp

#endif
