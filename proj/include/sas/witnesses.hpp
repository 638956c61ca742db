#ifndef SAS_WITNESSES_HPP
#define SAS_WITNESSES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sas/exact.hpp"
#include "sas/qp.hpp"
#include "sas/states.hpp"
#include "sas/yparams.hpp"

namespace sas::witness {

enum class WitnessId { W0, W1, W2, W3 };

std::string witness_name(WitnessId id);

/// Per-witness certification result. `margin` is in the witness's native
/// quantity (dot product for W1, r^2 gap for W0/W3, objective minimum for
/// W2); no cross-witness normalization.
struct Verdict {
  WitnessId witness = WitnessId::W0;
  bool certified = false;
  double margin = 0.0;
  std::string status;                   // W2 solver status, empty otherwise
  std::map<std::string, double> params; // y values, solver tolerance, gap
};

/// W0 bound on r^2: 1 / (2(N+1)[(2N+1) binom(2N,N) - (N/2+1)]), exact.
mpq_class w0_bound(int n_qubits);
Verdict w0_check(const states::Spectrum& s);

/// W1 margin lambda(desc) . Delta(asc), computed exactly from the stored
/// doubles then rounded once.
double w1_margin(const states::Spectrum& s);
Verdict w1_check(const states::Spectrum& s);

/// W3 bound on r^2 (exact rational).
mpq_class w3_bound(int n_qubits);
Verdict w3_check(const states::Spectrum& s);

/// Extremal parameters y_L = (F(N,1)/F(L,1)) y_N for j < L < N and the
/// closed-form y_N; admissible with every h_L > 0.
YParams extremal_y(int n_qubits);

/// W2: certified iff the Frank-Wolfe lower bound (value minus duality gap)
/// on min P_LB over the Birkhoff polytope clears -tol. Solver failure or a
/// non-convex instance yields an uncertified verdict, never a false pass.
Verdict w2_check(const states::Spectrum& s, const YParams& y, const qp::SolverConfig& cfg = {});

/// Geometry of the polytope S1 in the eigenvalue simplex.
struct PolytopeGeometry {
  struct Vertex {
    std::vector<double> lambdas;       // one point of the orbit
    std::vector<mpq_class> exact;
    bool edge_midpoint = false;        // meets >= N faces but is not extreme
    long active_permutations = 0;      // permutations sigma with lambda.sigma(Delta) = 0
  };

  int n_qubits = 0;
  std::vector<std::vector<long long>> face_normals;  // distinct Delta arrangements
  std::vector<Vertex> vertices;                      // all distinct points
  double r_max = 0.0, r_vmin = 0.0, r_inner = 0.0;
  mpq_class r_max_sq, r_vmin_sq, r_inner_sq;
};

/// Enumerates S1 exactly for 2 <= N <= 6 (throws UnsupportedError outside).
PolytopeGeometry s1_polytope(int n_qubits);

/// Sorted two-value vertex candidates per class k = 1..N:
/// (exact spectrum, r^2). Valid for any N; cross-validated against the
/// enumeration at N <= 6.
struct VertexClass {
  int k = 0;                     // multiplicity of the larger value
  std::vector<mpq_class> lambdas;  // sorted descending
  mpq_class r_sq;
};
std::vector<VertexClass> s1_vertex_classes(int n_qubits);

/// Inner-ball radius 1/sqrt((N+1)[(N+1)|Delta|^2 - 1]), exact root.
ExactRoot s1_inner_radius(int n_qubits);

/// One row of the radii table.
struct RadiiRow {
  int n_qubits = 0;
  double r_s0 = 0.0;
  double r_s3 = 0.0;
  double r_max_s1 = 0.0;
  double r_vmin_s1 = 0.0;
  std::optional<double> r_ghz;  // only for N <= ghz_max
  double r_ns = 0.0;
};

/// Radii per N; rows are independent and may be computed in parallel.
std::vector<RadiiRow> radii_report(int n_min, int n_max, int ghz_max = 10, bool parallel = true);

}  // namespace sas::witness

#endif
