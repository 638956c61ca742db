#include "sas/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sas/oracle.hpp"
#include "sas/parallel.hpp"
#include "sas/su2.hpp"

namespace sas::witness {

namespace {
constexpr double kMarginTol = 1e-12;
}

YParams YParams::zeros(int n_qubits) {
  YParams y;
  y.n_qubits = n_qubits;
  y.y.assign(static_cast<size_t>(n_qubits) + 1, 0.0);
  y.y_exact.assign(static_cast<size_t>(n_qubits) + 1, mpq_class(0));
  return y;
}

YParams YParams::from_list(int n_qubits, const std::vector<double>& values) {
  YParams y = zeros(n_qubits);
  y.y_exact.clear();
  const int first = y.first_l();
  if (values.size() != static_cast<size_t>(n_qubits - first + 1)) {
    throw std::invalid_argument("YParams: expected one value per L in (N/2, N]");
  }
  for (int L = first; L <= n_qubits; ++L) {
    y.y[static_cast<size_t>(L)] = values[static_cast<size_t>(L - first)];
  }
  return y;
}

bool y_admissible(const YParams& y, double tol) {
  const int N = y.n_qubits;
  const double fn1 = su2::f_coeff(N, N, 1).get_d();
  const double yn = y.at(N);
  const double scale = std::max(1.0, std::abs(yn * fn1));
  // rows with Theta = 0 reduce to y_N >= 0 (F(N,1) < 0)
  if (yn < -tol * scale) return false;
  for (int L = N / 2 + 1; L <= N; ++L) {
    for (int mu = 1; mu <= L; ++mu) {
      const double row = y.at(L) * su2::f_coeff(N, L, mu).get_d() - yn * fn1;
      if (row < -tol * scale) return false;
    }
  }
  return true;
}

bool y_admissible_exact(const YParams& y) {
  if (!y.has_exact()) throw std::invalid_argument("y_admissible_exact: no exact values stored");
  const int N = y.n_qubits;
  const mpq_class fn1 = su2::f_coeff(N, N, 1);
  const mpq_class yn = y.y_exact[static_cast<size_t>(N)];
  if (yn < 0) return false;
  for (int L = N / 2 + 1; L <= N; ++L) {
    for (int mu = 1; mu <= L; ++mu) {
      if (y.y_exact[static_cast<size_t>(L)] * su2::f_coeff(N, L, mu) - yn * fn1 < 0) return false;
    }
  }
  return true;
}

std::string witness_name(WitnessId id) {
  switch (id) {
    case WitnessId::W0: return "W0";
    case WitnessId::W1: return "W1";
    case WitnessId::W2: return "W2";
    case WitnessId::W3: return "W3";
  }
  return "?";
}

mpq_class w0_bound(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("w0_bound: N >= 1 required");
  const long N = n_qubits;
  mpz_class den = (N + 1) * (2 * (2 * N + 1) * binomial(2 * N, N) - (N + 2));
  return make_rational(1, den);
}

Verdict w0_check(const states::Spectrum& s) {
  Verdict v;
  v.witness = WitnessId::W0;
  mpq_class margin = w0_bound(s.n_qubits()) - states::spectrum_r_sq_exact(s);
  v.margin = margin.get_d();
  v.certified = v.margin >= -kMarginTol;
  return v;
}

double w1_margin(const states::Spectrum& s) {
  const su2::KernelSpectrum ks = su2::kernel_eigenvalues(s.n_qubits());
  std::vector<mpz_class> asc = ks.deltas;
  std::sort(asc.begin(), asc.end());
  mpq_class acc(0);
  for (int k = 0; k < s.dim(); ++k) {
    acc += rational_of_double(s[k]) * asc[static_cast<size_t>(k)];
  }
  return acc.get_d();
}

Verdict w1_check(const states::Spectrum& s) {
  Verdict v;
  v.witness = WitnessId::W1;
  v.margin = w1_margin(s);
  v.certified = v.margin >= -kMarginTol;
  return v;
}

namespace {

// denominator 1 - 2 Theta(L-j) F(L,0)/F(L,1) of the W3 sum
mpq_class w3_denom(int N, int L) {
  if (!su2::theta_gt_j(N, L)) return mpq_class(1);
  return 1 - 2 * su2::f_coeff(N, L, 0) / su2::f_coeff(N, L, 1);
}

}  // namespace

mpq_class w3_bound(int n_qubits) {
  if (n_qubits < 2) throw std::domain_error("w3_bound: N >= 2 required");
  mpq_class sum(0);
  for (int L = 1; L <= n_qubits; ++L) {
    sum += su2::g_coeff_sq(n_qubits, L) / w3_denom(n_qubits, L);
  }
  return make_rational(1, (n_qubits + 1) * (n_qubits + 1)) / sum;
}

Verdict w3_check(const states::Spectrum& s) {
  Verdict v;
  v.witness = WitnessId::W3;
  mpq_class margin = w3_bound(s.n_qubits()) - states::spectrum_r_sq_exact(s);
  v.margin = margin.get_d();
  v.certified = v.margin >= -kMarginTol;
  return v;
}

YParams extremal_y(int n_qubits) {
  const int N = n_qubits;
  if (N < 2) throw std::domain_error("extremal_y: N >= 2 required");
  const mpq_class fn1 = su2::f_coeff(N, N, 1);

  mpq_class sum(0);
  for (int L = 1; L <= N; ++L) {
    mpq_class den = su2::theta_gt_j(N, L)
                        ? 2 * su2::f_coeff(N, L, 0) / su2::f_coeff(N, L, 1) - 1
                        : mpq_class(-1);
    sum += su2::g_coeff_sq(N, L) / den;
  }
  const mpq_class yn = (N + 1) / fn1 * sum;

  YParams y = YParams::zeros(N);
  y.y_exact[static_cast<size_t>(N)] = yn;
  y.y[static_cast<size_t>(N)] = yn.get_d();
  for (int L = N / 2 + 1; L < N; ++L) {
    mpq_class yl = fn1 / su2::f_coeff(N, L, 1) * yn;
    y.y_exact[static_cast<size_t>(L)] = yl;
    y.y[static_cast<size_t>(L)] = yl.get_d();
  }
  return y;
}

Verdict w2_check(const states::Spectrum& s, const YParams& y, const qp::SolverConfig& cfg) {
  if (y.n_qubits != s.n_qubits()) throw std::invalid_argument("w2_check: y dimension mismatch");
  if (!y_admissible(y)) {
    throw std::invalid_argument("w2_check: inadmissible y parameters (P >= P_LB does not hold)");
  }
  const qp::QuadraticObjective obj = qp::build_plb(s, y);
  const qp::FwResult res = qp::fw_minimize(obj, cfg);

  Verdict v;
  v.witness = WitnessId::W2;
  v.margin = res.value;
  v.status = res.status;
  // certification needs a valid lower bound: converged convex solve only
  const double lower_bound = res.value - res.gap;
  v.certified = (res.status == "converged") && lower_bound >= -cfg.tol;
  v.params["tol_solver"] = cfg.tol;
  v.params["gap"] = res.gap;
  v.params["iterations"] = res.iterations;
  for (int L = y.first_l(); L <= y.n_qubits; ++L) {
    v.params["y" + std::to_string(L)] = y.at(L);
  }
  return v;
}

ExactRoot s1_inner_radius(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("s1_inner_radius: N >= 1 required");
  const mpz_class nd2 = su2::delta_norm_sq(n_qubits);
  mpz_class den = (n_qubits + 1) * ((n_qubits + 1) * nd2 - 1);
  return ExactRoot(1, make_rational(1, den));
}

std::vector<VertexClass> s1_vertex_classes(int n_qubits) {
  const int N = n_qubits;
  if (N < 2) throw std::domain_error("s1_vertex_classes: N >= 2 required");
  std::vector<mpz_class> asc = su2::kernel_eigenvalues(N).deltas;
  std::sort(asc.begin(), asc.end());

  std::vector<VertexClass> classes;
  for (int k = 1; k <= N; ++k) {
    mpz_class prefix(0);
    for (int i = 0; i < k; ++i) prefix += asc[static_cast<size_t>(i)];
    // a * prefix + b * (1 - prefix) = 0,  k a + (N+1-k) b = 1, a > b > 0
    const mpq_class ratio = mpq_class(-prefix) / (1 - mpq_class(prefix));  // b / a
    const mpq_class a = 1 / (k + (N + 1 - k) * ratio);
    const mpq_class b = a * ratio;
    if (!(a > b && b > 0)) {
      throw std::logic_error("s1_vertex_classes: degenerate class");
    }
    VertexClass vc;
    vc.k = k;
    vc.lambdas.assign(static_cast<size_t>(N) + 1, b);
    for (int i = 0; i < k; ++i) vc.lambdas[static_cast<size_t>(i)] = a;
    vc.r_sq = k * a * a + (N + 1 - k) * b * b - make_rational(1, N + 1);
    classes.push_back(std::move(vc));
  }
  return classes;
}

namespace {

// Exact rank of a rational matrix (rows x cols), Gaussian elimination.
int rational_rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const mpq_class factor = m[r][col] / m[row][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Solve the (d x d) rational system M x = rhs; empty result when singular.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> rhs) {
  const size_t d = m.size();
  for (size_t col = 0; col < d; ++col) {
    size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return {};
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const mpq_class factor = m[r][col] / m[col][col];
      for (size_t c = col; c < d; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<mpq_class> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::vector<std::vector<long long>> distinct_delta_arrangements(int N) {
  std::vector<mpz_class> d = su2::kernel_eigenvalues(N).deltas;
  std::vector<long long> v(d.size());
  for (size_t i = 0; i < d.size(); ++i) v[i] = d[i].get_si();
  std::sort(v.begin(), v.end());
  std::vector<std::vector<long long>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

long long delta_multiplicity_factor(int N) {
  std::vector<mpz_class> d = su2::kernel_eigenvalues(N).deltas;
  std::sort(d.begin(), d.end());
  long long factor = 1;
  size_t i = 0;
  while (i < d.size()) {
    size_t j = i;
    while (j < d.size() && d[j] == d[i]) ++j;
    for (size_t c = 2; c <= j - i; ++c) factor *= static_cast<long long>(c);
    i = j;
  }
  return factor;
}

}  // namespace

PolytopeGeometry s1_polytope(int n_qubits) {
  const int N = n_qubits;
  if (N < 2 || N > 6) throw UnsupportedError("s1_polytope: supported range is 2 <= N <= 6");
  const int d = N + 1;

  std::vector<mpz_class> asc = su2::kernel_eigenvalues(N).deltas;
  std::sort(asc.begin(), asc.end());

  // chamber constraints: lambda_i - lambda_{i+1} >= 0 (i < N), lambda_N >= 0,
  // and the sorted face lambda . Delta(asc) >= 0
  std::vector<std::vector<mpq_class>> ineq;
  for (int i = 0; i < N; ++i) {
    std::vector<mpq_class> row(static_cast<size_t>(d), mpq_class(0));
    row[static_cast<size_t>(i)] = 1;
    row[static_cast<size_t>(i) + 1] = -1;
    ineq.push_back(std::move(row));
  }
  {
    std::vector<mpq_class> row(static_cast<size_t>(d), mpq_class(0));
    row[static_cast<size_t>(N)] = 1;
    ineq.push_back(std::move(row));
  }
  {
    std::vector<mpq_class> row(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) row[static_cast<size_t>(i)] = mpq_class(asc[static_cast<size_t>(i)]);
    ineq.push_back(std::move(row));
  }
  const int n_ineq = static_cast<int>(ineq.size());  // N + 2

  auto feasible = [&](const std::vector<mpq_class>& x) {
    for (const auto& row : ineq) {
      mpq_class dot(0);
      for (int i = 0; i < d; ++i) dot += row[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      if (dot < 0) return false;
    }
    return true;
  };

  // chamber vertices: every N-subset of the inequalities set active
  std::vector<std::vector<mpq_class>> chamber_vertices;
  std::vector<int> pick(static_cast<size_t>(N));
  std::function<void(int, int)> enumerate = [&](int start, int depth) {
    if (depth == N) {
      std::vector<std::vector<mpq_class>> m;
      m.emplace_back(static_cast<size_t>(d), mpq_class(1));  // sum = 1
      for (int i = 0; i < N; ++i) m.push_back(ineq[static_cast<size_t>(pick[static_cast<size_t>(i)])]);
      std::vector<mpq_class> rhs(static_cast<size_t>(d), mpq_class(0));
      rhs[0] = 1;
      auto x = solve_rational(std::move(m), std::move(rhs));
      if (!x.empty() && feasible(x) &&
          std::find(chamber_vertices.begin(), chamber_vertices.end(), x) == chamber_vertices.end()) {
        chamber_vertices.push_back(std::move(x));
      }
      return;
    }
    for (int i = start; i <= n_ineq - (N - depth); ++i) {
      pick[static_cast<size_t>(depth)] = i;
      enumerate(i + 1, depth + 1);
    }
  };
  enumerate(0, 0);

  PolytopeGeometry geo;
  geo.n_qubits = N;
  geo.face_normals = distinct_delta_arrangements(N);
  const long long mult = delta_multiplicity_factor(N);

  bool have_r = false;
  std::vector<std::vector<mpq_class>> reported_sorted;
  for (const auto& x : chamber_vertices) {
    // active faces of S1 at x, over distinct arrangements
    std::vector<const std::vector<long long>*> active;
    for (const auto& f : geo.face_normals) {
      mpq_class dot(0);
      for (int i = 0; i < d; ++i) dot += x[static_cast<size_t>(i)] * f[static_cast<size_t>(i)];
      if (dot == 0) active.push_back(&f);
    }
    const long long n_active_perms = static_cast<long long>(active.size()) * mult;
    if (active.empty()) continue;

    // extreme iff active normals + coordinate planes + the ones row have full rank
    std::vector<std::vector<mpq_class>> rows;
    rows.emplace_back(static_cast<size_t>(d), mpq_class(1));
    for (const auto* f : active) {
      std::vector<mpq_class> row(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) row[static_cast<size_t>(i)] = (*f)[static_cast<size_t>(i)];
      rows.push_back(std::move(row));
    }
    for (int i = 0; i < d; ++i) {
      if (x[static_cast<size_t>(i)] == 0) {
        std::vector<mpq_class> row(static_cast<size_t>(d), mpq_class(0));
        row[static_cast<size_t>(i)] = 1;
        rows.push_back(std::move(row));
      }
    }
    const bool extreme = rational_rank(std::move(rows)) == d;
    if (!extreme && n_active_perms < N) continue;

    reported_sorted.push_back(x);

    // r^2 of the class
    mpq_class r2(0);
    for (int i = 0; i < d; ++i) r2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    r2 -= make_rational(1, d);
    if (!have_r || r2 > geo.r_max_sq) geo.r_max_sq = r2;
    if (!have_r || r2 < geo.r_vmin_sq) geo.r_vmin_sq = r2;
    have_r = true;

    // orbit expansion: all distinct permutations of the sorted point
    std::vector<mpq_class> perm = x;
    std::sort(perm.begin(), perm.end());
    do {
      PolytopeGeometry::Vertex vert;
      vert.exact = perm;
      vert.lambdas.resize(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) vert.lambdas[static_cast<size_t>(i)] = perm[static_cast<size_t>(i)].get_d();
      vert.edge_midpoint = !extreme;
      vert.active_permutations = n_active_perms;
      geo.vertices.push_back(std::move(vert));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  geo.r_inner_sq = s1_inner_radius(N).squared();
  geo.r_max = std::sqrt(geo.r_max_sq.get_d());
  geo.r_vmin = std::sqrt(geo.r_vmin_sq.get_d());
  geo.r_inner = std::sqrt(geo.r_inner_sq.get_d());
  return geo;
}

namespace {

// The analytic two-value classes must reproduce the enumeration exactly at
// desk scale before they are trusted for larger N.
bool analytic_classes_validated() {
  static std::once_flag flag;
  static bool ok = false;
  std::call_once(flag, [] {
    ok = true;
    for (int N = 2; N <= 6 && ok; ++N) {
      const PolytopeGeometry geo = s1_polytope(N);
      auto classes = s1_vertex_classes(N);
      // compare the sets of sorted vertices
      std::vector<std::vector<mpq_class>> from_enum;
      for (const auto& v : geo.vertices) {
        std::vector<mpq_class> sorted = v.exact;
        std::sort(sorted.begin(), sorted.end(), [](const mpq_class& a, const mpq_class& b) { return a > b; });
        if (std::find(from_enum.begin(), from_enum.end(), sorted) == from_enum.end()) {
          from_enum.push_back(std::move(sorted));
        }
      }
      if (from_enum.size() != classes.size()) {
        ok = false;
        break;
      }
      for (const auto& c : classes) {
        if (std::find(from_enum.begin(), from_enum.end(), c.lambdas) == from_enum.end()) {
          ok = false;
          break;
        }
      }
    }
  });
  return ok;
}

}  // namespace

std::vector<RadiiRow> radii_report(int n_min, int n_max, int ghz_max, bool parallel) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("radii_report: need 2 <= n_min <= n_max");
  if (n_max > 6 && !analytic_classes_validated()) {
    throw UnsupportedError("radii_report: analytic vertex candidates failed validation against enumeration");
  }

  std::vector<RadiiRow> rows(static_cast<size_t>(n_max - n_min + 1));
  par::parallel_for(n_max - n_min + 1, parallel, [&](long i) {
    const int N = n_min + static_cast<int>(i);
    RadiiRow row;
    row.n_qubits = N;
    row.r_s0 = std::sqrt(w0_bound(N).get_d());
    row.r_s3 = std::sqrt(w3_bound(N).get_d());
    const auto classes = s1_vertex_classes(N);
    mpq_class rmax = classes.front().r_sq, rmin = classes.front().r_sq;
    for (const auto& c : classes) {
      rmax = std::max(rmax, c.r_sq);
      rmin = std::min(rmin, c.r_sq);
    }
    row.r_max_s1 = std::sqrt(rmax.get_d());
    row.r_vmin_s1 = std::sqrt(rmin.get_d());
    if (N <= ghz_max) row.r_ghz = oracle::ghz_radius(N);
    row.r_ns = oracle::r_ns(N);
    rows[static_cast<size_t>(i)] = std::move(row);
  });
  return rows;
}

}  // namespace sas::witness
