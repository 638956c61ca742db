#include "sas/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sas/parallel.hpp"
#include "sas/su2.hpp"

namespace sas::qp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BirkhoffPoint::BirkhoffPoint(Eigen::MatrixXd B, double tol_entries, double tol_sums) : m_(std::move(B)) {
  const int d = static_cast<int>(m_.rows());
  if (d < 2 || m_.cols() != d) throw std::invalid_argument("BirkhoffPoint: square matrix required");
  if (m_.minCoeff() < -tol_entries) {
    throw std::invalid_argument("BirkhoffPoint: negative entry");
  }
  for (int i = 0; i < d; ++i) {
    if (std::abs(m_.row(i).sum() - 1.0) > tol_sums || std::abs(m_.col(i).sum() - 1.0) > tol_sums) {
      throw std::invalid_argument("BirkhoffPoint: row/column sums differ from 1");
    }
  }
}

BirkhoffPoint BirkhoffPoint::flat(int dim) {
  return BirkhoffPoint(Eigen::MatrixXd::Constant(dim, dim, 1.0 / dim));
}

BirkhoffPoint BirkhoffPoint::permutation(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, perm[static_cast<size_t>(i)]) = 1.0;
  return BirkhoffPoint(m);
}

bool QuadraticObjective::convex() const {
  for (int L = 1; L < dim; ++L) {
    if (h[static_cast<size_t>(L)] < 0.0) return false;
  }
  return true;
}

QuadraticObjective build_plb(const states::Spectrum& s, const witness::YParams& y) {
  const int N = s.n_qubits();
  if (y.n_qubits != N) throw std::invalid_argument("build_plb: spectrum and y dimension mismatch");
  if (!witness::y_admissible(y)) throw std::invalid_argument("build_plb: inadmissible y parameters");

  QuadraticObjective obj;
  obj.dim = N + 1;
  obj.lambda = s.lambdas();
  obj.y = y;
  obj.g.assign(static_cast<size_t>(N) + 1, 0.0);
  obj.h.assign(static_cast<size_t>(N) + 1, 0.0);
  obj.t.resize(static_cast<size_t>(N) + 1);

  const double fn1 = su2::f_coeff(N, N, 1).get_d();
  const double yn = y.at(N);
  const double r2 = states::spectrum_r_sq_exact(s).get_d();
  obj.f = 1.0 / (N + 1) + 0.5 * yn * fn1 * r2;

  for (int L = 1; L <= N; ++L) {
    obj.g[static_cast<size_t>(L)] = std::sqrt(su2::g_coeff_sq(N, L).get_d());
    double hL = -0.5 * yn * fn1;
    if (su2::theta_gt_j(N, L)) hL += y.at(L) * su2::f_coeff(N, L, 0).get_d();
    obj.h[static_cast<size_t>(L)] = hL;
    obj.t[static_cast<size_t>(L)] = su2::multipole_diag(N, L);
  }

  obj.v = Eigen::MatrixXd::Zero(N, N * N);
  for (int L = 1; L <= N; ++L) {
    const auto& t = obj.t[static_cast<size_t>(L)];
    for (int i = 0; i < N; ++i) {
      const double dl = obj.lambda[static_cast<size_t>(i)] - obj.lambda[static_cast<size_t>(N)];
      for (int jc = 0; jc < N; ++jc) {
        obj.v(L - 1, i * N + jc) = dl * (t[static_cast<size_t>(jc)] - t[static_cast<size_t>(N)]);
      }
    }
  }
  return obj;
}

namespace {

// u_L = lambda B t_L for L = 1..N
std::vector<double> projections(const QuadraticObjective& obj, const Eigen::MatrixXd& B) {
  const int d = obj.dim;
  Eigen::VectorXd lam(d);
  for (int i = 0; i < d; ++i) lam(i) = obj.lambda[static_cast<size_t>(i)];
  Eigen::RowVectorXd rho = lam.transpose() * B;
  std::vector<double> u(static_cast<size_t>(d), 0.0);
  for (int L = 1; L < d; ++L) {
    const auto& t = obj.t[static_cast<size_t>(L)];
    double acc = 0.0;
    for (int b = 0; b < d; ++b) acc += rho(b) * t[static_cast<size_t>(b)];
    u[static_cast<size_t>(L)] = acc;
  }
  return u;
}

double value_from_projections(const QuadraticObjective& obj, const std::vector<double>& u) {
  double acc = obj.f;
  for (int L = 1; L < obj.dim; ++L) {
    const double uL = u[static_cast<size_t>(L)];
    acc += obj.g[static_cast<size_t>(L)] * uL + obj.h[static_cast<size_t>(L)] * uL * uL;
  }
  return acc;
}

double evaluate_matrix(const QuadraticObjective& obj, const Eigen::MatrixXd& B) {
  return value_from_projections(obj, projections(obj, B));
}

// gradient coefficient vector: grad(a, b) = lambda_a * coeff_b
Eigen::VectorXd gradient_coeffs(const QuadraticObjective& obj, const std::vector<double>& u) {
  const int d = obj.dim;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (int L = 1; L < d; ++L) {
    const double w = obj.g[static_cast<size_t>(L)] + 2.0 * obj.h[static_cast<size_t>(L)] * u[static_cast<size_t>(L)];
    const auto& t = obj.t[static_cast<size_t>(L)];
    for (int b = 0; b < d; ++b) c(b) += w * t[static_cast<size_t>(b)];
  }
  return c;
}

}  // namespace

double evaluate(const QuadraticObjective& obj, const BirkhoffPoint& B) {
  return evaluate_matrix(obj, B.matrix());
}

Eigen::MatrixXd gradient(const QuadraticObjective& obj, const BirkhoffPoint& B) {
  const int d = obj.dim;
  const auto u = projections(obj, B.matrix());
  const Eigen::VectorXd c = gradient_coeffs(obj, u);
  Eigen::MatrixXd G(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) G(a, b) = obj.lambda[static_cast<size_t>(a)] * c(b);
  }
  return G;
}

std::vector<int> assignment_lmo(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (n < 1 || cost.cols() != n) throw std::invalid_argument("assignment_lmo: square cost required");
  if (!cost.allFinite()) throw std::invalid_argument("assignment_lmo: non-finite cost");

  // Jonker-Volgenant style shortest augmenting paths with dual potentials.
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int i0 = p[static_cast<size_t>(j0)];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> perm(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    if (p[static_cast<size_t>(j)]) perm[static_cast<size_t>(p[static_cast<size_t>(j)]) - 1] = j - 1;
  }
  return perm;
}

namespace {

struct AfwState {
  Eigen::MatrixXd B;
  std::map<std::vector<int>, double> weights;
};

AfwState start_from_perm(const std::vector<int>& perm) {
  AfwState s;
  s.B = BirkhoffPoint::permutation(perm).matrix();
  s.weights[perm] = 1.0;
  return s;
}

// One away-step Frank-Wolfe run; stops when the FW gap drops below tol.
struct RunResult {
  double value;
  double gap;
  int iterations;
  bool gap_reached;
  Eigen::MatrixXd argmin;
};

RunResult afw_run(const QuadraticObjective& obj, AfwState st, const SolverConfig& cfg) {
  const int d = obj.dim;
  Eigen::VectorXd lam(d);
  for (int i = 0; i < d; ++i) lam(i) = obj.lambda[static_cast<size_t>(i)];

  auto vertex_score = [&](const std::vector<int>& perm, const Eigen::VectorXd& c) {
    double acc = 0.0;
    for (int a = 0; a < d; ++a) acc += lam(a) * c(perm[static_cast<size_t>(a)]);
    return acc;
  };

  double gap = kInf;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    const auto u = projections(obj, st.B);
    const Eigen::VectorXd c = gradient_coeffs(obj, u);

    Eigen::MatrixXd G(d, d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) G(a, b) = lam(a) * c(b);
    }
    const std::vector<int> s_perm = assignment_lmo(G);
    const double score_b = (lam.transpose() * st.B * c)(0);
    const double score_s = vertex_score(s_perm, c);
    gap = score_b - score_s;
    if (gap <= cfg.tol) break;

    // away vertex: active vertex with the largest gradient score
    auto away_it = st.weights.begin();
    double away_score = -kInf;
    for (auto w = st.weights.begin(); w != st.weights.end(); ++w) {
      const double sc = vertex_score(w->first, c);
      if (sc > away_score) {
        away_score = sc;
        away_it = w;
      }
    }

    const double fw_descent = score_s - score_b;          // <grad, d_FW>
    const double away_descent = score_b - away_score;     // <grad, d_AW>
    const bool use_fw = fw_descent <= away_descent;

    Eigen::MatrixXd dir;
    double gamma_max;
    if (use_fw) {
      dir = BirkhoffPoint::permutation(s_perm).matrix() - st.B;
      gamma_max = 1.0;
    } else {
      dir = st.B - BirkhoffPoint::permutation(away_it->first).matrix();
      const double alpha = away_it->second;
      gamma_max = alpha >= 1.0 - 1e-14 ? 1e14 : alpha / (1.0 - alpha);
    }

    // exact line search: value(B + gamma dir) is quadratic in gamma
    Eigen::RowVectorXd drho = lam.transpose() * dir;
    double a2 = 0.0, a1 = 0.0;
    for (int L = 1; L < d; ++L) {
      const auto& t = obj.t[static_cast<size_t>(L)];
      double delta = 0.0;
      for (int b = 0; b < d; ++b) delta += drho(b) * t[static_cast<size_t>(b)];
      a2 += obj.h[static_cast<size_t>(L)] * delta * delta;
      a1 += delta * (obj.g[static_cast<size_t>(L)] + 2.0 * obj.h[static_cast<size_t>(L)] * u[static_cast<size_t>(L)]);
    }
    double gamma;
    if (a2 > 0.0) {
      gamma = std::clamp(-a1 / (2.0 * a2), 0.0, gamma_max);
    } else {
      gamma = (a1 * gamma_max + a2 * gamma_max * gamma_max < 0.0) ? gamma_max : 0.0;
    }
    if (gamma <= 0.0) break;  // no admissible descent direction left

    st.B += gamma * dir;
    if (use_fw) {
      for (auto& [perm, w] : st.weights) w *= (1.0 - gamma);
      st.weights[s_perm] += gamma;
    } else {
      for (auto& [perm, w] : st.weights) w *= (1.0 + gamma);
      away_it->second -= gamma;
      if (away_it->second <= 1e-14) st.weights.erase(away_it);
    }
    for (auto w = st.weights.begin(); w != st.weights.end();) {
      w = (w->second <= 1e-14) ? st.weights.erase(w) : std::next(w);
    }
  }

  RunResult out;
  out.value = evaluate_matrix(obj, st.B);
  out.gap = gap;
  out.iterations = it;
  out.gap_reached = gap <= cfg.tol;
  out.argmin = st.B;
  return out;
}

std::vector<int> identity_perm(int d) {
  std::vector<int> p(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) p[static_cast<size_t>(i)] = i;
  return p;
}

AfwState random_start(int d, states::RandomStream& rng) {
  AfwState st;
  st.B = Eigen::MatrixXd::Zero(d, d);
  const int k = 2 * d;
  std::vector<double> w(static_cast<size_t>(k));
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(rng.u01());
    sum += x;
  }
  for (int i = 0; i < k; ++i) {
    auto perm = identity_perm(d);
    for (int a = d - 1; a > 0; --a) {
      const int b = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(a + 1));
      std::swap(perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]);
    }
    const double weight = w[static_cast<size_t>(i)] / sum;
    st.weights[perm] += weight;
    for (int a = 0; a < d; ++a) st.B(a, perm[static_cast<size_t>(a)]) += weight;
  }
  return st;
}

}  // namespace

FwResult fw_minimize(const QuadraticObjective& obj, const SolverConfig& cfg) {
  FwResult res;
  if (obj.convex()) {
    RunResult run = afw_run(obj, start_from_perm(identity_perm(obj.dim)), cfg);
    res.value = run.value;
    res.argmin = run.argmin;
    res.gap = run.gap;
    res.iterations = run.iterations;
    res.status = run.gap_reached ? "converged" : "inconclusive";
    return res;
  }

  // non-convex heuristic: multi-restart descent, best value kept
  states::RandomStream rng(cfg.seed);
  RunResult best = afw_run(obj, start_from_perm(identity_perm(obj.dim)), cfg);
  for (int r = 1; r < cfg.restarts; ++r) {
    RunResult run = afw_run(obj, random_start(obj.dim, rng), cfg);
    if (run.value < best.value) best = run;
  }
  res.value = best.value;
  res.argmin = best.argmin;
  res.gap = best.gap;
  res.iterations = best.iterations;
  res.status = "heuristic";
  return res;
}

double unconstrained_min(const QuadraticObjective& obj) {
  double acc = obj.f;
  for (int L = 1; L < obj.dim; ++L) {
    const double h = obj.h[static_cast<size_t>(L)];
    if (h <= 0.0) throw std::domain_error("unconstrained_min: requires every h_L > 0");
    const double g = obj.g[static_cast<size_t>(L)];
    acc -= 0.25 * g * g / h;
  }
  return acc;
}

namespace {

struct AffineB3 {
  // u_L(b) = c0[L] + sum_p c[p][L] * b_p for the 3x3 minor parameterization
  std::array<std::vector<double>, 5> c;  // c[0] = constant, c[1..4] per b
  const QuadraticObjective* obj;

  explicit AffineB3(const QuadraticObjective& o) : obj(&o) {
    const auto& l = o.lambda;
    for (auto& v : c) v.assign(static_cast<size_t>(o.dim), 0.0);
    for (int L = 1; L < o.dim; ++L) {
      const auto& t = o.t[static_cast<size_t>(L)];
      c[0][static_cast<size_t>(L)] = (l[0] + l[1]) * t[2] + l[2] * (t[0] + t[1] - t[2]);
      c[1][static_cast<size_t>(L)] = (l[0] - l[2]) * (t[0] - t[2]);
      c[2][static_cast<size_t>(L)] = (l[0] - l[2]) * (t[1] - t[2]);
      c[3][static_cast<size_t>(L)] = (l[1] - l[2]) * (t[0] - t[2]);
      c[4][static_cast<size_t>(L)] = (l[1] - l[2]) * (t[1] - t[2]);
    }
  }

  double value(double b1, double b2, double b3, double b4) const {
    double acc = obj->f;
    for (int L = 1; L < obj->dim; ++L) {
      const size_t s = static_cast<size_t>(L);
      const double u = c[0][s] + c[1][s] * b1 + c[2][s] * b2 + c[3][s] * b3 + c[4][s] * b4;
      acc += obj->g[s] * u + obj->h[s] * u * u;
    }
    return acc;
  }
};

long grid_order(double step) {
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("grid_min_b3: step must be in (0, 1]");
  return std::lround(1.0 / step);
}

}  // namespace

double grid_min_b3(const QuadraticObjective& obj, double step, bool parallel) {
  if (obj.dim != 3) throw UnsupportedError("grid_min_b3: only d = 3 is supported");
  const long M = grid_order(step);
  const double hgrid = 1.0 / static_cast<double>(M);
  const AffineB3 aff(obj);

  std::vector<double> rowmin(static_cast<size_t>(M) + 1, kInf);
  par::parallel_for(M + 1, parallel, [&](long i1) {
    double best = kInf;
    const double b1 = i1 * hgrid;
    for (long i2 = 0; i2 + i1 <= M; ++i2) {
      const double b2 = i2 * hgrid;
      for (long i3 = 0; i3 + i1 <= M; ++i3) {
        const double b3 = i3 * hgrid;
        const long lo = std::max(0L, M - i1 - i2 - i3);
        const long hi = std::min({M, M - i2, M - i3});
        if (lo > hi) continue;

        // value along b4 is quadratic: a0 + a1 b4 + a2 b4^2
        double a0 = obj.f, a1 = 0.0, a2 = 0.0;
        for (int L = 1; L < obj.dim; ++L) {
          const size_t s = static_cast<size_t>(L);
          const double base = aff.c[0][s] + aff.c[1][s] * b1 + aff.c[2][s] * b2 + aff.c[3][s] * b3;
          const double q = aff.c[4][s];
          a0 += obj.g[s] * base + obj.h[s] * base * base;
          a1 += q * (obj.g[s] + 2.0 * obj.h[s] * base);
          a2 += obj.h[s] * q * q;
        }
        auto eval_i4 = [&](long i4) {
          const double x = i4 * hgrid;
          return a0 + a1 * x + a2 * x * x;
        };
        best = std::min(best, std::min(eval_i4(lo), eval_i4(hi)));
        if (a2 > 0.0) {
          const double xstar = -a1 / (2.0 * a2);
          const long iflo = std::clamp(static_cast<long>(std::floor(xstar / hgrid)), lo, hi);
          const long ifhi = std::clamp(iflo + 1, lo, hi);
          best = std::min(best, std::min(eval_i4(iflo), eval_i4(ifhi)));
        }
      }
    }
    rowmin[static_cast<size_t>(i1)] = best;
  });

  double best = kInf;
  for (double v : rowmin) best = std::min(best, v);
  return best;
}

double grid_min_b3_reference(const QuadraticObjective& obj, double step) {
  if (obj.dim != 3) throw UnsupportedError("grid_min_b3_reference: only d = 3 is supported");
  const long M = grid_order(step);
  const double hgrid = 1.0 / static_cast<double>(M);
  double best = kInf;
  for (long i1 = 0; i1 <= M; ++i1) {
    for (long i2 = 0; i2 <= M; ++i2) {
      for (long i3 = 0; i3 <= M; ++i3) {
        for (long i4 = 0; i4 <= M; ++i4) {
          if (i1 + i2 > M || i1 + i3 > M || i2 + i4 > M || i3 + i4 > M) continue;
          if (i1 + i2 + i3 + i4 < M) continue;
          const std::array<double, 4> b = {i1 * hgrid, i2 * hgrid, i3 * hgrid, i4 * hgrid};
          best = std::min(best, evaluate_matrix(obj, birkhoff_from_b3(b)));
        }
      }
    }
  }
  return best;
}

UnistochasticCheck unistochastic_check_d3(const std::array<double, 4>& b, double tol) {
  UnistochasticCheck out;
  const double s = b[0] + b[1] + b[2] + b[3];
  bool ok = s >= 1.0 - tol;
  for (double x : b) ok = ok && x >= -tol && x <= 1.0 + tol;
  ok = ok && b[0] + b[1] <= 1.0 + tol && b[0] + b[2] <= 1.0 + tol && b[1] + b[3] <= 1.0 + tol &&
       b[2] + b[3] <= 1.0 + tol;
  out.bistochastic = ok;
  const double excess = s - 1.0 - b[0] * b[3] - b[1] * b[2];
  out.area = 4.0 * b[0] * b[1] * b[2] * b[3] - excess * excess;
  out.unistochastic = ok && out.area >= -tol;
  return out;
}

Eigen::MatrixXd birkhoff_from_b3(const std::array<double, 4>& b) {
  Eigen::MatrixXd m(3, 3);
  m << b[0], b[1], 1.0 - b[0] - b[1],
       b[2], b[3], 1.0 - b[2] - b[3],
       1.0 - b[0] - b[2], 1.0 - b[1] - b[3], b[0] + b[1] + b[2] + b[3] - 1.0;
  return m;
}

}  // namespace sas::qp
