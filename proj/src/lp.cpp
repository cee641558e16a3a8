// Copyright 2026 the qleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qleak/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace qleak {

int LinearProgram::add_var(double lo, double hi, double obj) {
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(obj);
  return num_vars++;
}

void LinearProgram::add_row(std::vector<std::pair<int, double>> coeffs, char rel,
                            double rhs) {
  rows.push_back({std::move(coeffs), rel, rhs});
}

namespace {

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

struct Tableau {
  // Equality-standard form: A x = b, lo <= x <= hi. Columns: structural,
  // slack, artificial.
  Eigen::MatrixXd a;
  Eigen::VectorXd b, lo, hi, cost;
  int n = 0, m = 0;
  int first_artificial = 0;

  std::vector<int> basis;             // size m, column per row
  std::vector<VarState> state;        // size n
  Eigen::MatrixXd binv;               // m x m
  Eigen::VectorXd xb;                 // basic values

  double value_of(int j, const Eigen::VectorXd& xbv) const {
    for (int r = 0; r < m; ++r)
      if (basis[std::size_t(r)] == j) return xbv(r);
    switch (state[std::size_t(j)]) {
      case VarState::AtLower: return lo(j);
      case VarState::AtUpper: return hi(j);
      default: return 0.0;
    }
  }

  void refactor() {
    Eigen::MatrixXd bmat(m, m);
    for (int r = 0; r < m; ++r) bmat.col(r) = a.col(basis[std::size_t(r)]);
    binv = bmat.partialPivLu().inverse();
    recompute_xb();
  }

  void recompute_xb() {
    Eigen::VectorXd rhs = b;
    for (int j = 0; j < n; ++j) {
      if (state[std::size_t(j)] == VarState::Basic) continue;
      double v = state[std::size_t(j)] == VarState::AtLower
                     ? lo(j)
                     : (state[std::size_t(j)] == VarState::AtUpper ? hi(j) : 0.0);
      if (v != 0.0) rhs -= a.col(j) * v;
    }
    xb = binv * rhs;
  }
};

struct PhaseOutcome {
  bool optimal = false;
  bool unbounded = false;
  int iterations = 0;
};

PhaseOutcome run_simplex(Tableau& t, const Eigen::VectorXd& cost, double tol,
                         int max_iterations) {
  PhaseOutcome out;
  int degenerate_streak = 0;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it;
    // Duals and reduced costs.
    Eigen::VectorXd cb(t.m);
    for (int r = 0; r < t.m; ++r) cb(r) = cost(t.basis[std::size_t(r)]);
    Eigen::VectorXd y = t.binv.transpose() * cb;
    int enter = -1, dir = 0;
    double best = -tol;
    const bool bland = degenerate_streak > 2000;
    for (int j = 0; j < t.n; ++j) {
      if (t.state[std::size_t(j)] == VarState::Basic) continue;
      if (t.lo(j) == t.hi(j)) continue;  // fixed
      double d = cost(j) - y.dot(t.a.col(j));
      int candidate_dir = 0;
      if ((t.state[std::size_t(j)] == VarState::AtLower ||
           t.state[std::size_t(j)] == VarState::FreeZero) &&
          d < -tol)
        candidate_dir = +1;
      else if ((t.state[std::size_t(j)] == VarState::AtUpper ||
                t.state[std::size_t(j)] == VarState::FreeZero) &&
               d > tol)
        candidate_dir = -1;
      if (candidate_dir == 0) continue;
      double score = -std::abs(d);
      if (bland) {
        enter = j;
        dir = candidate_dir;
        break;
      }
      if (score < best) {
        best = score;
        enter = j;
        dir = candidate_dir;
      }
    }
    if (enter < 0) {
      out.optimal = true;
      return out;
    }

    Eigen::VectorXd w = t.binv * t.a.col(enter);  // direction in basic space
    // Entering moves by delta >= 0 times dir; basics change by -dir*w.
    double limit = t.hi(enter) - t.lo(enter);  // bound-flip limit (inf ok)
    int leave_row = -1;
    double leave_bound = 0.0;
    for (int r = 0; r < t.m; ++r) {
      double rate = -dir * w(r);
      if (std::abs(rate) < 1e-11) continue;
      int jb = t.basis[std::size_t(r)];
      double room = rate > 0 ? t.hi(jb) - t.xb(r) : t.xb(r) - t.lo(jb);
      if (room < 0) room = 0;
      double ratio = room / std::abs(rate);
      if (ratio < limit - 1e-12) {
        limit = ratio;
        leave_row = r;
        leave_bound = rate > 0 ? t.hi(jb) : t.lo(jb);
      }
    }
    if (std::isinf(limit)) {
      out.unbounded = true;
      return out;
    }
    degenerate_streak = limit < 1e-10 ? degenerate_streak + 1 : 0;

    if (leave_row < 0) {
      // Bound flip: entering variable crosses to its other bound.
      t.state[std::size_t(enter)] =
          dir > 0 ? VarState::AtUpper : VarState::AtLower;
      t.recompute_xb();
      continue;
    }

    int leave = t.basis[std::size_t(leave_row)];
    // Update the basis inverse by a pivot on (leave_row, enter).
    double pivot = w(leave_row);
    t.binv.row(leave_row) /= pivot;
    for (int r = 0; r < t.m; ++r) {
      if (r == leave_row) continue;
      double f = w(r);
      if (f != 0.0) t.binv.row(r) -= f * t.binv.row(leave_row);
    }
    t.basis[std::size_t(leave_row)] = enter;
    t.state[std::size_t(enter)] = VarState::Basic;
    t.state[std::size_t(leave)] =
        leave_bound == t.hi(leave) ? VarState::AtUpper : VarState::AtLower;
    if ((it + 1) % 128 == 0)
      t.refactor();
    else
      t.recompute_xb();
  }
  return out;  // stalled
}

}  // namespace

LpResult solve_lp(const LinearProgram& p, double tol, int max_iterations) {
  const int ns = p.num_vars;
  if (int(p.lower.size()) != ns || int(p.upper.size()) != ns ||
      int(p.objective.size()) != ns)
    throw_input("lp: inconsistent dimensions");

  const int m = int(p.rows.size());
  int nslack = 0;
  for (const auto& row : p.rows)
    if (row.rel != '=') ++nslack;

  Tableau t;
  t.m = m;
  t.n = ns + nslack + m;
  t.first_artificial = ns + nslack;
  t.a = Eigen::MatrixXd::Zero(m, t.n);
  t.b = Eigen::VectorXd::Zero(m);
  t.lo = Eigen::VectorXd::Zero(t.n);
  t.hi = Eigen::VectorXd::Zero(t.n);
  t.cost = Eigen::VectorXd::Zero(t.n);

  for (int j = 0; j < ns; ++j) {
    t.lo(j) = p.lower[std::size_t(j)];
    t.hi(j) = p.upper[std::size_t(j)];
    if (t.lo(j) > t.hi(j)) return {LpResult::Status::Infeasible, 0.0, {}, 0, 0, 0};
    t.cost(j) = p.maximize ? -p.objective[std::size_t(j)] : p.objective[std::size_t(j)];
  }
  int scol = ns;
  for (int r = 0; r < m; ++r) {
    const auto& row = p.rows[std::size_t(r)];
    for (const auto& [j, c] : row.coeffs) {
      if (j < 0 || j >= ns) throw_input("lp: coefficient for unknown variable");
      t.a(r, j) += c;
    }
    t.b(r) = row.rhs;
    if (row.rel == '<') {
      t.a(r, scol) = 1.0;
      t.lo(scol) = 0.0;
      t.hi(scol) = kInf;
      ++scol;
    } else if (row.rel == '>') {
      t.a(r, scol) = -1.0;
      t.lo(scol) = 0.0;
      t.hi(scol) = kInf;
      ++scol;
    } else if (row.rel != '=') {
      throw_input("lp: unknown relation");
    }
  }

  // Start nonbasic variables at a finite bound.
  t.state.assign(std::size_t(t.n), VarState::AtLower);
  for (int j = 0; j < t.first_artificial; ++j) {
    if (std::isfinite(t.lo(j)))
      t.state[std::size_t(j)] = VarState::AtLower;
    else if (std::isfinite(t.hi(j)))
      t.state[std::size_t(j)] = VarState::AtUpper;
    else
      t.state[std::size_t(j)] = VarState::FreeZero;
  }

  // Artificial basis, signed to make the initial basic values feasible.
  Eigen::VectorXd residual = t.b;
  for (int j = 0; j < t.first_artificial; ++j) {
    double v = t.state[std::size_t(j)] == VarState::AtLower
                   ? t.lo(j)
                   : (t.state[std::size_t(j)] == VarState::AtUpper ? t.hi(j) : 0.0);
    if (v != 0.0) residual -= t.a.col(j) * v;
  }
  t.basis.resize(std::size_t(m));
  for (int r = 0; r < m; ++r) {
    int col = t.first_artificial + r;
    t.a(r, col) = residual(r) >= 0 ? 1.0 : -1.0;
    t.lo(col) = 0.0;
    t.hi(col) = kInf;
    t.basis[std::size_t(r)] = col;
    t.state[std::size_t(col)] = VarState::Basic;
  }
  t.refactor();

  LpResult res;
  res.x.assign(std::size_t(ns), 0.0);

  // Phase 1: minimize the artificial mass.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(t.n);
  for (int j = t.first_artificial; j < t.n; ++j) phase1(j) = 1.0;
  PhaseOutcome o1 = run_simplex(t, phase1, tol, max_iterations);
  res.iterations = o1.iterations;
  if (!o1.optimal && !o1.unbounded) {
    res.status = LpResult::Status::Stalled;
    return res;
  }
  double art = 0.0;
  for (int r = 0; r < t.m; ++r)
    if (t.basis[std::size_t(r)] >= t.first_artificial) art += std::abs(t.xb(r));
  if (art > 1e-7) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // Freeze artificials at zero for phase 2.
  for (int j = t.first_artificial; j < t.n; ++j) {
    t.hi(j) = 0.0;
    if (t.state[std::size_t(j)] != VarState::Basic) t.state[std::size_t(j)] = VarState::AtLower;
  }

  PhaseOutcome o2 = run_simplex(t, t.cost, tol, max_iterations);
  res.iterations += o2.iterations;
  if (o2.unbounded) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  if (!o2.optimal) {
    res.status = LpResult::Status::Stalled;
    return res;
  }

  for (int j = 0; j < ns; ++j) res.x[std::size_t(j)] = t.value_of(j, t.xb);
  double obj = 0.0;
  for (int j = 0; j < ns; ++j) obj += p.objective[std::size_t(j)] * res.x[std::size_t(j)];
  res.value = obj;
  // Residual report.
  double pres = 0.0;
  for (int r = 0; r < m; ++r) {
    double lhs = 0.0;
    for (const auto& [j, c] : p.rows[std::size_t(r)].coeffs)
      lhs += c * res.x[std::size_t(j)];
    double viol = 0.0;
    if (p.rows[std::size_t(r)].rel == '=')
      viol = std::abs(lhs - p.rows[std::size_t(r)].rhs);
    else if (p.rows[std::size_t(r)].rel == '<')
      viol = std::max(0.0, lhs - p.rows[std::size_t(r)].rhs);
    else
      viol = std::max(0.0, p.rows[std::size_t(r)].rhs - lhs);
    pres = std::max(pres, viol);
  }
  res.primal_residual = pres;
  res.status = LpResult::Status::Optimal;
  return res;
}

}  // namespace qleak
