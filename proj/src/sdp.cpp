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

#include "qleak/sdp.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qleak {

void SemidefiniteProgram::check_valid() const {
  auto check_term = [&](const Term& t) {
    if (t.block == -1) {
      if (t.i < 0 || t.i >= num_scalars) throw_input("sdp: scalar index out of range");
    } else {
      if (t.block < 0 || t.block >= int(blocks.size()))
        throw_input("sdp: block index out of range");
      if (t.i < 0 || t.j < t.i || t.j >= blocks[std::size_t(t.block)])
        throw_input("sdp: entry index out of range (want i <= j)");
    }
  };
  for (const Term& t : objective) check_term(t);
  for (const Constraint& c : constraints)
    for (const Term& t : c.terms) check_term(t);
}

namespace {

// ---------------------------------------------------------------------------
// Shared block-matrix helpers.

struct BlockMat {
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::VectorXd scalars;

  static BlockMat zeros(const SemidefiniteProgram& p) {
    BlockMat m;
    for (int d : p.blocks) m.blocks.push_back(Eigen::MatrixXd::Zero(d, d));
    m.scalars = Eigen::VectorXd::Zero(p.num_scalars);
    return m;
  }
  static BlockMat identity(const SemidefiniteProgram& p, double s) {
    BlockMat m = zeros(p);
    for (auto& b : m.blocks) b.diagonal().setConstant(s);
    m.scalars.setConstant(s);
    return m;
  }
  double dot(const BlockMat& o) const {
    double acc = scalars.dot(o.scalars);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      acc += (blocks[b].array() * o.blocks[b].array()).sum();
    return acc;
  }
  void axpy(double a, const BlockMat& o) {
    scalars += a * o.scalars;
    for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] += a * o.blocks[b];
  }
  void scale(double a) {
    scalars *= a;
    for (auto& b : blocks) b *= a;
  }
  double frob() const { return std::sqrt(dot(*this)); }
};

void add_terms(BlockMat& m, const std::vector<SemidefiniteProgram::Term>& terms,
               double factor) {
  for (const auto& t : terms) {
    if (t.block == -1) {
      m.scalars(t.i) += factor * t.c;
    } else {
      m.blocks[std::size_t(t.block)](t.i, t.j) += factor * t.c;
      if (t.i != t.j) m.blocks[std::size_t(t.block)](t.j, t.i) += factor * t.c;
    }
  }
}

double dot_terms(const std::vector<SemidefiniteProgram::Term>& terms, const BlockMat& x) {
  double acc = 0.0;
  for (const auto& t : terms) {
    if (t.block == -1)
      acc += t.c * x.scalars(t.i);
    else if (t.i == t.j)
      acc += t.c * x.blocks[std::size_t(t.block)](t.i, t.j);
    else
      acc += 2.0 * t.c * x.blocks[std::size_t(t.block)](t.i, t.j);
  }
  return acc;
}

/// Symmetric eigendecomposition (ascending); LAPACK dsyevd with an Eigen
/// fallback.
void eig_sym(const Eigen::MatrixXd& m, Eigen::VectorXd& vals, Eigen::MatrixXd& vecs) {
  const int n = int(m.rows());
  vecs = m;
  vals.resize(n);
  if (n == 0) return;
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vecs.data(), n, vals.data());
  if (info != 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    vals = es.eigenvalues();
    vecs = es.eigenvectors();
  }
}

// ---------------------------------------------------------------------------
// Interior point (Nesterov-Todd scaling, Mehrotra predictor-corrector).

struct Expanded {
  // Full (unfolded) entry list per constraint, for Schur assembly.
  struct Entry {
    int block, r, c;
    double v;
  };
  std::vector<std::vector<Entry>> rows;
};

Expanded expand(const SemidefiniteProgram& p) {
  Expanded e;
  e.rows.resize(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    for (const auto& t : p.constraints[i].terms) {
      if (t.block == -1) {
        e.rows[i].push_back({-1, t.i, t.i, t.c});
      } else {
        e.rows[i].push_back({t.block, t.i, t.j, t.c});
        if (t.i != t.j) e.rows[i].push_back({t.block, t.j, t.i, t.c});
      }
    }
  }
  return e;
}

/// Largest alpha in (0, 1] with X + alpha*D >= 0 (times a safety factor).
double step_to_boundary(const BlockMat& x, const BlockMat& d) {
  double alpha = 1.0 / 0.98;  // capped below after scaling
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    const int n = int(x.blocks[b].rows());
    if (n == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(x.blocks[b]);
    if (llt.info() != Eigen::Success) return 1e-3;
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd s = l.triangularView<Eigen::Lower>().solve(d.blocks[b]);
    s = l.triangularView<Eigen::Lower>().solve(s.transpose()).eval();
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    eig_sym((s + s.transpose()) / 2.0, vals, vecs);
    double lmin = vals(0);
    if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
  }
  for (int i = 0; i < x.scalars.size(); ++i)
    if (d.scalars(i) < 0) alpha = std::min(alpha, -x.scalars(i) / d.scalars(i));
  return std::min(1.0, 0.98 * alpha);
}

struct NtScaling {
  std::vector<Eigen::MatrixXd> w;      // per PSD block
  std::vector<Eigen::MatrixXd> zinv;   // per PSD block
  Eigen::VectorXd wdiag, zinv_diag;    // scalar parts

  BlockMat wrap(const SemidefiniteProgram& p, const BlockMat& m) const {
    BlockMat out = BlockMat::zeros(p);
    for (std::size_t b = 0; b < w.size(); ++b) out.blocks[b] = w[b] * m.blocks[b] * w[b];
    out.scalars = wdiag.array().square() * m.scalars.array();
    return out;
  }
};

bool nt_scaling(const BlockMat& x, const BlockMat& z, NtScaling& nt) {
  nt.w.clear();
  nt.zinv.clear();
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    const Eigen::MatrixXd& xb = x.blocks[b];
    const Eigen::MatrixXd& zb = z.blocks[b];
    Eigen::LLT<Eigen::MatrixXd> lltx(xb), lltz(zb);
    if (lltx.info() != Eigen::Success || lltz.info() != Eigen::Success) return false;
    Eigen::MatrixXd lx = lltx.matrixL();
    Eigen::MatrixXd mid = lx.transpose() * zb * lx;
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    eig_sym((mid + mid.transpose()) / 2.0, vals, vecs);
    if (vals(0) <= 0) return false;
    Eigen::MatrixXd w = lx * vecs * vals.cwiseSqrt().cwiseInverse().asDiagonal() *
                        vecs.transpose() * lx.transpose();
    nt.w.push_back((w + w.transpose()) / 2.0);
    const int n = int(zb.rows());
    nt.zinv.push_back(lltz.solve(Eigen::MatrixXd::Identity(n, n)));
  }
  nt.wdiag = (x.scalars.array() / z.scalars.array()).sqrt();
  nt.zinv_diag = z.scalars.cwiseInverse();
  return true;
}

SdpResult ipm_solve(const SemidefiniteProgram& p, double tol, int max_iterations) {
  const int m = int(p.constraints.size());
  Expanded ex = expand(p);

  BlockMat cmat = BlockMat::zeros(p);  // minimize C.X with C = -objective
  add_terms(cmat, p.objective, -1.0);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b(i) = p.constraints[std::size_t(i)].rhs;

  double scale0 = std::max({10.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0, cmat.frob()});
  BlockMat x = BlockMat::identity(p, scale0);
  BlockMat z = BlockMat::identity(p, std::max(10.0, cmat.frob()));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  double nu = double(p.num_scalars);
  for (int d : p.blocks) nu += d;
  if (nu == 0) nu = 1;

  SdpResult res;
  auto a_of = [&](const BlockMat& v) {
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) out(i) = dot_terms(p.constraints[std::size_t(i)].terms, v);
    return out;
  };
  auto at_of = [&](const Eigen::VectorXd& yy) {
    BlockMat out = BlockMat::zeros(p);
    for (int i = 0; i < m; ++i) add_terms(out, p.constraints[std::size_t(i)].terms, yy(i));
    return out;
  };

  const int iters = std::min(max_iterations, 300);
  NtScaling nt;
  for (int it = 0; it < iters; ++it) {
    res.iterations = it;
    Eigen::VectorXd rp = b - a_of(x);
    BlockMat rd = cmat;  // C - Z - At(y)
    rd.axpy(-1.0, z);
    rd.axpy(-1.0, at_of(y));

    double mu = x.dot(z) / nu;
    double pobj = cmat.dot(x), dobj = b.dot(y);
    double pinf = (m ? rp.norm() : 0.0) / (1.0 + (m ? b.norm() : 0.0));
    double dinf = rd.frob() / (1.0 + cmat.frob());
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    if (pinf < tol && dinf < tol && gap < tol) {
      res.status = SdpResult::Status::Optimal;
      break;
    }
    if (!nt_scaling(x, z, nt)) {
      res.status = SdpResult::Status::Stalled;
      break;
    }

    // Schur matrix M_ij = tr(A_i W A_j W).
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double acc = 0.0;
        for (const auto& ei : ex.rows[std::size_t(i)]) {
          for (const auto& ej : ex.rows[std::size_t(j)]) {
            if (ei.block != ej.block) continue;
            if (ei.block == -1) {
              if (ei.r == ej.r) {
                double w = nt.wdiag(ei.r);
                acc += ei.v * ej.v * w * w;
              }
            } else {
              const Eigen::MatrixXd& w = nt.w[std::size_t(ei.block)];
              acc += ei.v * ej.v * w(ei.c, ej.r) * w(ej.c, ei.r);
            }
          }
        }
        schur(i, j) = acc;
        schur(j, i) = acc;
      }
    }

    Eigen::LLT<Eigen::MatrixXd> schur_llt;
    double ridge = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd reg = schur;
      if (ridge > 0) reg.diagonal().array() += ridge;
      schur_llt.compute(reg);
      if (schur_llt.info() == Eigen::Success) break;
      ridge = ridge == 0 ? 1e-12 * (1.0 + schur.trace() / std::max(1, m)) : ridge * 100;
    }
    if (schur_llt.info() != Eigen::Success) {
      res.status = SdpResult::Status::Stalled;
      break;
    }

    auto solve_direction = [&](const BlockMat& rc, BlockMat& dx, Eigen::VectorXd& dy,
                               BlockMat& dz) {
      BlockMat wrdw = nt.wrap(p, rd);
      dy = schur_llt.solve(rp - a_of(rc) + a_of(wrdw));
      dz = rd;
      dz.axpy(-1.0, at_of(dy));
      dx = rc;
      dx.axpy(-1.0, nt.wrap(p, dz));
    };

    // Predictor.
    BlockMat rc = x;
    rc.scale(-1.0);
    BlockMat dx, dz;
    Eigen::VectorXd dy;
    solve_direction(rc, dx, dy, dz);
    double ap = step_to_boundary(x, dx), ad = step_to_boundary(z, dz);
    BlockMat xa = x, za = z;
    xa.axpy(ap, dx);
    za.axpy(ad, dz);
    double mu_aff = xa.dot(za) / nu;
    double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
    sigma = std::clamp(sigma, 1e-8, 0.9999);

    // Corrector: rc = sigma*mu*Z^-1 - X - symm(dXa dZa Z^-1).
    BlockMat rc2 = BlockMat::zeros(p);
    for (std::size_t bidx = 0; bidx < rc2.blocks.size(); ++bidx) {
      Eigen::MatrixXd cross =
          dx.blocks[bidx] * dz.blocks[bidx] * nt.zinv[bidx];
      rc2.blocks[bidx] = sigma * mu * nt.zinv[bidx] - x.blocks[bidx] -
                         (cross + cross.transpose()) / 2.0;
    }
    rc2.scalars = (sigma * mu) * nt.zinv_diag.array() - x.scalars.array() -
                  (dx.scalars.array() * dz.scalars.array() * nt.zinv_diag.array());
    solve_direction(rc2, dx, dy, dz);
    ap = step_to_boundary(x, dx);
    ad = step_to_boundary(z, dz);
    if (ap < 1e-9 && ad < 1e-9) {
      res.status = SdpResult::Status::Stalled;
      break;
    }
    x.axpy(ap, dx);
    y += ad * dy;
    z.axpy(ad, dz);
  }

  // Final report.
  Eigen::VectorXd rp = b - a_of(x);
  BlockMat rd = cmat;
  rd.axpy(-1.0, z);
  rd.axpy(-1.0, at_of(y));
  res.primal_value = -cmat.dot(x);
  res.dual_value = -b.dot(y);
  res.primal_residual = m ? rp.cwiseAbs().maxCoeff() : 0.0;
  res.dual_residual = rd.frob() / (1.0 + cmat.frob());
  res.gap = std::abs(res.primal_value - res.dual_value) /
            (1.0 + std::abs(res.primal_value) + std::abs(res.dual_value));
  res.dual_certified = res.dual_residual < std::max(tol * 100, 1e-5);
  res.block_values = x.blocks;
  res.scalar_values.assign(x.scalars.data(), x.scalars.data() + x.scalars.size());
  res.dual_y.assign(y.data(), y.data() + y.size());
  double mineig = 0.0;
  for (const auto& blk : x.blocks) {
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    eig_sym(blk, vals, vecs);
    if (blk.rows() > 0) mineig = std::min(mineig, vals(0));
  }
  for (int i = 0; i < x.scalars.size(); ++i) mineig = std::min(mineig, x.scalars(i));
  res.min_eigenvalue = mineig;
  if (res.status != SdpResult::Status::Optimal &&
      res.primal_residual < tol && res.dual_residual < tol && res.gap < tol)
    res.status = SdpResult::Status::Optimal;
  return res;
}

// ---------------------------------------------------------------------------
// Splitting method (ADMM) over the class space obtained by presolving
// two-entry tying constraints and single-entry pins.

struct Cell {
  int block, i, j;  // block -1 => scalar i
  bool operator<(const Cell& o) const {
    return std::tie(block, i, j) < std::tie(o.block, o.i, o.j);
  }
};

struct Presolved {
  // Union-find over cells with multiplicative weights: value(cell) =
  // weight * value(root) + shift (shift only for pinned roots).
  std::map<Cell, int> cell_id;
  std::vector<Cell> cells;
  std::vector<int> parent;
  std::vector<double> weight;  // relative to parent
  std::vector<bool> pinned;
  std::vector<double> pin_value;

  int id_of(const Cell& c) {
    auto it = cell_id.find(c);
    if (it != cell_id.end()) return it->second;
    int id = int(cells.size());
    cell_id.emplace(c, id);
    cells.push_back(c);
    parent.push_back(id);
    weight.push_back(1.0);
    pinned.push_back(false);
    pin_value.push_back(0.0);
    return id;
  }
  std::pair<int, double> find(int i) {
    if (parent[std::size_t(i)] == i) return {i, 1.0};
    auto [root, w] = find(parent[std::size_t(i)]);
    parent[std::size_t(i)] = root;
    weight[std::size_t(i)] *= w;
    return {root, weight[std::size_t(i)]};
  }
  // value(a) = r * value(b)
  void unite(int a, int b, double r) {
    auto [ra, wa] = find(a);
    auto [rb, wb] = find(b);
    if (ra == rb) return;  // consistency not rechecked; builder emits consistent ties
    if (pinned[std::size_t(ra)]) {
      // keep pinned roots as roots
      std::swap(ra, rb);
      std::swap(wa, wb);
      r = 1.0 / r;
    }
    // value(a)=wa*value(ra), value(b)=wb*value(rb); want value(a)=r*value(b)
    // => value(ra) = (r*wb/wa) * value(rb)
    parent[std::size_t(ra)] = rb;
    weight[std::size_t(ra)] = r * wb / wa;
    if (pinned[std::size_t(ra)]) {
      pinned[std::size_t(rb)] = true;
      pin_value[std::size_t(rb)] = pin_value[std::size_t(ra)] / weight[std::size_t(ra)];
    }
  }
};

SdpResult admm_solve(const SemidefiniteProgram& p, double tol, int max_iterations) {
  // Canonical cell list per constraint with "plain" coefficients e such that
  // dot(A, X) = sum e * X_cell (off-diagonal symmetric pairs folded).
  struct Lin {
    std::vector<std::pair<Cell, double>> terms;
    double rhs;
  };
  auto fold = [](const std::vector<SemidefiniteProgram::Term>& terms) {
    std::map<Cell, double> acc;
    for (const auto& t : terms) {
      Cell c{t.block, t.i, t.block == -1 ? t.i : t.j};
      acc[c] += t.block == -1 ? t.c : (t.i == t.j ? t.c : 2.0 * t.c);
    }
    std::vector<std::pair<Cell, double>> out(acc.begin(), acc.end());
    return out;
  };

  Presolved ps;
  std::vector<Lin> linear;
  std::vector<std::pair<std::vector<std::pair<Cell, double>>, double>> deferred;
  // First pass: pins and ties.
  std::vector<Lin> rest;
  for (const auto& con : p.constraints) {
    auto terms = fold(con.terms);
    if (terms.size() == 1 && terms[0].second != 0.0) {
      int id = ps.id_of(terms[0].first);
      auto [root, w] = ps.find(id);
      ps.pinned[std::size_t(root)] = true;
      ps.pin_value[std::size_t(root)] = (con.rhs / terms[0].second) / w;
      continue;
    }
    if (terms.size() == 2 && con.rhs == 0.0 && terms[0].second != 0.0 &&
        terms[1].second != 0.0) {
      int a = ps.id_of(terms[0].first), bb = ps.id_of(terms[1].first);
      ps.unite(a, bb, -terms[1].second / terms[0].second);
      continue;
    }
    rest.push_back({terms, con.rhs});
  }
  // Register remaining cells (objective + linear rows + all cone cells).
  auto obj_terms = fold(p.objective);
  for (auto& [c, e] : obj_terms) ps.id_of(c);
  for (auto& r : rest)
    for (auto& [c, e] : r.terms) ps.id_of(c);
  for (int b = 0; b < int(p.blocks.size()); ++b)
    for (int i = 0; i < p.blocks[std::size_t(b)]; ++i)
      for (int j = i; j < p.blocks[std::size_t(b)]; ++j) ps.id_of({b, i, j});
  for (int s = 0; s < p.num_scalars; ++s) ps.id_of({-1, s, s});

  // Assign class indices to unpinned roots.
  const int ncells = int(ps.cells.size());
  std::vector<int> class_of(std::size_t(ncells), -1);
  std::vector<double> wgt(std::size_t(ncells)), shift(std::size_t(ncells), 0.0);
  int nclass = 0;
  std::map<int, int> root_class;
  for (int i = 0; i < ncells; ++i) {
    auto [root, w] = ps.find(i);
    if (ps.pinned[std::size_t(root)]) {
      class_of[std::size_t(i)] = -1;
      shift[std::size_t(i)] = w * ps.pin_value[std::size_t(root)];
      wgt[std::size_t(i)] = 0.0;
    } else {
      auto it = root_class.find(root);
      if (it == root_class.end()) it = root_class.emplace(root, nclass++).first;
      class_of[std::size_t(i)] = it->second;
      wgt[std::size_t(i)] = w;
    }
  }

  // Multiplicities (svec-weighted) and objective over classes.
  Eigen::VectorXd mult = Eigen::VectorXd::Zero(nclass);
  for (int i = 0; i < ncells; ++i) {
    if (class_of[std::size_t(i)] < 0) continue;
    const Cell& c = ps.cells[std::size_t(i)];
    double s2 = (c.block >= 0 && c.i != c.j) ? 2.0 : 1.0;
    mult(class_of[std::size_t(i)]) += s2 * wgt[std::size_t(i)] * wgt[std::size_t(i)];
  }
  for (int k = 0; k < nclass; ++k)
    if (mult(k) <= 0) mult(k) = 1.0;

  Eigen::VectorXd cvec = Eigen::VectorXd::Zero(nclass);
  double obj_const = 0.0;
  for (auto& [c, e] : obj_terms) {
    int id = ps.id_of(c);
    if (class_of[std::size_t(id)] >= 0)
      cvec(class_of[std::size_t(id)]) += e * wgt[std::size_t(id)];
    else
      obj_const += e * shift[std::size_t(id)];
  }

  // Linear system E z = d over classes.
  const int ne = int(rest.size());
  Eigen::MatrixXd emat = Eigen::MatrixXd::Zero(ne, nclass);
  Eigen::VectorXd dvec = Eigen::VectorXd::Zero(ne);
  for (int r = 0; r < ne; ++r) {
    dvec(r) = rest[std::size_t(r)].rhs;
    for (auto& [c, e] : rest[std::size_t(r)].terms) {
      int id = ps.id_of(c);
      if (class_of[std::size_t(id)] >= 0)
        emat(r, class_of[std::size_t(id)]) += e * wgt[std::size_t(id)];
      else
        dvec(r) -= e * shift[std::size_t(id)];
    }
  }

  // Drop numerically empty rows; factorize E D^-1 E^T.
  Eigen::VectorXd dinv = mult.cwiseInverse();
  Eigen::MatrixXd k = emat * dinv.asDiagonal() * emat.transpose();
  k.diagonal().array() += 1e-10;
  Eigen::LDLT<Eigen::MatrixXd> kldlt(k);

  // Iterate.
  auto broadcast = [&](const Eigen::VectorXd& z, BlockMat& out) {
    for (int i = 0; i < ncells; ++i) {
      const Cell& c = ps.cells[std::size_t(i)];
      double v = class_of[std::size_t(i)] >= 0
                     ? wgt[std::size_t(i)] * z(class_of[std::size_t(i)])
                     : shift[std::size_t(i)];
      if (c.block == -1) {
        out.scalars(c.i) = v;
      } else {
        out.blocks[std::size_t(c.block)](c.i, c.j) = v;
        out.blocks[std::size_t(c.block)](c.j, c.i) = v;
      }
    }
  };

  double sigma = 1.0;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(nclass);
  BlockMat xmat = BlockMat::zeros(p), umat = BlockMat::zeros(p);
  BlockMat bz = BlockMat::zeros(p), xprev = BlockMat::zeros(p);
  const double alpha = 1.6;

  SdpResult res;
  double rprim = 0.0, rdual = 0.0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    // z-update: minimize -c.z*(1/sigma) + 1/2 || B z + P - (X - U) ||^2
    // subject to E z = d (svec metric; D = mult).
    Eigen::VectorXd q = cvec / sigma;
    for (int i = 0; i < ncells; ++i) {
      if (class_of[std::size_t(i)] < 0) continue;
      const Cell& c = ps.cells[std::size_t(i)];
      double s2 = (c.block >= 0 && c.i != c.j) ? 2.0 : 1.0;
      double v = c.block == -1 ? xmat.scalars(c.i) - umat.scalars(c.i)
                               : xmat.blocks[std::size_t(c.block)](c.i, c.j) -
                                     umat.blocks[std::size_t(c.block)](c.i, c.j);
      q(class_of[std::size_t(i)]) += s2 * wgt[std::size_t(i)] * v;
    }
    if (ne > 0) {
      Eigen::VectorXd lam = kldlt.solve(dvec - emat * (dinv.asDiagonal() * q));
      z = dinv.asDiagonal() * (q + emat.transpose() * lam);
    } else {
      z = dinv.asDiagonal() * q;
    }

    broadcast(z, bz);
    // X-update with over-relaxation, then projection.
    xprev = xmat;
    for (std::size_t b = 0; b < xmat.blocks.size(); ++b) {
      Eigen::MatrixXd target = alpha * bz.blocks[b] + (1 - alpha) * xprev.blocks[b] +
                               umat.blocks[b];
      Eigen::VectorXd vals;
      Eigen::MatrixXd vecs;
      eig_sym(target, vals, vecs);
      Eigen::VectorXd clipped = vals.cwiseMax(0.0);
      xmat.blocks[b] = vecs * clipped.asDiagonal() * vecs.transpose();
      xmat.blocks[b] = ((xmat.blocks[b] + xmat.blocks[b].transpose()) / 2.0).eval();
    }
    xmat.scalars =
        (alpha * bz.scalars + (1 - alpha) * xprev.scalars + umat.scalars).cwiseMax(0.0);

    // U-update.
    for (std::size_t b = 0; b < umat.blocks.size(); ++b)
      umat.blocks[b] += alpha * bz.blocks[b] + (1 - alpha) * xprev.blocks[b] -
                        xmat.blocks[b];
    umat.scalars += alpha * bz.scalars + (1 - alpha) * xprev.scalars - xmat.scalars;

    if (it % 25 == 24 || it == max_iterations - 1) {
      BlockMat diff = bz;
      diff.axpy(-1.0, xmat);
      double nb = std::max(1.0, std::max(bz.frob(), xmat.frob()));
      rprim = diff.frob() / nb;
      BlockMat dchange = xmat;
      dchange.axpy(-1.0, xprev);
      rdual = sigma * dchange.frob() / std::max(1.0, xmat.frob());
      if (rprim < tol && rdual < tol) {
        ++it;
        break;
      }
      if (it % 100 == 99) {
        if (rprim > 10 * rdual) {
          sigma *= 2.0;
          umat.scale(0.5);
        } else if (rdual > 10 * rprim) {
          sigma *= 0.5;
          umat.scale(2.0);
        }
      }
    }
  }

  res.iterations = it;
  res.status = (rprim < tol && rdual < tol) ? SdpResult::Status::Optimal
                                            : SdpResult::Status::Stalled;
  res.primal_value = cvec.dot(z) + obj_const;
  res.dual_certified = false;  // primal-only
  res.dual_value = res.primal_value;
  res.primal_residual = rprim;
  res.dual_residual = rdual;
  res.gap = rprim;
  broadcast(z, bz);
  res.block_values = bz.blocks;
  res.scalar_values.assign(bz.scalars.data(), bz.scalars.data() + bz.scalars.size());
  double mineig = 0.0;
  for (const auto& blk : bz.blocks) {
    if (blk.rows() == 0) continue;
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    eig_sym(blk, vals, vecs);
    mineig = std::min(mineig, vals(0));
  }
  for (int i = 0; i < bz.scalars.size(); ++i) mineig = std::min(mineig, bz.scalars(i));
  res.min_eigenvalue = mineig;
  return res;
}

}  // namespace

SdpResult solve_sdp(const SemidefiniteProgram& p, double tol, SdpMethod method,
                    int max_iterations) {
  p.check_valid();
  int maxdim = 0;
  for (int d : p.blocks) maxdim = std::max(maxdim, d);
  if (method == SdpMethod::Auto)
    method = (maxdim <= 400 && int(p.constraints.size()) <= 6000)
                 ? SdpMethod::InteriorPoint
                 : SdpMethod::Splitting;
  SdpResult res = method == SdpMethod::InteriorPoint ? ipm_solve(p, tol, max_iterations)
                                                     : admm_solve(p, tol, max_iterations);
  if (res.status == SdpResult::Status::Stalled)
    res.gap = std::max({res.gap, res.primal_residual, res.dual_residual});
  return res;
}

void write_sdp_sparse(std::ostream& os, const SemidefiniteProgram& p) {
  os << "qleak-sdp-sparse 1\n";
  os << "blocks " << p.blocks.size();
  for (int d : p.blocks) os << ' ' << d;
  os << "\nscalars " << p.num_scalars << "\n";
  os << "constraints " << p.constraints.size() << "\n";
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    os << "rhs " << i + 1 << ' ' << p.constraints[i].rhs << "\n";
  auto dump = [&os](std::size_t cid, const std::vector<SemidefiniteProgram::Term>& terms) {
    for (const auto& t : terms)
      os << cid << ' ' << t.block << ' ' << t.i << ' ' << t.j << ' ' << t.c << "\n";
  };
  dump(0, p.objective);  // constraint-id 0 is the objective
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    dump(i + 1, p.constraints[i].terms);
}

SemidefiniteProgram read_sdp_sparse(std::istream& is) {
  SemidefiniteProgram p;
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "qleak-sdp-sparse" || version != 1)
    throw_input("sdp text: bad header");
  std::string word;
  std::size_t nblocks = 0, ncons = 0;
  is >> word >> nblocks;
  if (word != "blocks") throw_input("sdp text: expected blocks");
  p.blocks.resize(nblocks);
  for (auto& d : p.blocks) is >> d;
  is >> word >> p.num_scalars;
  if (word != "scalars") throw_input("sdp text: expected scalars");
  is >> word >> ncons;
  if (word != "constraints") throw_input("sdp text: expected constraints");
  p.constraints.resize(ncons);
  while (is >> word) {
    if (word == "rhs") {
      std::size_t cid;
      double v;
      is >> cid >> v;
      if (cid < 1 || cid > ncons) throw_input("sdp text: rhs id out of range");
      p.constraints[cid - 1].rhs = v;
    } else {
      std::size_t cid = std::stoull(word);
      SemidefiniteProgram::Term t{};
      is >> t.block >> t.i >> t.j >> t.c;
      if (cid == 0)
        p.objective.push_back(t);
      else if (cid <= ncons)
        p.constraints[cid - 1].terms.push_back(t);
      else
        throw_input("sdp text: constraint id out of range");
    }
  }
  p.check_valid();
  return p;
}

}  // namespace qleak
