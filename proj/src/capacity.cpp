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

#include "qleak/capacity.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace qleak {

namespace {

using SparseCol = std::vector<std::pair<int, double>>;  // (bob leaf, mass), sorted

void walk_column(const InteractiveChannel& c, const DeterministicStrategy& alice,
                 const DeterministicStrategy& bob, SparseCol& out) {
  out.clear();
  for_each_trace(c, alice, bob, [&](int, int bv, double p) {
    out.emplace_back(bv, p);
  });
  std::sort(out.begin(), out.end());
  std::size_t w = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (w > 0 && out[w - 1].first == out[i].first)
      out[w - 1].second += out[i].second;
    else
      out[w++] = out[i];
  }
  out.resize(w);
}

std::uint64_t col_hash(const SparseCol& col) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& [leaf, p] : col) {
    mix(std::uint64_t(leaf));
    std::uint64_t bits;
    std::memcpy(&bits, &p, sizeof bits);
    mix(bits);
  }
  return h;
}

struct ColumnSet {
  std::vector<int> leaves;                   // union of supports, sorted
  std::vector<std::vector<double>> columns;  // distinct, dense over leaves
};

/// Distinct Bob-view columns over all Alice deterministic strategies for a
/// fixed Bob strategy. The OpenMP kernel shards the Alice ranks and merges
/// per-thread tables; merging is order-insensitive because distinctness is
/// exact on bit patterns.
ColumnSet collect_columns(const InteractiveChannel& c, const StrategyEnumerator& alice_enum,
                          const DeterministicStrategy& bob, bool parallel) {
  using Table = std::unordered_map<std::uint64_t, SparseCol>;
  const std::uint64_t n = alice_enum.count();
  int threads = parallel ? omp_get_max_threads() : 1;
  std::vector<Table> tables(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads) if (parallel)
  {
    int tid = parallel ? omp_get_thread_num() : 0;
    Table& table = tables[std::size_t(tid)];
    DeterministicStrategy alice;
    SparseCol col;
#pragma omp for schedule(static)
    for (long long rank = 0; rank < (long long)n; ++rank) {
      alice_enum.assign(std::uint64_t(rank), alice);
      walk_column(c, alice, bob, col);
      table.emplace(col_hash(col), col);
    }
  }

  Table merged = std::move(tables[0]);
  for (std::size_t t = 1; t < tables.size(); ++t)
    for (auto& [h, col] : tables[t]) merged.emplace(h, std::move(col));

  ColumnSet out;
  for (const auto& [h, col] : merged)
    for (const auto& [leaf, p] : col) out.leaves.push_back(leaf);
  std::sort(out.leaves.begin(), out.leaves.end());
  out.leaves.erase(std::unique(out.leaves.begin(), out.leaves.end()), out.leaves.end());

  // Deterministic column order: sort dense vectors lexicographically.
  std::vector<std::vector<double>> dense;
  dense.reserve(merged.size());
  for (const auto& [h, col] : merged) {
    std::vector<double> row(out.leaves.size(), 0.0);
    for (const auto& [leaf, p] : col) {
      std::size_t idx = std::size_t(
          std::lower_bound(out.leaves.begin(), out.leaves.end(), leaf) - out.leaves.begin());
      row[idx] = p;
    }
    dense.push_back(std::move(row));
  }
  std::sort(dense.begin(), dense.end());
  out.columns = std::move(dense);
  return out;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double max_pairwise_tv(const ColumnSet& cols) {
  double best = 0.0;
  const auto& cs = cols.columns;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      best = std::max(best, tv_distance(cs[i], cs[j]));
  return best;
}

double column_max_sum(const ColumnSet& cols) {
  if (cols.columns.empty()) return 1.0;
  std::vector<double> colmax(cols.leaves.size(), 0.0);
  for (const auto& row : cols.columns)
    for (std::size_t i = 0; i < row.size(); ++i) colmax[i] = std::max(colmax[i], row[i]);
  double s = 0.0;
  for (double v : colmax) s += v;
  return s;
}

void check_budget(const InteractiveChannel& c, const Budget& budget) {
  double na = strategy_count(c, Side::Alice);
  double nb = strategy_count(c, Side::Bob);
  if (na > budget.strategies_per_side || nb > budget.strategies_per_side)
    throw_budget("enumeration budget exceeded: " + std::to_string(na) + " Alice x " +
                 std::to_string(nb) + " Bob deterministic strategies (limit " +
                 std::to_string(budget.strategies_per_side) + " per side)");
}

double capacity_for_bob(const InteractiveChannel& c, const StrategyEnumerator& alice_enum,
                        const DeterministicStrategy& bob, SecretSpace secrets,
                        bool parallel) {
  ColumnSet cols = collect_columns(c, alice_enum, bob, parallel);
  if (secrets == SecretSpace::TwoSecrets) return std::log2(1.0 + max_pairwise_tv(cols));
  return std::log2(column_max_sum(cols));
}

}  // namespace

double minentropy_capacity_classical(const InteractiveChannel& c,
                                     const CapacityOptions& opts) {
  check_budget(c, opts.budget);
  StrategyEnumerator alice_enum(c, Side::Alice), bob_enum(c, Side::Bob);
  DeterministicStrategy bob;
  double best = 0.0;
  for (std::uint64_t rb = 0; rb < bob_enum.count(); ++rb) {
    bob_enum.assign(rb, bob);
    best = std::max(best, capacity_for_bob(c, alice_enum, bob, opts.secrets, opts.parallel));
  }
  return best;
}

double minentropy_capacity_classical_serial(const InteractiveChannel& c,
                                            const CapacityOptions& opts) {
  check_budget(c, opts.budget);
  StrategyEnumerator alice_enum(c, Side::Alice), bob_enum(c, Side::Bob);
  double best = 0.0;
  DeterministicStrategy bob;
  for (std::uint64_t rb = 0; rb < bob_enum.count(); ++rb) {
    bob_enum.assign(rb, bob);
    best = std::max(best, capacity_for_bob(c, alice_enum, bob, opts.secrets, false));
  }
  return best;
}

double blahut_arimoto(const std::vector<std::vector<double>>& rows, double tolerance,
                      int max_iterations, std::vector<double>* lower_trace) {
  const std::size_t ni = rows.size();
  if (ni == 0) return 0.0;
  const std::size_t nt = rows[0].size();
  std::vector<double> r(ni, 1.0 / double(ni)), q(nt), d(ni);
  double lower = 0.0, upper = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t t = 0; t < nt; ++t) q[t] += r[i] * rows[i][t];
    lower = 0.0;
    upper = 0.0;
    for (std::size_t i = 0; i < ni; ++i) {
      double di = 0.0;
      for (std::size_t t = 0; t < nt; ++t)
        if (rows[i][t] > 0.0) di += rows[i][t] * std::log2(rows[i][t] / q[t]);
      d[i] = di;
      lower += r[i] * di;
      upper = std::max(upper, di);
    }
    if (lower_trace) lower_trace->push_back(lower);
    if (upper - lower <= tolerance) return 0.5 * (upper + lower);
    double z = 0.0;
    for (std::size_t i = 0; i < ni; ++i) {
      r[i] *= std::exp2(d[i]);
      z += r[i];
    }
    for (std::size_t i = 0; i < ni; ++i) r[i] /= z;
  }
  throw_solver("blahut-arimoto did not converge: gap " + std::to_string(upper - lower) +
               " after " + std::to_string(max_iterations) + " iterations");
}

double shannon_capacity_classical(const InteractiveChannel& c, const ShannonOptions& opts) {
  check_budget(c, opts.budget);
  StrategyEnumerator alice_enum(c, Side::Alice), bob_enum(c, Side::Bob);
  DeterministicStrategy bob;
  double best = 0.0;
  for (std::uint64_t rb = 0; rb < bob_enum.count(); ++rb) {
    bob_enum.assign(rb, bob);
    ColumnSet cols = collect_columns(c, alice_enum, bob, opts.parallel);
    best = std::max(best,
                    blahut_arimoto(cols.columns, opts.tolerance, opts.max_iterations));
  }
  return best;
}

}  // namespace qleak
