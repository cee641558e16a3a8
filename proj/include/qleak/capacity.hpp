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

#ifndef QLEAK_CAPACITY_HPP
#define QLEAK_CAPACITY_HPP

#include "qleak/vulnerability.hpp"

namespace qleak {

/// Secret-space convention for the classical min-entropy capacity.
///
/// TwoSecrets is the payload setting the quantum-advantage analysis lives
/// in: sup over Bob strategies and Alice strategy pairs of
/// log2(1 + total variation). Unbounded is the column-max formula
/// log2 sum_t max_sA p(t|sA,sB), i.e. the supremum over arbitrary finite
/// secret sets; the two genuinely differ on multi-round channels because a
/// per-column maximum may pick a different Alice strategy for every visible
/// Bob view.
enum class SecretSpace { TwoSecrets, Unbounded };

struct CapacityOptions {
  Budget budget;
  SecretSpace secrets = SecretSpace::TwoSecrets;
  bool parallel = true;  // OpenMP over Alice strategies
};

/// Exact classical min-entropy capacity in bits by full deterministic
/// enumeration on both sides.
double minentropy_capacity_classical(const InteractiveChannel& c,
                                     const CapacityOptions& opts = {});

/// Serial reference implementation, kept verbatim for testing the
/// OpenMP kernel against.
double minentropy_capacity_classical_serial(const InteractiveChannel& c,
                                            const CapacityOptions& opts = {});

struct ShannonOptions {
  Budget budget;
  double tolerance = 1e-9;
  int max_iterations = 100000;
  bool parallel = true;
};

/// Max over Bob strategies of the Shannon capacity of the (Alice strategy ->
/// Bob view) matrix, via alternating maximization. Bits.
double shannon_capacity_classical(const InteractiveChannel& c,
                                  const ShannonOptions& opts = {});

/// Shannon capacity of one conditional matrix rows[i] = p(. | input i)
/// (rows need not share support). Exposed for oracle tests.
double blahut_arimoto(const std::vector<std::vector<double>>& rows,
                      double tolerance, int max_iterations,
                      std::vector<double>* lower_trace = nullptr);

}  // namespace qleak

#endif  // QLEAK_CAPACITY_HPP
