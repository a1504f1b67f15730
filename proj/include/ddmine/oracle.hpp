// Copyright 2026 The ddmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Naive reference discovery for tests. Nothing here touches the partition
// or lattice code: every answer comes from scanning tuple pairs directly.

#ifndef DDMINE_ORACLE_HPP
#define DDMINE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"
#include "ddmine/lattice.hpp"

namespace ddmine {

struct VerifyTrace {
  std::uint64_t lhs_pairs = 0;   // pairs satisfying the lhs
  std::uint64_t satisfying = 0;  // of those, inside the rhs interval
  std::uint64_t violating = 0;
  std::uint64_t kept = 0;        // lowest-distance pairs that must satisfy
  bool holds = false;
};

/// Direct scan. With ε = 1 every lhs pair must satisfy the rhs; otherwise
/// the ceil(ε·m) lhs pairs with the lowest rhs distance must.
VerifyTrace verify_dd_trace(const Relation& relation,
                            const DifferentialDependency& dd, double epsilon);
bool verify_dd(const Relation& relation, const DifferentialDependency& dd,
               double epsilon);

struct OracleResult {
  /// Minimal base-interval DDs, canonically sorted.
  std::vector<DifferentialDependency> dd_set;
  std::vector<VerifyTrace> traces;  // parallel to dd_set
  /// dd_set after merging adjacent-interval siblings to a fixpoint.
  std::vector<DifferentialDependency> combined;
};

/// Exhaustive enumeration of every base-interval lhs of up to `max_lhs`
/// attributes. Throws std::invalid_argument beyond 12 tuples, 5 attributes
/// or 6 base intervals per attribute.
OracleResult discover_brute(const Relation& relation, const DistanceSchema& schema,
                            const DiscoveryConfig& cfg,
                            std::optional<std::size_t> max_lhs = std::nullopt);

/// Repeatedly replaces two DDs with equal rhs and lhs differing in one
/// attribute's adjacent intervals by their combination. Merged DDs carry
/// zero support and interestingness.
std::vector<DifferentialDependency> combine_fixpoint(
    std::vector<DifferentialDependency> dds, const DistanceSchema& schema);

}  // namespace ddmine

#endif  // DDMINE_ORACLE_HPP
