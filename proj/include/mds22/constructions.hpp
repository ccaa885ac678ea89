#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mds22/code.hpp"

namespace mds22 {

/// Nodes 1..n split into g consecutive groups; the first n mod g groups hold
/// ceil(n/g) nodes, the rest floor(n/g).
struct GroupPartition {
  std::vector<std::vector<std::size_t>> groups;

  std::size_t count() const noexcept { return groups.size(); }
  /// 0-based group index of a 1-based node.
  std::size_t group_of(std::size_t node) const;
  std::size_t size_of_group_containing(std::size_t node) const { return groups[group_of(node)].size(); }
};

GroupPartition group_partition(std::size_t n, std::size_t g);

inline constexpr std::size_t kC1Groups = 4;
inline constexpr std::size_t kC2Groups = 3;

/// Bandwidth-oriented code: lambda_i = alpha^i for i in [0, n+2], four groups.
/// Requires q >= n+3 and a passing MDS check (q = n+3 wraps the lambda
/// exponents and normally fails; q >= n+4 is the safe choice).
CodeSpec build_c1(std::size_t k, FieldPtr field);
/// I/O-oriented code: lambda_i = i (value order, reduced mod q), three groups.
/// Requires q >= n+1.
CodeSpec build_c2(std::size_t k, FieldPtr field);
CodeSpec build_code(Construction construction, std::size_t k, FieldPtr field);

/// Smallest q the builder accepts before the MDS gate.
std::size_t min_field_order(Construction construction, std::size_t k);
/// GF(2^8) when it is large enough, otherwise the smallest prime that is.
FieldPtr default_field(Construction construction, std::size_t k);

/// Random parity-check blocks drawn until the MDS check passes. Blocks are
/// grown greedily; a dead end restarts the draw, at most `max_attempts` times.
CodeSpec random_mds_code(std::size_t k, FieldPtr field, std::mt19937_64& rng, unsigned max_attempts = 1000);

/// rank(M_i H_j) for C1, nz(M_i H_j) for C2; entry [i-1][j-1].
std::vector<std::vector<std::size_t>> designed_pattern(const CodeSpec& code);

struct PatternCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> first_mismatch;  // (i, j)
  explicit operator bool() const noexcept { return ok; }
};

/// Compares designed_pattern against the group table: 2 when i and j share a
/// group, 1 otherwise. Only defined for C1 and C2 codes.
PatternCheck check_designed_pattern(const CodeSpec& code);

}  // namespace mds22
