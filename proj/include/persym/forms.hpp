#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "persym/bigcount.hpp"
#include "persym/persym.hpp"
#include "persym/source.hpp"

namespace persym {

// ---------------------------------------------------------------------------
// Formula catalog
//
// Every closed form is registered under a stable id together with the range
// of (i, n, k) on which it is asserted to hold. Checked evaluation rejects
// arguments outside that range; `evaluate_unchecked` exists so that the
// enumeration oracle can probe where a formula actually starts to hold.
// ---------------------------------------------------------------------------

struct FormulaArgs {
  int i = 0;  // rank
  int n = 0;  // number of height-2 blocks (ignored by families with fixed n)
  int k = 0;  // columns
};

struct FormulaInfo {
  std::string_view id;
  std::string_view quantity;  // what the formula counts
  std::string_view domain;    // human-readable constraints on (i, n, k)
  std::string_view anchor;    // which line of the closed-form system it is
  bool uses_n;                // false when n is fixed by the family
};

std::span<const FormulaInfo> formula_catalog() noexcept;
const FormulaInfo& formula_info(std::string_view id);  // throws StructuralError if unknown

// Empty when args are in the declared domain, otherwise the violated constraint.
std::optional<std::string> domain_violation(std::string_view id, const FormulaArgs& args);

// Checked: throws DomainError naming the violated constraint.
BigCount evaluate(std::string_view id, const FormulaArgs& args);

// Evaluates the expression regardless of domain. Still throws DomainError
// when a fractional coefficient does not divide out.
BigInt evaluate_unchecked(std::string_view id, const FormulaArgs& args);

// ---------------------------------------------------------------------------
// Rank counts of the [2]*n family
// ---------------------------------------------------------------------------

// Ranks 0..5 for arbitrary n; line i needs k >= i + 1.
BigCount gamma_general(int i, int n, int k);

// Rank-4 lines for n = 1, 2, 3 (any k >= 5) and for k = 5, 6 (any n).
BigCount gamma_rank4_small_n(int n, int k);
BigCount gamma_rank4_fixed_k(int n, int k);

// Rank-5 lines for n = 1..4 exactly as published, and the k = 6 polynomial in 2^n.
// The n = 4 line carries a misprinted constant; see gamma_quadruple(5, k).
BigCount gamma_rank5_small_n(int n, int k);
BigCount gamma_rank5_k6(int n);

// Full rank distributions at k = 7 and k = 8 as polynomials in 2^n.
BigCount gamma_k7_k8(int i, int n, int k);

// ---------------------------------------------------------------------------
// Quadruple family (n = 4, the 8 x k matrices)
// ---------------------------------------------------------------------------

// Closed form in 2^k; k >= 4, with k >= 5 for i = 4 and k >= 8 for i = 8.
BigCount gamma_quadruple(int i, int k);

// Full rank as 2^4 * prod_{j=1..4} (2^k - 2^{8-j}); k >= 8.
BigCount gamma_quadruple_full_rank(int k);

// Tabulated values for 1 <= k <= 8, 0 <= i <= k.
BigCount gamma_table_small_k(int i, int k);

// Best available value: the closed form where it is in domain, otherwise the
// table. Throws DomainError when neither applies.
std::pair<BigCount, Source> quadruple_gamma(int i, int k);

// ---------------------------------------------------------------------------
// Mixed [2,2,2,2,1] family (9 x k)
// ---------------------------------------------------------------------------

BigCount gamma_mixed_9xk(int i, int k);

// 2^i * Q_i + (2^k - 2^{i-1}) * Q_{i-1}, Q = quadruple counts, Q_{-1} = 0 and
// Q_i = 0 for i > min(8, k).
BigCount mixed_recurrence(int i, int k);

// ---------------------------------------------------------------------------
// Distributions and moment identities
// ---------------------------------------------------------------------------

struct RankDistribution {
  int n = 0;  // height-2 blocks
  int k = 0;
  std::vector<BigCount> gamma;  // gamma[i] for i = 0..max_rank()
  std::vector<Source> sources;  // parallel to gamma

  int max_rank() const noexcept { return 2 * n < k ? 2 * n : k; }
};

// Throws StructuralError unless the histogram's shape is [2]*n.
RankDistribution to_distribution(const RankHistogram& hist);

// Quadruple distribution for any k >= 1 built from quadruple_gamma.
RankDistribution quadruple_distribution(int k);

// Closed-form / tabulated distribution for (n, k) when one covers every rank.
std::optional<RankDistribution> closed_form_distribution(int n, int k);

// One moment identity sum_i gamma_i 2^{-q i} = rhs, cleared of denominators:
// both sides are multiplied by 2^scale_bits, where scale_bits = q * max_rank
// plus any extra bits needed to make every right-hand term integral.
struct MomentCheck {
  int order = 0;
  int scale_bits = 0;
  BigInt lhs;
  BigInt rhs;

  bool holds() const { return lhs == rhs; }
};

// Zeroth, first and second moments against the general closed forms in (n, k).
// Throws IncompleteSource if gamma does not cover 0..max_rank().
std::array<MomentCheck, 3> moment_identities(const RankDistribution& dist);

// Same sums against the quadruple-specific right-hand sides (polynomials in 2^k).
// Requires dist.n == 4.
std::array<MomentCheck, 3> quadruple_moment_identities(const RankDistribution& dist);

}  // namespace persym
