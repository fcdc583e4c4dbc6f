#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "persym/bigcount.hpp"
#include "persym/forms.hpp"

namespace persym {

inline constexpr int kDefaultBruteBudgetBits = 30;

// Carry-less product of two F2[T] polynomials given as coefficient masks
// (bit t = coefficient of T^t). Operands must be at most 32 bits wide.
constexpr std::uint64_t clmul(std::uint64_t p, std::uint64_t r) noexcept {
  std::uint64_t acc = 0;
  while (r != 0) {
    const int s = __builtin_ctzll(r);
    acc ^= p << s;
    r &= r - 1;
  }
  return acc;
}

// One tuple (Y_1..Y_q, U_j^{(i)}) of the bilinear system
//   sum_i Y_i U_j^{(i)} = 0,  j = 1..n,  deg Y_i <= k-1,  deg U_j^{(i)} <= 1.
struct PolySystemInstance {
  int q = 0;
  int n = 0;
  int k = 0;
  std::vector<std::uint64_t> y;  // q masks of k bits
  std::vector<std::uint64_t> u;  // u[i * n + j] = U_{j+1}^{(i+1)}, 2 bits (a + bT)

  // Bits of one instance: q (k + 2n).
  static int bits(int q, int n, int k) noexcept { return q * (k + 2 * n); }

  // Index layout, least significant first: for each i, Y_i (k bits) then
  // U_1^{(i)} .. U_n^{(i)} (2 bits each).
  static PolySystemInstance from_index(int q, int n, int k, std::uint64_t index);

  bool is_solution() const noexcept;
};

// Exhaustive count of solutions over all 2^{q(k+2n)} instances.
// Throws BudgetExceeded when q(k+2n) > budget_bits.
BigCount r_bruteforce(int q, int n, int k, int budget_bits = kDefaultBruteBudgetBits,
                      int jobs = 1);

// 2^{q(2n+k) - (k+1)n} sum_i gamma_i 2^{-iq}, evaluated exactly.
// Throws IncompleteSource if the distribution does not cover every rank.
BigCount r_formula(int q, const RankDistribution& gammas);
BigCount r_formula(int q, const RankHistogram& hist);

// 2^{4k} + 5400 2^{3k} + 3763200 2^{2k} + 377395200 2^k + 3674603520, k >= 3.
BigCount r_q4_k_closed(int k);

// Number of m x q matrices over F2 of rank l.
BigCount landsberg_count(int m, int q, int l);

// Three routes to the solution count at n = 4, k = 1:
//   [0] sum_l landsberg_count(8, q, l) 2^{q-l}
//   [1] 2^{9q-8} + 255 2^{8q-8}
//   [2] r_formula(q, quadruple table at k = 1)
std::array<BigCount, 3> r_q41_identity(int q);

}  // namespace persym
