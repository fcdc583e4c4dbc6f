#include "persym/polysys.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "persym/errors.hpp"

namespace persym {

namespace {

void check_system(int q, int n, int k) {
  if (q < 1 || n < 1 || k < 1) {
    throw StructuralError("polynomial system needs q, n, k >= 1");
  }
  if (k > 32) throw StructuralError("deg Y <= k-1 needs k <= 32 for carry-less products");
}

// Solutions with index in [begin, end). Decodes in place to stay allocation-free.
std::uint64_t count_range(int q, int n, int k, std::uint64_t begin, std::uint64_t end) {
  const int stride = k + 2 * n;
  const std::uint64_t y_mask = low_mask(k);
  std::array<std::uint64_t, 64> ys{};
  std::array<std::uint64_t, 64> us{};  // us[i] packs U_1..U_n of column i, 2 bits each
  std::uint64_t solutions = 0;
  for (std::uint64_t index = begin; index < end; ++index) {
    for (int i = 0; i < q; ++i) {
      const std::uint64_t field = index >> (i * stride);
      ys[static_cast<std::size_t>(i)] = field & y_mask;
      us[static_cast<std::size_t>(i)] = (field >> k) & low_mask(2 * n);
    }
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      std::uint64_t acc = 0;
      for (int i = 0; i < q; ++i) {
        acc ^= clmul(ys[static_cast<std::size_t>(i)], (us[static_cast<std::size_t>(i)] >> (2 * j)) & 3u);
      }
      ok = acc == 0;
    }
    solutions += ok ? 1 : 0;
  }
  return solutions;
}

}  // namespace

PolySystemInstance PolySystemInstance::from_index(int q, int n, int k, std::uint64_t index) {
  check_system(q, n, k);
  if (bits(q, n, k) > 64) throw StructuralError("instance does not fit a 64-bit index");
  PolySystemInstance inst{q, n, k, {}, {}};
  const int stride = k + 2 * n;
  for (int i = 0; i < q; ++i) {
    const std::uint64_t field = stride * i >= 64 ? 0 : index >> (stride * i);
    inst.y.push_back(field & low_mask(k));
    for (int j = 0; j < n; ++j) inst.u.push_back((field >> (k + 2 * j)) & 3u);
  }
  return inst;
}

bool PolySystemInstance::is_solution() const noexcept {
  for (int j = 0; j < n; ++j) {
    std::uint64_t acc = 0;
    for (int i = 0; i < q; ++i) {
      acc ^= clmul(y[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i * n + j)]);
    }
    if (acc != 0) return false;
  }
  return true;
}

BigCount r_bruteforce(int q, int n, int k, int budget_bits, int jobs) {
  check_system(q, n, k);
  const int bits = PolySystemInstance::bits(q, n, k);
  const int limit = std::min(budget_bits, kHardSweepLimitBits);
  if (bits > limit) {
    throw BudgetExceeded("brute-force count (q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                             ", k=" + std::to_string(k) + ")",
                         bits, limit);
  }
  const std::uint64_t space = std::uint64_t{1} << bits;
  const int workers = resolve_jobs(jobs);
  const std::uint64_t chunks = std::min<std::uint64_t>(space, static_cast<std::uint64_t>(workers) * 16);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> total{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const IndexRange r = chunk_range(space, c, chunks);
      total += count_range(q, n, k, r.begin, r.end);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return BigCount(total.load());
}

BigCount r_formula(int q, const RankDistribution& gammas) {
  if (q < 1) throw StructuralError("q >= 1 required");
  const int n = gammas.n;
  const int k = gammas.k;
  const int imax = gammas.max_rank();
  if (static_cast<int>(gammas.gamma.size()) < imax + 1) {
    std::vector<int> missing;
    for (int i = static_cast<int>(gammas.gamma.size()); i <= imax; ++i) missing.push_back(i);
    throw IncompleteSource("r_formula", std::move(missing));
  }
  // 2^{q(2n+k) - (k+1)n - q imax} * sum_i gamma_i 2^{q(imax - i)}
  BigInt sum = 0;
  for (int i = 0; i <= imax; ++i) {
    sum += gammas.gamma[static_cast<std::size_t>(i)].value() << (q * (imax - i));
  }
  const int shift = q * (2 * n + k) - (k + 1) * n - q * imax;
  BigInt r = shift >= 0 ? BigInt(sum << shift) : exact_div(sum, pow2(-shift), "r_formula");
  return BigCount::from_signed(std::move(r), "r_formula");
}

BigCount r_formula(int q, const RankHistogram& hist) { return r_formula(q, to_distribution(hist)); }

BigCount r_q4_k_closed(int k) {
  if (k < 3) throw DomainError("r_q4_k_closed: k >= 3 required");
  const BigInt K = pow2(k);
  BigInt v = 0;
  for (std::int64_t c : {std::int64_t{1}, std::int64_t{5400}, std::int64_t{3763200},
                         std::int64_t{377395200}, std::int64_t{3674603520}}) {
    v = v * K + c;
  }
  return BigCount::from_signed(std::move(v), "r_q4_k_closed");
}

BigCount landsberg_count(int m, int q, int l) {
  if (m < 0 || q < 0 || l < 0 || l > std::min(m, q)) {
    throw DomainError("landsberg_count: rank " + std::to_string(l) + " outside 0..min(" +
                      std::to_string(m) + ", " + std::to_string(q) + ")");
  }
  BigInt num = 1;
  BigInt den = 1;
  for (int s = 0; s < l; ++s) {
    num *= (pow2(m) - pow2(s)) * (pow2(q) - pow2(s));
    den *= pow2(l) - pow2(s);
  }
  return BigCount::from_signed(exact_div(num, den, "landsberg_count"), "landsberg_count");
}

std::array<BigCount, 3> r_q41_identity(int q) {
  if (q < 1) throw StructuralError("q >= 1 required");
  BigInt by_rank = 0;
  for (int l = 0; l <= std::min(8, q); ++l) {
    by_rank += landsberg_count(8, q, l).value() << (q - l);
  }
  const BigInt closed = pow2(9 * q - 8) + 255 * pow2(8 * q - 8);
  return {BigCount::from_signed(std::move(by_rank), "landsberg route"),
          BigCount::from_signed(closed, "closed route"), r_formula(q, quadruple_distribution(1))};
}

}  // namespace persym
