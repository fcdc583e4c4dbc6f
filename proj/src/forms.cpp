#include "persym/forms.hpp"

#include <algorithm>
#include <initializer_list>

#include "persym/errors.hpp"

namespace persym {

namespace {

using Violation = std::optional<std::string>;

// Evaluates c_0 x^d + c_1 x^{d-1} + ... + c_d.
BigInt poly(const BigInt& x, std::initializer_list<std::int64_t> high_to_low) {
  BigInt acc = 0;
  for (std::int64_t c : high_to_low) acc = acc * x + c;
  return acc;
}

BigInt p2n(const FormulaArgs& a) { return pow2(a.n); }
BigInt p2k(const FormulaArgs& a) { return pow2(a.k); }


// ---- general n, ranks 0..5 ------------------------------------------------

BigInt general_raw(const FormulaArgs& a) {
  const BigInt P = p2n(a);
  const BigInt K = p2k(a);
  switch (a.i) {
    case 0:
      return 1;
    case 1:
      return 3 * (P - 1);
    case 2:
      return 7 * P * P + (2 * K - 25) * P - 2 * K + 18;
    case 3:
      return 15 * P * P * P + (7 * K - 133) * P * P + (294 - 21 * K) * P - 176 + 14 * K;
    case 4: {
      const BigInt c3 = exact_div(35 * K - 1210, 2, "rank-4 coefficient of 2^{3n}");
      const BigInt c2 = exact_div(4 * K * K - 783 * K + 19028, 6, "rank-4 coefficient of 2^{2n}");
      const BigInt c1 = -2 * K * K + 269 * K - 5744;
      const BigInt c0 = exact_div(4 * K * K - 468 * K + 9440, 3, "rank-4 constant term");
      return 31 * P * P * P * P + c3 * P * P * P + c2 * P * P + c1 * P + c0;
    }
    case 5: {
      const BigInt c4 = exact_div(155 * K - 10292, 4, "rank-5 coefficient of 2^{4n}");
      const BigInt c3 =
          exact_div(10 * K * K - 2565 * K + 116600, 4, "rank-5 coefficient of 2^{3n}");
      const BigInt c2 =
          exact_div(-35 * K * K + 6265 * K - 247520, 2, "rank-5 coefficient of 2^{2n}");
      const BigInt c1 = 35 * K * K - 5490 * K + 203872;
      const BigInt c0 = -20 * K * K + 2960 * K - 106752;
      const BigInt P2 = P * P;
      return 63 * P2 * P2 * P + c4 * P2 * P2 + c3 * P2 * P + c2 * P2 + c1 * P + c0;
    }
    default:
      throw DomainError("general: no line for rank " + std::to_string(a.i));
  }
}

Violation general_domain(const FormulaArgs& a) {
  if (a.i < 0 || a.i > 5) return std::string("rank must be in 0..5");
  if (a.n < 1) return std::string("n >= 1 required");
  if (a.k < a.i + 1 || a.k < 1) {
    return "rank " + std::to_string(a.i) + " line requires k >= " + std::to_string(std::max(1, a.i + 1));
  }
  return std::nullopt;
}

// ---- rank 4, n = 1..3 -----------------------------------------------------

BigInt rank4_small_n_raw(const FormulaArgs& a) {
  const BigInt K = p2k(a);
  switch (a.n) {
    case 1: return 0;
    // 3 * 2^{k+4}; a 2^{k+2} coefficient disagrees with exhaustive counts for every k >= 4.
    case 2: return 4 * K * K - 48 * K + 128;
    case 3: return 28 * K * K + 2604 * K - 22624;
    default: throw DomainError("rank4-small-n: no line for n = " + std::to_string(a.n));
  }
}

Violation rank4_small_n_domain(const FormulaArgs& a) {
  if (a.i != 4) return std::string("rank must be 4");
  if (a.n < 1 || a.n > 3) return std::string("n must be 1, 2 or 3");
  if (a.k < 5) return std::string("k >= 5 required");
  return std::nullopt;
}

// ---- rank 4, k = 5, 6 -----------------------------------------------------

BigInt rank4_fixed_k_raw(const FormulaArgs& a) {
  const BigInt P = p2n(a);
  switch (a.k) {
    case 5: return poly(P, {31, -45, -322, 816, -480});
    case 6: return poly(P, {31, 515, -2450, 3280, -1376});
    default: throw DomainError("rank4-fixed-k: no line for k = " + std::to_string(a.k));
  }
}

Violation rank4_fixed_k_domain(const FormulaArgs& a) {
  if (a.i != 4) return std::string("rank must be 4");
  if (a.k != 5 && a.k != 6) return std::string("k must be 5 or 6");
  if (a.n < 1) return std::string("n >= 1 required");
  return std::nullopt;
}

// ---- rank 5, n = 1..4 (as published) --------------------------------------

BigInt rank5_small_n_raw(const FormulaArgs& a) {
  const BigInt K = p2k(a);
  switch (a.n) {
    case 1:
    case 2: return 0;
    case 3: return 420 * K * K - 10080 * K + 53760;
    // Printed constant; the consistent value is -11692800 (see gamma_quadruple).
    case 4: return 6300 * K * K + 630000 * K - 116928;
    default: throw DomainError("rank5-small-n: no line for n = " + std::to_string(a.n));
  }
}

Violation rank5_small_n_domain(const FormulaArgs& a) {
  if (a.i != 5) return std::string("rank must be 5");
  if (a.n < 1 || a.n > 4) return std::string("n must be in 1..4");
  if (a.k < 5) return std::string("k >= 5 required");
  return std::nullopt;
}

// ---- rank 5, k = 6 --------------------------------------------------------

BigInt rank5_k6_raw(const FormulaArgs& a) {
  if (a.k != 6) throw DomainError("rank5-k6: only defined at k = 6");
  return poly(p2n(a), {63, -93, -1650, 5040, -4128, 768});
}

Violation rank5_k6_domain(const FormulaArgs& a) {
  if (a.i != 5) return std::string("rank must be 5");
  if (a.k != 6) return std::string("k must be 6");
  if (a.n < 1) return std::string("n >= 1 required");
  return std::nullopt;
}

// ---- full distributions at k = 7, 8 ---------------------------------------

BigInt k7k8_raw(const FormulaArgs& a) {
  const BigInt P = p2n(a);
  if (a.i == 0) return 1;
  if (a.i == 1) return 3 * (P - 1);
  if (a.k == 7) {
    switch (a.i) {
      case 2: return poly(P, {7, 231, -238});
      case 3: return poly(P, {15, 763, -2394, 1616});
      case 4: return poly(P, {31, 1635, -2610, -4080, 5024});
      case 5: return poly(P, {63, 2387, -11970, -9520, 74592, -55552});
      case 6: return poly(P, {127, -189, -7378, 24240, 35168, -166656, 114688});
      case 7: return poly(P, {1, 0, -127, 126, 4960, -13920, -23808, 98304, -65536});
      default: break;
    }
  } else if (a.k == 8) {
    switch (a.i) {
      case 2: return poly(P, {7, 487, -494});
      case 3: return poly(P, {15, 1659, -5082, 3408});
      case 4: return poly(P, {31, 3875, 13454, -67952, 50592});
      case 5: return poly(P, {63, 7347, 28830, -468720, 1092192, -659712});
      case 6: return poly(P, {127, 10227, -52514, -339760, 2548448, -4804352, 2637824});
      case 7: return poly(P, {255, -381, -31122, 105648, 758880, -4617984, 7913472, -4128768});
      case 8:
        return poly(P, {1, 0, -255, 254, 20832, -60512, -451840, 2523136, -4128768, 2097152});
      default: break;
    }
  }
  throw DomainError("k7k8: no line for rank " + std::to_string(a.i) + " at k = " +
                    std::to_string(a.k));
}

Violation k7k8_domain(const FormulaArgs& a) {
  if (a.k != 7 && a.k != 8) return std::string("k must be 7 or 8");
  if (a.n < 1) return std::string("n >= 1 required");
  if (a.i < 0 || a.i > std::min(2 * a.n, a.k)) return std::string("rank must be in 0..min(2n, k)");
  return std::nullopt;
}

// ---- quadruple family -----------------------------------------------------

BigInt quadruple_raw(const FormulaArgs& a) {
  const BigInt K = p2k(a);
  switch (a.i) {
    case 0: return 1;
    case 1: return 45;
    case 2: return poly(K, {30, 1410});
    case 3: return poly(K, {1470, 31920});
    case 4: return poly(K, {140, 42420, 276640});
    case 5: return poly(K, {6300, 630000, -11692800});
    case 6: return poly(K, {120, 123480, -6142080, 66170880});
    case 7: return poly(K, {3720, -416640, 13332480, -121896960});
    case 8: return poly(K, {16, -3840, 286720, -7864320, std::int64_t{1} << 26});
    default: throw DomainError("quadruple: no line for rank " + std::to_string(a.i));
  }
}

Violation quadruple_domain(const FormulaArgs& a) {
  if (a.i < 0 || a.i > 8) return std::string("rank must be in 0..8");
  if (a.k < 4) return std::string("k >= 4 required");
  if (a.i == 4 && a.k < 5) return std::string("rank 4 line requires k >= 5");
  if (a.i == 8 && a.k < 8) return std::string("rank 8 line requires k >= 8");
  return std::nullopt;
}

BigInt quadruple_full_rank_raw(const FormulaArgs& a) {
  const BigInt K = p2k(a);
  BigInt prod = 16;
  for (int j = 1; j <= 4; ++j) prod *= K - pow2(8 - j);
  return prod;
}

Violation quadruple_full_rank_domain(const FormulaArgs& a) {
  if (a.i != 8) return std::string("rank must be 8");
  if (a.k < 8) return std::string("k >= 8 required");
  return std::nullopt;
}

// ---- quadruple table, k = 1..8 --------------------------------------------

constexpr std::array<std::array<std::uint64_t, 9>, 8> kQuadrupleTable{{
    {1, 255},
    {1, 45, 4050},
    {1, 45, 1650, 63840},
    {1, 45, 1890, 55440, 991200},
    {1, 45, 2370, 78960, 1777440, 14918400},
    {1, 45, 3330, 126000, 3564960, 54432000, 210309120},
    {1, 45, 5250, 220080, 8000160, 172166400, 1554739200, 2559836160},
    {1, 45, 9090, 408240, 20311200, 562464000, 8599449600, 146475ULL << 18, 315ULL << 26},
}};

BigInt table_raw(const FormulaArgs& a) {
  if (a.k < 1 || a.k > 8 || a.i < 0 || a.i > a.k) {
    throw DomainError("table: no entry for (i, k) = (" + std::to_string(a.i) + ", " +
                      std::to_string(a.k) + ")");
  }
  return kQuadrupleTable[static_cast<std::size_t>(a.k - 1)][static_cast<std::size_t>(a.i)];
}

Violation table_domain(const FormulaArgs& a) {
  if (a.k < 1 || a.k > 8) return std::string("k must be in 1..8");
  if (a.i < 0 || a.i > a.k) return std::string("rank must be in 0..k");
  return std::nullopt;
}

// ---- mixed 9 x k ----------------------------------------------------------

BigInt mixed9_raw(const FormulaArgs& a) {
  const BigInt K = p2k(a);
  switch (a.i) {
    case 0: return 1;
    case 1: return poly(K, {1, 89});
    case 2: return poly(K, {165, 5550});
    case 3: return poly(K, {30, 13050, 249720});
    case 4: return poly(K, {3710, 698880, 4170880});
    case 5: return poly(K, {140, 241780, 19757920, -378595840});
    case 6: return poly(K, {13980, 8331120, -424945920, 4609105920});
    case 7:
      return poly(K, {120, 591960, -67374720, 2165821440, -(std::int64_t{75675} << 18)});
    case 8:
      return poly(K, {7816, -1875840, 140062720, -3841720320, std::int64_t{977} << 25});
    case 9:
      return poly(K, {16, -7936, 1269760, -81264640, 2080374784, -(std::int64_t{1} << 34)});
    default: throw DomainError("mixed9: no line for rank " + std::to_string(a.i));
  }
}

Violation mixed9_domain(const FormulaArgs& a) {
  if (a.i < 0 || a.i > 9) return std::string("rank must be in 0..9");
  if (a.k < 4) return std::string("k >= 4 required");
  return std::nullopt;
}

BigCount quadruple_or_zero(int i, int k) {
  if (i < 0 || i > std::min(8, k)) return 0;
  return quadruple_gamma(i, k).first;
}

BigInt mixed9_recurrence_raw(const FormulaArgs& a) {
  const BigInt weight = a.i == 0 ? BigInt(0) : pow2(a.k) - pow2(a.i - 1);
  return pow2(a.i) * quadruple_or_zero(a.i, a.k).value() +
         weight * quadruple_or_zero(a.i - 1, a.k).value();
}

Violation mixed9_recurrence_domain(const FormulaArgs& a) {
  if (a.i < 0 || a.i > 9) return std::string("rank must be in 0..9");
  if (a.k < 1) return std::string("k >= 1 required");
  return std::nullopt;
}

struct Entry {
  FormulaInfo info;
  BigInt (*eval)(const FormulaArgs&);
  Violation (*domain)(const FormulaArgs&);
};

const std::array<Entry, 11> kRegistry{{
    {{"general", "rank counts of the [2]*n family, ranks 0..5",
      "0 <= i <= 5, n >= 1, k >= i+1 (k >= 1 for i = 0)",
      "rank lines of the general closed-form system in 2^n, 2^k", true},
     general_raw, general_domain},
    {{"rank4-small-n", "rank-4 count of the [2]*n family for n = 1, 2, 3",
      "i = 4, n in {1,2,3}, k >= 5", "rank-4 lines in 2^k for fixed small n", true},
     rank4_small_n_raw, rank4_small_n_domain},
    {{"rank4-fixed-k", "rank-4 count of the [2]*n family at k = 5, 6",
      "i = 4, k in {5,6}, n >= 1", "rank-4 lines in 2^n for fixed k", true},
     rank4_fixed_k_raw, rank4_fixed_k_domain},
    {{"rank5-small-n", "rank-5 count of the [2]*n family for n = 1..4 (n = 4 line as printed)",
      "i = 5, n in 1..4, k >= 5", "rank-5 lines in 2^k for fixed small n", true},
     rank5_small_n_raw, rank5_small_n_domain},
    {{"rank5-k6", "rank-5 count of the [2]*n family at k = 6", "i = 5, k = 6, n >= 1",
      "rank-5 line in 2^n at k = 6", true},
     rank5_k6_raw, rank5_k6_domain},
    {{"k7k8", "full rank distribution of the [2]*n family at k = 7, 8",
      "k in {7,8}, n >= 1, 0 <= i <= min(2n, k)", "rank lines in 2^n at k = 7 and k = 8", true},
     k7k8_raw, k7k8_domain},
    {{"quadruple", "rank counts of the 8 x k quadruple family",
      "0 <= i <= 8, k >= 4; k >= 5 for i = 4; k >= 8 for i = 8",
      "quadruple rank lines in 2^k", false},
     quadruple_raw, quadruple_domain},
    {{"quadruple-full-rank", "rank-8 count of the quadruple family as a product",
      "i = 8, k >= 8", "2^4 prod_{j=1..4} (2^k - 2^{8-j})", false},
     quadruple_full_rank_raw, quadruple_full_rank_domain},
    {{"table", "tabulated quadruple rank counts", "1 <= k <= 8, 0 <= i <= k",
      "quadruple tables for k = 1..8", false},
     table_raw, table_domain},
    {{"mixed9", "rank counts of the 9 x k [2,2,2,2,1] family", "0 <= i <= 9, k >= 4",
      "mixed 9 x k rank lines in 2^k", false},
     mixed9_raw, mixed9_domain},
    {{"mixed9-recurrence", "9 x k rank counts from quadruple counts",
      "0 <= i <= 9, k >= 1", "2^i Q_i + (2^k - 2^{i-1}) Q_{i-1}", false},
     mixed9_recurrence_raw, mixed9_recurrence_domain},
}};

const Entry& entry(std::string_view id) {
  for (const auto& e : kRegistry) {
    if (e.info.id == id) return e;
  }
  throw StructuralError("unknown formula '" + std::string(id) + "'");
}

std::array<FormulaInfo, kRegistry.size()> make_catalog() {
  std::array<FormulaInfo, kRegistry.size()> out{};
  for (std::size_t i = 0; i < kRegistry.size(); ++i) out[i] = kRegistry[i].info;
  return out;
}

const auto kCatalog = make_catalog();

// coef * 2^exp
struct Term {
  BigInt coef;
  int exp;
};

MomentCheck scaled_check(int order, const RankDistribution& d, const std::vector<Term>& rhs) {
  const int imax = d.max_rank();
  const int base = order * imax;
  int min_exp = 0;
  for (const auto& t : rhs) min_exp = std::min(min_exp, t.exp + base);
  const int extra = -min_exp;

  MomentCheck c;
  c.order = order;
  c.scale_bits = base + extra;
  for (int i = 0; i <= imax; ++i) {
    c.lhs += d.gamma[static_cast<std::size_t>(i)].value() << (order * (imax - i) + extra);
  }
  for (const auto& t : rhs) c.rhs += t.coef << (t.exp + base + extra);
  return c;
}

void require_complete(const RankDistribution& d) {
  if (d.n < 1 || d.k < 1) throw StructuralError("distribution needs n >= 1 and k >= 1");
  const int need_count = d.max_rank() + 1;
  if (static_cast<int>(d.gamma.size()) < need_count) {
    std::vector<int> missing;
    for (int i = static_cast<int>(d.gamma.size()); i < need_count; ++i) missing.push_back(i);
    throw IncompleteSource("rank distribution (n=" + std::to_string(d.n) + ", k=" +
                               std::to_string(d.k) + ")",
                           std::move(missing));
  }
}

}  // namespace

std::span<const FormulaInfo> formula_catalog() noexcept { return kCatalog; }

const FormulaInfo& formula_info(std::string_view id) { return entry(id).info; }

std::optional<std::string> domain_violation(std::string_view id, const FormulaArgs& args) {
  return entry(id).domain(args);
}

BigCount evaluate(std::string_view id, const FormulaArgs& args) {
  const Entry& e = entry(id);
  if (auto why = e.domain(args)) {
    throw DomainError(std::string(id) + ": " + *why);
  }
  return BigCount::from_signed(e.eval(args), id);
}

BigInt evaluate_unchecked(std::string_view id, const FormulaArgs& args) {
  return entry(id).eval(args);
}

BigCount gamma_general(int i, int n, int k) { return evaluate("general", {i, n, k}); }
BigCount gamma_rank4_small_n(int n, int k) { return evaluate("rank4-small-n", {4, n, k}); }
BigCount gamma_rank4_fixed_k(int n, int k) { return evaluate("rank4-fixed-k", {4, n, k}); }
BigCount gamma_rank5_small_n(int n, int k) { return evaluate("rank5-small-n", {5, n, k}); }
BigCount gamma_rank5_k6(int n) { return evaluate("rank5-k6", {5, n, 6}); }
BigCount gamma_k7_k8(int i, int n, int k) { return evaluate("k7k8", {i, n, k}); }
BigCount gamma_quadruple(int i, int k) { return evaluate("quadruple", {i, 4, k}); }
BigCount gamma_quadruple_full_rank(int k) { return evaluate("quadruple-full-rank", {8, 4, k}); }
BigCount gamma_table_small_k(int i, int k) { return evaluate("table", {i, 4, k}); }
BigCount gamma_mixed_9xk(int i, int k) { return evaluate("mixed9", {i, 5, k}); }
BigCount mixed_recurrence(int i, int k) { return evaluate("mixed9-recurrence", {i, 5, k}); }

std::pair<BigCount, Source> quadruple_gamma(int i, int k) {
  const FormulaArgs args{i, 4, k};
  if (!quadruple_domain(args)) return {gamma_quadruple(i, k), Source::ClosedForm};
  if (!table_domain(args)) return {gamma_table_small_k(i, k), Source::BakedTable};
  throw DomainError("quadruple: no table or closed form for (i, k) = (" + std::to_string(i) +
                    ", " + std::to_string(k) + ")");
}

RankDistribution to_distribution(const RankHistogram& hist) {
  const int n = hist.shape.uniform_pairs();
  if (n == 0) {
    throw StructuralError("shape " + hist.shape.to_string() + " is not of the form [2]*n");
  }
  RankDistribution d{n, hist.k, {}, {}};
  for (std::uint64_t c : hist.counts) {
    d.gamma.emplace_back(c);
    d.sources.push_back(hist.source);
  }
  return d;
}

RankDistribution quadruple_distribution(int k) {
  RankDistribution d{4, k, {}, {}};
  for (int i = 0; i <= d.max_rank(); ++i) {
    auto [value, source] = quadruple_gamma(i, k);
    d.gamma.push_back(std::move(value));
    d.sources.push_back(source);
  }
  return d;
}

std::optional<RankDistribution> closed_form_distribution(int n, int k) {
  if (n < 1 || k < 1) return std::nullopt;
  if (n == 4) return quadruple_distribution(k);
  RankDistribution d{n, k, {}, {}};
  const char* id = (k == 7 || k == 8) ? "k7k8" : "general";
  for (int i = 0; i <= d.max_rank(); ++i) {
    if (domain_violation(id, {i, n, k})) return std::nullopt;
    d.gamma.push_back(evaluate(id, {i, n, k}));
    d.sources.push_back(Source::ClosedForm);
  }
  return d;
}

std::array<MomentCheck, 3> moment_identities(const RankDistribution& d) {
  require_complete(d);
  const int n = d.n;
  const int k = d.k;
  const BigInt K = pow2(k);
  return {
      scaled_check(0, d, {{1, (k + 1) * n}}),
      scaled_check(1, d, {{1, n + k * (n - 1)}, {1, (k - 1) * n}, {-1, (k - 1) * n - k}}),
      scaled_check(2, d,
                   {{1, n + k * (n - 2)},
                    {3 * K - 3, -n + k * (n - 2)},
                    {3 * K - 6, -2 * n + k * (n - 2)},
                    {1, -3 * n + k * n},
                    {-6, n * (k - 3) - k},
                    {8, -3 * n + k * (n - 2)}}),
  };
}

std::array<MomentCheck, 3> quadruple_moment_identities(const RankDistribution& d) {
  if (d.n != 4) throw StructuralError("quadruple moments need n = 4");
  require_complete(d);
  const int k = d.k;
  return {
      scaled_check(0, d, {{1, 4 * (k + 1)}}),
      scaled_check(1, d, {{1, 4 * k - 4}, {255, 3 * k - 4}}),
      scaled_check(2, d, {{1, 4 * k - 12}, {405, 3 * k - 11}, {8085, 2 * k - 9}}),
  };
}

}  // namespace persym
