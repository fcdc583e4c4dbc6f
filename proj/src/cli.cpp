#include "persym/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "persym/bigcount.hpp"
#include "persym/checkpoint.hpp"
#include "persym/errors.hpp"
#include "persym/forms.hpp"
#include "persym/persym.hpp"
#include "persym/polysys.hpp"

namespace persym::cli {

namespace {

using json = nlohmann::ordered_json;

struct GlobalOptions {
  std::string format = "json";
  bool no_timing = false;
  bool progress = false;
  int jobs = 1;
};

struct Report {
  std::string command;
  json params = json::object();
  json payload = json::object();
  std::set<std::string> sources;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kOk;
};

struct Check {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass;
};

std::string str(const BigInt& v) { return v.str(); }
std::string str(const BigCount& v) { return v.to_string(); }

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

ProgressSink progress_sink(const GlobalOptions& g, std::ostream& err) {
  if (!g.progress) return {};
  return [&err](std::uint64_t done, std::uint64_t total) {
    err << "progress " << done << "/" << total << '\n';
  };
}

void add_checks(Report& r, const std::vector<Check>& checks, const json& probes) {
  json list = json::array();
  int passed = 0;
  int failed = 0;
  for (const auto& c : checks) {
    list.push_back({{"check", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
    r.csv_rows.push_back({c.name, c.lhs, c.rhs, c.pass ? "pass" : "FAIL"});
    (c.pass ? passed : failed)++;
  }
  r.csv_header = {"check", "lhs", "rhs", "result"};
  r.payload["checks"] = list;
  if (!probes.empty()) r.payload["threshold_probes"] = probes;
  r.payload["passed"] = passed;
  r.payload["failed"] = failed;
  if (failed > 0) r.exit_code = kCheckFailed;
}

std::vector<Shape> shapes_from(const std::string& shape_text, const std::string& n_text) {
  std::vector<Shape> shapes;
  if (!shape_text.empty()) shapes.push_back(Shape::parse(shape_text));
  if (!n_text.empty()) {
    for (int n : parse_int_list(n_text)) shapes.push_back(Shape::uniform(n));
  }
  if (shapes.empty()) throw std::invalid_argument("--shape or --n is required");
  return shapes;
}

std::string describe(const Shape& shape, int k) {
  return "shape=" + shape.to_string() + " k=" + std::to_string(k);
}

// ---- enumerate ------------------------------------------------------------

struct EnumerateArgs {
  std::string shape;
  int k = 0;
  std::string checkpoint_dir;
  std::uint64_t chunks = 64;
};

Report cmd_enumerate(const EnumerateArgs& a, const GlobalOptions& g, std::ostream& err) {
  Report r;
  r.command = "enumerate";
  const Shape shape = Shape::parse(a.shape);
  r.params = {{"shape", shape.to_string()}, {"k", a.k}, {"jobs", g.jobs}};
  const SweepOptions options{g.jobs, progress_sink(g, err), budget_bits(kDefaultSweepBudgetBits)};

  std::optional<RankHistogram> hist;
  if (!a.checkpoint_dir.empty()) {
    r.params["checkpoint_dir"] = a.checkpoint_dir;
    r.params["chunks"] = a.chunks;
    if (a.chunks == 0) throw std::invalid_argument("--chunks must be >= 1");
    auto sweep = resumable_sweep(shape, a.k, a.chunks, a.checkpoint_dir, options);
    err << "checkpoint: " << sweep.chunks_resumed << " chunks resumed, " << sweep.chunks_computed
        << " computed\n";
    hist = std::move(sweep.histogram);
  } else {
    hist = enumerate_histogram(shape, a.k, options);
  }

  json counts = json::array();
  r.csv_header = {"rank", "count"};
  for (std::size_t i = 0; i < hist->counts.size(); ++i) {
    counts.push_back(std::to_string(hist->counts[i]));
    r.csv_rows.push_back({std::to_string(i), std::to_string(hist->counts[i])});
  }
  r.payload = {{"shape", shape.to_string()},
               {"k", a.k},
               {"coeff_bits", shape.coeff_bits(a.k)},
               {"counts", counts},
               {"total", std::to_string(hist->total())}};
  r.sources.insert(std::string(to_string(Source::Enumerated)));
  return r;
}

// ---- formula --------------------------------------------------------------

struct FormulaCmdArgs {
  std::string family;
  int i = 0;
  std::optional<int> n;
  int k = 0;
};

int fixed_n(std::string_view id) { return id.starts_with("mixed9") ? 5 : 4; }

Report cmd_formula(const FormulaCmdArgs& a) {
  Report r;
  r.command = "formula";
  const FormulaInfo& info = formula_info(a.family);
  if (info.uses_n && !a.n) throw std::invalid_argument("--n is required for family " + a.family);
  const FormulaArgs args{a.i, info.uses_n ? *a.n : fixed_n(info.id), a.k};
  r.params = {{"family", a.family}, {"i", a.i}};
  if (info.uses_n) r.params["n"] = args.n;
  r.params["k"] = a.k;

  const BigCount value = evaluate(a.family, args);
  r.payload = {{"family", a.family}, {"value", value.to_string()}, {"domain", info.domain},
               {"anchor", info.anchor}};
  r.sources.insert(std::string(
      to_string(info.id == "table" ? Source::BakedTable : Source::ClosedForm)));
  r.csv_header = {"family", "i", "n", "k", "value"};
  r.csv_rows.push_back({a.family, std::to_string(a.i), info.uses_n ? std::to_string(args.n) : "",
                        std::to_string(a.k), value.to_string()});
  return r;
}

Report cmd_formula_list() {
  Report r;
  r.command = "formula list";
  json list = json::array();
  r.csv_header = {"id", "domain", "anchor"};
  for (const auto& f : formula_catalog()) {
    list.push_back({{"id", f.id},
                    {"quantity", f.quantity},
                    {"domain", f.domain},
                    {"anchor", f.anchor},
                    {"uses_n", f.uses_n}});
    r.csv_rows.push_back({std::string(f.id), std::string(f.domain), std::string(f.anchor)});
  }
  r.payload["formulas"] = list;
  return r;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string shape;
  std::string n;
  std::string k;
  std::string q;
  std::string family;
  bool brute = false;
  bool enumerate = false;
};

void moment_checks(const std::string& label, const std::array<MomentCheck, 3>& ms,
                   std::vector<Check>& out) {
  for (const auto& m : ms) {
    out.push_back({label + " moment q=" + std::to_string(m.order) + " (x2^" +
                       std::to_string(m.scale_bits) + ")",
                   str(m.lhs), str(m.rhs), m.holds()});
  }
}

void verify_moments(const VerifyArgs& a, const GlobalOptions& g, std::ostream& err, Report& r,
                    std::vector<Check>& checks) {
  if (a.family == "quadruple") {
    const std::vector<int> ks = parse_int_list(a.k.empty() ? "4..20" : a.k);
    for (int k : ks) {
      const RankDistribution d = quadruple_distribution(k);
      for (Source s : d.sources) r.sources.insert(std::string(to_string(s)));
      moment_checks("quadruple k=" + std::to_string(k), moment_identities(d), checks);
      moment_checks("quadruple k=" + std::to_string(k) + " 2^k-form",
                    quadruple_moment_identities(d), checks);
    }
    return;
  }
  if (!a.family.empty()) throw std::invalid_argument("moments: unknown --family " + a.family);
  if (a.k.empty()) throw std::invalid_argument("--k is required");
  const SweepOptions options{g.jobs, progress_sink(g, err), budget_bits(kDefaultSweepBudgetBits)};
  for (const Shape& shape : shapes_from(a.shape, a.n)) {
    for (int k : parse_int_list(a.k)) {
      const RankHistogram hist = enumerate_histogram(shape, k, options);
      r.sources.insert(std::string(to_string(Source::Enumerated)));
      moment_checks(describe(shape, k), moment_identities(to_distribution(hist)), checks);
    }
  }
}

std::vector<std::string_view> formulas_for(const Shape& shape) {
  if (shape == Shape({2, 2, 2, 2, 1})) return {"mixed9", "mixed9-recurrence"};
  if (shape.uniform_pairs() == 0) return {};
  std::vector<std::string_view> ids{"general",       "rank4-small-n", "rank4-fixed-k",
                                    "rank5-small-n", "rank5-k6",      "k7k8"};
  if (shape.n() == 4) {
    ids.insert(ids.end(), {"quadruple", "quadruple-full-rank", "table"});
  }
  return ids;
}

// Compares every registered line that applies to (shape, k) with the
// enumerated counts. Lines outside their declared domain, but inside it for
// some larger k, are reported as threshold probes and never fail the run.
void formula_vs_counts(const Shape& shape, int k, const std::vector<std::uint64_t>& counts,
                       std::vector<Check>& checks, json& probes) {
  const int n = shape.uniform_pairs() != 0 ? shape.n() : 5;
  const auto observed = [&](int i) -> BigInt {
    return i < static_cast<int>(counts.size()) ? BigInt(counts[static_cast<std::size_t>(i)])
                                               : BigInt(0);
  };
  for (std::string_view id : formulas_for(shape)) {
    for (int i = 0; i <= 9; ++i) {
      const FormulaArgs args{i, n, k};
      const bool in_domain = !domain_violation(id, args);
      bool probe_worthy = false;
      if (!in_domain) {
        for (int later = k + 1; later <= 64 && !probe_worthy; ++later) {
          probe_worthy = !domain_violation(id, {i, n, later});
        }
        if (!probe_worthy) continue;
      }
      const std::string name = std::string(id) + " i=" + std::to_string(i) + " " +
                               describe(shape, k);
      std::optional<BigInt> value;
      std::string failure;
      try {
        value = evaluate_unchecked(id, args);
      } catch (const DomainError& e) {
        failure = e.what();
      }
      if (in_domain) {
        checks.push_back({name, value ? str(*value) : failure, str(observed(i)),
                          value && *value == observed(i)});
      } else if (value) {
        probes.push_back({{"check", name},
                          {"formula", str(*value)},
                          {"enumerated", str(observed(i))},
                          {"holds", *value == observed(i)}});
      }
    }
  }
}

void verify_formula_vs_enum(const VerifyArgs& a, const GlobalOptions& g, std::ostream& err,
                            Report& r, std::vector<Check>& checks, json& probes) {
  if (a.k.empty()) throw std::invalid_argument("--k is required");
  const SweepOptions options{g.jobs, progress_sink(g, err), budget_bits(kDefaultSweepBudgetBits)};
  for (const Shape& shape : shapes_from(a.shape, a.n)) {
    if (formulas_for(shape).empty()) {
      throw std::invalid_argument("no closed forms are registered for shape " + shape.to_string());
    }
    for (int k : parse_int_list(a.k)) {
      const RankHistogram hist = enumerate_histogram(shape, k, options);
      r.sources.insert(std::string(to_string(Source::Enumerated)));
      formula_vs_counts(shape, k, hist.counts, checks, probes);
    }
  }
}

void verify_recurrence(const VerifyArgs& a, const GlobalOptions& g, std::ostream& err, Report& r,
                       std::vector<Check>& checks) {
  const std::vector<int> ks = parse_int_list(a.k.empty() ? "4..12" : a.k);
  r.sources.insert(std::string(to_string(Source::ClosedForm)));
  const Shape mixed({2, 2, 2, 2, 1});
  for (int k : ks) {
    std::optional<RankHistogram> hist;
    if (a.enumerate) {
      hist = enumerate_histogram(
          mixed, k, {g.jobs, progress_sink(g, err), budget_bits(kDefaultSweepBudgetBits)});
      r.sources.insert(std::string(to_string(Source::Enumerated)));
    }
    for (int i = 0; i <= 9; ++i) {
      const std::string tag = "i=" + std::to_string(i) + " k=" + std::to_string(k);
      const BigCount rec = mixed_recurrence(i, k);
      const BigCount closed = gamma_mixed_9xk(i, k);
      checks.push_back({"recurrence vs mixed9 " + tag, rec.to_string(), closed.to_string(),
                        rec == closed});
      if (hist) {
        const BigCount seen = i < static_cast<int>(hist->counts.size())
                                  ? BigCount(hist->counts[static_cast<std::size_t>(i)])
                                  : BigCount(0);
        checks.push_back({"mixed9 vs enumeration " + tag, closed.to_string(), seen.to_string(),
                          closed == seen});
      }
    }
  }
}

// (q, n, k) grid with q (k + 2n) <= 30 for brute-force versus formula.
std::vector<std::array<int, 3>> brute_grid() {
  std::vector<std::array<int, 3>> grid;
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 6; ++k) grid.push_back({1, n, k});
  }
  for (int k = 1; k <= 4; ++k) grid.push_back({2, 2, k});
  for (int k = 1; k <= 8; ++k) grid.push_back({2, 1, k});
  for (int k = 1; k <= 4; ++k) grid.push_back({3, 1, k});
  return grid;
}

void verify_r_identities(const VerifyArgs& a, const GlobalOptions& g, Report& r,
                         std::vector<Check>& checks) {
  r.sources.insert(std::string(to_string(Source::BakedTable)));
  r.sources.insert(std::string(to_string(Source::ClosedForm)));
  for (int q : parse_int_list(a.q.empty() ? "1..8" : a.q)) {
    const auto routes = r_q41_identity(q);
    const std::string tag = "R(q=" + std::to_string(q) + ",n=4,k=1)";
    checks.push_back({tag + " rank-sum vs closed", routes[0].to_string(), routes[1].to_string(),
                      routes[0] == routes[1]});
    checks.push_back({tag + " closed vs table formula", routes[1].to_string(),
                      routes[2].to_string(), routes[1] == routes[2]});
  }
  for (int k : parse_int_list(a.k.empty() ? "3..8" : a.k)) {
    const BigCount closed = r_q4_k_closed(k);
    const BigCount via = r_formula(4, quadruple_distribution(k));
    checks.push_back({"R(q=4,n=4,k=" + std::to_string(k) + ") closed vs formula",
                      closed.to_string(), via.to_string(), closed == via});
  }
  if (a.brute) {
    r.sources.insert(std::string(to_string(Source::Enumerated)));
    const int bits = budget_bits(kDefaultBruteBudgetBits);
    for (const auto& [q, n, k] : brute_grid()) {
      const BigCount brute = r_bruteforce(q, n, k, bits, g.jobs);
      const BigCount via =
          r_formula(q, enumerate_histogram(Shape::uniform(n), k, {g.jobs, {}, budget_bits(kDefaultSweepBudgetBits)}));
      checks.push_back({"R(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ",k=" +
                            std::to_string(k) + ") brute vs formula",
                        brute.to_string(), via.to_string(), brute == via});
    }
  }
}

void verify_landsberg(const VerifyArgs& a, Report& r, std::vector<Check>& checks) {
  r.sources.insert(std::string(to_string(Source::ClosedForm)));
  for (int q : parse_int_list(a.q.empty() ? "1..8" : a.q)) {
    BigInt sum = 0;
    for (int l = 0; l <= std::min(8, q); ++l) sum += landsberg_count(8, q, l).value();
    checks.push_back({"sum_l L(8," + std::to_string(q) + ",l) vs 2^(8q)", str(sum),
                      str(pow2(8 * q)), sum == pow2(8 * q)});
    const BigCount rank1 = landsberg_count(8, q, 1);
    const BigInt expect = (pow2(8) - 1) * (pow2(q) - 1);
    checks.push_back({"L(8," + std::to_string(q) + ",1) vs (2^8-1)(2^q-1)", rank1.to_string(),
                      str(expect), rank1.value() == expect});
  }
}

Report cmd_verify(const VerifyArgs& a, const GlobalOptions& g, std::ostream& err) {
  Report r;
  r.command = "verify";
  r.params = {{"suite", a.suite}};
  for (const auto& [key, value] : std::initializer_list<std::pair<const char*, const std::string*>>{
           {"shape", &a.shape}, {"n", &a.n}, {"k", &a.k}, {"q", &a.q}, {"family", &a.family}}) {
    if (!value->empty()) r.params[key] = *value;
  }
  if (a.brute) r.params["brute"] = true;
  if (a.enumerate) r.params["enumerate"] = true;

  std::vector<Check> checks;
  json probes = json::array();
  if (a.suite == "moments") {
    verify_moments(a, g, err, r, checks);
  } else if (a.suite == "formula-vs-enum") {
    verify_formula_vs_enum(a, g, err, r, checks, probes);
  } else if (a.suite == "recurrence") {
    verify_recurrence(a, g, err, r, checks);
  } else if (a.suite == "r-identities") {
    verify_r_identities(a, g, r, checks);
  } else if (a.suite == "landsberg") {
    verify_landsberg(a, r, checks);
  } else {
    throw std::invalid_argument("unknown suite '" + a.suite + "'");
  }
  r.payload["suite"] = a.suite;
  add_checks(r, checks, probes);
  return r;
}

// ---- count-solutions ------------------------------------------------------

struct CountArgs {
  int q = 0;
  int n = 0;
  int k = 0;
  std::string method = "formula";
};

Report cmd_count_solutions(const CountArgs& a, const GlobalOptions& g, std::ostream& err) {
  Report r;
  r.command = "count-solutions";
  r.params = {{"q", a.q}, {"n", a.n}, {"k", a.k}, {"method", a.method}};
  r.payload = {{"q", a.q}, {"n", a.n}, {"k", a.k}};
  r.csv_header = {"method", "value"};

  std::optional<BigCount> formula;
  std::optional<BigCount> brute;
  if (a.method == "brute" || a.method == "both") {
    brute = r_bruteforce(a.q, a.n, a.k, budget_bits(kDefaultBruteBudgetBits), g.jobs);
    r.sources.insert(std::string(to_string(Source::Enumerated)));
  }
  if (a.method == "formula" || a.method == "both") {
    std::optional<RankDistribution> dist = closed_form_distribution(a.n, a.k);
    if (!dist) {
      dist = to_distribution(enumerate_histogram(
          Shape::uniform(a.n), a.k,
          {g.jobs, progress_sink(g, err), budget_bits(kDefaultSweepBudgetBits)}));
    }
    for (Source s : dist->sources) r.sources.insert(std::string(to_string(s)));
    formula = r_formula(a.q, *dist);
  }
  if (!formula && !brute) throw std::invalid_argument("--method must be formula, brute or both");
  if (formula) {
    r.payload["formula"] = formula->to_string();
    r.csv_rows.push_back({"formula", formula->to_string()});
  }
  if (brute) {
    r.payload["brute"] = brute->to_string();
    r.csv_rows.push_back({"brute", brute->to_string()});
  }
  if (formula && brute) {
    r.payload["agree"] = *formula == *brute;
    if (!(*formula == *brute)) r.exit_code = kCheckFailed;
  }
  return r;
}

// ---- output ---------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Report& r, const GlobalOptions& g, std::int64_t elapsed_ms, std::ostream& out) {
  if (g.format == "csv") {
    const auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    };
    line(r.csv_header);
    for (const auto& row : r.csv_rows) line(row);
    return;
  }
  std::string source;
  for (const auto& s : r.sources) source += (source.empty() ? "" : "+") + s;
  json doc = {{"schema", kSchemaVersion},
              {"command", r.command},
              {"params", r.params},
              {"payload", r.payload},
              {"source", source}};
  if (!g.no_timing) doc["elapsed_ms"] = elapsed_ms;
  out << doc.dump(2) << '\n';
}

}  // namespace

int budget_bits(int fallback) {
  const char* env = std::getenv(kBudgetEnvVar);
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return parse_int(env);
  } catch (const std::invalid_argument&) {
    return fallback;
  }
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    if (const std::size_t dots = item.find(".."); dots != std::string_view::npos) {
      const int lo = parse_int(item.substr(0, dots));
      const int hi = parse_int(item.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty range '" + std::string(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(item));
    }
    pos = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank enumeration of persymmetric matrices over F2"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timing", g.no_timing, "Omit elapsed_ms from the report");
  app.add_flag("--progress", g.progress, "Print sweep progress to stderr");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive rank histogram of a shape");
  enumerate->add_option("--shape", ea.shape, "Block heights, e.g. 2,2,2,2")->required();
  enumerate->add_option("--k", ea.k, "Columns")->required();
  enumerate->add_option("--checkpoint-dir", ea.checkpoint_dir, "Persist and resume chunks here");
  enumerate->add_option("--chunks", ea.chunks, "Chunk count for checkpointed sweeps");

  FormulaCmdArgs fa;
  auto* formula = app.add_subcommand("formula", "Evaluate a closed form");
  formula->require_subcommand(0, 1);
  auto* formula_list = formula->add_subcommand("list", "List registered formulas");
  formula->add_option("--family", fa.family, "Formula id (see `formula list`)");
  formula->add_option("--i", fa.i, "Rank");
  formula->add_option("--n", fa.n, "Block count");
  formula->add_option("--k", fa.k, "Columns");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "moments | formula-vs-enum | recurrence | r-identities | landsberg")
      ->required();
  verify->add_option("--shape", va.shape, "Shape to enumerate");
  verify->add_option("--n", va.n, "Uniform [2]*n shapes, e.g. 1..3");
  verify->add_option("--k", va.k, "Column counts, e.g. 1..8");
  verify->add_option("--q", va.q, "Unknown counts q, e.g. 1..6");
  verify->add_option("--family", va.family, "Formula-level moments: quadruple");
  verify->add_flag("--brute", va.brute, "r-identities: add brute-force versus formula grid");
  verify->add_flag("--enumerate", va.enumerate, "recurrence: also enumerate the 9 x k family");

  CountArgs ca;
  auto* count = app.add_subcommand("count-solutions", "Count solutions of the bilinear system");
  count->add_option("--q", ca.q, "Unknowns Y_1..Y_q")->required();
  count->add_option("--n", ca.n, "Equations")->required();
  count->add_option("--k", ca.k, "deg Y <= k-1")->required();
  count->add_option("--method", ca.method, "formula | brute | both")
      ->check(CLI::IsMember({"formula", "brute", "both"}));

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(reversed);
    Report report;
    if (*enumerate) {
      report = cmd_enumerate(ea, g, err);
    } else if (*formula) {
      if (*formula_list) {
        report = cmd_formula_list();
      } else {
        if (fa.family.empty() || formula->count("--k") == 0) {
          throw std::invalid_argument("formula needs --family and --k (or `formula list`)");
        }
        report = cmd_formula(fa);
      }
    } else if (*verify) {
      report = cmd_verify(va, g, err);
    } else {
      report = cmd_count_solutions(ca, g, err);
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    emit(report, g, elapsed.count(), out);
    return report.exit_code;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kBadArguments;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const IncompleteSource& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
}

}  // namespace persym::cli
