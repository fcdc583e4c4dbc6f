#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "persym/cli.hpp"

using nlohmann::json;
namespace cli = persym::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "persym");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> counts(const json& doc) { return doc.at("payload").at("counts").get<std::vector<std::string>>(); }

struct EnvGuard {
  explicit EnvGuard(const char* value) { ::setenv(cli::kBudgetEnvVar, value, 1); }
  ~EnvGuard() { ::unsetenv(cli::kBudgetEnvVar); }
};

}  // namespace

TEST_CASE("integer list parsing") {
  CHECK(cli::parse_int_list("5") == std::vector<int>{5});
  CHECK(cli::parse_int_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(cli::parse_int_list("1,3,5") == std::vector<int>{1, 3, 5});
  CHECK_THROWS(cli::parse_int_list(""));
  CHECK_THROWS(cli::parse_int_list("4..1"));
  CHECK_THROWS(cli::parse_int_list("a"));
}

TEST_CASE("enumerate reports the histogram with the documented envelope") {
  const auto r = run({"enumerate", "--shape", "2,2,2,2", "--k", "3"});
  REQUIRE(r.code == cli::kOk);
  const json doc = r.doc();
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("command") == "enumerate");
  CHECK(doc.at("params").at("shape") == "2,2,2,2");
  CHECK(doc.at("source") == "Enumerated");
  CHECK(doc.contains("elapsed_ms"));
  CHECK(counts(doc) == std::vector<std::string>{"1", "45", "1650", "63840"});

  CHECK(counts(run({"enumerate", "--shape", "2", "--k", "1"}).doc()) == std::vector<std::string>{"1", "3"});
}

TEST_CASE("csv output flattens the histogram") {
  const auto r = run({"enumerate", "--shape", "2", "--k", "2", "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out == "rank,count\n0,1\n1,3\n2,4\n");
}

TEST_CASE("reports are byte-identical without timing") {
  const std::vector<std::string> args{"verify", "moments", "--shape", "2,2", "--k", "1..4", "--no-timing", "--jobs", "2"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.doc().contains("elapsed_ms"));
  // Worker count does not change the payload.
  auto one = args;
  one.back() = "1";
  CHECK(run(one).doc().at("payload") == a.doc().at("payload"));
}

TEST_CASE("exit codes") {
  CHECK(run({"enumerate", "--shape", "2,2,2,2", "--k", "12"}).code == cli::kBudgetExceeded);
  CHECK(run({"enumerate", "--shape", "2,3", "--k", "2"}).code == cli::kBadArguments);
  CHECK(run({"enumerate", "--shape", "2,2"}).code == cli::kBadArguments);
  CHECK(run({"frobnicate"}).code == cli::kBadArguments);
  CHECK(run({}).code == cli::kBadArguments);
  CHECK(run({"verify", "nope"}).code == cli::kBadArguments);
  CHECK(run({"enumerate", "--shape", "2", "--k", "2", "--format", "xml"}).code == cli::kBadArguments);
  CHECK(run({"--help"}).code == cli::kOk);

  const auto dom = run({"formula", "--family", "general", "--i", "2", "--n", "1", "--k", "2"});
  CHECK(dom.code == cli::kDomainError);
  CHECK(dom.err.find("k >= 3") != std::string::npos);

  const auto brute = run({"count-solutions", "--q", "9", "--n", "4", "--k", "8", "--method", "brute"});
  CHECK(brute.code == cli::kBudgetExceeded);
  CHECK(brute.err.find("2^144") != std::string::npos);
}

TEST_CASE("budget override from the environment") {
  {
    EnvGuard env("8");
    CHECK(cli::budget_bits(40) == 8);
    CHECK(run({"enumerate", "--shape", "2,2", "--k", "3"}).code == cli::kOk);
    CHECK(run({"enumerate", "--shape", "2,2", "--k", "4"}).code == cli::kBudgetExceeded);
  }
  {
    EnvGuard env("not-a-number");
    CHECK(cli::budget_bits(30) == 30);
  }
  CHECK(cli::budget_bits(40) == 40);
}

TEST_CASE("formula subcommand") {
  const auto q = run({"formula", "--family", "quadruple", "--i", "8", "--k", "8"});
  REQUIRE(q.code == cli::kOk);
  CHECK(q.doc().at("payload").at("value") == "21139292160");
  CHECK(q.doc().at("source") == "ClosedForm");

  const auto m = run({"formula", "--family", "mixed9", "--i", "1", "--k", "10"});
  CHECK(m.doc().at("payload").at("value") == "1113");

  const auto t = run({"formula", "--family", "table", "--i", "4", "--k", "4"});
  CHECK(t.doc().at("payload").at("value") == "991200");
  CHECK(t.doc().at("source") == "BakedTable");

  const auto list = run({"formula", "list"});
  REQUIRE(list.code == cli::kOk);
  const json formulas = list.doc().at("payload").at("formulas");
  CHECK(formulas.size() >= 10);
  for (const auto& f : formulas) {
    CHECK(f.contains("id"));
    CHECK(f.contains("domain"));
    CHECK(f.contains("anchor"));
  }
  CHECK(run({"formula", "--family", "none", "--i", "1", "--k", "4"}).code == cli::kBadArguments);
}

TEST_CASE("verify suites") {
  const auto r = run({"verify", "r-identities", "--q", "1..6"});
  CHECK(r.code == cli::kOk);
  const json p = r.doc().at("payload");
  CHECK(p.at("failed") == 0);
  CHECK(p.at("passed").get<int>() > 0);
  for (const auto& c : p.at("checks")) {
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
  }

  CHECK(run({"verify", "moments", "--shape", "2,2", "--k", "4"}).code == cli::kOk);
  CHECK(run({"verify", "moments", "--family", "quadruple", "--k", "4..20"}).code == cli::kOk);
  CHECK(run({"verify", "landsberg"}).code == cli::kOk);
  CHECK(run({"verify", "recurrence"}).code == cli::kOk);
  CHECK(run({"verify", "formula-vs-enum", "--n", "1..2", "--k", "1..6"}).code == cli::kOk);

  // The printed rank-5 constant for four blocks does not survive enumeration.
  const auto typo = run({"verify", "formula-vs-enum", "--shape", "2,2,2,2", "--k", "5"});
  CHECK(typo.code == cli::kCheckFailed);
  int failed = 0;
  const json typo_doc = typo.doc();
  for (const auto& c : typo_doc.at("payload").at("checks")) {
    if (!c.at("pass").get<bool>()) {
      ++failed;
      CHECK(c.at("check").get<std::string>().rfind("rank5-small-n", 0) == 0);
      CHECK(c.at("rhs") == "14918400");
    }
  }
  CHECK(failed == 1);
}

TEST_CASE("count-solutions") {
  const auto f = run({"count-solutions", "--q", "4", "--n", "4", "--k", "1", "--method", "formula"});
  REQUIRE(f.code == cli::kOk);
  CHECK(f.doc().at("payload").at("formula") == "4546625536");

  const auto both = run({"count-solutions", "--q", "1", "--n", "1", "--k", "1", "--method", "both"});
  REQUIRE(both.code == cli::kOk);
  CHECK(both.doc().at("payload").at("formula") == "5");
  CHECK(both.doc().at("payload").at("brute") == "5");
  CHECK(both.doc().at("payload").at("agree") == true);

  // No closed form covers n = 2, k = 3 at every rank: the formula route enumerates.
  const auto e = run({"count-solutions", "--q", "2", "--n", "2", "--k", "3", "--method", "both"});
  REQUIRE(e.code == cli::kOk);
  CHECK(e.doc().at("payload").at("agree") == true);
}

TEST_CASE("property: decimal strings in reports round-trip") {
  const auto r = run({"enumerate", "--shape", "2,2,2", "--k", "4", "--no-timing"});
  REQUIRE(r.code == cli::kOk);
  const json doc = r.doc();
  unsigned long long total = 0;
  for (const auto& s : counts(doc)) {
    CHECK(std::to_string(std::stoull(s)) == s);
    total += std::stoull(s);
  }
  CHECK(std::to_string(total) == doc.at("payload").at("total").get<std::string>());
  CHECK(json::parse(doc.dump()) == doc);
}
