#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kw1/cli.hpp"
#include "kw1/errors.hpp"
#include "kw1/io.hpp"
#include "nlohmann/json.hpp"
#include "support.hpp"

using namespace kw1;
using namespace kw1::test;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kSl2Doc = R"({
  "name": "sl2",
  "basis": ["h", "e", "f"],
  "brackets": [
    {"left": "h", "right": "e", "result": {"e": "2"}},
    {"left": "h", "right": "f", "result": {"f": "-2"}},
    {"left": "e", "right": "f", "result": {"h": "1"}}
  ]
})";

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3", "t") == 3);
  CHECK(parse_rational("-4/6", "t") == mpq_class(-2, 3));
  CHECK_THROWS_AS(parse_rational("1/0", "t"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2", "t"), ParseError);
  CHECK_THROWS_AS(parse_rational("0.5", "t"), ParseError);
  CHECK_THROWS_AS(parse_rational("", "t"), ParseError);
}

TEST_CASE("parsing input documents") {
  const auto sl2 = parse_input_text(kSl2Doc);
  CHECK(sl2.dim() == 3);
  CHECK(sl2.constant(0, 1, 1) == 2);
  CHECK(sl2.constant(0, 2, 2) == -2);
  CHECK(sl2.constant(1, 2, 0) == 1);
  CHECK(sl2 == builtin_example("sl2"));

  const auto r = builtin_example("remark:2:3");
  CHECK(r.constant(0, 1, 1) == 2);
  CHECK(r.constant(0, 2, 2) == 3);
  CHECK(r.constant(1, 2, 0) == 0);
  CHECK(r.constant(1, 2, 1) == 0);
  CHECK(r.constant(1, 2, 2) == 0);

  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x","y"],"brackets":[{"left":"x","right":"w","result":{"y":"1"}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x","x"],"brackets":[]})"), DuplicateLabel);
  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x","y","z"],"brackets":[
      {"left":"x","right":"y","result":{"z":"1"}},{"left":"x","right":"z","result":{"x":"1"}}]})"),
                  JacobiError);
  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x"],"brackets":[],"extra":1})"), ParseError);
  CHECK_THROWS_AS(parse_input_text("{not json"), ParseError);
  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x","y"],"brackets":[
      {"left":"x","right":"y","result":{"y":"1"}},{"left":"y","right":"x","result":{"y":"1"}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_input_text(R"({"name":"a","basis":["x y"],"brackets":[]})"), ParseError);
  CHECK_THROWS_AS(parse_input_file("/nonexistent/kw1.json"), InputError);

  const auto o = parse_input_text(R"({"name":"h","basis":["x","y","z"],
      "brackets":[{"left":"x","right":"y","result":{"z":"1"}}],"pmapOverride":{"z":{"z":"1"}}})");
  CHECK(o.pmap_override.at(2).at(2) == 1);
}

TEST_CASE("builtins round-trip through the input format") {
  CHECK_NOTHROW(validate_builtins());
  for (const std::string name : {"abelian:1", "abelian:4", "nonabelian2", "heisenberg", "sl2", "gl2", "borel2",
                                 "remark:1:1", "remark:1:2", "remark:2:3", "remark:5:7"}) {
    const auto pres = builtin_example(name);
    CHECK(parse_input_text(render_input(pres)) == pres);
    CHECK(render_input(parse_input_text(render_input(pres))) == render_input(pres));
  }
  auto with_override = builtin_example("heisenberg");
  with_override.pmap_override[2][2] = mpq_class(1, 2);
  CHECK(parse_input_text(render_input(with_override)) == with_override);
  CHECK_THROWS_AS(builtin_example("remark:2:4"), ParseError);
  CHECK_THROWS_AS(builtin_example("abelian:0"), ParseError);
  CHECK_THROWS_AS(builtin_example("sl3"), ParseError);
  CHECK(builtin_names().size() == 7);
}

TEST_CASE("registry dimensions and indices") {
  for (const auto& [name, dim, ind] : std::vector<std::tuple<std::string, std::size_t, std::size_t>>{
           {"remark:1:1", 3, 1}, {"abelian:4", 4, 4}, {"gl2", 4, 2}, {"sl2", 3, 1}}) {
    const auto pres = builtin_example(name);
    CHECK(pres.dim() == dim);
    CHECK(index_generic(rational_algebra(pres), 3, 0).index == ind);
  }
}

TEST_CASE("config validation") {
  CHECK(parse_prime_list("3,5, 7") == std::vector<std::uint32_t>{3, 5, 7});
  CHECK_THROWS_AS(parse_prime_list("3;5"), ParseError);
  RunConfig cfg;
  CHECK_THROWS_AS(validate_config(cfg), InputError);
  cfg.primes = parse_prime_list("3,4");
  CHECK_THROWS_AS(validate_config(cfg), InputError);
  cfg.primes = {3};
  CHECK_NOTHROW(validate_config(cfg));
  cfg.degree_bound = 0;
  CHECK_THROWS_AS(validate_config(cfg), InputError);
  cfg.degree_bound.reset();
  cfg.samples = 0;
  CHECK_THROWS_AS(validate_config(cfg), InputError);
  CHECK(parse_format("md") == Format::Markdown);
  CHECK_THROWS_AS(parse_format("xml"), InputError);
}

TEST_CASE("run orchestrates primes in order") {
  RunConfig cfg;
  cfg.primes = {5, 3};
  const auto out = run(cfg, builtin_example("sl2"));
  CHECK(out.exit_code == 0);
  REQUIRE(out.reports.size() == 2);
  CHECK(out.reports[0].p == 5);
  CHECK(out.reports[1].p == 3);
  for (const auto& r : out.reports) {
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.m_lower == r.p);
  }
  cfg.primes = {3};
  cfg.degree_bound = 1;
  const auto inc = run(cfg, builtin_example("remark:1:1"));
  CHECK(inc.exit_code == 2);
  CHECK(inc.reports[0].rank == 1);
  CHECK(inc.reports[0].m_upper_text == "sqrt(27)");
  CHECK_FALSE(inc.reports[0].m_upper.has_value());
}

TEST_CASE("exit codes by error class") {
  CHECK(exit_code_for(ParseError("x", "y")) == 1);
  CHECK(exit_code_for(DimensionCap(10, 5)) == 1);
  CHECK(exit_code_for(DegreeBoundTooLargeForMemory(10, 5)) == 1);
  CHECK(exit_code_for(NotRestrictable(0)) == 1);
  CHECK(exit_code_for(std::logic_error("bug")) == 3);
  CHECK(exit_code_for(SplitBudgetExceeded(4)) == 3);
  auto pres = builtin_example("heisenberg");
  CHECK(exit_code_for(CentralityFailure(0, 1), &pres) == 3);
  pres.pmap_override[2][0] = 1;
  CHECK(exit_code_for(CentralityFailure(0, 1), &pres) == 1);
}

TEST_CASE("cli: check verdicts and exit codes") {
  const auto ok = cli({"check", "--example", "sl2", "--primes", "3,5", "--oracle"});
  CHECK(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["tool"] == "kw1");
  REQUIRE(j["reports"].size() == 2);
  for (const auto& r : j["reports"]) {
    CHECK(r["verdict"] == "verified");
    CHECK(r["mLower"] == r["p"]);
  }
  CHECK(cli({"check", "--example", "remark:1:1", "--primes", "3", "--degree-bound", "1"}).code == 2);
  CHECK(cli({"check", "--example", "nosuch"}).code == 1);
  CHECK(cli({"check", "--example", "sl2", "--primes", "4"}).code == 1);
  CHECK(cli({"check", "--input", "/nonexistent.json"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
}

TEST_CASE("cli: center lists the x^i y^j elements") {
  const auto r = cli({"center", "--example", "remark:1:1", "--prime", "3", "--degree-bound", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"x*y^2\"") != std::string::npos);
  CHECK(r.out.find("\"x^2*y\"") != std::string::npos);
  CHECK(r.out.find("\"h^3 + 2*h\"") != std::string::npos);
}

TEST_CASE("cli: other subcommands") {
  CHECK(cli({"index", "--example", "gl2"}).code == 0);
  CHECK(cli({"index", "--example", "gl2", "--prime", "5"}).code == 0);
  CHECK(cli({"pmap", "--example", "sl2", "--prime", "5"}).code == 0);
  CHECK(cli({"rank", "--example", "remark:1:1", "--prime", "3", "--phi", "x", "--psi", "y"}).code == 0);
  CHECK(cli({"rank", "--example", "remark:1:1", "--prime", "3", "--phi", "h", "--psi", "y"}).code != 0);
  CHECK(cli({"oracle", "--example", "heisenberg", "--prime", "3", "--samples", "2"}).code == 0);
  const auto l = cli({"lemma1", "--vars", "2", "-g", "x", "--prime", "3"});
  CHECK(l.code == 0);
  CHECK(nlohmann::json::parse(l.out)["rank"] == 3);
  CHECK(cli({"examples"}).code == 0);
  const auto md = cli({"check", "--example", "heisenberg", "--primes", "3", "--format", "md"});
  CHECK(md.out.find("| algebraName | p |") != std::string::npos);
  const auto csv = cli({"check", "--example", "heisenberg", "--primes", "3", "--format", "csv"});
  CHECK(csv.out.find("verified") != std::string::npos);
}

TEST_CASE("cli: identical runs give byte-identical output") {
  const std::vector<std::string> args = {"check", "--example", "remark:1:2", "--primes", "3,5", "--seed", "7"};
  const auto a = cli(args), b = cli(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("definingPolynomial") != std::string::npos);
}

TEST_CASE("cli: --out and the memo cache") {
  const auto dir = std::filesystem::temp_directory_path() / "kw1_test_cache";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto file = (dir / "report.json").string();
  CHECK(cli({"check", "--example", "heisenberg", "--primes", "3", "--out", file}).code == 0);
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(nlohmann::json::parse(buf.str())["reports"].size() == 1);

  const auto env = envelope("sl2", 5);
  const auto pres = builtin_example("sl2");
  env.U().multiply(env.U().parse("e^4"), env.U().parse("f^4*h"));
  save_memo(env, pres, dir.string());
  const auto fresh = envelope("sl2", 5);
  load_memo(fresh, pres, dir.string());
  CHECK(fresh.U().memo_size() == env.U().memo_size());
  CHECK(fresh.U().multiply(fresh.U().parse("e^4"), fresh.U().parse("f^4*h")) ==
        env.U().multiply(env.U().parse("e^4"), env.U().parse("f^4*h")));
  std::filesystem::remove_all(dir);
}
