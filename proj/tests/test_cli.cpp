#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "tilecount/catalog.hpp"
#include "tilecount/tcf.hpp"

using namespace tilecount;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "tilecount_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string emit_entry(const std::string& name, const std::string& rep) {
  Result r = run_cli({"catalog", "emit", name, "--rep", rep});
  REQUIRE(r.code == 0);
  return write_file(name + "." + rep + ".tcf", r.out);
}

std::vector<std::string> column(const std::string& out, std::size_t col) {
  std::vector<std::string> v;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    for (std::size_t i = 0; i <= col && std::getline(ls, cell, '\t'); ++i) {
    }
    v.push_back(cell);
  }
  return v;
}

}  // namespace

TEST_CASE("tcf parsing") {
  const char* text =
      "# the figure with two irrational tiles\n"
      "basis alpha in [41/100, 21/50] refine root 1 2 -1;\n"
      "tiles {\n"
      "  epsilon 0;\n"
      "  tile { left 0; right 0; area 1/2 - 1 alpha; }\n"
      "  tile { left 0; right 0; area 1/2 + alpha; }\n"
      "}\n";
  TcfDocument d = parse_tcf(text);
  CHECK(d.kind() == RepKind::Tiles);
  for (long n = 0; n <= 4; ++n) CHECK(eval_document(d, std::size_t(n)) == oracle::choose(2 * n, n));
  std::string once = emit_tcf(d);
  CHECK(emit_tcf(parse_tcf(once)) == once);

  TcfDocument m = parse_tcf("multisum { dims 1; factor { alpha = -1 | n:1 | c:0; beta = 1 | n:0 | c:0; } }");
  CHECK(eval_document(m, 10) == 89);
  TcfDocument g = parse_tcf("gf { expr \"Q(x1+x2)\"; vars 2; }");
  CHECK(eval_document(g, 3) == 20);
  TcfDocument t = parse_tcf(
      "basis a in [1/10, 2/10] refine table [3/20, 2/10] signed;\n"
      "multisum { dims 1; factor { alpha = 0 | n:1 | c:0; beta = 1 | n:0 | c:0; } bound 0 lo = n:0 c:0 hi = n:1 c:0; }");
  CHECK(t.basis->symbol(0).allow_nonpositive);
  std::string e = emit_tcf(t);
  CHECK(e.find("refine table [3/20, 1/5] signed") != std::string::npos);
  CHECK(emit_tcf(parse_tcf(e)) == e);
}

TEST_CASE("tcf errors") {
  auto code = [](const char* text) {
    try {
      parse_tcf(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Cancelled;
  };
  CHECK(code("") == ErrorCode::SyntaxError);
  CHECK(code("tiles {") == ErrorCode::SyntaxError);
  CHECK(code("tiles { tile { left 0; right 0; } }") == ErrorCode::SyntaxError);
  CHECK(code("tiles { tile { left 0; right 0; area 1 beta; } }") == ErrorCode::SyntaxError);
  CHECK(code("gf { vars 1; }") == ErrorCode::SyntaxError);
  CHECK(code("gf { expr \"Q(Q(x1))\"; }") == ErrorCode::NonzeroConstInQuasiInv);
  CHECK(code("multisum { dims 2; factor { alpha = 1 | n:0 | c:0; beta = 0 0 | n:0 | c:0; } }") ==
        ErrorCode::SyntaxError);
  CHECK(code("gf { expr \"x1\"; } gf { expr \"x1\"; }") == ErrorCode::SyntaxError);
  CHECK(code("tiles { epsilon 1 $; }") == ErrorCode::SyntaxError);
}

TEST_CASE("round trip of every catalog entry") {
  for (const CatalogEntry& e : catalog_entries()) {
    std::vector<TcfDocument> docs;
    if (e.tiles) docs.push_back(make_document(*e.tiles));
    if (e.gf) docs.push_back(make_document(*e.gf));
    if (e.multisum) docs.push_back(make_document(*e.multisum));
    for (const TcfDocument& d : docs) {
      std::string text = emit_tcf(d);
      TcfDocument back = parse_tcf(text);
      CHECK(emit_tcf(back) == text);
      for (std::size_t n = 0; n <= 10; ++n) CHECK_MESSAGE(eval_document(back, n) == e.oracle(n), e.name << " " << n);
    }
  }
}

TEST_CASE("eval") {
  std::string g6 = emit_entry("g6", "gf");
  Result r = run_cli({"eval", "-i", g6, "--n0", "0", "--n1", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\t1\n1\t2\n2\t6\n3\t20\n");

  std::string fib = emit_entry("g5", "tiles");
  r = run_cli({"eval", "--input", fib, "--n0", "1", "--n1", "5"});
  CHECK(column(r.out, 1) == std::vector<std::string>{"1", "2", "3", "5", "8"});

  std::string empty = write_file("empty-tiles.tcf", "tiles { epsilon 0; }\n");
  r = run_cli({"eval", "-i", empty, "--n0", "1", "--n1", "2"});
  CHECK(r.out == "1\t0\n2\t0\n");

  r = run_cli({"eval", "-i", fib, "--n0", "3", "--n1", "4", "--bfile"});
  CHECK(r.out == "3 3\n4 5\n");
  CHECK(run_cli({"eval", "-i", fib, "--n0", "4", "--n1", "3"}).code == cli::kInputError);
  CHECK(run_cli({"eval", "-i", fib, "--rep", "gf"}).code == cli::kInputError);
  CHECK(run_cli({"eval", "-i", "/nonexistent.tcf"}).code == cli::kInputError);
}

TEST_CASE("convert") {
  std::string fib = emit_entry("g5", "tiles");
  Result r = run_cli({"convert", "-i", fib, "--from", "tiles", "--to", "multisum"});
  REQUIRE(r.code == 0);
  TcfDocument m = parse_tcf(r.out);
  CHECK(m.kind() == RepKind::Multisum);
  std::string fibm = write_file("fib-multisum.tcf", r.out);
  Result v = run_cli({"verify", "-i", fib, "-i", fibm, "--upto", "10"});
  CHECK(v.code == 0);

  std::string g6 = emit_entry("g6", "gf");
  r = run_cli({"convert", "-i", g6, "--to", "tiles"});
  REQUIRE(r.code == 0);
  TcfDocument t = parse_tcf(r.out);
  for (long n = 0; n <= 3; ++n) CHECK(eval_document(t, std::size_t(n)) == oracle::choose(2 * n, n));

  std::string unbounded =
      write_file("unbounded.tcf", "multisum { dims 1; factor { alpha = 1 | n:0 | c:0; beta = 0 | n:0 | c:0; } }\n");
  r = run_cli({"convert", "-i", unbounded, "--to", "gf"});
  CHECK(r.code == cli::kResourceLimit);
  CHECK(r.err.find("UNBOUNDED_SUPPORT") != std::string::npos);
  std::string broken = write_file("broken.tcf", "multisum { dims 1;\n");
  CHECK(run_cli({"convert", "-i", broken, "--to", "gf"}).code == cli::kInputError);

  std::string apery = emit_entry("apery", "multisum");
  r = run_cli({"convert", "-i", apery, "--to", "gf"});
  CHECK(r.code == cli::kResourceLimit);
  CHECK(r.err.find("SIZE_LIMIT") != std::string::npos);
  CHECK(run_cli({"convert", "-i", fib, "--from", "gf", "--to", "tiles"}).code == cli::kInputError);
}

TEST_CASE("verify") {
  std::string fib = emit_entry("g5", "tiles");
  std::string fibm = emit_entry("g5", "multisum");
  std::string lucas = emit_entry("lucas", "multisum");
  Result r = run_cli({"verify", "-i", fib, "-i", fibm, "--upto", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS: equal for n = 0..10") != std::string::npos);
  r = run_cli({"verify", fib, lucas, "--upto", "10"});
  CHECK(r.code == cli::kVerifyFailed);
  CHECK(r.out.find("first divergence at n = 2 (2 vs 3)") != std::string::npos);
  CHECK(run_cli({"verify", fib, fib}).code == 0);
  CHECK(run_cli({"verify", fib}).code == cli::kInputError);
}

TEST_CASE("catalog commands") {
  Result r = run_cli({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == long(catalog_entries().size()));
  CHECK(r.out.find("delannoy\tgf,multisum") != std::string::npos);
  CHECK(run_cli({"catalog", "emit", "apery", "--rep", "tiles"}).code == cli::kInputError);
  CHECK(run_cli({"catalog", "emit", "missing"}).code == cli::kInputError);
  CHECK(run_cli({"catalog"}).code == cli::kInputError);
}

TEST_CASE("asymp") {
  std::string cb = emit_entry("central-binomial", "gf");
  Result r = run_cli({"asymp", "-i", cb, "--upto", "400"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lambda 4") != std::string::npos);
  CHECK(r.out.find("overall: exponential") != std::string::npos);

  std::string sq = emit_entry("g3", "multisum");
  r = run_cli({"asymp", "-i", sq, "--upto", "60"});
  CHECK(r.out.find("eventually-polynomial, degree 2") != std::string::npos);

  std::string hypo = emit_entry("hypo-128", "multisum");
  r = run_cli({"asymp", "-i", hypo, "--upto", "120"});
  REQUIRE(r.code == 0);
  HypoSum h = hypo_build({4}, {2, 1, 1}, Rational(1, 2), 128);
  double target = h.normalized(400).get_d();
  std::size_t at = r.out.find("  A ");
  REQUIRE(at != std::string::npos);
  double a = std::stod(r.out.substr(at + 4));
  CHECK(std::fabs(a / target - 1) < 0.02);

  r = run_cli({"asymp", "-i", sq, "--upto", "40", "--mod", "2"});
  CHECK(r.code == cli::kResourceLimit);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == cli::kInputError);
  CHECK(run_cli({"frobnicate"}).code == cli::kInputError);
  CHECK(run_cli({"eval"}).code == cli::kInputError);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(cli::exit_code_for(ErrorCode::SignUndecided) == cli::kPrecision);
  CHECK(cli::exit_code_for(ErrorCode::SizeLimit) == cli::kResourceLimit);
  CHECK(cli::exit_code_for(ErrorCode::SyntaxError) == cli::kInputError);
}
