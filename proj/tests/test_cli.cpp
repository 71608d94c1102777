#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "autostruct/aut_format.hpp"
#include "autostruct/builtins.hpp"
#include "autostruct/cli.hpp"
#include "autostruct/compiler.hpp"
#include "structure_oracles.hpp"

using namespace autostruct;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (fs::path(AUTOSTRUCT_FIXTURES) / name).string(); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "autostruct_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("decide prints the truth value and exits 0 or 1") {
  const auto pres = fixture("presburger.astruct");
  auto r = run({"decide", pres, "A x. E y. (Le(x,y) & ~x=y)"});
  CHECK(r.code == exit_true);
  CHECK(r.out == "true\n");
  r = run({"decide", pres, "E x. A y. Le(y,x)"});
  CHECK(r.code == exit_false);
  CHECK(r.out == "false\n");

  auto file = scratch("sentence.fo");
  write_text_file(file, "A x. A y. E z. Add(x, y, z)\n");
  r = run({"decide", pres, "-f", file.string()});
  CHECK(r.code == exit_true);
}

TEST_CASE("decide on a hand-written manifest") {
  const auto evens = fixture("evens.astruct");
  CHECK(run({"decide", evens, "A x. E y. Lt(x, y)"}).code == exit_true);
  CHECK(run({"decide", evens, "E x. A y. Le(x, y)"}).code == exit_true);
  CHECK(run({"decide", evens, "E x. E y. (Lt(x, y) & E z. (Lt(x, z) & Lt(z, y)))"}).code == exit_true);
  auto r = run({"witness", evens, "Lt(x, y)", "-n", "2"});
  // Length-lex on convolutions, where the pad sorts after every letter.
  CHECK(r.out == "x=\"\" y=\"11\"\nx=\"11\" y=\"1111\"\n");
  r = run({"analyze", "order", evens});
  CHECK(contains(r.out, "cnf: 0 1\n"));
}

TEST_CASE("decide errors exit 2") {
  const auto pres = fixture("presburger.astruct");
  auto r = run({"decide", pres, "A x. (Le(x"});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "column 11"));
  CHECK(r.out.empty());

  r = run({"decide", pres, "A x. A y. E z. (Add(x, y, z) & E u. Add(z, z, u))", "--state-cap", "5"});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "in subformula: Add(x, y, z)"));

  CHECK(run({"decide", pres, "Le(x, y)"}).code == exit_error);
  CHECK(run({"decide", pres, "A x. Nope(x)"}).code == exit_error);
  CHECK(run({"decide", pres}).code == exit_error);
  CHECK(run({"decide", fixture("missing.astruct"), "A x. x = x"}).code == exit_error);
  CHECK(run({}).code == exit_error);
  CHECK(run({"frobnicate"}).code == exit_error);
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.code == exit_true);
  CHECK(contains(r.out, "decide"));
  r = run({"decide", "--help"});
  CHECK(r.code == exit_true);
  CHECK(contains(r.out, "--state-cap"));
}

TEST_CASE("compile writes a reloadable automaton") {
  const auto pres = fixture("presburger.astruct");
  const auto out = scratch("parity.aut");
  const std::string parity = "E[2,0] z. (Le(x, z) & Le(z, y) & ~z = y)";
  auto r = run({"compile", pres, parity, "-o", out.string()});
  REQUIRE(r.code == exit_true);
  CHECK(contains(r.out, "variables: x y"));

  auto p = presburger();
  auto loaded = relation_from_aut(load_aut(out), p.base());
  CHECK(loaded == *compile(p, parity).relation);

  // Even count of z with x <= z < y.
  for (unsigned x = 0; x < 10; ++x) {
    const unsigned y = (x * 7 + 3) % 12;
    const bool expect = x > y || (y - x) % 2 == 0;
    CHECK(loaded.contains({p.parse_element(oracle::lsb(x)), p.parse_element(oracle::lsb(y))}) == expect);
  }
}

TEST_CASE("compile refuses sentences and writes stable DOT") {
  const auto pres = fixture("presburger.astruct");
  auto r = run({"compile", pres, "A x. Le(x, x)", "-o", scratch("s.aut").string()});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "use decide"));

  const auto a = scratch("a.dot"), b = scratch("b.dot");
  CHECK(run({"compile", pres, "E z. Add(x, z, y)", "-o", scratch("le.aut").string(), "--dot", a.string()}).code ==
        exit_true);
  CHECK(run({"compile", pres, "E z. Add(x, z, y)", "-o", scratch("le.aut").string(), "--dot", b.string()}).code ==
        exit_true);
  CHECK(read_text_file(a) == read_text_file(b));
  CHECK(contains(read_text_file(a), "digraph"));
}

TEST_CASE("witness lists least tuples") {
  const auto pres = fixture("presburger.astruct");
  auto r = run({"witness", pres, "Add(x,x,y)", "--count", "2"});
  CHECK(r.code == exit_true);
  CHECK(r.out == "x=\"" + oracle::lsb(0) + "\" y=\"" + oracle::lsb(0) + "\"\nx=\"" + oracle::lsb(1) + "\" y=\"" +
                     oracle::lsb(2) + "\"\n");

  r = run({"witness", pres, "Add(x,x,y) & ~x = x"});
  CHECK(r.code == exit_false);
  CHECK(r.out.empty());

  r = run({"witness", pres, "Add(x,x,y)", "--count", "0"});
  CHECK(r.code == exit_true);
  CHECK(r.out.empty());
}

TEST_CASE("analyze order") {
  auto r = run({"analyze", "order", fixture("omega2.astruct")});
  CHECK(r.code == exit_true);
  CHECK(r.out == "linear: true\ndense: false\ncb_rank: 2\nscattered: true\nordinal: true\ncnf: 0 0 1\n");

  r = run({"analyze", "order", fixture("rationals.astruct")});
  CHECK(r.code == exit_true);
  CHECK(contains(r.out, "cb_rank: 0\n"));
  CHECK(contains(r.out, "ordinal: false\n"));
  CHECK_FALSE(contains(r.out, "cnf:"));

  r = run({"analyze", "order", fixture("wordtree.astruct")});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "failed axiom: totality"));

  r = run({"analyze", "order", fixture("omega2.astruct"), "--iter-cap", "1"});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "iteration cap"));
}

TEST_CASE("analyze tree") {
  const auto path = scratch("path.aut");
  auto r = run({"analyze", "tree", fixture("wordtree.astruct"), "--path", path.string()});
  CHECK(r.code == exit_true);
  CHECK(r.out == "tree: true\nfinitely_branching: true\ninfinite: true\nkoenig_path: " + path.string() + "\n");
  auto p = word_tree();
  auto loaded = relation_from_aut(load_aut(path), p.base());
  // 0* written out directly.
  AutFile zero_star = parse_aut("alphabet: 0 1\nstates: 1\ninitial: 0\naccepting: 0\ntrans: 0 0 -> 0\n");
  CHECK(loaded == relation_from_aut(zero_star, p.base()));

  r = run({"analyze", "tree", fixture("rationals.astruct")});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "failed axiom: root"));
}

TEST_CASE("analyze ba") {
  auto r = run({"analyze", "ba", fixture("bomega.astruct")});
  CHECK(r.code == exit_true);
  CHECK(r.out == "boolean_algebra: true\nba_index: 1\n");
  r = run({"analyze", "ba", fixture("bomega2.astruct")});
  CHECK(r.code == exit_true);
  CHECK(contains(r.out, "ba_index: 2\n"));

  r = run({"analyze", "ba", fixture("presburger.astruct")});
  CHECK(r.code == exit_error);
  CHECK(contains(r.err, "failed axiom: signature"));
  CHECK(r.out.empty());
}

TEST_CASE("reports are byte-stable and exit codes stay in range") {
  const std::vector<std::vector<std::string>> calls = {
      {"decide", fixture("presburger.astruct"), "A x. Le(x, x)"},
      {"decide", fixture("presburger.astruct"), "A x. ~Le(x, x)"},
      {"witness", fixture("presburger.astruct"), "Le(x, y)", "-n", "5"},
      {"analyze", "order", fixture("omega2.astruct")},
      {"analyze", "tree", fixture("wordtree.astruct")},
      {"analyze", "ba", fixture("bomega.astruct")},
      {"analyze", "ba", fixture("wordtree.astruct")},
      {"analyze", fixture("bomega.astruct")},
      {"compile", fixture("presburger.astruct"), "Le(x, y)"},
  };
  for (const auto& c : calls) {
    auto a = run(c), b = run(c);
    CHECK(a.code >= 0);
    CHECK(a.code <= 2);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
