#include <doctest.h>

#include <filesystem>
#include <map>
#include <random>

#include "autostruct/aut_format.hpp"
#include "autostruct/builtins.hpp"
#include "autostruct/constructions.hpp"
#include "autostruct/error.hpp"
#include "autostruct/growth.hpp"
#include "autostruct/manifest.hpp"
#include "autostruct/turing.hpp"
#include "fixtures.hpp"
#include "structure_oracles.hpp"

using namespace autostruct;

namespace {

std::vector<std::string> texts(const Presentation& p, std::size_t max_len) {
  std::vector<std::string> out;
  for (const auto& w : oracle::words_upto(p.base()->size(), max_len))
    if (p.domain().contains({w})) out.push_back(p.format_element(w));
  return out;
}

std::string ones(std::size_t n) { return std::string(n, '1'); }

void check_relations_inside_domain(const Presentation& p) {
  for (const auto& sym : p.signature()) {
    INFO(sym.name);
    CHECK(subtract(p.relation(sym.name), p.domain_power(sym.arity)).empty());
  }
}

}  // namespace

TEST_CASE("presburger matches binary arithmetic") {
  auto p = presburger();
  CHECK(p.holds("Add", {"01", "11", "101"}));
  for (unsigned a = 0; a < 24; ++a)
    for (unsigned b = 0; b < 24; ++b) {
      CHECK(p.holds("Add", {oracle::lsb(a), oracle::lsb(b), oracle::lsb(a + b)}));
      CHECK_FALSE(p.holds("Add", {oracle::lsb(a), oracle::lsb(b), oracle::lsb(a + b + 1)}));
      CHECK(p.holds("Le", {oracle::lsb(a), oracle::lsb(b)}) == (a <= b));
    }
  // Non-canonical words are outside the domain.
  CHECK_FALSE(p.domain().contains({p.parse_element("10")}));
  CHECK_FALSE(p.domain().contains({p.parse_element("")}));
  CHECK_FALSE(p.holds("Add", {"10", "1", "01"}));
  for (const auto& w : oracle::words_upto(2, 7))
    CHECK(p.domain().contains({w}) == oracle::lsb_value(p.format_element(w)).has_value());
  check_relations_inside_domain(p);
}

TEST_CASE("presburger axioms decide true") {
  auto p = presburger();
  CHECK(decide(p, "A x. A y. A z. (Add(x,y,z) -> Add(y,x,z))"));
  CHECK(decide(p, "A x. A y. E z. Add(x,y,z)"));
  CHECK(decide(p, "A x. A y. A z. A u. A v. A w. ((Add(x,y,u) & Add(u,z,v) & Add(y,z,w)) -> Add(x,w,v))"));
  CHECK(decide(p, "A x. A y. A z. A u. A v. ((Le(x,y) & Add(x,z,u) & Add(y,z,v)) -> Le(u,v))"));
  CHECK(decide(p, "A x. E y. (Le(x,y) & ~x = y & A z. ((Le(x,z) & ~x = z) -> Le(y,z)))"));
  CHECK_FALSE(decide(p, "E x. A y. Le(y,x)"));
  CHECK(decide(p, "A x. EI y. Le(x,y)"));
  CHECK(decide(p, "A x. (Add(x,\"0\",x))"));
  // Interval parity
  auto even = compile(p, "E[2,0] z. (Le(x,z) & Le(z,y))");
  CHECK(even.relation->contains({p.parse_element("01"), p.parse_element("101")}));
  for (unsigned a = 0; a < 12; ++a)
    for (unsigned b = 0; b < 12; ++b) {
      const unsigned size = a <= b ? b - a + 1 : 0;
      CHECK(even.relation->contains({p.parse_element(oracle::lsb(a)), p.parse_element(oracle::lsb(b))}) ==
            (size % 2 == 0));
    }
}

TEST_CASE("weak divisibility") {
  auto p = weak_div();
  for (unsigned w = 0; w < 40; ++w)
    for (unsigned v = 0; v < 40; ++v) {
      const bool power = w != 0 && (w & (w - 1)) == 0;
      CHECK(p.holds("Div", {oracle::lsb(w), oracle::lsb(v)}) == (power && v % w == 0));
    }
  CHECK(decide(p, "A v. Div(\"1\", v)"));
  CHECK(decide(p, "A w. A v. ((Div(w,v) & Div(w,\"1\")) -> w = \"1\")"));
}

TEST_CASE("word tree relations") {
  auto p = word_tree();
  CHECK(p.holds("Le", {"01", "011"}));
  CHECK(p.holds("Left", {"01", "010"}));
  CHECK(p.holds("Right", {"01", "011"}));
  for (const auto& x : texts(p, 4))
    for (const auto& y : texts(p, 4)) {
      CHECK(p.holds("Le", {x, y}) == (y.rfind(x, 0) == 0));
      CHECK(p.holds("Left", {x, y}) == (y == x + "0"));
      CHECK(p.holds("Right", {x, y}) == (y == x + "1"));
      CHECK(p.holds("EqL", {x, y}) == (x.size() == y.size()));
    }
  CHECK(decide(p, "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))"));
  CHECK(decide(p, "A x. A y. ((Le(x,y) & Le(y,x)) -> x = y)"));
  CHECK(decide(p, "A x. Le(\"\", x)"));
}

TEST_CASE("rationals are dense without endpoints") {
  auto p = rationals();
  for (const auto& x : texts(p, 4))
    for (const auto& y : texts(p, 4)) {
      // std::string order is lexicographic with a prefix first.
      CHECK(p.holds("Le", {x, y}) == (x <= y));
    }
  CHECK(decide(p, "A x. A y. ((Le(x,y) & ~x = y) -> E z. (Le(x,z) & Le(z,y) & ~z = x & ~z = y))"));
  CHECK(decide(p, "A x. E y. (Le(x,y) & ~x = y)"));
  CHECK(decide(p, "A x. E y. (Le(y,x) & ~x = y)"));
  CHECK(decide(p, "A x. A y. (Le(x,y) | Le(y,x))"));
}

TEST_CASE("unary orders") {
  auto p = unary_order();
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(p.holds("Le", {ones(a), ones(b)}) == (a <= b));
      CHECK(p.holds("S", {ones(a), ones(b)}) == (b == a + 1));
    }
  auto m = unary_mod(3);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) CHECK(m.holds("Cong", {ones(a), ones(b)}) == (a % 3 == b % 3));
  CHECK(decide(p, "A x. A y. (Le(x,y) | Le(y,x))"));
  CHECK(decide(p, "A x. E y. S(x,y)"));
  CHECK_THROWS_AS(unary_mod(0), InvalidArgument);
}

TEST_CASE("bomega operations follow set semantics") {
  auto p = bomega();
  const std::size_t width = 6;
  std::vector<std::string> elems;
  for (const auto& w : oracle::words_upto(5, 4)) {
    const auto s = p.format_element(w);
    CHECK(p.domain().contains({w}) == oracle::bomega_canonical(s));
    if (oracle::bomega_canonical(s)) elems.push_back(s);
  }
  auto val = [&](const std::string& s) { return oracle::bomega_value(s, width); };
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      oracle::Subset join = val(x), meet = val(x);
      for (std::size_t i = 0; i < width; ++i) {
        join.bits[i] = val(x).bits[i] || val(y).bits[i];
        meet.bits[i] = val(x).bits[i] && val(y).bits[i];
      }
      join.cofinite = val(x).cofinite || val(y).cofinite;
      meet.cofinite = val(x).cofinite && val(y).cofinite;
      for (const auto& z : elems) {
        CHECK(p.holds("Join", {x, y, z}) == (val(z) == join));
        CHECK(p.holds("Meet", {x, y, z}) == (val(z) == meet));
      }
    }
    for (const auto& y : elems) {
      oracle::Subset c = val(x);
      c.cofinite = !c.cofinite;
      c.bits.flip();
      CHECK(p.holds("Compl", {x, y}) == (val(y) == c));
    }
  }
  CHECK(p.holds("Zero", {""}));
  CHECK(p.holds("One", {"W"}));
  CHECK(decide(p, "A x. A y. E z. Join(x,y,z)"));
  CHECK(decide(p, "A x. E y. Compl(x,y)"));
  check_relations_inside_domain(p);
}

TEST_CASE("ordinal encodings order blocks and tuples") {
  for (const auto& cnf : std::vector<std::vector<unsigned>>{{3, 2}, {0, 0, 1}, {1, 1, 1}, {2}, {0, 1, 0, 1}}) {
    auto p = ordinal(cnf);
    INFO(cnf.size());
    const auto elems = texts(p, 5);
    for (const auto& w : oracle::words_upto(p.base()->size(), 4))
      CHECK(p.domain().contains({w}) == oracle::ordinal_value(p.format_element(w), cnf).has_value());
    for (const auto& x : elems)
      for (const auto& y : elems)
        CHECK(p.holds("Le", {x, y}) == (*oracle::ordinal_value(x, cnf) <= *oracle::ordinal_value(y, cnf)));
    CHECK(decide(p, "A x. A y. (Le(x,y) | Le(y,x))"));
  }
  CHECK(language_size(ordinal({5}).domain_dfa()) == 5u);
  CHECK(ordinal({0}).domain().empty());
  CHECK_THROWS_AS(ordinal({1, 0}), InvalidArgument);
  CHECK_THROWS_AS(ordinal({}), InvalidArgument);
}

TEST_CASE("builtin registry") {
  for (const char* name : {"presburger", "weak_div", "word_tree", "rationals", "unary_order", "bomega",
                           "unary_mod(2)", "unary_mod:4", "ordinal(3,2)", "ordinal:0,0,1", "bomega(2)"}) {
    INFO(name);
    auto p = builtin(name);
    CHECK_FALSE(p.signature().empty());
    check_relations_inside_domain(p);
  }
  CHECK_THROWS_AS(builtin("nonsense"), InvalidArgument);
  CHECK_THROWS_AS(builtin("presburger(1)"), InvalidArgument);
  CHECK_THROWS_AS(builtin("ordinal(1,0)"), InvalidArgument);
  CHECK_THROWS_AS(builtin("bomega(0)"), InvalidArgument);
  CHECK(builtin("bomega(1)").domain() == bomega().domain());
  CHECK(builtin("bomega:2").domain() == product_presentation(bomega(), bomega()).domain());
  CHECK(builtin_names().size() == 9);
}

TEST_CASE("product presentation is componentwise") {
  auto u = unary_order();
  auto p = product_presentation(u, u);
  auto pair = [&](std::size_t a, std::size_t b) {
    return interleave(p, u, u, u.parse_element(ones(a)), u.parse_element(ones(b)));
  };
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      CHECK(p.domain().contains({pair(a, b)}));
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d) {
          CHECK(p.relation("Le").contains({pair(a, b), pair(c, d)}) == (a <= c && b <= d));
          CHECK(p.relation("S").contains({pair(a, b), pair(c, d)}) == (c == a + 1 && d == b + 1));
        }
    }
  // Exactly the interleavings are in the domain.
  std::size_t count = 0;
  for (const auto& w : oracle::words_upto(p.base()->size(), 6)) count += p.domain().contains({w});
  CHECK(count == 16);  // pairs with max length <= 3
  CHECK(decide(p, "A x. A y. ((Le(x,y) & Le(y,x)) -> x = y)"));
  CHECK_FALSE(decide(p, "A x. A y. (Le(x,y) | Le(y,x))"));
  check_relations_inside_domain(p);
}

TEST_CASE("product with a one-point structure keeps the theory") {
  auto q = rationals();
  auto base = q.base();
  Presentation one(base, Dfa::single_word(base, base->parse_word("1")));
  one.add_relation("Le", RegularRelation::full(base, 2));
  auto p = product_presentation(q, one);
  for (const char* s : {"A x. A y. ((Le(x,y) & ~x = y) -> E z. (Le(x,z) & Le(z,y) & ~z = x & ~z = y))",
                        "A x. E y. (Le(x,y) & ~x = y)", "E x. A y. Le(x,y)", "A x. A y. (Le(x,y) | Le(y,x))"}) {
    INFO(s);
    CHECK(decide(p, s) == decide(q, s));
  }
  CHECK_THROWS_AS(product_presentation(q, unary_order()), InvalidArgument);
}

TEST_CASE("bomega squared is a Boolean algebra") {
  auto b = bomega();
  auto p = product_presentation(b, b);
  CHECK(decide(p, "A x. A y. E z. Join(x,y,z)"));
  CHECK(decide(p, "A x. A y. A z. (Join(x,y,z) -> Join(y,x,z))"));
  CHECK(decide(p, "E x. E y. (Zero(x) & One(y) & Compl(x,y))"));
}

TEST_CASE("disjoint union and ordered sum") {
  auto w = ordinal({0, 1});
  auto three = ordinal({3});
  auto u = disjoint_union(w, three);
  CHECK(decide(u, "A x. A y. A z. ((Le(x,y) & Le(y,z)) -> Le(x,z))"));
  CHECK_FALSE(decide(u, "A x. A y. (Le(x,y) | Le(y,x))"));
  CHECK(decide(u, "E x. E y. E z. (~x = y & ~y = z & ~x = z & A v. ((Le(x,v) | Le(v,x)) -> (v = x | v = y | v = z)))"));
  auto s = ordered_sum(w, three);
  CHECK(decide(s, "A x. A y. (Le(x,y) | Le(y,x))"));
  CHECK(decide(s, "E x. A y. Le(y,x)"));
  auto z = fixture::zeta();
  CHECK(decide(z, "A x. A y. (Le(x,y) | Le(y,x))"));
  CHECK_FALSE(decide(z, "E x. A y. Le(y,x)"));
  CHECK_FALSE(decide(z, "E x. A y. Le(x,y)"));
  check_relations_inside_domain(s);
}

TEST_CASE("lexicographic product of omega with itself is omega squared") {
  auto w = ordinal({0, 1});
  auto p = lexicographic_product(w, w);
  auto elem = [&](unsigned a, unsigned b) {
    return interleave(p, w, w, w.parse_element("." + ones(a)), w.parse_element("." + ones(b)));
  };
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b)
      for (unsigned c = 0; c < 4; ++c)
        for (unsigned d = 0; d < 4; ++d)
          CHECK(p.relation("Le").contains({elem(a, b), elem(c, d)}) == (a < c || (a == c && b <= d)));
  CHECK(decide(p, "A x. A y. (Le(x,y) | Le(y,x))"));
}

TEST_CASE("quotient representatives match brute force") {
  std::mt19937 rng(11);
  auto base = Alphabet::make({"a", "b"});
  const auto all = oracle::words_upto(2, 6);
  for (int round = 0; round < 12; ++round) {
    auto d = oracle::random_dfa(rng, base, 1 + round % 4);
    auto domain = minimize(round % 3 == 0 ? oracle::random_dfa(rng, base, 3, 0.6) : Dfa::universal(base));
    Presentation p(base, domain);
    auto e = fixture::state_equivalence(base, d);
    auto q = quotient(p, e);
    for (const auto& x : all) {
      bool rep = oracle::run(domain, x);
      for (const auto& y : all) {
        if (!rep || !oracle::llex_less(y, x)) break;
        if (oracle::run(domain, y) && d.run(y) == d.run(x)) rep = false;
      }
      CHECK(q.domain().contains({x}) == rep);
    }
  }
}

TEST_CASE("quotient modes and checks") {
  auto m = unary_mod(2);
  auto q = quotient(m, m.relation("Cong"));
  CHECK(enumerate(q.domain_dfa(), 5).size() == 2);
  CHECK(q.holds("Le", {"", "1"}));
  CHECK_FALSE(q.holds("S", {"1", ""}));
  QuotientOptions lift;
  lift.mode = QuotientMode::lift;
  auto l = quotient(m, m.relation("Cong"), lift);
  CHECK(l.holds("S", {"1", ""}));
  CHECK(l.holds("Le", {"1", ""}));
  QuotientOptions strict;
  strict.require_congruence = true;
  try {
    quotient(m, m.relation("Cong"), strict);
    FAIL("Cong is not a congruence for Le");
  } catch (const PreconditionFailed& e) {
    CHECK(e.axiom() == "congruence Le");
  }
  try {
    quotient(m, m.relation("Le"));
    FAIL("Le is not symmetric");
  } catch (const PreconditionFailed& e) {
    CHECK(e.axiom() == "symmetry");
  }
  try {
    quotient(m, m.relation("S"));
    FAIL("S is not reflexive");
  } catch (const PreconditionFailed& e) {
    CHECK(e.axiom() == "reflexivity");
  }

  auto r = rationals();
  auto eq = intersect(equality_relation(r.base()), r.domain_power(2));
  auto same = quotient(r, eq, {QuotientMode::restrict, true, {}});
  CHECK(same.domain() == r.domain());
  CHECK(same.relation("Le") == r.relation("Le"));
  auto again = quotient(same, eq);
  CHECK(again.relation("Le") == same.relation("Le"));
}

TEST_CASE("configuration spaces follow the machine") {
  const char* text = R"(# moves right over 1s, writes 1 on the first blank, halts
tape: B 1
blank: B
states: q0 h
initial: q0
halt: h
trans q0 1 -> q0 1 R
trans q0 B -> h 1 R
)";
  auto tm = parse_turing_machine(text);
  auto p = tm_config_space(tm);
  CHECK(decide(p, "A x. A y. A z. ((Edge(x,y) & Edge(x,z)) -> y = z)"));

  auto c = initial_configuration(tm, {"1", "1", "1"});
  int steps = 0;
  while (true) {
    auto next = oracle::tm_step(tm, c);
    const auto w = encode_configuration(p, tm, c);
    REQUIRE(p.domain().contains({w}));
    auto succ = compile(p, "Edge(\"" + p.format_element(w) + "\", y)");
    auto found = enumerate(succ.relation->dfa(), 2);
    if (!next) {
      CHECK(found.empty());
      break;
    }
    REQUIRE(found.size() == 1);
    CHECK(found[0] == encode_configuration(p, tm, *next));
    c = *next;
    ++steps;
  }
  CHECK(steps == 4);
  CHECK(p.format_element(encode_configuration(p, tm, c)) == "1 1 1 1 h B");
}

TEST_CASE("configuration spaces on random machines match the simulator") {
  std::mt19937 rng(5);
  for (int round = 0; round < 10; ++round) {
    TuringMachine tm;
    tm.tape = {"B", "0", "1"};
    tm.blank = "B";
    tm.states = {"p", "q", "r", "h"};
    tm.initial = "p";
    tm.halting = {"h"};
    for (const char* s : {"p", "q", "r"})
      for (const auto& a : tm.tape) {
        if (std::bernoulli_distribution(0.15)(rng)) continue;
        TuringMachine::Rule rule;
        rule.state = s;
        rule.read = a;
        rule.next = tm.states[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
        rule.write = tm.tape[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
        rule.move = std::bernoulli_distribution(0.5)(rng) ? 'L' : 'R';
        tm.rules.push_back(rule);
      }
    auto tm2 = parse_turing_machine(format_turing_machine(tm));
    auto p = tm_config_space(tm2);
    auto& edge = p.relation("Edge");
    auto c = initial_configuration(tm2, {"1", "0", "B", "1"});
    for (int step = 0; step < 12; ++step) {
      auto next = oracle::tm_step(tm2, c);
      const auto w = encode_configuration(p, tm2, c);
      if (!next) {
        auto img = instantiate(edge, 0, w);
        CHECK(img.empty());
        break;
      }
      const auto v = encode_configuration(p, tm2, *next);
      CHECK(edge.contains({w, v}));
      auto img = instantiate(edge, 0, w);
      CHECK(enumerate(img.dfa(), 3).size() == 1);
      c = *next;
    }
  }
}

TEST_CASE("TM format errors") {
  CHECK_THROWS_AS(parse_turing_machine("tape: B 1\nblank: X\nstates: q\ninitial: q\n"), FormatError);
  CHECK_THROWS_AS(parse_turing_machine("tape: B 1\nblank: B\nstates: q\ninitial: q\ntrans q 1 -> q 1 R\ntrans q 1 -> q B L\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_turing_machine("tape: B 1\nblank: B\nstates: q h\ninitial: q\nhalt: h\ntrans h 1 -> q 1 R\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_turing_machine("tape: _ 1\nblank: _\nstates: q\ninitial: q\n"), FormatError);
  CHECK_THROWS_AS(parse_turing_machine("tape: B 1\nblank: B\nstates: q\ninitial: q\ntrans q 1 -> q 1 S\n"), FormatError);
}

TEST_CASE("growth lemma bounds") {
  for (auto [p, name] : {std::pair{presburger(), "Add"}, {word_tree(), "Left"}, {word_tree(), "Right"},
                         {unary_order(), "S"}}) {
    INFO(name);
    auto report = growth_check(p, name, 60, 17);
    CHECK(report.samples == 60);
    CHECK(report.violations.empty());
    CHECK(report.max_excess <= static_cast<long long>(report.constant));
    CHECK(report.max_excess >= 0);
  }
  CHECK_THROWS_AS(growth_check(unary_order(), "Le", 10), PreconditionFailed);
  CHECK(is_functional(unary_order(), "S"));
  CHECK_FALSE(is_functional(word_tree(), "Le"));
}

TEST_CASE("sampled words lie in the language") {
  std::mt19937_64 rng(4);
  auto p = presburger();
  auto ws = sample_words(p.domain_dfa(), rng, 200, 10);
  CHECK(ws.size() == 200);
  std::set<std::size_t> lengths;
  for (const auto& w : ws) {
    CHECK(p.domain().contains({w}));
    CHECK(w.size() <= 10);
    lengths.insert(w.size());
  }
  CHECK(lengths.size() > 5);
  CHECK(sample_words(Dfa::empty_language(p.base()), rng, 5, 5).empty());
}

TEST_CASE("manifest round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "autostruct_manifest_test";
  std::filesystem::create_directories(dir);
  auto p = presburger();
  save_structure(p, dir / "pres.astruct", "Presburger arithmetic");
  auto q = load_structure(dir / "pres.astruct");
  CHECK(q.signature() == p.signature());
  CHECK(q.domain() == p.domain());
  CHECK(q.relation("Add") == p.relation("Add"));
  CHECK(decide(q, "A x. A y. E z. Add(x,y,z)"));

  write_text_file(dir / "lt.astruct",
                  "builtin: unary_order\n# strict order\ndefine Lt(x, y) := Le(x,y) & ~x = y\n"
                  "define Ge(y, x) := Le(x,y)\n");
  auto lt = load_structure(dir / "lt.astruct");
  CHECK(lt.holds("Lt", {"1", "11"}));
  CHECK_FALSE(lt.holds("Lt", {"1", "1"}));
  CHECK(lt.holds("Ge", {"11", "1"}));

  write_text_file(dir / "m.tm", "tape: B 1\nblank: B\nstates: q h\ninitial: q\nhalt: h\ntrans q B -> h 1 R\n");
  write_text_file(dir / "tm.astruct", "tm: m.tm\n");
  CHECK(load_structure(dir / "tm.astruct").has_relation("Edge"));

  write_text_file(dir / "bad1.astruct", "rel Add 3 x.aut\n");
  CHECK_THROWS_AS(load_structure(dir / "bad1.astruct"), FormatError);
  write_text_file(dir / "bad2.astruct", "builtin: presburger\nfoo: bar\n");
  CHECK_THROWS_AS(load_structure(dir / "bad2.astruct"), FormatError);
  write_text_file(dir / "bad3.astruct", "builtin: presburger\nrel Add2 2 pres.Add.aut\n");
  CHECK_THROWS_AS(load_structure(dir / "bad3.astruct"), FormatError);
  write_text_file(dir / "bad4.astruct", "builtin: presburger\ndefine Bad(x) := Le(x,\n");
  CHECK_THROWS_AS(load_structure(dir / "bad4.astruct"), FormatError);
  std::filesystem::remove_all(dir);
}
