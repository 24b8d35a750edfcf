#include "doctest.h"
#include "lgram/sentence.hpp"
#include "support.hpp"

using namespace lgram;

namespace {
const Lexicon& lex() {
  static const Lexicon l = load_lexicon(testing::data_path("english.lex"));
  return l;
}
Formula goal(const char* g) { return parse_formula(g, lex().atoms); }
std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string w;
  std::istringstream in(s);
  while (in >> w) out.push_back(w);
  return out;
}
}  // namespace

TEST_CASE("bracketing syntax") {
  Bracketing b = parse_bracketing("(papers (that (Bob (rejected <i>(without^d reading)))))");
  CHECK(print_bracketing(b) == "(papers (that (Bob (rejected <i>(without^d reading)))))");
  CHECK(b.words().size() == 6);
  CHECK_THROWS(parse_bracketing("(a b"));
  CHECK_THROWS(parse_bracketing("(a b c)"));
  CHECK_THROWS(parse_bracketing("<q>(a b)"));
}

TEST_CASE("bracketing enumeration is Catalan, right branching first") {
  auto all = all_bracketings(words("a b c d"));
  CHECK(all.size() == 5);
  CHECK(print_bracketing(all.front()) == "(a (b (c d)))");
  CHECK(all_bracketings(words("a b c d e f")).size() == 42);
}

TEST_CASE("search mode finds the gap sentences") {
  auto r = derive_sentence(lex(), words("papers that Bob rejected immediately"), std::nullopt, goal("n"), {});
  REQUIRE(!r.parses.empty());
  validate(r.parses[0].proof);
  auto d = derive_sentence(lex(), words("papers that Bob rejected without reading"), std::nullopt, goal("n"), {});
  REQUIRE(!d.parses.empty());
  CHECK(print_bracketing(d.parses[0].bracketing) == "(papers (that (Bob (rejected <i>(without reading)))))");
  CHECK(d.parses[0].entries[4]->word == "without^d");
}

TEST_CASE("island and overt object cases fail") {
  auto c = derive_sentence(lex(), words("window that Bob left the room without closing"), std::nullopt, goal("n"), {});
  CHECK(c.parses.empty());
  CHECK(!c.deepest_failure.empty());
  auto o = derive_sentence(lex(), words("papers that Bob rejected the proposal"), std::nullopt, goal("n"), {});
  CHECK(o.parses.empty());
}

TEST_CASE("sentence level examples") {
  CHECK(!derive_sentence(lex(), words("Bob left the room without closing the window"), std::nullopt, goal("s"), {})
             .parses.empty());
  CHECK(!derive_sentence(lex(), words("this paper is hard to understand"), std::nullopt, goal("s"), {})
             .parses.empty());
}

TEST_CASE("unknown words and long inputs are errors") {
  CHECK_THROWS_WITH(derive_sentence(lex(), words("papers xyzzy"), std::nullopt, goal("n"), {}),
                    doctest::Contains("xyzzy"));
  CHECK_THROWS(derive_sentence(lex(), words("Bob Bob Bob Bob Bob Bob Bob Bob Bob Bob Bob"), std::nullopt,
                               goal("s"), {}));
}

TEST_CASE("find_all returns every lexical choice that works") {
  SearchConfig cfg;
  cfg.find_all = true;
  auto r = derive_sentence(lex(), {}, parse_bracketing("(papers (that (Bob (rejected <i>(without reading)))))"),
                           goal("n"), cfg);
  CHECK(r.parses.size() >= 1);
  for (const auto& p : r.parses) validate(p.proof);
}
