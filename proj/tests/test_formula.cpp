#include "doctest.h"
#include "lgram/formula.hpp"

using namespace lgram;

namespace {
AtomTable atoms() {
  AtomTable t = default_atoms();
  t.macros.push_back({"iv", parse_formula("np\\s", t)});
  return t;
}
Formula F(const char* s) { return parse_formula(s, atoms()); }
}  // namespace

TEST_CASE("atoms and connectives parse into the expected tree") {
  CHECK(F("np") == Formula::atom("np"));
  Formula np = Formula::atom("np"), n = Formula::atom("n"), s = Formula::atom("s");
  Formula that = Formula::over(Formula::under(n, n), Formula::over(s, Formula::dia(Mode::X, Formula::box(Mode::X, np))));
  CHECK(F("(n\\n)/(s/<x>[x]np)") == that);
}

TEST_CASE("macros expand on parse") {
  CHECK(F("[i]((iv/<x>[x]np)\\(iv/np))/(gp/<x>[x]np)") ==
        F("[i](((np\\s)/<x>[x]np)\\((np\\s)/np))/(gp/<x>[x]np)"));
}

TEST_CASE("printing is canonical and round-trips") {
  CHECK(print_formula(F("np")) == "np");
  CHECK(print_formula(F("(np\\s)/np")) == "(np\\s)/np");
  CHECK(print_formula(F("<x>[x]np")) == "<x>[x]np");
  for (const char* t : {"(n\\n)/(s/<x>[x]np)", "[i](iv\\iv)/gp", "np*(np\\s)", "(a*b)*<x>c"}) {
    AtomTable a = atoms();
    a.atoms.insert({"a", "b", "c"});
    Formula f = parse_formula(t, a);
    CHECK(parse_formula(print_formula(f), a) == f);
  }
  CHECK(print_formula(F("(np\\s)\\(np\\s)"), atoms().macros) == "iv\\iv");
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(F("(np"), ParseError);
  CHECK_THROWS_AS(F("np\\"), ParseError);
  CHECK_THROWS_AS(F("<q>np"), ParseError);
  CHECK_THROWS(F("unknownatom"));
}

TEST_CASE("atom counts follow polarity") {
  CHECK(atom_count(F("np"), "np", Polarity::Positive) == 1);
  CHECK(atom_count(F("(np\\s)/np"), "s", Polarity::Positive) == 1);
  CHECK(atom_count(F("(np\\s)/np"), "np", Polarity::Positive) == -2);
  // n\n contributes 0, the gap np sits under two antitone steps
  CHECK(atom_count(F("(n\\n)/(s/<x>[x]np)"), "np", Polarity::Positive) == 1);
  CHECK(atom_count(F("(n\\n)/(s/<x>[x]np)"), "s", Polarity::Positive) == -1);
}

TEST_CASE("paths address subformulas") {
  Formula f = F("(n\\n)/(s/<x>[x]np)");
  CHECK(subformula(f, parse_path("R.R.Body.Body")) == F("np"));
  CHECK(to_string(parse_path("L.Body.R")) == "L.Body.R");
  CHECK(parse_path("root").empty());
  CHECK(polarity_at(f, parse_path("R")) == Polarity::Negative);
  CHECK(polarity_at(f, parse_path("R.L")) == Polarity::Negative);
  CHECK(polarity_at(f, parse_path("R.R")) == Polarity::Positive);
  CHECK(replace_at(f, parse_path("R.L"), F("np*iv")) == F("(n\\n)/((np*iv)/<x>[x]np)"));
  CHECK_THROWS(subformula(f, parse_path("L.Body")));
}
