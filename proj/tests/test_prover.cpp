#include "doctest.h"
#include "lgram/prover.hpp"

using namespace lgram;

namespace {
AtomTable atoms() {
  AtomTable t = default_atoms();
  t.atoms.insert({"a", "b", "c"});
  return t;
}
Formula F(const char* s) { return parse_formula(s, atoms()); }
Structure L(const char* s) { return Structure::leaf(F(s)); }
Structure P(Structure a, Structure b) { return Structure::pair(std::move(a), std::move(b)); }

bool uses(const ProofTerm& p, ProofTerm::Rule r) {
  if (p.rule() == r) return true;
  for (const auto& c : p.children())
    if (uses(c, r)) return true;
  return false;
}
}  // namespace

TEST_CASE("application") {
  auto r = prove(Arrow{F("np*(np\\s)"), F("s")}, {});
  REQUIRE(!r.proofs.empty());
  CHECK(validate(r.proofs[0]).rhs == F("s"));
  CHECK(uses(r.proofs[0], ProofTerm::Rule::EvUnder));
}

TEST_CASE("relative clause with a peripheral gap needs the modal postulates") {
  Structure that = L("(n\\n)/(s/<x>[x]np)");
  auto r = prove(P(L("n"), P(that, P(L("np"), P(L("(np\\s)/np"), L("(np\\s)\\(np\\s)"))))), F("n"), {});
  REQUIRE(!r.proofs.empty());
  validate(r.proofs[0]);
  CHECK((uses(r.proofs[0], ProofTerm::Rule::SigmaDia) || uses(r.proofs[0], ProofTerm::Rule::AlphaDia)));
}

TEST_CASE("an overt object blocks the gap") {
  Structure that = L("(n\\n)/(s/<x>[x]np)");
  auto r = prove(P(L("n"), P(that, P(L("np"), P(L("(np\\s)/np"), L("np"))))), F("n"), {});
  CHECK(r.proofs.empty());
  CHECK(!r.deepest_failure.empty());
}

TEST_CASE("no extraction out of an i-island") {
  Structure that = L("(n\\n)/(s/<x>[x]np)");
  Structure island = Structure::bracket(Mode::I, P(L("[i]((np\\s)\\(np\\s))/gp"), L("gp/np")));
  auto r = prove(P(L("n"), P(that, P(L("np"), P(P(L("(np\\s)/np"), L("np")), island)))), F("n"), {});
  CHECK(r.proofs.empty());
}

TEST_CASE("residuation round trips") {
  Arrow a{F("np*(np\\s)"), F("s")};
  Arrow b = residuate(a, Residuation::TensorToOver);
  CHECK(b.lhs == F("np"));
  CHECK(b.rhs == F("s/(np\\s)"));
  CHECK(residuate(b, inverse(Residuation::TensorToOver)).lhs == a.lhs);
  Arrow c{F("<x>a"), F("b")};
  Arrow d = residuate(c, Residuation::DiaToBox);
  CHECK(d.lhs == F("a"));
  CHECK(d.rhs == F("[x]b"));
  CHECK(residuate(d, Residuation::BoxToDia).lhs == c.lhs);
}

TEST_CASE("structural postulates") {
  CHECK(apply_structural(F("(a*b)*<x>c"), StructuralRule::Alpha, {}) == F("a*(b*<x>c)"));
  CHECK(apply_structural(F("(a*b)*<x>c"), StructuralRule::Sigma, {}) == F("(a*<x>c)*b"));
  CHECK_THROWS(apply_structural(F("(a*b)*<i>c"), StructuralRule::Sigma, {}));
}

TEST_CASE("size bound is reported") {
  SearchConfig cfg;
  cfg.max_proof_size = 1;
  Structure that = L("(n\\n)/(s/<x>[x]np)");
  auto r = prove(P(L("n"), P(that, P(L("np"), L("(np\\s)/np")))), F("n"), cfg);
  CHECK(r.proofs.empty());
  CHECK(r.bounded);
}

TEST_CASE("proof json round trip") {
  auto r = prove(Arrow{F("np*(np\\s)"), F("s")}, {});
  REQUIRE(!r.proofs.empty());
  ProofTerm back = proof_from_json(proof_to_json(r.proofs[0]), atoms());
  CHECK(proof_to_json(back) == proof_to_json(r.proofs[0]));
}
