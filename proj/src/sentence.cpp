#include <cctype>

#include "lgram/sentence.hpp"

namespace lgram {

Bracketing Bracketing::word(std::string w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Word;
  n->word = std::move(w);
  return Bracketing(n);
}

Bracketing Bracketing::pair(Bracketing l, Bracketing r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->kids = {std::move(l), std::move(r)};
  return Bracketing(n);
}

Bracketing Bracketing::bracket(Mode m, Bracketing body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bracket;
  n->mode = m;
  n->kids = {std::move(body)};
  return Bracketing(n);
}

std::vector<std::string> Bracketing::words() const {
  switch (kind()) {
    case Kind::Word: return {text()};
    case Kind::Bracket: return body().words();
    case Kind::Pair: {
      auto a = left().words();
      auto b = right().words();
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
  }
  return {};
}

namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view t) : t_(t) {}

  Bracketing run() {
    Bracketing b = item();
    skip();
    if (i_ != t_.size()) fail("trailing input");
    return b;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bracketing: " + why + " at column " + std::to_string(i_ + 1), i_, i_ + 1);
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  Bracketing item() {
    skip();
    if (i_ >= t_.size()) fail("unexpected end");
    char c = t_[i_];
    if (c == '<') {
      if (i_ + 2 >= t_.size() || t_[i_ + 2] != '>') fail("expected <x> or <i>");
      Mode m = mode_from_letter(t_[i_ + 1]);
      i_ += 3;
      skip();
      if (i_ >= t_.size() || t_[i_] != '(') fail("expected '(' after bracket mode");
      return Bracketing::bracket(m, group());
    }
    if (c == '(') return group();
    std::size_t s = i_;
    while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != '(' &&
           t_[i_] != ')' && t_[i_] != '<')
      ++i_;
    if (s == i_) fail("expected a word");
    return Bracketing::word(std::string(t_.substr(s, i_ - s)));
  }
  // '(' item [item] ')'
  Bracketing group() {
    ++i_;
    Bracketing a = item();
    skip();
    if (i_ < t_.size() && t_[i_] == ')') {
      ++i_;
      return a;
    }
    Bracketing b = item();
    skip();
    if (i_ >= t_.size() || t_[i_] != ')') fail("expected ')' (constituents are binary)");
    ++i_;
    return Bracketing::pair(a, b);
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

std::vector<Bracketing> trees(const std::vector<std::string>& w, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {Bracketing::word(w[lo])};
  std::vector<Bracketing> out;
  // split after lo first: right-branching comes out first
  for (std::size_t k = lo + 1; k < hi; ++k)
    for (const auto& l : trees(w, lo, k))
      for (const auto& r : trees(w, k, hi)) out.push_back(Bracketing::pair(l, r));
  return out;
}

bool island_head(const LexEntry* e) {
  const Formula& f = e->syn;
  return f.is(Formula::Kind::Over) && f.result().is(Formula::Kind::Box) && f.result().mode() == Mode::I;
}

Bracketing place_islands(const Bracketing& b, const std::vector<const LexEntry*>& entries, std::size_t& idx) {
  switch (b.kind()) {
    case Bracketing::Kind::Word: ++idx; return b;
    case Bracketing::Kind::Bracket: return Bracketing::bracket(b.mode(), place_islands(b.body(), entries, idx));
    case Bracketing::Kind::Pair: {
      bool head = b.left().kind() == Bracketing::Kind::Word && island_head(entries[idx]);
      Bracketing l = place_islands(b.left(), entries, idx);
      Bracketing r = place_islands(b.right(), entries, idx);
      Bracketing p = Bracketing::pair(l, r);
      return head ? Bracketing::bracket(Mode::I, p) : p;
    }
  }
  return b;
}

Structure build(const Bracketing& b, const std::vector<const LexEntry*>& entries, std::size_t& idx) {
  switch (b.kind()) {
    case Bracketing::Kind::Word: return Structure::leaf(entries.at(idx++)->syn);
    case Bracketing::Kind::Bracket: return Structure::bracket(b.mode(), build(b.body(), entries, idx));
    case Bracketing::Kind::Pair: {
      Structure l = build(b.left(), entries, idx);
      return Structure::pair(l, build(b.right(), entries, idx));
    }
  }
  throw Error("bad bracketing");
}

}  // namespace

Bracketing parse_bracketing(std::string_view text) { return BracketParser(text).run(); }

std::string print_bracketing(const Bracketing& b) {
  switch (b.kind()) {
    case Bracketing::Kind::Word: return b.text();
    case Bracketing::Kind::Bracket: {
      std::string body = print_bracketing(b.body());
      if (b.body().kind() != Bracketing::Kind::Pair) body = "(" + body + ")";
      return std::string("<") + mode_letter(b.mode()) + ">" + body;
    }
    case Bracketing::Kind::Pair: return "(" + print_bracketing(b.left()) + " " + print_bracketing(b.right()) + ")";
  }
  return "";
}

std::vector<Bracketing> all_bracketings(const std::vector<std::string>& words) {
  if (words.empty()) throw Error("empty sentence");
  return trees(words, 0, words.size());
}

Structure to_structure(const Bracketing& b, const std::vector<const LexEntry*>& entries) {
  std::size_t idx = 0;
  Structure s = build(b, entries, idx);
  if (idx != entries.size()) throw Error("bracketing and lexical entries disagree in length");
  return s;
}

DeriveReport derive_sentence(const Lexicon& lex, const std::vector<std::string>& words_in,
                             const std::optional<Bracketing>& bracketing, const Formula& goal,
                             const SearchConfig& cfg) {
  std::vector<std::string> words = words_in;
  if (bracketing) {
    auto bw = bracketing->words();
    if (words.empty()) words = bw;
    if (bw != words) throw Error("bracketing does not cover the given words");
  }
  if (words.empty()) throw Error("empty sentence");
  std::vector<std::vector<const LexEntry*>> choices;
  for (const auto& w : words) {
    auto c = lex.lookup(w);
    if (c.empty()) throw Error("unknown word '" + w + "'");
    choices.push_back(c);
  }
  std::vector<Bracketing> shapes;
  if (bracketing) {
    shapes.push_back(*bracketing);
  } else {
    if (words.size() > kMaxSearchWords)
      throw Error("bracketing search is limited to " + std::to_string(kMaxSearchWords) + " words; give --bracketing");
    shapes = all_bracketings(words);
  }

  DeriveReport rep;
  std::size_t best_level = 0;
  std::vector<std::size_t> pick(words.size(), 0);
  for (;;) {
    std::vector<const LexEntry*> entries;
    for (std::size_t i = 0; i < words.size(); ++i) entries.push_back(choices[i][pick[i]]);
    for (const auto& shape : shapes) {
      Bracketing b = shape;
      if (!bracketing) {
        std::size_t idx = 0;
        b = place_islands(shape, entries, idx);
      }
      ++rep.attempts;
      ProveResult r = prove(to_structure(b, entries), goal, cfg);
      rep.bounded = rep.bounded || r.bounded;
      for (const auto& p : r.proofs) rep.parses.push_back({b, entries, p});
      if (r.proofs.empty() && (rep.deepest_failure.empty() || r.deepest_level > best_level)) {
        best_level = r.deepest_level;
        rep.deepest_failure = r.deepest_failure;
      }
      if (!cfg.find_all && !rep.parses.empty()) return rep;
    }
    std::size_t k = 0;
    while (k < words.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == words.size()) break;
  }
  return rep;
}

CompiledProof compile_sentence(const Lexicon& lex, const SentenceParse& parse) {
  std::vector<Diagram> states;
  for (const auto* e : parse.entries) states.push_back(lex.semantics(*e));
  return compile_proof(states, parse.proof, lex.sem_atoms);
}

}  // namespace lgram
