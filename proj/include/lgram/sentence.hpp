#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgram/lexicon.hpp"
#include "lgram/prover.hpp"
#include "lgram/translate.hpp"

namespace lgram {

// Binary tree over words; islands are <m>( ... ) around a constituent.
//   (papers (that (Bob rejected)))   (Bob (left <i>(without closing)))
class Bracketing {
 public:
  enum class Kind : std::uint8_t { Word, Pair, Bracket };

  static Bracketing word(std::string w);
  static Bracketing pair(Bracketing l, Bracketing r);
  static Bracketing bracket(Mode m, Bracketing body);

  Kind kind() const { return node_->kind; }
  const std::string& text() const { return node_->word; }
  Mode mode() const { return node_->mode; }
  const Bracketing& left() const { return node_->kids[0]; }
  const Bracketing& right() const { return node_->kids[1]; }
  const Bracketing& body() const { return node_->kids[0]; }

  std::vector<std::string> words() const;

 private:
  struct Node {
    Kind kind = Kind::Word;
    Mode mode = Mode::I;
    std::string word;
    std::vector<Bracketing> kids;
  };
  explicit Bracketing(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Bracketing parse_bracketing(std::string_view text);
std::string print_bracketing(const Bracketing& b);

// All binary bracketings of n leaves, right-branching first.
std::vector<Bracketing> all_bracketings(const std::vector<std::string>& words);

struct SentenceParse {
  Bracketing bracketing;
  std::vector<const LexEntry*> entries;  // in word order
  ProofTerm proof;
};

struct DeriveReport {
  std::vector<SentenceParse> parses;
  bool bounded = false;
  std::string deepest_failure;
  std::size_t attempts = 0;
};

// Without a bracketing every binary bracketing is tried (at most
// kMaxSearchWords words), with an island placed around each constituent
// headed by a word whose result is locked by [i].
inline constexpr std::size_t kMaxSearchWords = 10;

DeriveReport derive_sentence(const Lexicon& lex, const std::vector<std::string>& words,
                             const std::optional<Bracketing>& bracketing, const Formula& goal,
                             const SearchConfig& cfg);

Structure to_structure(const Bracketing& b, const std::vector<const LexEntry*>& entries);

CompiledProof compile_sentence(const Lexicon& lex, const SentenceParse& parse);

}  // namespace lgram
