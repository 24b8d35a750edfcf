#include <fstream>
#include <sstream>

#include "lgram/lexicon.hpp"

namespace lgram {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = line.find("::", start);
    out.push_back(trim(line.substr(start, p == std::string::npos ? std::string::npos : p - start)));
    if (p == std::string::npos) break;
    start = p + 2;
  }
  return out;
}

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First preorder path where a and b differ, or nullopt.
std::optional<Path> first_difference(const Formula& a, const Formula& b, Path here = {}) {
  if (a == b) return std::nullopt;
  if (a.kind() != b.kind() || a.is_atom() || (a.is_unary() && a.mode() != b.mode())) return here;
  if (a.is_unary()) {
    here.push_back(Step::Body);
    return first_difference(a.body(), b.body(), here);
  }
  Path l = here, r = here;
  l.push_back(Step::L);
  r.push_back(Step::R);
  if (auto d = first_difference(a.left(), b.left(), l)) return d;
  return first_difference(a.right(), b.right(), r);
}

bool prefix_related(const Path& a, const Path& b) {
  std::size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<long>(n), b.begin());
}

// Schema variables sitting directly under a backslash must be conjoinable.
void ctype_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) return;
  if (f.is_unary()) return ctype_vars(f.body(), out);
  if (f.is(Formula::Kind::Under))
    for (const Formula* s : {&f.left(), &f.right()}) {
      Formula x = *s;
      while (x.is_unary()) x = x.body();
      if (x.is_atom()) out.insert(x.name());
    }
  ctype_vars(f.left(), out);
  ctype_vars(f.right(), out);
}

class Loader {
 public:
  Loader(std::string_view text, std::string base_dir) : text_(text), dir_(std::move(base_dir)) {
    lex_.atoms = default_atoms();
  }

  Lexicon run() {
    std::istringstream in{std::string(text_)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      try {
        handle(line, no);
      } catch (const Error& e) {
        diag(no, e.what());
      }
    }
    for (auto& e : lex_.entries) check_entry(e);
    if (!diags_.empty()) {
      std::string msg;
      for (const auto& d : diags_) msg += (msg.empty() ? "" : "\n") + d;
      throw Error(msg);
    }
    return std::move(lex_);
  }

 private:
  void diag(int line, const std::string& msg) { diags_.push_back("line " + std::to_string(line) + ": " + msg); }

  void handle(const std::string& raw, int no) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      lex_.layout.push_back({-1, raw});
      return;
    }
    if (line[0] == '@') {
      lex_.layout.push_back({-1, raw});
      directive(line);
      return;
    }
    auto fields = split_fields(line);
    if (fields.size() < 2) throw Error("expected 'word :: formula'");
    LexEntry e;
    e.word = fields[0];
    e.line = no;
    if (e.word.empty() || words_of(e.word).size() != 1) throw Error("bad word '" + e.word + "'");
    if (lex_.find(e.word)) throw Error("duplicate entry for '" + e.word + "'");
    e.syn_text = fields[1];
    e.syn = parse_formula(e.syn_text, lex_.atoms);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      if (f.rfind("sem=", 0) == 0) {
        e.sem = f.substr(4);
      } else if (f.rfind("derived-from=", 0) == 0) {
        auto ws = words_of(f);
        e.derived_from = ws[0].substr(13);
        if (ws.size() < 2 || ws[1].rfind("steps=", 0) != 0) throw Error("derived-from needs 'steps=...'");
        std::string steps = f.substr(f.find("steps=") + 6);
        e.steps = parse_steps(steps, lex_.atoms);
        if (e.steps.empty()) throw Error("empty step list");
      } else if (f.rfind("schema=", 0) == 0) {
        auto ws = words_of(f);
        e.schema = ws[0].substr(7);
        for (std::size_t k = 1; k < ws.size(); ++k) {
          auto eq = ws[k].find('=');
          if (eq == std::string::npos) throw Error("schema binding '" + ws[k] + "' lacks '='");
          e.binding[ws[k].substr(0, eq)] = parse_formula(ws[k].substr(eq + 1), lex_.atoms);
        }
      } else {
        throw Error("unknown field '" + f + "'");
      }
    }
    lex_.layout.push_back({static_cast<int>(lex_.entries.size()), ""});
    lex_.entries.push_back(std::move(e));
  }

  void directive(const std::string& line) {
    auto ws = words_of(line);
    const std::string& d = ws[0];
    if (d == "@atom") {
      if (ws.size() < 3) throw Error("expected '@atom NAME SPACES'");
      lex_.atoms.atoms.insert(ws[1]);
      lex_.sem_atoms.map[ws[1]] = parse_wire_type(line.substr(line.find(ws[1]) + ws[1].size()));
    } else if (d == "@macro") {
      auto eq = line.find('=');
      if (ws.size() < 4 || eq == std::string::npos) throw Error("expected '@macro NAME = FORMULA'");
      lex_.atoms.macros.push_back({ws[1], parse_formula(trim(line.substr(eq + 1)), lex_.atoms)});
    } else if (d == "@networks") {
      if (ws.size() != 2) throw Error("expected '@networks FILE'");
      std::string path = ws[1][0] == '/' ? ws[1] : dir_ + "/" + ws[1];
      for (auto& [name, net] : parse_networks(read_file(path))) {
        if (lex_.networks.count(name)) throw Error("network " + name + " defined twice");
        lex_.networks.emplace(name, std::move(net));
      }
    } else if (d == "@schema") {
      // @schema NAME VARS... = FORMULA
      auto eq = line.find('=');
      if (ws.size() < 4 || eq == std::string::npos) throw Error("expected '@schema NAME VARS = FORMULA'");
      AtomTable t = lex_.atoms;
      auto head = words_of(line.substr(0, eq));
      for (std::size_t k = 2; k < head.size(); ++k) t.atoms.insert(head[k]);
      lex_.schemas[head[1]] = parse_formula(trim(line.substr(eq + 1)), t);
    } else {
      throw Error("unknown directive '" + d + "'");
    }
  }

  void check_entry(LexEntry& e) {
    try {
      if (!e.sem.empty()) {
        auto it = lex_.networks.find(e.sem);
        if (it == lex_.networks.end()) throw Error("unknown network '" + e.sem + "'");
        WireType want = interpret_type(e.syn, lex_.sem_atoms);
        if (!it->second.inputs.empty() || it->second.outputs != want)
          throw Error("network " + e.sem + " has boundary [" + print_wire_type(it->second.outputs) + "], type needs [" +
                      print_wire_type(want) + "]");
      } else {
        interpret_type(e.syn, lex_.sem_atoms);
      }
      if (!e.schema.empty()) check_schema(e);
      if (e.derived()) check_derived(e);
    } catch (const Error& err) {
      diag(e.line, e.word + ": " + err.what());
    }
  }

  void check_schema(const LexEntry& e) {
    auto it = lex_.schemas.find(e.schema);
    if (it == lex_.schemas.end()) throw Error("unknown schema '" + e.schema + "'");
    std::set<std::string> need;
    ctype_vars(it->second, need);
    for (const auto& v : need) {
      auto b = e.binding.find(v);
      if (b != e.binding.end() && !is_ctype(b->second))
        throw Error("schema variable " + v + " = " + print_formula(b->second) + " is not a conjoinable type");
    }
    Formula inst = instantiate_schema(it->second, e.binding);
    if (inst != e.syn)
      throw Error("schema " + e.schema + " instantiates to " + print_formula(inst) + ", not the stated type");
  }

  void check_derived(const LexEntry& e) {
    const LexEntry* base = lex_.find(e.derived_from);
    if (!base) throw Error("derived from unknown entry '" + e.derived_from + "'");
    if (base->derived()) throw Error("base entry '" + e.derived_from + "' is itself derived");
    auto rows = replay(base->syn, e.steps);
    auto diff = first_difference(rows.back(), e.syn);
    if (!diff) return;
    std::size_t culprit = 0;
    for (std::size_t i = 0; i < e.steps.size(); ++i)
      if (prefix_related(e.steps[i].position, *diff)) culprit = i + 1;
    std::string where = culprit == 0 ? "the base type" : "step " + std::to_string(culprit) + " (" +
                                                             print_step(e.steps[culprit - 1]) + ")";
    throw Error("replay gives " + print_formula(rows.back()) + ", stated type differs at " + to_string(*diff) +
                "; first divergence traced to " + where);
  }

  std::string_view text_;
  std::string dir_;
  Lexicon lex_;
  std::vector<std::string> diags_;
};

}  // namespace

const LexEntry* Lexicon::find(const std::string& word) const {
  for (const auto& e : entries)
    if (e.word == word) return &e;
  return nullptr;
}

std::vector<const LexEntry*> Lexicon::lookup(const std::string& word) const {
  std::vector<const LexEntry*> out;
  bool tagged = word.find('^') != std::string::npos;
  for (const auto& e : entries)
    if (tagged ? e.word == word : e.base_word() == word) out.push_back(&e);
  return out;
}

Diagram Lexicon::semantics(const LexEntry& e) const {
  if (e.sem.empty()) return single(generator(e.base_word(), {}, interpret_type(e.syn, sem_atoms)));
  return networks.at(e.sem);
}

Lexicon parse_lexicon(std::string_view text, const std::string& base_dir) { return Loader(text, base_dir).run(); }

Lexicon load_lexicon(const std::string& path) {
  std::string text = read_file(path);
  auto slash = path.find_last_of('/');
  std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  try {
    return parse_lexicon(text, dir);
  } catch (const Error& e) {
    throw Error(path + ":\n" + e.what());
  }
}

std::string format_entry(const LexEntry& e) {
  std::string out = e.word + " :: " + e.syn_text;
  if (!e.sem.empty()) out += " :: sem=" + e.sem;
  if (!e.schema.empty()) {
    out += " :: schema=" + e.schema;
    for (const auto& [k, v] : e.binding) out += " " + k + "=" + print_formula(v);
  }
  if (e.derived()) {
    out += " :: derived-from=" + e.derived_from + " steps=";
    for (std::size_t i = 0; i < e.steps.size(); ++i) out += (i ? " " : "") + print_step(e.steps[i]);
  }
  return out;
}

std::string save_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& [idx, text] : lex.layout) out += (idx < 0 ? text : format_entry(lex.entries[idx])) + "\n";
  return out;
}

}  // namespace lgram
