#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lgram/cli.hpp"
#include "lgram/sentence.hpp"
#include "lgram/tensor.hpp"

#ifndef LGRAM_DATA_DIR
#define LGRAM_DATA_DIR "data"
#endif

namespace lgram {

namespace {

using nlohmann::json;

struct Usage : Error {
  using Error::Error;
};

struct SentenceOpts {
  std::vector<std::string> words;
  std::string lexicon = default_lexicon_path();
  std::string goal = "s";
  std::string bracketing;
  int max_size = 40;
  bool json = false;
};

void add_sentence_opts(CLI::App* c, SentenceOpts& o) {
  c->add_option("words", o.words, "Sentence words (may be omitted when --bracketing is given)");
  c->add_option("--lexicon", o.lexicon, "Lexicon file")->capture_default_str();
  c->add_option("--goal", o.goal, "Goal formula")->capture_default_str();
  c->add_option("--bracketing", o.bracketing, "Bracketing such as (a (b c)), or 'search'");
  c->add_option("--max-size", o.max_size, "Proof size bound")->capture_default_str()->check(CLI::PositiveNumber);
  c->add_flag("--json", o.json, "JSON report");
}

Lexicon load_lex(const std::string& path) {
  try {
    return load_lexicon(path);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
}

struct Derived {
  Lexicon lex;
  Formula goal;
  std::vector<std::string> words;
  DeriveReport report;
};

Derived derive(const SentenceOpts& o, bool find_all = false) {
  Derived d{load_lex(o.lexicon), {}, o.words, {}};
  try {
    d.goal = parse_formula(o.goal, d.lex.atoms);
  } catch (const Error& e) {
    throw Usage(std::string("--goal: ") + e.what());
  }
  std::optional<Bracketing> b;
  if (!o.bracketing.empty() && o.bracketing != "search") {
    try {
      b = parse_bracketing(o.bracketing);
    } catch (const Error& e) {
      throw Usage(std::string("--bracketing: ") + e.what());
    }
  }
  if (!b && d.words.empty()) throw Usage("no words given");
  SearchConfig cfg;
  cfg.max_proof_size = o.max_size;
  cfg.find_all = find_all;
  try {
    d.report = derive_sentence(d.lex, d.words, b, d.goal, cfg);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (d.words.empty() && b) d.words = b->words();
  return d;
}

std::string entry_list(const SentenceParse& p) {
  std::string s;
  for (const auto* e : p.entries) s += (s.empty() ? "" : " ") + e->word;
  return s;
}

std::string link_list(const AxiomLinking& l) {
  std::string s;
  for (const auto& [a, b] : l.links) s += (s.empty() ? "" : " ") + ("(" + std::to_string(a) + "," + std::to_string(b) + ")");
  return s;
}

json base_report(const std::string& cmd) { return {{"schema_version", kSchemaVersion}, {"command", cmd}}; }

void failure_report(const Derived& d, json& j, std::ostream& out, bool as_json) {
  if (as_json) {
    j["derivable"] = false;
    j["bounded"] = d.report.bounded;
    j["deepest_failure"] = d.report.deepest_failure;
    out << j.dump(2) << "\n";
  } else {
    out << "derivable: no\n";
    if (d.report.bounded) out << "search was cut by the size bound\n";
    out << "deepest failed subgoal: " << d.report.deepest_failure << "\n";
  }
}

int cmd_parse(const SentenceOpts& o, std::ostream& out) {
  Derived d = derive(o);
  json j = base_report("parse");
  j["words"] = d.words;
  j["goal"] = print_formula(d.goal);
  if (d.report.parses.empty()) {
    failure_report(d, j, out, o.json);
    return 1;
  }
  const auto& p = d.report.parses.front();
  AxiomLinking links = extract_axiom_links(p.proof);
  if (o.json) {
    j["derivable"] = true;
    j["bracketing"] = print_bracketing(p.bracketing);
    j["entries"] = json::array();
    for (const auto* e : p.entries) j["entries"].push_back({{"word", e->word}, {"type", print_formula(e->syn)}});
    j["proof_size"] = p.proof.size();
    j["proof"] = proof_to_json(p.proof);
    j["linking"] = linking_to_json(links);
    out << j.dump(2) << "\n";
  } else {
    out << "derivable: yes\n";
    out << "bracketing: " << print_bracketing(p.bracketing) << "\n";
    out << "entries: " << entry_list(p) << "\n";
    out << "sequent: " << print_arrow(p.proof.arrow()) << "\n";
    out << "proof term size: " << p.proof.size() << "\n";
    out << "axiom links: " << link_list(links) << "\n";
  }
  return 0;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot write " + path);
  f << text;
}

int cmd_compile(const SentenceOpts& o, const std::string& prefix, bool dot, std::ostream& out) {
  Derived d = derive(o);
  json j = base_report("compile");
  if (d.report.parses.empty()) {
    failure_report(d, j, out, o.json);
    return 1;
  }
  CompiledProof c = compile_sentence(d.lex, d.report.parses.front());
  std::vector<std::string> files;
  for (const auto& [tag, dg] : {std::pair<std::string, const Diagram*>{"initial", &c.initial}, {"normal", &c.normal}}) {
    std::string base = prefix + "." + tag;
    write_file(base + ".json", diagram_to_json(*dg).dump(2) + "\n");
    files.push_back(base + ".json");
    if (dot) {
      write_file(base + ".dot", diagram_to_dot(*dg, tag));
      files.push_back(base + ".dot");
    }
  }
  if (o.json) {
    j["files"] = files;
    j["initial"] = {{"nodes", c.initial.nodes.size()}, {"wires", c.initial.wires.size()}};
    j["normal"] = {{"nodes", c.normal.nodes.size()}, {"wires", c.normal.wires.size()}};
    out << j.dump(2) << "\n";
  } else {
    out << "initial: " << c.initial.nodes.size() << " nodes, " << c.initial.wires.size() << " wires\n";
    out << "normal: " << c.normal.nodes.size() << " nodes, " << c.normal.wires.size() << " wires\n";
    for (const auto& f : files) out << "wrote " << f << "\n";
  }
  return 0;
}

std::map<std::string, std::size_t> parse_dims(const std::string& text) {
  std::map<std::string, std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Usage("--dims: expected SPACE=DIM, got '" + item + "'");
    std::size_t v = 0;
    try {
      v = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Usage("--dims: bad dimension in '" + item + "'");
    }
    if (v == 0) throw Usage("--dims: dimensions must be positive");
    dims[item.substr(0, eq)] = v;
  }
  return dims;
}

// Closed forms keyed by the untagged word sequence.
bool is_parasitic_gap(const SentenceParse& p) {
  std::vector<std::string> w;
  for (const auto* e : p.entries) w.push_back(e->base_word());
  return w == std::vector<std::string>{"papers", "that", "Bob", "rejected", "without", "reading"};
}

struct EvalOpts {
  std::string store;
  std::string dims = "N=4,S=3";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool check = false;
};

int cmd_eval(const SentenceOpts& o, const EvalOpts& e, std::ostream& out) {
  TensorStore store;
  if (!e.store.empty()) {
    try {
      store = load_store(e.store);
    } catch (const Error& err) {
      throw Usage(err.what());
    }
    if (e.seed_given) store.seed = e.seed;
  } else {
    store.dims = parse_dims(e.dims);
    store.seed = e.seed;
  }
  Derived d = derive(o);
  json j = base_report("eval");
  if (d.report.parses.empty()) {
    failure_report(d, j, out, o.json);
    return 1;
  }
  const auto& p = d.report.parses.front();
  CompiledProof c = compile_sentence(d.lex, p);
  Tensor t, initial;
  try {
    t = eval_diagram(c.normal, store);
    if (e.check) initial = eval_diagram(c.initial, store);
  } catch (const Error& err) {
    throw Usage(err.what());
  }
  const double tol = 1e-9;
  bool ok = true;
  json checks = json::object();
  std::vector<std::string> lines;
  auto record = [&](const std::string& name, double rel) {
    bool pass = rel <= tol;
    ok = ok && pass;
    checks[name] = {{"relative_error", rel}, {"pass", pass}};
    std::ostringstream s;
    s << name << ": " << (pass ? "PASS" : "FAIL") << " (relative error " << std::setprecision(3) << rel << ")";
    lines.push_back(s.str());
  };
  if (e.check) {
    record("initial_vs_normal", relative_error(initial, t));
    record("linking_vs_normal", relative_error(eval_diagram(c.linked, store), t));
    try {
      record("oracle", relative_error(oracle_eval(c.normal, store), t));
    } catch (const Error& err) {
      lines.push_back(std::string("oracle: skipped (") + err.what() + ")");
    }
    if (is_parasitic_gap(p)) record("closed_form", relative_error(closed_form_parasitic(store), t));
  }
  if (o.json) {
    j["seed"] = store.seed;
    j["dims"] = store.dims;
    j["tensor"] = tensor_to_json(t);
    if (e.check) j["checks"] = checks;
    out << j.dump(2) << "\n";
  } else {
    out << tensor_to_json(t).dump() << "\n";
    for (const auto& l : lines) out << l << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_derive_type(const std::string& lexicon, const std::string& word, const std::string& steps_text, bool as_json,
                    bool macros, std::ostream& out) {
  Lexicon lex = load_lex(lexicon);
  const LexEntry* e = lex.find(word);
  if (!e) throw Usage("no lexicon entry '" + word + "'");
  const LexEntry* base = e;
  std::vector<TypeStep> steps;
  if (!steps_text.empty()) {
    try {
      steps = parse_steps(steps_text, lex.atoms);
    } catch (const Error& err) {
      throw Usage(err.what());
    }
  } else if (e->derived()) {
    base = lex.find(e->derived_from);
    steps = e->steps;
  } else {
    throw Usage("'" + word + "' is a base entry; give --steps");
  }
  std::vector<Formula> rows;
  try {
    rows = replay(base->syn, steps);
  } catch (const Error& err) {
    throw Usage(err.what());
  }
  auto show = [&](const Formula& f) { return macros ? print_formula(f, lex.atoms.macros) : print_formula(f); };
  const LexEntry* match = nullptr;
  for (const auto& x : lex.entries)
    if (x.base_word() == base->base_word() && x.syn == rows.back()) match = &x;
  if (as_json) {
    json j = base_report("derive-type");
    j["base"] = base->word;
    j["rows"] = json::array();
    j["rows"].push_back({{"step", nullptr}, {"formula", show(rows[0])}});
    for (std::size_t i = 0; i < steps.size(); ++i)
      j["rows"].push_back({{"step", print_step(steps[i])}, {"formula", show(rows[i + 1])}});
    j["matches_entry"] = match ? json(match->word) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    std::size_t w = 4;
    for (const auto& s : steps) w = std::max(w, print_step(s).size());
    out << std::left << std::setw(static_cast<int>(w)) << "base" << "  " << show(rows[0]) << "   (" << base->word << ")\n";
    for (std::size_t i = 0; i < steps.size(); ++i)
      out << std::left << std::setw(static_cast<int>(w)) << print_step(steps[i]) << "  " << show(rows[i + 1]) << "\n";
    if (match) out << "matches lexicon entry " << match->word << "\n";
  }
  return 0;
}

struct SuiteLine {
  std::string id;
  bool expect = false;
  std::string goal, bracketing;
};

std::vector<SuiteLine> read_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  std::vector<SuiteLine> out;
  std::string line;
  int no = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, '|')) f.push_back(trim(part));
    if (f.size() != 4 || (f[1] != "yes" && f[1] != "no"))
      throw Usage(path + ":" + std::to_string(no) + ": expected 'id | yes|no | goal | bracketing'");
    out.push_back({f[0], f[1] == "yes", f[2], f[3]});
  }
  return out;
}

int cmd_batch(const std::string& lexicon, const std::string& path, int jobs, int max_size, bool as_json,
              std::ostream& out) {
  auto suite = read_suite(path);
  Lexicon lex = load_lex(lexicon);
  struct Row {
    bool derivable = false;
    std::string error, bracketing;
    std::size_t size = 0;
  };
  std::vector<Row> rows(suite.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < suite.size();) {
      try {
        SearchConfig cfg;
        cfg.max_proof_size = max_size;
        auto r = derive_sentence(lex, {}, parse_bracketing(suite[i].bracketing),
                                 parse_formula(suite[i].goal, lex.atoms), cfg);
        rows[i].derivable = !r.parses.empty();
        if (rows[i].derivable) {
          rows[i].bracketing = print_bracketing(r.parses[0].bracketing);
          rows[i].size = r.parses[0].proof.size();
        }
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < std::max(1, jobs); ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  bool all = true, broken = false;
  json j = base_report("batch");
  j["results"] = json::array();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& s = suite[i];
    const auto& r = rows[i];
    bool ok = r.error.empty() && r.derivable == s.expect;
    all = all && ok;
    broken = broken || !r.error.empty();
    if (as_json) {
      json x = {{"id", s.id}, {"expected", s.expect}, {"derivable", r.derivable}, {"ok", ok}};
      if (!r.error.empty()) x["error"] = r.error;
      if (r.derivable) x["proof_size"] = r.size;
      j["results"].push_back(x);
    } else {
      out << s.id << ": " << (r.error.empty() ? (r.derivable ? "derivable" : "not derivable") : "error: " + r.error)
          << ", expected " << (s.expect ? "derivable" : "not derivable") << " -- " << (ok ? "ok" : "MISMATCH")
          << "\n";
    }
  }
  if (as_json) {
    j["all_ok"] = all;
    out << j.dump(2) << "\n";
  }
  if (broken) return 2;
  return all ? 0 : 1;
}

}  // namespace

std::string default_lexicon_path() { return std::string(LGRAM_DATA_DIR) + "/english.lex"; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type-logical grammar engine: proofs, diagrams and tensor semantics", "lgram"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lgram 1.0");

  SentenceOpts po, co, eo;
  auto* parse = app.add_subcommand("parse", "Derive a sentence and print the proof");
  add_sentence_opts(parse, po);

  auto* compile = app.add_subcommand("compile", "Write initial and normalized diagrams");
  add_sentence_opts(compile, co);
  std::string prefix = "sentence";
  bool dot = false;
  compile->add_option("--out", prefix, "Output file prefix")->capture_default_str();
  compile->add_flag("--dot", dot, "Also write DOT files");

  auto* eval = app.add_subcommand("eval", "Evaluate the sentence diagram with a tensor store");
  add_sentence_opts(eval, eo);
  EvalOpts ev;
  eval->add_option("--store", ev.store, "Tensor store JSON");
  eval->add_option("--dims", ev.dims, "Space dimensions, e.g. N=4,S=3")->capture_default_str();
  auto* seed_opt = eval->add_option("--seed", ev.seed, "Seed for generated tensors")->capture_default_str();
  eval->add_flag("--check", ev.check, "Cross-check against the oracle and registered closed forms");

  auto* dt = app.add_subcommand("derive-type", "Replay type derivation steps from a base entry");
  std::string dt_word, dt_steps, dt_lex = default_lexicon_path();
  bool dt_json = false, dt_plain = false;
  dt->add_option("word", dt_word, "Lexicon entry")->required();
  dt->add_option("--steps", dt_steps, "Step list; defaults to the entry's recorded derivation");
  dt->add_option("--lexicon", dt_lex, "Lexicon file")->capture_default_str();
  dt->add_flag("--json", dt_json, "JSON report");
  dt->add_flag("--no-macros", dt_plain, "Print formulas without macro abbreviations");

  auto* batch = app.add_subcommand("batch", "Check a suite file of bracketed sentences");
  std::string b_file, b_lex = default_lexicon_path();
  int jobs = 1, b_max = 40;
  bool b_json = false;
  batch->add_option("suite", b_file, "Lines 'id | yes|no | goal | bracketing'")->required();
  batch->add_option("--lexicon", b_lex, "Lexicon file")->capture_default_str();
  batch->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  batch->add_option("--max-size", b_max, "Proof size bound")->capture_default_str()->check(CLI::PositiveNumber);
  batch->add_flag("--json", b_json, "JSON report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  ev.seed_given = seed_opt->count() > 0;
  try {
    if (*parse) return cmd_parse(po, out);
    if (*compile) return cmd_compile(co, prefix, dot, out);
    if (*eval) return cmd_eval(eo, ev, out);
    if (*dt) return cmd_derive_type(dt_lex, dt_word, dt_steps, dt_json, !dt_plain, out);
    if (*batch) return cmd_batch(b_lex, b_file, jobs, b_max, b_json, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lgram
