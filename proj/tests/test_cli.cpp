#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lgram/cli.hpp"
#include "support.hpp"

using namespace lgram;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  std::string w;
  while (in >> w) v.push_back(w);
  return v;
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("lgram_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("parse exit codes") {
  CHECK(run(split("parse --goal n papers that Bob rejected immediately")).rc == 0);
  Run bad = run(split("parse --goal n window that Bob left the room without closing"));
  CHECK(bad.rc == 1);
  CHECK(bad.out.find("deepest failed subgoal") != std::string::npos);
  Run unk = run(split("parse --goal n papers that Bob frobnicated"));
  CHECK(unk.rc == 2);
  CHECK(unk.err.find("frobnicated") != std::string::npos);
  CHECK(run(split("parse --goal n(( papers")).rc == 2);
  CHECK(run(split("parse --max-size -3 Bob left")).rc == 2);
  CHECK(run(split("nosuchcommand")).rc == 2);
  CHECK(run({}).rc == 2);
  CHECK(run(split("--help")).rc == 0);
}

TEST_CASE("json reports carry the schema version") {
  Run r = run(split("parse --json --goal n papers that Bob rejected immediately"));
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("derivable") == true);
  CHECK(j.contains("proof"));
  CHECK(j.contains("linking"));
  Run n = run(split("parse --json --goal n papers that Bob rejected the proposal"));
  CHECK(n.rc == 1);
  CHECK(nlohmann::json::parse(n.out).at("derivable") == false);
}

TEST_CASE("compile writes the initial and normal diagrams") {
  fs::path dir = scratch();
  std::string prefix = (dir / "pg").string();
  Run r = run({"compile", "--goal", "n", "--dot", "--out", prefix, "papers", "that", "Bob", "rejected", "without",
               "reading"});
  REQUIRE(r.rc == 0);
  for (const char* f : {"pg.initial.json", "pg.normal.json", "pg.initial.dot", "pg.normal.dot"})
    CHECK(fs::exists(dir / f));
  std::ifstream in(dir / "pg.normal.json");
  Diagram d = diagram_from_json(nlohmann::json::parse(in));
  CHECK(d.outputs.size() == 1);
  std::ifstream dot(dir / "pg.normal.dot");
  std::string first;
  std::getline(dot, first);
  CHECK(first.rfind("graph ", 0) == 0);
  CHECK(run({"compile", "--goal", "n", "--out", prefix, "papers", "that", "Bob", "rejected", "the", "proposal"}).rc ==
        1);
  fs::remove_all(dir);
}

TEST_CASE("eval checks and store handling") {
  Run r = run(split("eval --check --json --goal n --dims N=4,S=3 --seed 42 papers that Bob rejected without reading"));
  REQUIRE(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("checks").at("closed_form").at("pass") == true);
  CHECK(j.at("checks").at("oracle").at("pass") == true);

  fs::path dir = scratch();
  // zero store gives the zero vector
  nlohmann::json zero = {{"dims", {{"N", 2}, {"S", 2}}}, {"seed", 0}, {"generate", false}, {"tensors", nlohmann::json::object()}};
  auto z = [](std::vector<std::size_t> shape) {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return nlohmann::json{{"shape", shape}, {"data", std::vector<double>(n, 0.0)}};
  };
  zero["tensors"]["papers"] = z({2});
  zero["tensors"]["Bob"] = z({2});
  zero["tensors"]["rejected"] = z({2, 2, 2});
  zero["tensors"]["reading"] = z({2, 2, 2});
  std::ofstream(dir / "zero.json") << zero.dump();
  Run zr = run({"eval", "--json", "--goal", "n", "--store", (dir / "zero.json").string(), "papers", "that", "Bob",
                "rejected", "without", "reading"});
  REQUIRE(zr.rc == 0);
  CHECK(nlohmann::json::parse(zr.out).at("tensor").at("data") == std::vector<double>{0.0, 0.0});

  zero["tensors"].erase("reading");
  std::ofstream(dir / "missing.json") << zero.dump();
  Run mr = run({"eval", "--goal", "n", "--store", (dir / "missing.json").string(), "papers", "that", "Bob", "rejected",
                "without", "reading"});
  CHECK(mr.rc == 2);
  CHECK(mr.err.find("reading") != std::string::npos);
  CHECK(run(split("eval --dims N=0 Bob left")).rc == 2);
  fs::remove_all(dir);
}

TEST_CASE("derive-type") {
  Run r = run(split("derive-type without^d"));
  CHECK(r.rc == 0);
  CHECK(r.out.find("[i]((iv/<x>[x]np)\\(iv/np))/(gp/<x>[x]np)") != std::string::npos);
  CHECK(run({"derive-type", "that", "--steps", "pexpand@R.L{np*(np\\s)} pdist@R"}).rc == 0);
  CHECK(run({"derive-type", "that", "--steps", "pdist@Q"}).rc == 2);
  CHECK(run({"derive-type", "that", "--steps", "pexpand@L.R{np*(np\\s)}"}).rc == 2);
  CHECK(run(split("derive-type nosuchword")).rc == 2);
}

TEST_CASE("batch is deterministic across job counts") {
  std::string suite = testing::data_path("suite.txt");
  Run one = run({"batch", suite, "--jobs", "1"});
  Run four = run({"batch", suite, "--jobs", "4"});
  CHECK(one.rc == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("golden outputs") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"batch_suite", "batch @suite --jobs 2"},
      {"batch_suite_json", "batch @suite --json"},
      {"parse_rel_gap_adverb", "parse --goal n papers that Bob rejected immediately"},
      {"parse_adjunct_island", "parse --goal n window that Bob left the room without closing"},
      {"parse_parasitic_json", "parse --json --goal n papers that Bob rejected without reading"},
      {"eval_parasitic_check", "eval --check --goal n --dims N=4,S=3 --seed 42 papers that Bob rejected without reading"},
      {"derive_without_d", "derive-type without^d"},
      {"derive_that_e", "derive-type that^e --no-macros"},
      {"derive_whom_f", "derive-type whom^f --no-macros"},
  };
  const bool update = std::getenv("LGRAM_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, cmd] : cases) {
    std::vector<std::string> args = split(cmd);
    for (auto& a : args)
      if (a == "@suite") a = testing::data_path("suite.txt");
    Run r = run(args);
    std::string got = "exit " + std::to_string(r.rc) + "\n" + r.out;
    fs::path file = fs::path(LGRAM_GOLDEN_DIR) / (name + ".txt");
    if (update) {
      std::ofstream(file, std::ios::binary) << got;
      continue;
    }
    std::ifstream in(file, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << file.string());
    std::stringstream want;
    want << in.rdbuf();
    CHECK_MESSAGE(got == want.str(), name);
  }
}
