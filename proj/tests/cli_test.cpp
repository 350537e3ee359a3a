#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qfa/cli.hpp"

using namespace qfa;
using nlohmann::json;

namespace {

const std::string kFixtures = QFA_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qfa_cli_test_" + name)).string();
}

std::set<std::string> keys(const json& j) {
  std::set<std::string> out;
  for (const auto& [k, v] : j.items()) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("parse_word") {
  CHECK(cli::parse_word("ab") == Word{"a", "b"});
  CHECK(cli::parse_word("").empty());
  CHECK(cli::parse_word("\xC2\xA2" "a$") == Word{kCent, "a", kDollar});
  CHECK(cli::parse_word("x,yy", ",") == Word{"x", "yy"});
}

TEST_CASE("validate") {
  auto r = run({"validate", fixture("footnote2.json")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("valid mm1gqfa") == 0);
  CHECK(run({"validate", fixture("malformed/not_trace_preserving.json")}).code == cli::kValidation);
  CHECK(run({"validate", fixture("malformed/truncated.json")}).code == cli::kValidation);
  CHECK(run({"validate", fixture("malformed/missing_kind.json")}).code == cli::kValidation);
  CHECK(run({"validate", fixture("malformed/substochastic_pa.json")}).code == cli::kValidation);
  CHECK(run({"validate", fixture("nope.json")}).code == cli::kValidation);
}

TEST_CASE("accept") {
  auto r = run({"accept", fixture("footnote2.json"), "a"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "accept=0.5 reject=0.5 continue=0\n");
  CHECK(run({"accept", fixture("footnote2.json"), "aa"}).out == "accept=0.75 reject=0.25 continue=0\n");
  CHECK(run({"accept", fixture("footnote2.json"), "--empty"}).out == "accept=1 reject=0 continue=0\n");
  CHECK(run({"accept", fixture("uniform_pa.json"), "a"}).out == "accept=0.5\n");
  CHECK(run({"accept", fixture("ab_star_dfa.json"), "ab"}).out == "accept=1\n");

  r = run({"accept", fixture("footnote2.json"), "b", "--json"});
  const json j = json::parse(r.out);
  CHECK(keys(j) == std::set<std::string>{"accept", "reject", "continue", "word"});
  CHECK(j["reject"] == 1.0);

  CHECK(run({"accept", fixture("footnote2.json"), "c"}).code == cli::kUsage);
  CHECK(run({"accept", fixture("malformed/amplifying_molm.json"), "\xC2\xA2" "aa$"}).code == cli::kConsistency);
}

TEST_CASE("table") {
  auto r = run({"table", fixture("swap_pa.json"), "--max-len", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "\"\"\taccept=0\n\"a\"\taccept=1\n\"aa\"\taccept=0\n");
  r = run({"table", fixture("footnote2.json"), "--max-len", "1", "--json"});
  CHECK(json::parse(r.out).size() == 3);
  CHECK(run({"table", fixture("footnote2.json"), "--max-len", "30"}).code == cli::kEnumerationGuard);
}

TEST_CASE("compile and build") {
  const std::string molm = temp_file("molm.json"), blm = temp_file("blm.json"), out = temp_file("built.json");
  CHECK(run({"compile", fixture("footnote2.json"), "--to", "molm", "-o", molm}).code == cli::kOk);
  CHECK(run({"accept", molm, "\xC2\xA2" "a$"}).out == "accept=0.5\n");
  CHECK(run({"compile", molm, "--to", "blm", "-o", blm}).code == cli::kOk);
  CHECK(run({"accept", blm, "\xC2\xA2" "aa$"}).out == "value=0.75\n");
  CHECK(run({"compile", fixture("swap_pa.json"), "--to", "molm", "-o", out}).code == cli::kUsage);

  CHECK(run({"build", "embed-pa", fixture("uniform_pa.json"), "-o", out}).code == cli::kOk);
  CHECK(run({"accept", out, "a"}).out == "accept=0.5\n");
  const std::string complemented = temp_file("complement.json");
  CHECK(run({"build", "complement", out, "-o", complemented}).code == cli::kOk);
  CHECK(run({"accept", complemented, "--empty"}).out == "accept=1\n");

  const std::string mixed = temp_file("mix.json");
  CHECK(run({"build", "mix", out, complemented, "--weights", "0.25,0.75", "-o", mixed}).code == cli::kOk);
  CHECK(run({"accept", mixed, "--empty"}).out == "accept=0.75\n");
  CHECK(run({"build", "mix", out, complemented, "--weights", "0.5,0.6", "-o", mixed}).code == cli::kUsage);
  CHECK(run({"build", "mix", out, complemented, "-o", mixed}).code == cli::kUsage);

  const std::string prod = temp_file("product.json");
  CHECK(run({"build", "product", out, out, "-o", prod}).code == cli::kOk);
  CHECK(run({"accept", prod, "a"}).out == "accept=0.25\n");

  const std::string embedded = temp_file("embedded_dfa.json");
  CHECK(run({"build", "embed-dfa", fixture("ab_star_dfa.json"), "-o", embedded}).code == cli::kOk);
  CHECK(run({"check-language", embedded, fixture("ab_star_dfa.json"), "--lambda", "0.5", "--epsilon", "0.5", "--max-len",
             "6"})
            .code == cli::kOk);
  CHECK(run({"build", "embed-dfa", fixture("swap_pa.json"), "-o", embedded}).code == cli::kUsage);

  for (const auto& f : {molm, blm, out, complemented, mixed, prod, embedded}) std::filesystem::remove(f);
}

TEST_CASE("equiv") {
  auto r = run({"equiv", fixture("footnote2.json"), fixture("footnote2.json")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("equivalent\n") == 0);
  CHECK(r.out.find("basis_size=") != std::string::npos);

  const std::set<std::string> equiv_keys{"verdict", "counterexample", "gap", "basis_size", "tolerance"};
  r = run({"equiv", fixture("footnote2.json"), fixture("footnote2_b_accepts.json"), "--json"});
  CHECK(r.code == cli::kOk);
  json j = json::parse(r.out);
  CHECK(keys(j) == equiv_keys);
  CHECK(j["verdict"] == "not_equivalent");
  CHECK(j["counterexample"] == "b");
  CHECK(j["gap"] == 1.0);

  r = run({"equiv", fixture("footnote2.json"), fixture("footnote2.json"), "--json"});
  j = json::parse(r.out);
  CHECK(keys(j) == equiv_keys);
  CHECK(j["verdict"] == "equivalent");
  CHECK(j["counterexample"].is_null());
  CHECK(j["gap"].is_null());

  r = run({"equiv", fixture("swap_pa.json"), fixture("uniform_pa.json"), "--method", "brute", "--json"});
  CHECK(r.code == cli::kOk);
  CHECK(json::parse(r.out)["counterexample"] == "a");

  CHECK(run({"equiv", fixture("swap_pa.json"), fixture("uniform_pa.json")}).code == cli::kUsage);
  CHECK(run({"equiv", fixture("footnote2.json"), fixture("footnote2.json"), "--method", "brute", "--k", "30"}).code ==
        cli::kEnumerationGuard);
  CHECK(run({"equiv", fixture("footnote2.json"), fixture("swap_pa.json"), "--method", "brute", "--k", "2"}).code ==
        cli::kValidation);
}

TEST_CASE("check-language") {
  const std::vector<std::string> base{"check-language", fixture("footnote2.json"), fixture("ab_star_dfa.json"), "--lambda",
                                      "0.25",           "--epsilon",              "0.24",                      "--max-len",
                                      "7"};
  auto args = base;
  args.push_back("--skip-empty");
  auto r = run(args);
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("pass\n") == 0);

  args = base;
  args.push_back("--json");
  r = run(args);
  CHECK(r.code == cli::kValidation);
  const json j = json::parse(r.out);
  CHECK(keys(j) == std::set<std::string>{"lambda", "epsilon", "worst_in", "worst_out", "pass"});
  CHECK(j["pass"] == false);
  CHECK(j["worst_out"]["word"] == "");

  args = base;
  args[6] = "0";
  CHECK(run(args).code == cli::kUsage);
  args = base;
  args[8] = "30";
  CHECK(run(args).code == cli::kEnumerationGuard);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"accept"}).code == cli::kUsage);
  CHECK(run({"table", fixture("swap_pa.json"), "--max-len", "x"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}
