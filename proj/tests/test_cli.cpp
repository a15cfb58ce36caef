#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kFixtures = FIXTURES_DIR;

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("prefrep_cli_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string shquote(const std::string& text) { return "'" + text + "'"; }

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;

  json out_json() const { return json::parse(out); }
  json err_json() const { return json::parse(err); }
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out_file = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  fs::path err_file = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = shquote(CLI_PATH) + " " + args + " > " + shquote(out_file.string()) +
                    " 2> " + shquote(err_file.string());
  int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string data_arg(const std::string& fixture) {
  return "--data " + shquote((kFixtures / fixture).string());
}

std::string prio_arg(const std::string& fixture, const std::string& file = "prio.txt") {
  return "--priority " + shquote((kFixtures / fixture / file).string());
}

std::string trimmed(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

}  // namespace

TEST_CASE("repairs command lists every repair") {
  RunResult r = run_cli("repairs " + data_arg("emp_mgr"));
  REQUIRE(r.code == 0);
  json doc = r.out_json();
  CHECK(doc["count"] == 4);
  REQUIRE(doc["repairs"].size() == 4);
  CHECK(doc["repairs"][0] == json::array({"Emp#0", "Mgr#0", "Mgr#1"}));
  CHECK(doc["repairs"][3] == json::array({"Emp#1", "Mgr#0", "Mgr#2"}));
}

TEST_CASE("repairs --dot writes the conflict graph") {
  fs::path dot = scratch_dir() / "emp.dot";
  RunResult r = run_cli("repairs " + data_arg("emp_mgr") + " " + prio_arg("emp_mgr") +
                        " --dot " + shquote(dot.string()));
  REQUIRE(r.code == 0);
  std::string text = slurp(dot);
  CHECK(text.find("\"Emp#0\" -> \"Emp#1\" [dir=none]") != std::string::npos);
  CHECK(text.find("\"Mgr#1\" -> \"Mgr#2\";") != std::string::npos);
}

TEST_CASE("preferred enumerates the chosen family") {
  RunResult l = run_cli("preferred --mode l " + data_arg("emp_mgr") + " " + prio_arg("emp_mgr"));
  REQUIRE(l.code == 0);
  json ldoc = l.out_json();
  CHECK(ldoc["mode"] == "l");
  CHECK(ldoc["count"] == 2);
  CHECK(ldoc["repairs"][0] == json::array({"Emp#0", "Mgr#0", "Mgr#2"}));

  RunResult g = run_cli("preferred --mode g " + data_arg("diamond") + " " + prio_arg("diamond"));
  REQUIRE(g.code == 0);
  CHECK(g.out_json()["count"] == 3);

  RunResult bad = run_cli("preferred --mode x " + data_arg("emp_mgr"));
  CHECK(bad.code == 1);
}

TEST_CASE("check reports repair and preferred status") {
  std::string base = data_arg("emp_mgr") + " " + prio_arg("emp_mgr");
  RunResult all = run_cli("check --mode all --candidate 'Emp#0 Mgr#0 Mgr#1' " + base);
  REQUIRE(all.code == 0);
  CHECK(all.out_json()["repair"] == true);

  RunResult l = run_cli("check --mode l --candidate 'Emp#0 Mgr#0 Mgr#1' " + base);
  REQUIRE(l.code == 0);
  CHECK(l.out_json()["repair"] == true);
  CHECK(l.out_json()["preferred"] == false);

  RunResult g = run_cli("check --mode g --candidate 'Emp#0 Mgr#0 Mgr#2' " + base);
  REQUIRE(g.code == 0);
  CHECK(g.out_json()["preferred"] == true);

  // A non-repair is a negative answer, not an input error.
  RunResult sub = run_cli("check --mode l --candidate 'Emp#0' " + base);
  REQUIRE(sub.code == 0);
  CHECK(sub.out_json()["repair"] == false);
  CHECK(sub.out_json()["preferred"] == false);

  RunResult unknown = run_cli("check --mode all --candidate 'Emp#9' " + base);
  CHECK(unknown.code == 1);
  CHECK(unknown.err_json()["error"] == "UnknownTupleId");
}

TEST_CASE("cqa answers closed queries per family") {
  std::string base = data_arg("emp_mgr") + " " + prio_arg("emp_mgr");
  std::string phi1 = "--query 'exists t. Mgr(\"A\",\"Mary\",t)'";
  std::string phi2 = "--query 'exists x. exists t. Emp(\"Alice\",x) & Mgr(x,\"Mary\",t)'";

  RunResult all1 = run_cli("cqa " + phi1 + " " + base);
  REQUIRE(all1.code == 0);
  CHECK(all1.out_json()["mode"] == "all");
  CHECK(all1.out_json()["answer"] == true);

  RunResult all2 = run_cli("cqa " + phi2 + " " + base);
  REQUIRE(all2.code == 0);
  CHECK(all2.out_json()["answer"] == false);

  RunResult l2 = run_cli("cqa --mode l " + phi2 + " " + base);
  REQUIRE(l2.code == 0);
  CHECK(l2.out_json()["answer"] == true);

  RunResult parse_error = run_cli("cqa --query 'Emp(\"Alice\")' " + base);
  CHECK(parse_error.code == 1);
  CHECK(parse_error.err_json()["error"] == "ArityMismatch");
}

TEST_CASE("clean writes the selected repair") {
  fs::path out = scratch_dir() / "cleaned";
  RunResult r = run_cli("clean --out " + shquote(out.string()) + " " + data_arg("emp_mgr") +
                        " " + prio_arg("emp_mgr", "prio_total.txt"));
  REQUIRE(r.code == 0);
  json doc = r.out_json();
  CHECK(doc["kept"] == json::array({"Emp#0", "Mgr#0", "Mgr#2"}));
  CHECK(doc["dropped"] == json::array({"Emp#1", "Mgr#1"}));
  CHECK(trimmed(slurp(out / "Emp.csv")) == "Name,Dept\nAlice,A");
  CHECK(trimmed(slurp(out / "Mgr.csv")) == "Dept,Name,T\nA,Mary,2\nB,Mary,3");

  RunResult partial = run_cli("clean --out " + shquote((scratch_dir() / "x").string()) + " " +
                              data_arg("emp_mgr") + " " + prio_arg("emp_mgr"));
  CHECK(partial.code == 1);
  CHECK(partial.err_json()["error"] == "PriorityNotTotal");
}

TEST_CASE("cyclic priorities exit with code 3") {
  RunResult r = run_cli("preferred --mode l " + data_arg("cyclic") + " " + prio_arg("cyclic"));
  CHECK(r.code == 3);
  CHECK(r.err_json()["error"] == "CyclicPriority");

  RunResult plain = run_cli("repairs " + data_arg("cyclic"));
  REQUIRE(plain.code == 0);
  CHECK(plain.out_json()["count"] == 2);
}

TEST_CASE("budget limits exit with code 2") {
  RunResult repairs = run_cli("repairs --budget 1 " + data_arg("emp_mgr"));
  CHECK(repairs.code == 2);
  CHECK(repairs.err_json()["error"] == "InstanceTooLarge");

  RunResult vertices = run_cli("repairs --max-vertices 2 " + data_arg("emp_mgr"));
  CHECK(vertices.code == 2);
}

TEST_CASE("reduce 3sat-l round-trips through the loader") {
  fs::path cnf = scratch_dir() / "sat.cnf";
  spit(cnf, "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  fs::path out = scratch_dir() / "lcqa_fixture";
  RunResult r = run_cli("reduce 3sat-l --cnf " + shquote(cnf.string()) + " --out " +
                        shquote(out.string()));
  REQUIRE(r.code == 0);
  json doc = r.out_json();
  CHECK(doc["tuples"] == 9);
  CHECK(doc["query"] == "!R(0,0,0,0,0,0,0,0)");

  std::string query = trimmed(slurp(out / "query.txt"));
  RunResult answer = run_cli("cqa --mode l --query " + shquote(query) + " --data " +
                             shquote(out.string()) + " --priority " +
                             shquote((out / "prio.txt").string()));
  REQUIRE(answer.code == 0);
  CHECK(answer.out_json()["answer"] == false);  // the formula is satisfiable
}

TEST_CASE("reduce 3sat-g emits a checkable candidate") {
  fs::path cnf = scratch_dir() / "gcheck.cnf";
  spit(cnf, "p cnf 4 2\n1 -2 3 0\n-2 -3 4 0\n");
  fs::path out = scratch_dir() / "gcheck_fixture";
  RunResult r = run_cli("reduce 3sat-g --cnf " + shquote(cnf.string()) + " --out " +
                        shquote(out.string()));
  REQUIRE(r.code == 0);
  CHECK(r.out_json()["tuples"] == 16);

  std::string candidate = trimmed(slurp(out / "candidate.txt"));
  RunResult check = run_cli("check --mode g --candidate " + shquote(candidate) + " --data " +
                            shquote(out.string()) + " --priority " +
                            shquote((out / "prio.txt").string()));
  REQUIRE(check.code == 0);
  CHECK(check.out_json()["repair"] == true);
  CHECK(check.out_json()["preferred"] == false);  // the formula is satisfiable

  RunResult witness = run_cli("reduce 3sat-g --positive-witness --cnf " + shquote(cnf.string()) +
                              " --out " + shquote(out.string()));
  CHECK(witness.code == 1);
}

TEST_CASE("reduce qbf-g answers both query forms") {
  fs::path qdimacs = scratch_dir() / "formula.qdimacs";
  spit(qdimacs, "p cnf 5 2\na 1 2 3 0\ne 4 5 0\n-1 4 2 0\n-2 -5 -3 0\n");
  fs::path out = scratch_dir() / "qbf_fixture";
  RunResult r = run_cli("reduce qbf-g --cnf " + shquote(qdimacs.string()) + " --out " +
                        shquote(out.string()));
  REQUIRE(r.code == 0);
  CHECK(r.out_json()["tuples"] == 14);

  std::istringstream queries(slurp(out / "query.txt"));
  std::string query;
  std::string alt_query;
  std::getline(queries, query);
  std::getline(queries, alt_query);
  std::string base = "--data " + shquote(out.string()) + " --priority " +
                     shquote((out / "prio.txt").string());
  RunResult main_answer = run_cli("cqa --mode g --query " + shquote(query) + " " + base);
  REQUIRE(main_answer.code == 0);
  CHECK(main_answer.out_json()["answer"] == true);  // the formula is true
  RunResult alt_answer = run_cli("cqa --mode g --query " + shquote(alt_query) + " " + base);
  REQUIRE(alt_answer.code == 0);
  CHECK(alt_answer.out_json()["answer"] == true);

  RunResult bad = run_cli("reduce nope --cnf " + shquote(qdimacs.string()) + " --out " +
                          shquote((scratch_dir() / "unused").string()));
  CHECK(bad.code == 1);
}

TEST_CASE("postulates audits both families") {
  RunResult r = run_cli("postulates " + data_arg("emp_mgr") + " " + prio_arg("emp_mgr") +
                        " --seed 7");
  REQUIRE(r.code == 0);
  json doc = r.out_json();
  CHECK(doc["pass"] == true);
  for (const char* family : {"l", "g"}) {
    for (const char* postulate : {"p1", "p2", "p3", "p4"}) {
      CAPTURE(family);
      CAPTURE(postulate);
      CHECK(doc[family][postulate]["pass"] == true);
    }
    CHECK(doc[family]["p3"]["exhaustive"] == true);
  }

  RunResult lonly = run_cli("postulates --mode l " + data_arg("diamond") + " " +
                            prio_arg("diamond"));
  REQUIRE(lonly.code == 0);
  CHECK(lonly.out_json().contains("l"));
  CHECK_FALSE(lonly.out_json().contains("g"));

  RunResult cyclic = run_cli("postulates " + data_arg("cyclic") + " " + prio_arg("cyclic"));
  CHECK(cyclic.code == 3);

  RunResult help = run_cli("postulates --help");
  CHECK(help.code == 0);
  CHECK(help.out.find("every priority extension") != std::string::npos);
}

TEST_CASE("malformed invocations and inputs exit with code 1") {
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("repairs").err_json()["error"] == "InvalidInput");  // no --data
  CHECK(run_cli("frobnicate").code == 1);
  CHECK(run_cli("repairs --no-such-flag " + data_arg("emp_mgr")).code == 1);

  RunResult missing = run_cli("repairs --data /no/such/dir");
  CHECK(missing.code == 1);
  CHECK(missing.err_json()["error"] == "InvalidInput");

  RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("prefrep") != std::string::npos);
}

TEST_CASE("schema and fds overrides are honored") {
  fs::path schema = kFixtures / "emp_mgr" / "schema.txt";
  fs::path fds = kFixtures / "emp_mgr" / "fds.txt";
  RunResult r = run_cli("repairs " + data_arg("emp_mgr") + " --schema " +
                        shquote(schema.string()) + " --fds " + shquote(fds.string()));
  REQUIRE(r.code == 0);
  CHECK(r.out_json()["count"] == 4);
}
