#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prefrep/conflict_graph.hpp"
#include "prefrep/errors.hpp"
#include "prefrep/grepair.hpp"
#include "prefrep/io.hpp"
#include "prefrep/lrepair.hpp"
#include "prefrep/postulates.hpp"
#include "prefrep/query.hpp"
#include "prefrep/reductions.hpp"
#include "prefrep/repairs.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace prefrep;

namespace {

struct GlobalArgs {
  std::string data;
  std::string schema_file;
  std::string fds_file;
  std::string priority_file;
  long max_repairs = Budget{}.max_repairs;
  int max_vertices = Budget{}.max_vertices;
  std::uint64_t seed = 0;

  Budget budget() const { return {max_vertices, max_repairs}; }
};

struct Inputs {
  Instance inst;
  FdSet fds;
  Priority pri;
};

Inputs load_inputs(const GlobalArgs& args) {
  if (args.data.empty()) {
    throw InputError("--data is required for this command");
  }
  fs::path data(args.data);
  fs::path schema_path = args.schema_file.empty() ? data / "schema.txt" : fs::path(args.schema_file);
  fs::path fds_path = args.fds_file.empty() ? data / "fds.txt" : fs::path(args.fds_file);
  Schema schema = load_schema(schema_path);
  Instance inst = load_instance(schema, data);
  FdSet fds = load_fds(inst.schema(), fds_path);
  Priority pri = validate_priority(inst, fds, {});
  if (!args.priority_file.empty()) {
    pri = resolve_priority(inst, fds, load_priority_spec(args.priority_file));
  }
  return {std::move(inst), std::move(fds), std::move(pri)};
}

json repair_json(const Instance& inst, const RepairSet& repair) {
  json out = json::array();
  for (TupleRef ref : repair) out.push_back(inst.id_string(ref));
  return out;
}

json repairs_json(const Instance& inst, const std::vector<RepairSet>& repairs) {
  json out = json::array();
  for (const RepairSet& repair : repairs) out.push_back(repair_json(inst, repair));
  return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int cmd_repairs(const GlobalArgs& args, const std::string& dot_file) {
  Inputs in = load_inputs(args);
  std::vector<RepairSet> repairs = enumerate_repairs(in.inst, in.fds, args.budget());
  if (!dot_file.empty()) {
    ConflictGraph graph(in.inst, in.fds);
    std::ofstream out(dot_file);
    if (!out) throw InputError("cannot write " + dot_file);
    out << to_dot(graph, in.inst, &in.pri);
  }
  json doc;
  doc["count"] = repairs.size();
  doc["repairs"] = repairs_json(in.inst, repairs);
  emit(doc);
  return 0;
}

int cmd_preferred(const GlobalArgs& args, const std::string& mode) {
  Inputs in = load_inputs(args);
  RepairMode family = parse_repair_mode(mode);
  std::vector<RepairSet> repairs;
  switch (family) {
    case RepairMode::Local: repairs = enumerate_lrepairs(in.inst, in.fds, in.pri, args.budget()); break;
    case RepairMode::Global: repairs = enumerate_grepairs(in.inst, in.fds, in.pri, args.budget()); break;
    case RepairMode::All: throw InputError("preferred needs --mode l or --mode g");
  }
  json doc;
  doc["mode"] = mode;
  doc["count"] = repairs.size();
  doc["repairs"] = repairs_json(in.inst, repairs);
  emit(doc);
  return 0;
}

int cmd_check(const GlobalArgs& args, const std::string& mode, const std::string& candidate) {
  Inputs in = load_inputs(args);
  RepairMode family = parse_repair_mode(mode);
  RepairSet cand = parse_ref_list(in.inst, candidate);
  json doc;
  doc["mode"] = mode;
  doc["candidate"] = repair_json(in.inst, cand);
  if (family == RepairMode::All) {
    doc["repair"] = is_repair(in.inst, in.fds, cand);
  } else {
    bool repair = true;
    bool preferred = false;
    try {
      preferred = family == RepairMode::Local ? is_lrepair(in.inst, in.fds, in.pri, cand)
                                              : is_grepair(in.inst, in.fds, in.pri, cand);
    } catch (const NotARepairError&) {
      repair = false;
    }
    doc["repair"] = repair;
    doc["preferred"] = preferred;
  }
  emit(doc);
  return 0;
}

int cmd_cqa(const GlobalArgs& args, const std::string& mode, const std::string& query_text) {
  Inputs in = load_inputs(args);
  RepairMode family = parse_repair_mode(mode);
  Query query = parse_query(query_text, in.inst.schema());
  bool answer = cqa(in.inst, in.fds, in.pri, query, family, args.budget());
  json doc;
  doc["mode"] = mode;
  doc["query"] = query_text;
  doc["answer"] = answer;
  emit(doc);
  return 0;
}

int cmd_clean(const GlobalArgs& args, const std::string& out_dir) {
  Inputs in = load_inputs(args);
  RepairSet kept = clean(in.inst, in.fds, in.pri);
  save_instance(in.inst, out_dir, &kept);
  RepairSet dropped = ids::minus(in.inst.all(), kept);
  json doc;
  doc["out"] = out_dir;
  doc["kept"] = repair_json(in.inst, kept);
  doc["dropped"] = repair_json(in.inst, dropped);
  emit(doc);
  return 0;
}

void write_fixture(const Instance& inst, const FdSet& fds, const Priority& pri,
                   const fs::path& out) {
  fs::create_directories(out);
  save_schema(inst.schema(), out / "schema.txt");
  save_instance(inst, out);
  save_fds(fds, out / "fds.txt");
  save_priority(inst, pri, out / "prio.txt");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text << "\n";
}

int cmd_reduce(const std::string& kind, const std::string& cnf_file, const std::string& out_dir,
               bool positive_witness) {
  std::ifstream in(cnf_file);
  if (!in) throw InputError("cannot open " + cnf_file);
  if (positive_witness && kind != "3sat-l") {
    throw InputError("--positive-witness only applies to 3sat-l");
  }
  fs::path out(out_dir);
  json doc;
  doc["kind"] = kind;
  doc["out"] = out_dir;
  if (kind == "3sat-l") {
    QueryReduction red = reduce_3sat_lcqa(parse_dimacs_cnf(in), positive_witness);
    write_fixture(red.inst, red.fds, red.pri, out);
    write_text(out / "query.txt", red.query);
    doc["tuples"] = red.inst.size();
    doc["mode"] = "l";
    doc["query"] = red.query;
  } else if (kind == "3sat-g") {
    CheckReduction red = reduce_3sat_gcheck(parse_dimacs_cnf(in));
    write_fixture(red.inst, red.fds, red.pri, out);
    std::string ids;
    for (TupleRef ref : red.candidate) {
      if (!ids.empty()) ids += " ";
      ids += red.inst.id_string(ref);
    }
    write_text(out / "candidate.txt", ids);
    doc["tuples"] = red.inst.size();
    doc["mode"] = "g";
    doc["candidate"] = repair_json(red.inst, red.candidate);
  } else {
    QueryReduction red = reduce_qbf_gcqa(parse_qdimacs(in));
    write_fixture(red.inst, red.fds, red.pri, out);
    write_text(out / "query.txt", red.query + "\n" + red.alt_query);
    doc["tuples"] = red.inst.size();
    doc["mode"] = "g";
    doc["query"] = red.query;
    doc["alt_query"] = red.alt_query;
  }
  emit(doc);
  return 0;
}

json postulate_json(const PostulateResult& result) {
  json out;
  out["pass"] = result.pass;
  out["exhaustive"] = result.exhaustive;
  out["cases"] = result.cases;
  out["detail"] = result.detail;
  return out;
}

json report_json(const PostulateReport& report) {
  json out;
  out["pass"] = report.all_pass();
  out["p1"] = postulate_json(report.p1);
  out["p2"] = postulate_json(report.p2);
  out["p3"] = postulate_json(report.p3);
  out["p4"] = postulate_json(report.p4);
  return out;
}

int cmd_postulates(const GlobalArgs& args, const std::string& mode, int samples) {
  Inputs in = load_inputs(args);
  PostulateOptions options;
  options.samples = samples;
  options.seed = args.seed;
  options.budget = args.budget();
  json doc;
  bool pass = true;
  if (mode == "l" || mode == "both") {
    PostulateReport report = audit_postulates(in.inst, in.fds, in.pri, RepairMode::Local, options);
    doc["l"] = report_json(report);
    pass = pass && report.all_pass();
  }
  if (mode == "g" || mode == "both") {
    PostulateReport report = audit_postulates(in.inst, in.fds, in.pri, RepairMode::Global, options);
    doc["g"] = report_json(report);
    pass = pass && report.all_pass();
  }
  doc["pass"] = pass;
  emit(doc);
  return pass ? 0 : 1;
}

int fail(const Error& error, int code) {
  json doc;
  doc["error"] = error.kind();
  doc["message"] = error.what();
  std::cerr << doc.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prefrep: repairs and preferred repairs of inconsistent relational data under "
               "functional dependencies"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--data", args.data, "directory holding one <Rel>.csv per schema relation");
  app.add_option("--schema", args.schema_file, "schema file (default: <data>/schema.txt)");
  app.add_option("--fds", args.fds_file, "functional dependency file (default: <data>/fds.txt)");
  app.add_option("--priority", args.priority_file,
                 "priority file; omitting it means the empty priority");
  app.add_option("--budget", args.max_repairs, "cap on enumerated repairs (default 20000)");
  app.add_option("--max-vertices", args.max_vertices,
                 "cap on instance size for enumeration (default 64)");
  app.add_option("--seed", args.seed, "seed for sampled postulate checks");

  std::string dot_file;
  CLI::App* c_repairs = app.add_subcommand("repairs", "enumerate all repairs");
  c_repairs->fallthrough();
  c_repairs->add_option("--dot", dot_file, "also write the conflict graph in DOT format here");

  std::string pref_mode;
  CLI::App* c_preferred = app.add_subcommand("preferred", "enumerate the preferred repairs");
  c_preferred->fallthrough();
  c_preferred->add_option("--mode", pref_mode, "preference family: l or g")
      ->required()
      ->check(CLI::IsMember({"l", "g"}));

  std::string check_mode;
  std::string check_candidate;
  CLI::App* c_check = app.add_subcommand(
      "check", "test whether a tuple set is a repair (and a preferred one for --mode l|g)");
  c_check->fallthrough();
  c_check->add_option("--mode", check_mode, "all, l, or g")
      ->required()
      ->check(CLI::IsMember({"all", "l", "g"}));
  c_check->add_option("--candidate", check_candidate, "tuple ids, e.g. 'Emp#0 Mgr#1 Mgr#2'")
      ->required();

  std::string cqa_mode = "all";
  std::string cqa_query;
  CLI::App* c_cqa = app.add_subcommand(
      "cqa", "answer a closed query in every repair of the chosen family");
  c_cqa->fallthrough();
  c_cqa->add_option("--mode", cqa_mode, "all, l, or g (default all)")
      ->check(CLI::IsMember({"all", "l", "g"}));
  c_cqa->add_option("--query", cqa_query, "closed first-order query")->required();

  std::string clean_out;
  CLI::App* c_clean = app.add_subcommand(
      "clean", "write the unique preferred repair selected by a total acyclic priority");
  c_clean->fallthrough();
  c_clean->add_option("--out", clean_out, "output directory for the cleaned CSV files")
      ->required();

  std::string reduce_kind;
  std::string reduce_cnf;
  std::string reduce_out;
  bool positive_witness = false;
  CLI::App* c_reduce = app.add_subcommand(
      "reduce", "generate a hard fixture from a DIMACS formula");
  c_reduce->fallthrough();
  c_reduce->add_option("kind", reduce_kind, "3sat-l, 3sat-g, or qbf-g")
      ->required()
      ->check(CLI::IsMember({"3sat-l", "3sat-g", "qbf-g"}));
  c_reduce->add_option("--cnf", reduce_cnf, "DIMACS CNF input (QDIMACS for qbf-g)")->required();
  c_reduce->add_option("--out", reduce_out, "fixture directory to write")->required();
  c_reduce->add_flag("--positive-witness", positive_witness,
                     "3sat-l only: add the witness tuple and use the positive query form");

  std::string post_mode = "both";
  int post_samples = 200;
  CLI::App* c_postulates = app.add_subcommand(
      "postulates",
      "audit postulates P1-P4; P3 and P4 check every priority extension when fewer than 10 "
      "conflict edges are unoriented and fall back to seeded sampling otherwise");
  c_postulates->fallthrough();
  c_postulates->add_option("--mode", post_mode, "l, g, or both (default both)")
      ->check(CLI::IsMember({"l", "g", "both"}));
  c_postulates->add_option("--samples", post_samples,
                           "extensions to sample per postulate when not exhaustive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_repairs->parsed()) return cmd_repairs(args, dot_file);
    if (c_preferred->parsed()) return cmd_preferred(args, pref_mode);
    if (c_check->parsed()) return cmd_check(args, check_mode, check_candidate);
    if (c_cqa->parsed()) return cmd_cqa(args, cqa_mode, cqa_query);
    if (c_clean->parsed()) return cmd_clean(args, clean_out);
    if (c_reduce->parsed()) return cmd_reduce(reduce_kind, reduce_cnf, reduce_out, positive_witness);
    if (c_postulates->parsed()) return cmd_postulates(args, post_mode, post_samples);
  } catch (const BudgetError& e) {
    return fail(e, 2);
  } catch (const CyclicPriorityError& e) {
    return fail(e, 3);
  } catch (const Error& e) {
    return fail(e, 1);
  } catch (const std::exception& e) {
    json doc;
    doc["error"] = "Internal";
    doc["message"] = e.what();
    std::cerr << doc.dump() << "\n";
    return 1;
  }
  return 0;
}
