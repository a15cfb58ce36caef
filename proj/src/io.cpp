#include "prefrep/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "prefrep/errors.hpp"

namespace prefrep {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream stream(s);
  while (std::getline(stream, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// Reads a text file and yields its meaningful lines with 1-based numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path.string() + "'");
  }
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(number, std::move(t));
  }
  return out;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, int line, const std::string& msg) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::int64_t parse_int(const std::string& cell, const std::filesystem::path& path, int line) {
  std::int64_t value = 0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    fail_at(path, line, "'" + cell + "' is not an integer");
  }
  return value;
}

void check_writable_cell(const std::string& cell) {
  if (cell.empty()) {
    throw InputError("empty name values cannot be written to CSV");
  }
  if (cell.find_first_of(",\n\r\"") != std::string::npos) {
    throw InputError("value '" + cell + "' contains characters the plain CSV format cannot hold");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

Schema load_schema(const std::filesystem::path& path) {
  std::vector<RelationDef> relations;
  for (const auto& [number, line] : content_lines(path)) {
    auto open = line.find('(');
    if (open == std::string::npos || line.back() != ')') {
      fail_at(path, number, "expected Rel(Attr:type, ...)");
    }
    RelationDef rel;
    rel.name = trim(line.substr(0, open));
    std::string body = line.substr(open + 1, line.size() - open - 2);
    for (const std::string& part : split(body, ',')) {
      auto colon = part.find(':');
      if (colon == std::string::npos) {
        fail_at(path, number, "attribute '" + trim(part) + "' is missing a :type");
      }
      Attribute attr;
      attr.name = trim(part.substr(0, colon));
      std::string type = trim(part.substr(colon + 1));
      if (type == "name") {
        attr.type = AttrType::Name;
      } else if (type == "nat") {
        attr.type = AttrType::Nat;
      } else {
        fail_at(path, number, "unknown attribute type '" + type + "' (use name or nat)");
      }
      rel.attributes.push_back(std::move(attr));
    }
    relations.push_back(std::move(rel));
  }
  if (relations.empty()) {
    throw InputError(path.string() + ": schema file declares no relations");
  }
  return Schema(std::move(relations));
}

void save_schema(const Schema& schema, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const RelationDef& rel : schema.relations()) {
    out << rel.name << "(";
    for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
      if (i > 0) out << ", ";
      out << rel.attributes[i].name << ":" << to_string(rel.attributes[i].type);
    }
    out << ")\n";
  }
}

Instance load_instance(const Schema& schema, const std::filesystem::path& data_dir) {
  InstanceBuilder builder(schema);
  for (std::size_t rel_index = 0; rel_index < schema.relations().size(); ++rel_index) {
    const RelationDef& rel = schema.relations()[rel_index];
    std::filesystem::path file = data_dir / (rel.name + ".csv");
    std::ifstream in(file);
    if (!in) {
      throw InputError("cannot open '" + file.string() + "' for relation '" + rel.name + "'");
    }
    std::string line;
    int number = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++number;
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (!saw_header) {
        saw_header = true;
        std::vector<std::string> header = split(line, ',');
        if (header.size() != rel.attributes.size()) {
          fail_at(file, number, "header has " + std::to_string(header.size()) + " columns, '" +
                                    rel.name + "' has " +
                                    std::to_string(rel.attributes.size()) + " attributes");
        }
        for (std::size_t i = 0; i < header.size(); ++i) {
          if (trim(header[i]) != rel.attributes[i].name) {
            fail_at(file, number, "header column '" + trim(header[i]) + "' should be '" +
                                      rel.attributes[i].name + "'");
          }
        }
        continue;
      }
      if (line.empty()) continue;
      std::vector<std::string> cells = split(line, ',');
      if (cells.size() != rel.attributes.size()) {
        fail_at(file, number, "row has " + std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(rel.attributes.size()));
      }
      std::vector<Value> values;
      values.reserve(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (rel.attributes[i].type == AttrType::Nat) {
          values.push_back(Value::nat(parse_int(trim(cells[i]), file, number)));
        } else {
          std::string cell = cells[i];
          if (cell.empty()) {
            fail_at(file, number, "empty name value in column '" + rel.attributes[i].name + "'");
          }
          values.push_back(Value::name(std::move(cell)));
        }
      }
      try {
        builder.add(static_cast<int>(rel_index), std::move(values));
      } catch (const InputError& e) {
        fail_at(file, number, e.what());
      }
    }
    if (!saw_header) {
      fail_at(file, 1, "missing header line");
    }
  }
  return std::move(builder).build();
}

void save_instance(const Instance& inst, const std::filesystem::path& data_dir,
                   const IdSet* subset) {
  std::filesystem::create_directories(data_dir);
  const Schema& schema = inst.schema();
  std::vector<std::ofstream> files;
  for (const RelationDef& rel : schema.relations()) {
    files.push_back(open_out(data_dir / (rel.name + ".csv")));
    std::ofstream& out = files.back();
    for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
      if (i > 0) out << ",";
      out << rel.attributes[i].name;
    }
    out << "\n";
  }
  for (TupleRef t = 0; t < inst.size(); ++t) {
    if (subset != nullptr && !ids::contains(*subset, t)) continue;
    const Tuple& tup = inst.tuple(t);
    std::ofstream& out = files[tup.rel];
    for (std::size_t i = 0; i < tup.values.size(); ++i) {
      if (i > 0) out << ",";
      std::string cell = tup.values[i].to_string();
      if (tup.values[i].is_name()) check_writable_cell(cell);
      out << cell;
    }
    out << "\n";
  }
}

FdSet load_fds(const Schema& schema, const std::filesystem::path& path) {
  std::vector<Fd> fds;
  for (const auto& [number, line] : content_lines(path)) {
    auto colon = line.find(':');
    auto arrow = line.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
      fail_at(path, number, "expected Rel: A,B -> C,D");
    }
    Fd fd;
    fd.rel = trim(line.substr(0, colon));
    for (const std::string& attr : split(line.substr(colon + 1, arrow - colon - 1), ',')) {
      std::string name = trim(attr);
      if (name.empty()) fail_at(path, number, "empty attribute name on the left side");
      fd.lhs.push_back(std::move(name));
    }
    for (const std::string& attr : split(line.substr(arrow + 2), ',')) {
      std::string name = trim(attr);
      if (name.empty()) fail_at(path, number, "empty attribute name on the right side");
      fd.rhs.push_back(std::move(name));
    }
    fds.push_back(std::move(fd));
  }
  return FdSet(schema, std::move(fds));
}

void save_fds(const FdSet& fds, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const Fd& fd : fds.fds()) out << fd.to_string() << "\n";
}

PrioritySpec load_priority_spec(const std::filesystem::path& path) {
  PrioritySpec spec;
  for (const auto& [number, line] : content_lines(path)) {
    if (line.rfind("prefer ", 0) == 0) {
      std::istringstream stream(line);
      std::string keyword, rel, direction, attr, extra;
      stream >> keyword >> rel >> direction >> attr;
      if (stream >> extra) {
        fail_at(path, number, "trailing text '" + extra + "' after the rule");
      }
      if (rel.empty() || attr.empty() || (direction != "max" && direction != "min")) {
        fail_at(path, number, "expected: prefer Rel max|min Attr");
      }
      spec.rules.push_back({rel, attr, direction == "max"});
      continue;
    }
    auto lt = line.find('<');
    if (lt == std::string::npos) {
      fail_at(path, number, "expected 'Rel#i < Rel#j' or 'prefer Rel max|min Attr'");
    }
    try {
      spec.pairs.emplace_back(TupleId::parse(trim(line.substr(0, lt))),
                              TupleId::parse(trim(line.substr(lt + 1))));
    } catch (const UnknownTupleIdError& e) {
      fail_at(path, number, e.what());
    }
  }
  return spec;
}

Priority resolve_priority(const Instance& inst, const FdSet& fds, const PrioritySpec& spec,
                          bool strict) {
  std::vector<Priority::Pair> pairs;
  for (const auto& [dominated, dominating] : spec.pairs) {
    pairs.emplace_back(inst.ref_of(dominated), inst.ref_of(dominating));
  }
  for (const PreferenceRule& rule : spec.rules) {
    for (const Priority::Pair& pair : apply_rule(inst, fds, rule)) pairs.push_back(pair);
  }
  return strict ? validate_priority(inst, fds, std::move(pairs))
                : restrict_to_conflicts(inst, fds, std::move(pairs));
}

void save_priority(const Instance& inst, const Priority& pri, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const auto& [dominated, dominating] : pri.pairs()) {
    out << inst.id_string(dominated) << " < " << inst.id_string(dominating) << "\n";
  }
}

RepairSet parse_ref_list(const Instance& inst, const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream stream(normalized);
  RepairSet out;
  std::string token;
  while (stream >> token) out.push_back(inst.ref_of(TupleId::parse(token)));
  return ids::normalize(out);
}

}  // namespace prefrep
