#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prefrep/fd.hpp"
#include "prefrep/instance.hpp"
#include "prefrep/priority.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// Text formats. All formats treat blank lines and lines starting with '#'
// as comments.
//
//   schema file    one relation per line:  Rel(Attr:name, Attr:nat, ...)
//   relation data  one CSV per relation, named <Rel>.csv, first line is the
//                  header (attribute names in schema order); plain commas,
//                  no quoting, so values must not contain ',' or line breaks
//   FD file        one dependency per line:  Rel: A,B -> C,D
//   priority file  extensional pairs:  Rel#i < Rel#j   (lhs is dominated)
//                  or rules:           prefer Rel max Attr
//                                      prefer Rel min Attr

Schema load_schema(const std::filesystem::path& path);
void save_schema(const Schema& schema, const std::filesystem::path& path);

// Reads <Rel>.csv from the directory for every schema relation.
Instance load_instance(const Schema& schema, const std::filesystem::path& data_dir);

// Writes <Rel>.csv per relation into the directory (created if needed).
// With a subset, only the selected tuples are written, keeping their
// original relative order.
void save_instance(const Instance& inst, const std::filesystem::path& data_dir,
                   const IdSet* subset = nullptr);

FdSet load_fds(const Schema& schema, const std::filesystem::path& path);
void save_fds(const FdSet& fds, const std::filesystem::path& path);

// A priority file before resolution against an instance.
struct PrioritySpec {
  std::vector<std::pair<TupleId, TupleId>> pairs;
  std::vector<PreferenceRule> rules;
};

PrioritySpec load_priority_spec(const std::filesystem::path& path);

// Resolves symbolic ids, expands rules over the instance's conflicts, and
// validates. Explicit pairs must be conflict edges (strict) or are dropped
// when not (lenient).
Priority resolve_priority(const Instance& inst, const FdSet& fds, const PrioritySpec& spec,
                          bool strict = true);

// Writes the priority as extensional pairs, one per line.
void save_priority(const Instance& inst, const Priority& pri, const std::filesystem::path& path);

// Parses tuple ids ("Rel#i", comma or whitespace separated) into a set.
RepairSet parse_ref_list(const Instance& inst, const std::string& text);

}  // namespace prefrep
