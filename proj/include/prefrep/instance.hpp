#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefrep/idset.hpp"
#include "prefrep/schema.hpp"
#include "prefrep/value.hpp"

namespace prefrep {

// Durable tuple identifier: relation name plus 0-based row index in load
// order. Rendered as "Rel#row" in files and JSON output.
struct TupleId {
  std::string rel;
  std::int32_t row = 0;

  std::string to_string() const { return rel + "#" + std::to_string(row); }

  // Parses "Rel#row"; raises UnknownTupleIdError on malformed text.
  static TupleId parse(const std::string& text);

  friend bool operator==(const TupleId&, const TupleId&) = default;
};

struct Tuple {
  int rel = 0;  // index into the schema's relation list
  std::vector<Value> values;

  friend bool operator==(const Tuple&, const Tuple&) = default;
};

class Instance;

// Assembles an instance row by row, validating arity, value types, and set
// semantics (duplicate rows within a relation are rejected).
class InstanceBuilder {
public:
  explicit InstanceBuilder(Schema schema);

  InstanceBuilder& add(const std::string& rel, std::vector<Value> values);
  InstanceBuilder& add(int rel_index, std::vector<Value> values);

  Instance build() &&;

private:
  Schema schema_;
  std::vector<Tuple> tuples_;
  std::vector<std::int32_t> rows_;  // per-tuple row index within its relation
  std::vector<int> rel_row_count_;
};

// An immutable database instance over a fixed schema. Tuples are addressed
// by dense TupleRef handles assigned in insertion order, which is the file
// order when loaded from disk, so handles are deterministic per dataset.
class Instance {
public:
  const Schema& schema() const { return schema_; }
  int size() const { return static_cast<int>(tuples_.size()); }

  const Tuple& tuple(TupleRef ref) const;
  const RelationDef& relation_of(TupleRef ref) const;

  TupleId id_of(TupleRef ref) const;
  std::string id_string(TupleRef ref) const { return id_of(ref).to_string(); }

  // Resolves a symbolic id; raises UnknownTupleIdError if it does not name a
  // tuple of this instance.
  TupleRef ref_of(const TupleId& id) const;

  // All tuples, i.e. the set the repair definitions call r.
  IdSet all() const;

  int relation_rows(int rel_index) const { return rel_row_count_.at(rel_index); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.schema_ == b.schema_ && a.tuples_ == b.tuples_;
  }

private:
  friend class InstanceBuilder;
  Instance(Schema schema, std::vector<Tuple> tuples, std::vector<std::int32_t> rows,
           std::vector<int> rel_row_count);

  Schema schema_;
  std::vector<Tuple> tuples_;
  std::vector<std::int32_t> rows_;
  std::vector<int> rel_row_count_;
};

}  // namespace prefrep
