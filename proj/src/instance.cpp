#include "prefrep/instance.hpp"

#include <numeric>
#include <set>
#include <utility>

#include "prefrep/errors.hpp"

namespace prefrep {

TupleId TupleId::parse(const std::string& text) {
  auto hash = text.rfind('#');
  if (hash == std::string::npos || hash == 0 || hash + 1 == text.size()) {
    throw UnknownTupleIdError("malformed tuple id '" + text + "', expected Rel#row");
  }
  std::string rel = text.substr(0, hash);
  std::string row_text = text.substr(hash + 1);
  std::int32_t row = 0;
  for (char c : row_text) {
    if (c < '0' || c > '9') {
      throw UnknownTupleIdError("malformed tuple id '" + text + "', expected Rel#row");
    }
    row = row * 10 + (c - '0');
    if (row < 0) {
      throw UnknownTupleIdError("tuple id '" + text + "' row index out of range");
    }
  }
  return TupleId{std::move(rel), row};
}

InstanceBuilder::InstanceBuilder(Schema schema)
    : schema_(std::move(schema)), rel_row_count_(schema_.relations().size(), 0) {}

InstanceBuilder& InstanceBuilder::add(const std::string& rel, std::vector<Value> values) {
  return add(schema_.require_relation(rel), std::move(values));
}

InstanceBuilder& InstanceBuilder::add(int rel_index, std::vector<Value> values) {
  if (rel_index < 0 || rel_index >= static_cast<int>(schema_.relations().size())) {
    throw InputError("relation index " + std::to_string(rel_index) + " is out of range");
  }
  const RelationDef& rel = schema_.relation(rel_index);
  if (values.size() != rel.attributes.size()) {
    throw InputError("relation '" + rel.name + "' expects " +
                     std::to_string(rel.attributes.size()) + " values, got " +
                     std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Attribute& attr = rel.attributes[i];
    bool want_nat = attr.type == AttrType::Nat;
    if (want_nat != values[i].is_nat()) {
      throw InputError("value '" + values[i].to_string() + "' for " + rel.name + "." + attr.name +
                       " is not of type " + to_string(attr.type));
    }
  }
  tuples_.push_back(Tuple{rel_index, std::move(values)});
  rows_.push_back(rel_row_count_[rel_index]++);
  return *this;
}

Instance InstanceBuilder::build() && {
  for (std::size_t a = 0; a < tuples_.size(); ++a) {
    for (std::size_t b = a + 1; b < tuples_.size(); ++b) {
      if (tuples_[a] == tuples_[b]) {
        const std::string& rel = schema_.relation(tuples_[a].rel).name;
        throw InputError("duplicate row in relation '" + rel + "': rows " +
                         std::to_string(rows_[a]) + " and " + std::to_string(rows_[b]) +
                         " are identical (instances are sets)");
      }
    }
  }
  return Instance(std::move(schema_), std::move(tuples_), std::move(rows_),
                  std::move(rel_row_count_));
}

Instance::Instance(Schema schema, std::vector<Tuple> tuples, std::vector<std::int32_t> rows,
                   std::vector<int> rel_row_count)
    : schema_(std::move(schema)),
      tuples_(std::move(tuples)),
      rows_(std::move(rows)),
      rel_row_count_(std::move(rel_row_count)) {}

const Tuple& Instance::tuple(TupleRef ref) const {
  if (ref < 0 || ref >= size()) {
    throw UnknownTupleIdError("tuple handle " + std::to_string(ref) + " out of range");
  }
  return tuples_[ref];
}

const RelationDef& Instance::relation_of(TupleRef ref) const {
  return schema_.relation(tuple(ref).rel);
}

TupleId Instance::id_of(TupleRef ref) const {
  return TupleId{relation_of(ref).name, rows_[ref]};
}

TupleRef Instance::ref_of(const TupleId& id) const {
  int rel_index = schema_.relation_index(id.rel);
  if (rel_index < 0) {
    throw UnknownTupleIdError("tuple id '" + id.to_string() + "' names an unknown relation");
  }
  if (id.row < 0 || id.row >= rel_row_count_[rel_index]) {
    throw UnknownTupleIdError("tuple id '" + id.to_string() + "' is out of range, relation has " +
                              std::to_string(rel_row_count_[rel_index]) + " rows");
  }
  for (std::size_t ref = 0; ref < tuples_.size(); ++ref) {
    if (tuples_[ref].rel == rel_index && rows_[ref] == id.row) {
      return static_cast<TupleRef>(ref);
    }
  }
  throw UnknownTupleIdError("tuple id '" + id.to_string() + "' not found");
}

IdSet Instance::all() const {
  IdSet out(tuples_.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace prefrep
