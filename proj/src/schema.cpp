#include "prefrep/schema.hpp"

#include <cctype>
#include <set>

#include "prefrep/errors.hpp"

namespace prefrep {

std::string to_string(AttrType t) {
  return t == AttrType::Name ? "name" : "nat";
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

int RelationDef::attribute_index(const std::string& attr) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == attr) return static_cast<int>(i);
  }
  return -1;
}

Schema::Schema(std::vector<RelationDef> relations) : relations_(std::move(relations)) {
  if (relations_.empty()) {
    throw InputError("schema must declare at least one relation");
  }
  std::set<std::string> rel_names;
  for (const RelationDef& rel : relations_) {
    if (!is_identifier(rel.name)) {
      throw InputError("relation name '" + rel.name + "' is not an identifier");
    }
    if (!rel_names.insert(rel.name).second) {
      throw InputError("duplicate relation '" + rel.name + "'");
    }
    if (rel.attributes.empty()) {
      throw InputError("relation '" + rel.name + "' has no attributes");
    }
    std::set<std::string> attr_names;
    for (const Attribute& attr : rel.attributes) {
      if (!is_identifier(attr.name)) {
        throw InputError("attribute name '" + attr.name + "' in relation '" + rel.name +
                         "' is not an identifier");
      }
      if (!attr_names.insert(attr.name).second) {
        throw InputError("duplicate attribute '" + attr.name + "' in relation '" + rel.name + "'");
      }
    }
  }
}

int Schema::relation_index(const std::string& rel) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == rel) return static_cast<int>(i);
  }
  return -1;
}

int Schema::require_relation(const std::string& rel) const {
  int index = relation_index(rel);
  if (index < 0) {
    throw InputError("unknown relation '" + rel + "'");
  }
  return index;
}

}  // namespace prefrep
