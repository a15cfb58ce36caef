#pragma once

#include <string>
#include <vector>

namespace prefrep {

enum class AttrType { Name, Nat };

std::string to_string(AttrType t);

struct Attribute {
  std::string name;
  AttrType type;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct RelationDef {
  std::string name;
  std::vector<Attribute> attributes;

  // Index of the attribute with the given name, -1 if absent.
  int attribute_index(const std::string& attr) const;

  friend bool operator==(const RelationDef&, const RelationDef&) = default;
};

// A database schema: one or more relations, each with typed attributes.
// Relation and attribute names must be identifiers ([A-Za-z_][A-Za-z0-9_]*);
// relation names are unique, as are attribute names within a relation.
class Schema {
public:
  explicit Schema(std::vector<RelationDef> relations);

  const std::vector<RelationDef>& relations() const { return relations_; }
  const RelationDef& relation(int index) const { return relations_.at(index); }

  // Index of the relation with the given name, -1 if absent.
  int relation_index(const std::string& rel) const;

  // Like relation_index but raises InputError for unknown names.
  int require_relation(const std::string& rel) const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.relations_ == b.relations_;
  }

private:
  std::vector<RelationDef> relations_;
};

bool is_identifier(const std::string& s);

}  // namespace prefrep
