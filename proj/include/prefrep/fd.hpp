#pragma once

#include <string>
#include <vector>

#include "prefrep/schema.hpp"

namespace prefrep {

// A functional dependency over one relation, written "Rel: A,B -> C,D".
struct Fd {
  std::string rel;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  std::string to_string() const;

  friend bool operator==(const Fd&, const Fd&) = default;
};

// A set of functional dependencies validated against a schema. Attribute
// references are resolved to column indices once, at construction.
class FdSet {
public:
  struct Resolved {
    int rel;
    std::vector<int> lhs;
    std::vector<int> rhs;
  };

  FdSet(const Schema& schema, std::vector<Fd> fds);

  const std::vector<Fd>& fds() const { return fds_; }
  const std::vector<Resolved>& resolved() const { return resolved_; }
  bool empty() const { return fds_.empty(); }

private:
  std::vector<Fd> fds_;
  std::vector<Resolved> resolved_;
};

}  // namespace prefrep
