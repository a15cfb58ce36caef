#include "prefrep/fd.hpp"

#include <algorithm>

#include "prefrep/errors.hpp"

namespace prefrep {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string Fd::to_string() const {
  return rel + ": " + join(lhs) + " -> " + join(rhs);
}

FdSet::FdSet(const Schema& schema, std::vector<Fd> fds) : fds_(std::move(fds)) {
  // Exact duplicates add nothing; drop them so iteration cost matches the set.
  std::vector<Fd> unique;
  for (Fd& fd : fds_) {
    if (std::find(unique.begin(), unique.end(), fd) == unique.end()) {
      unique.push_back(std::move(fd));
    }
  }
  fds_ = std::move(unique);

  for (const Fd& fd : fds_) {
    Resolved res;
    res.rel = schema.require_relation(fd.rel);
    const RelationDef& rel = schema.relation(res.rel);
    if (fd.lhs.empty() || fd.rhs.empty()) {
      throw InputError("dependency '" + fd.to_string() + "' has an empty side");
    }
    for (const std::string& attr : fd.lhs) {
      int idx = rel.attribute_index(attr);
      if (idx < 0) {
        throw InputError("dependency '" + fd.to_string() + "' references unknown attribute '" +
                         attr + "'");
      }
      res.lhs.push_back(idx);
    }
    for (const std::string& attr : fd.rhs) {
      int idx = rel.attribute_index(attr);
      if (idx < 0) {
        throw InputError("dependency '" + fd.to_string() + "' references unknown attribute '" +
                         attr + "'");
      }
      res.rhs.push_back(idx);
    }
    resolved_.push_back(std::move(res));
  }
}

}  // namespace prefrep
