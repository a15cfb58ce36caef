#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

namespace prefrep {

// Dense per-instance tuple handle, assigned in load order (0 .. size-1).
using TupleRef = std::int32_t;

// A set of tuples, kept sorted and duplicate-free.
using IdSet = std::vector<TupleRef>;

namespace ids {

inline bool contains(const IdSet& s, TupleRef x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline IdSet normalize(IdSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline IdSet unite(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IdSet minus(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IdSet intersect(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace ids
}  // namespace prefrep
