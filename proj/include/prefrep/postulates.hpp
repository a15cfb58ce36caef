#pragma once

#include <cstdint>
#include <string>

#include "prefrep/fd.hpp"
#include "prefrep/instance.hpp"
#include "prefrep/priority.hpp"
#include "prefrep/query.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// Audits the four postulates a preferred-repair family is expected to
// satisfy, for the given instance and (acyclic) base priority:
//
//   P1 non-emptiness:     the preferred repairs are never empty.
//   P2 non-discrimination: under the empty priority every repair is preferred.
//   P3 monotonicity:      growing the priority never adds preferred repairs;
//                         checked against every acyclic extension of the base
//                         priority when few conflict edges are unoriented,
//                         otherwise against a seeded sample.
//   P4 categoricity:      every total acyclic extension of the base priority
//                         selects exactly one repair.

struct PostulateResult {
  bool pass = true;
  bool exhaustive = true;
  long cases = 0;
  std::string detail;  // witness description when pass is false
};

struct PostulateReport {
  PostulateResult p1;
  PostulateResult p2;
  PostulateResult p3;
  PostulateResult p4;

  bool all_pass() const { return p1.pass && p2.pass && p3.pass && p4.pass; }
};

struct PostulateOptions {
  // P3 and P4 enumerate extensions exhaustively while the number of
  // unoriented conflict edges is below this, and sample otherwise.
  int exhaustive_limit = 10;
  int samples = 200;
  std::uint64_t seed = 0;
  Budget budget;
};

PostulateReport audit_postulates(const Instance& inst, const FdSet& fds, const Priority& pri,
                                 RepairMode family, const PostulateOptions& options = {});

}  // namespace prefrep
