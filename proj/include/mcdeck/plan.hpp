#ifndef MCDECK_PLAN_HPP
#define MCDECK_PLAN_HPP

#include <string>
#include <vector>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Declarative assembly plans: a line-based step list over named deck
// handles, versioned with a leading "plan 1" line. Supported steps:
//
//   load H PATH              parse a deck into handle H
//   copy NEW OLD             deep copy
//   translate H X Y Z
//   rotate_x H DEG [X Y Z]   axis rotation, optional shift (also _y, _z)
//   rotate_u H UX UY UZ DEG [X Y Z]
//   transform_card H e1 .. e12
//   renum H CELL SURF TRANS
//   extract NEW OLD IDS...   ids as integers or A-B ranges
//   resolve_trcl H
//   add_card H N             followed by N verbatim card/comment lines
//   insert HOST GUEST [default|inside|outside]   consumes GUEST
//   insert_cells HOST GUEST                      consumes GUEST
//   write H PATH
//
// `foreach VAR V1 V2 ... / end` repeats the enclosed steps once per value
// with {VAR} substituted in every token; loops may nest. Lines starting
// with '#' and blank lines are skipped. Input paths resolve against the
// plan file's directory; relative output paths go to $MCDECK_OUTDIR when
// set, else next to the plan.
struct PlanResult {
  std::vector<std::string> written; // output files, in write order
  std::vector<Diagnostic> diagnostics;
};

PlanResult run_plan(const std::string& text, const std::string& base_dir);
PlanResult run_plan_file(const std::string& path);

} // namespace mcdeck

#endif
