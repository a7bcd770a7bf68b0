#pragma once

#include <iosfwd>
#include <string>

#include "harness.hpp"

namespace georoute {

inline constexpr const char* kCsvHeader =
    "algorithm,obstacle,density,trials,success_rate,median_hops,median_distance,fail_ttl,fail_oob,fail_stuck";

/// Fixed four-decimal formatting; NaN prints as "nan".
std::string format_real(double v);

/// Header plus one line per row. Trials with no nodes count as stuck.
void write_csv(std::ostream& out, const SweepReport& report, bool header = true);

struct TraceSvgOptions {
  double pixels_per_unit = 20.0;
  bool draw_nodes = true;
};

/// SVG 1.1 picture of one trial: border, walls, nodes, the message path and
/// the a/b markers. The y axis points up.
void write_trace_svg(std::ostream& out, const World& world, const TrialOutcome& outcome, Vec2 source, Vec2 dest,
                     const TraceSvgOptions& options = {});

/// "step,x,y" per visited node.
void write_trace_csv(std::ostream& out, const TrialOutcome& outcome);

}  // namespace georoute
