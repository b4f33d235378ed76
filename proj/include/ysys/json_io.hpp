#pragma once

/**
 * JSON views of the library's tables, triangulations, trajectories, and
 * verification reports.
 *
 * Key design decisions.  Output is built for byte-stable golden files:
 * objects serialize with sorted keys (the library type is map-backed),
 * exact rationals are emitted as "num/den" strings rather than floats,
 * and nothing records wall-clock state.  Re-running any command with the
 * same inputs and RNG seed reproduces the bytes exactly.
 */

#include <string>

#include "json.hpp"
#include "ysys/contfrac.hpp"
#include "ysys/dilog.hpp"
#include "ysys/geometry.hpp"
#include "ysys/schedule.hpp"
#include "ysys/seeds.hpp"
#include "ysys/solutions.hpp"
#include "ysys/tsystems.hpp"
#include "ysys/ysystems.hpp"

namespace ysys {

/** n, p, q, r and the invariant A_F of one input sequence. */
nlohmann::json table_json(const ContinuedFractionTable& t);

/** Arcs (in label order) plus size, r, and the puncture flag. */
nlohmann::json triangulation_json(const LabeledTriangulation& g);

nlohmann::json relation_report_json(const RelationReport& rep);
nlohmann::json t_relation_report_json(const TRelationReport& rep);
nlohmann::json period_report_json(const PeriodReport& rep);
nlohmann::json cross_ratio_report_json(const CrossRatioReport& rep);
nlohmann::json dilog_report_json(const DilogReport& rep);

/** Occurrence values of a run, exact values as "num/den" strings. */
nlohmann::json trajectory_json(const Trajectory<ExactPositiveRational>& tr);

/** Occurrence values of a float run. */
nlohmann::json trajectory_json(const Trajectory<Float64Positive>& tr);

/** Two-space indentation plus trailing newline, the one dump format. */
std::string dump_stable(const nlohmann::json& j);

}  // namespace ysys
