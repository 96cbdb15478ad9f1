#ifndef CRP_RENDER_H_
#define CRP_RENDER_H_

// Plain-text reports. Output is byte-stable: spaces only, right-aligned
// numbers, no trailing whitespace.

#include <string>

#include "crp/balance.h"
#include "crp/capacity.h"
#include "crp/model.h"
#include "crp/simplex.h"
#include "crp/vsm.h"

namespace crp {

// Integral values print without a decimal point; others with up to four
// decimals, trailing zeros trimmed.
std::string FormatNumber(double value);

// The capacity table with columns (a) through (h), a "(Bottleneck)" marker
// on the bottleneck row and an "FG Output (pcs): N" footer. `report` must
// come from AnalyzeCapacity(line).
std::string RenderCapacityTable(const ProductionLine& line,
                                const CapacityReport& report);

std::string RenderBalancePlan(const BalancePlan& plan,
                              int64_t target_throughput);

std::string RenderLp(const LpProblem& problem, const LpSolution& solution);

std::string RenderLeadTime(const LeadTimeBreakdown& breakdown);

std::string RenderComparison(const StateComparison& comparison);

std::string RenderDelta(const ScenarioDelta& delta);

}  // namespace crp

#endif  // CRP_RENDER_H_
