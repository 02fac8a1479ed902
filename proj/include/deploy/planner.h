#ifndef DEPLOY_PLANNER_H
#define DEPLOY_PLANNER_H

#include <optional>

#include "deploy/htn.h"

namespace deploy {

enum class FailureReason { Exhausted, DepthBound, LengthBound, TimeBound };

const char* failureReasonName(FailureReason r);

struct PlanResult {
    std::optional<Plan> plan;
    FailureReason failure = FailureReason::Exhausted;

    bool ok() const { return plan.has_value(); }
};

// Total-order HTN search: depth-first decomposition of the goal tasks with
// chronological backtracking, applying primitive tasks as soon as they are
// reached so method conditions always see the current configuration.
// Deterministic: identical inputs give identical plans. On failure, reports
// Exhausted when the bounded space was fully explored, otherwise the first
// bound that pruned a branch.
PlanResult solve(const Problem& problem, const SearchLimits& limits = {});

}  // namespace deploy

#endif
