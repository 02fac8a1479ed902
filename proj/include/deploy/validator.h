#ifndef DEPLOY_VALIDATOR_H
#define DEPLOY_VALIDATOR_H

#include <optional>
#include <string>

#include "deploy/actions.h"
#include "deploy/problem.h"

namespace deploy {

struct Verdict {
    bool valid = false;
    std::optional<int> failedStep;  // 1-based step index; unset for goal failures
    std::string violation;
    std::optional<Configuration> finalConfiguration;  // present iff valid
};

// Replays the plan from the problem's initial configuration under strict
// semantics. Valid iff every step is strict-applicable and the goals hold in
// the final configuration; otherwise reports the earliest offending step.
Verdict validatePlan(const Problem& problem, const Plan& plan);

// True iff the configuration is well-formed and, for each goal, some
// instance of the goal's component is in the goal's target state.
bool goalAchieved(const Configuration& config, const std::vector<Goal>& goals);

// Renames instance ids to first-use order, counting the k-th createInstance
// step as the first use of the id it assigns (counterInit + k). Plans that
// differ only in id labels map to the same result; idempotent. Throws
// ModelError when a step references an id no createInstance assigns.
Plan canonicalizePlan(const Plan& plan, int counterInit = 0);

// Breadth-first search over the strict-applicable ground actions, duplicate
// states pruned. Returns a shortest goal-achieving run of at most maxDepth
// actions, or nullopt. Deterministic: ties break by enumeration order.
// Intended for small instances.
std::optional<Plan> bfsOracle(const Problem& problem, int maxDepth,
                              int maxInstancesPerComponent);

}  // namespace deploy

#endif
