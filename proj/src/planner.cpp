#include "deploy/planner.h"

#include <algorithm>
#include <chrono>
#include <memory>

#include "deploy/validator.h"

namespace deploy {

const char* failureReasonName(FailureReason r) {
    switch (r) {
        case FailureReason::Exhausted: return "exhausted";
        case FailureReason::DepthBound: return "depth bound";
        case FailureReason::LengthBound: return "length bound";
        case FailureReason::TimeBound: return "time bound";
    }
    return "?";
}

namespace {

// Immutable agenda shared between sibling branches. A node is either a task
// or a marker that closes the enclosing compound task's ancestor record.
struct AgendaNode {
    bool popMarker = false;
    Task task;
    std::shared_ptr<const AgendaNode> next;
};
using AgendaPtr = std::shared_ptr<const AgendaNode>;

AgendaPtr consTask(Task task, AgendaPtr next) {
    auto node = std::make_shared<AgendaNode>();
    node->task = std::move(task);
    node->next = std::move(next);
    return node;
}

AgendaPtr consPop(AgendaPtr next) {
    auto node = std::make_shared<AgendaNode>();
    node->popMarker = true;
    node->next = std::move(next);
    return node;
}

struct SearchContext {
    const SearchLimits& limits;
    const std::vector<Goal>& goals;
    std::chrono::steady_clock::time_point deadline;
    std::optional<FailureReason> boundHit;
    bool timedOut = false;
    long steps = 0;
    // (task, configuration) records of the open compound expansions; a
    // repeat means method recursion with zero progress, which cannot be on
    // any shortest decomposition path, so the branch is cut.
    std::vector<std::string> ancestors;

    void noteBound(FailureReason r) {
        if (!boundHit) boundHit = r;
    }

    bool outOfTime() {
        if (timedOut) return true;
        if ((++steps & 0x3ff) == 0 && std::chrono::steady_clock::now() >= deadline) {
            timedOut = true;
        }
        return timedOut;
    }
};

bool search(SearchContext& ctx, const Configuration& config, const AgendaPtr& agenda,
            std::vector<DeploymentAction>& plan) {
    if (ctx.outOfTime()) return false;
    if (!agenda) {
        // Decomposition finished; the run only counts if the goals hold in
        // the final configuration (later goals may have displaced earlier
        // ones, e.g. running the instance an install goal left installed).
        return goalAchieved(config, ctx.goals);
    }

    if (agenda->popMarker) {
        std::string key = std::move(ctx.ancestors.back());
        ctx.ancestors.pop_back();
        if (search(ctx, config, agenda->next, plan)) return true;
        ctx.ancestors.push_back(std::move(key));
        return false;
    }

    const Task& task = agenda->task;
    if (task.kind == TaskKind::Primitive) {
        if (static_cast<int>(plan.size()) >= ctx.limits.maxPlanLength) {
            ctx.noteBound(FailureReason::LengthBound);
            return false;
        }
        if (!applicableRelaxed(config, task.action)) return false;
        Configuration next = applyRelaxed(config, task.action);
        plan.push_back(task.action);
        if (search(ctx, next, agenda->next, plan)) return true;
        plan.pop_back();
        return false;
    }

    if (static_cast<int>(ctx.ancestors.size()) >= ctx.limits.maxDepth) {
        ctx.noteBound(FailureReason::DepthBound);
        return false;
    }
    std::string key = toText(task) + "@" + fingerprint(config);
    if (std::find(ctx.ancestors.begin(), ctx.ancestors.end(), key) != ctx.ancestors.end()) {
        return false;
    }

    const std::vector<Decomposition> options = decompositions(task, config, ctx.limits);
    ctx.ancestors.push_back(std::move(key));
    for (const Decomposition& option : options) {
        AgendaPtr rest = consPop(agenda->next);
        for (auto it = option.subtasks.rbegin(); it != option.subtasks.rend(); ++it) {
            rest = consTask(*it, rest);
        }
        if (search(ctx, config, rest, plan)) return true;
        if (ctx.timedOut) break;
    }
    ctx.ancestors.pop_back();
    return false;
}

}  // namespace

PlanResult solve(const Problem& problem, const SearchLimits& limits) {
    if (limits.maxDepth <= 0 || limits.maxInstancesPerComponent <= 0 ||
        limits.maxPlanLength <= 0 || limits.timeBudget.count() <= 0) {
        throw ModelError("search limits must be strictly positive");
    }

    Configuration config = initialConfiguration(problem);
    AgendaPtr agenda;
    for (auto it = problem.goals.rbegin(); it != problem.goals.rend(); ++it) {
        agenda = consTask(goalToTask(*it), agenda);
    }

    SearchContext ctx{limits, problem.goals,
                      std::chrono::steady_clock::now() + limits.timeBudget,
                      std::nullopt, false, 0, {}};
    std::vector<DeploymentAction> steps;
    PlanResult result;
    if (search(ctx, config, agenda, steps)) {
        result.plan = Plan{std::move(steps)};
        return result;
    }
    if (ctx.timedOut) {
        result.failure = FailureReason::TimeBound;
    } else {
        result.failure = ctx.boundHit.value_or(FailureReason::Exhausted);
    }
    return result;
}

}  // namespace deploy
