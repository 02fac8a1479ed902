#include "deploy/validator.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace deploy {

Verdict validatePlan(const Problem& problem, const Plan& plan) {
    Verdict verdict;
    Configuration config = initialConfiguration(problem);
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        StrictOutcome outcome = applyStrict(config, plan.steps[i]);
        if (!outcome.ok()) {
            verdict.failedStep = static_cast<int>(i) + 1;
            verdict.violation = toText(plan.steps[i]) + ": " + outcome.violation;
            return verdict;
        }
        config = std::move(*outcome.config);
    }
    if (!isWellFormed(config)) {
        verdict.violation = "final configuration is not well-formed";
        return verdict;
    }
    for (const Goal& g : problem.goals) {
        if (!goalAchieved(config, {g})) {
            verdict.violation = "goal (" + std::string(goalKindName(g.kind)) + " " +
                                g.component + ") not achieved";
            return verdict;
        }
    }
    verdict.valid = true;
    verdict.finalConfiguration = std::move(config);
    return verdict;
}

bool goalAchieved(const Configuration& config, const std::vector<Goal>& goals) {
    if (!isWellFormed(config)) return false;
    for (const Goal& g : goals) {
        const int componentIdx = config.catalog->indexOf(g.component);
        if (componentIdx < 0) {
            throw ModelError("goal names unknown component '" + g.component + "'");
        }
        const LifecycleState target = goalTargetState(g.kind);
        bool achieved = false;
        for (const Instance& inst : config.instances) {
            if (inst.component == componentIdx && inst.state == target) {
                achieved = true;
                break;
            }
        }
        if (!achieved) return false;
    }
    return true;
}

Plan canonicalizePlan(const Plan& plan, int counterInit) {
    std::set<InstanceId> assignable;
    {
        int next = counterInit;
        for (const DeploymentAction& a : plan.steps) {
            if (a.kind == ActionKind::CreateInstance) assignable.insert(next++);
        }
    }
    std::map<InstanceId, InstanceId> renaming;
    auto renamed = [&](InstanceId id) {
        if (assignable.count(id) == 0) {
            throw ModelError("plan references instance id " + std::to_string(id) +
                             " that no createInstance step assigns");
        }
        auto [it, inserted] = renaming.emplace(id, static_cast<InstanceId>(renaming.size()));
        (void)inserted;
        return it->second;
    };

    Plan out;
    int nextCreated = counterInit;
    for (const DeploymentAction& a : plan.steps) {
        DeploymentAction step = a;
        switch (a.kind) {
            case ActionKind::CreateInstance:
                renamed(nextCreated++);
                break;
            case ActionKind::Start:
            case ActionKind::Run:
            case ActionKind::Stop:
            case ActionKind::Terminate:
                step.instance = renamed(a.instance);
                break;
            case ActionKind::Bind:
            case ActionKind::Unbind:
                step.requirer = renamed(a.requirer);
                step.provider = renamed(a.provider);
                break;
        }
        out.steps.push_back(step);
    }
    return out;
}

namespace {

// Search-state key invariant under instance id relabeling by (component,
// creation rank). Folds runs that differ only in creation interleaving.
std::string oracleStateKey(const Configuration& config) {
    std::map<InstanceId, std::string> label;
    std::map<int, int> rankWithin;
    for (const Instance& inst : config.instances) {  // ascending id
        label[inst.id] =
            "c" + std::to_string(inst.component) + "r" + std::to_string(rankWithin[inst.component]++);
    }
    std::ostringstream os;
    std::set<std::string> parts;
    for (const Instance& inst : config.instances) {
        parts.insert(label[inst.id] + ":" + std::to_string(stateRank(inst.state)));
    }
    for (const std::string& p : parts) os << p << ';';
    os << '|';
    parts.clear();
    for (const ActiveProvide& ap : config.activeProvides) {
        parts.insert(ap.first + ":" + label[ap.second]);
    }
    for (const std::string& p : parts) os << p << ';';
    os << '|';
    parts.clear();
    for (const Binding& b : config.bindings) {
        parts.insert(b.port + ":" + label[b.requirer] + ":" + label[b.provider]);
    }
    for (const std::string& p : parts) os << p << ';';
    return os.str();
}

}  // namespace

std::optional<Plan> bfsOracle(const Problem& problem, int maxDepth,
                              int maxInstancesPerComponent) {
    struct Node {
        Configuration config;
        int parent = -1;
        DeploymentAction action;
        int depth = 0;
    };

    std::vector<Node> nodes;
    nodes.push_back({initialConfiguration(problem), -1, {}, 0});
    if (goalAchieved(nodes[0].config, problem.goals)) return Plan{};

    std::set<std::string> visited;
    visited.insert(oracleStateKey(nodes[0].config));
    std::deque<int> frontier{0};

    while (!frontier.empty()) {
        const int nodeIdx = frontier.front();
        frontier.pop_front();
        if (nodes[nodeIdx].depth >= maxDepth) continue;
        const Configuration config = nodes[nodeIdx].config;
        for (const DeploymentAction& a :
             enumerateGroundActions(config, maxInstancesPerComponent)) {
            StrictOutcome outcome = applyStrict(config, a);
            if (!outcome.ok()) continue;
            if (!visited.insert(oracleStateKey(*outcome.config)).second) continue;
            Node node{std::move(*outcome.config), nodeIdx, a, nodes[nodeIdx].depth + 1};
            if (goalAchieved(node.config, problem.goals)) {
                Plan plan;
                plan.steps.push_back(a);
                for (int at = nodeIdx; at > 0; at = nodes[at].parent) {
                    plan.steps.push_back(nodes[at].action);
                }
                std::reverse(plan.steps.begin(), plan.steps.end());
                return plan;
            }
            nodes.push_back(std::move(node));
            frontier.push_back(static_cast<int>(nodes.size()) - 1);
        }
    }
    return std::nullopt;
}

}  // namespace deploy
