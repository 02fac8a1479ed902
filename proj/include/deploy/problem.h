#ifndef DEPLOY_PROBLEM_H
#define DEPLOY_PROBLEM_H

#include <string>
#include <vector>

#include "deploy/model.h"

namespace deploy {

// A goal task over a component type: bring some instance of it to the
// implied lifecycle state (install/stop -> installed, run -> running,
// uninstall -> uninstalled).
enum class GoalKind { Install, Run, Stop, Uninstall };

const char* goalKindName(GoalKind k);
std::optional<GoalKind> goalKindFromName(std::string_view name);
LifecycleState goalTargetState(GoalKind k);

struct Goal {
    GoalKind kind = GoalKind::Run;
    std::string component;

    bool operator==(const Goal&) const = default;
};

struct InitialInstance {
    InstanceId id = 0;
    std::string component;
    LifecycleState state = LifecycleState::Uninstalled;

    bool operator==(const InitialInstance&) const = default;
};

// A deployment problem: the catalog, the initial world state, and the goal
// task sequence, solved in written order.
struct Problem {
    std::string name;
    CatalogPtr catalog;
    std::vector<InitialInstance> instances;      // sorted by id
    std::set<ActiveProvide> actives;
    std::set<Binding> bindings;
    int counterInit = 0;
    std::vector<Goal> goals;

    bool operator==(const Problem& other) const;
};

Configuration initialConfiguration(const Problem& problem);

}  // namespace deploy

#endif
