#include "deploy/problem.h"

namespace deploy {

const char* goalKindName(GoalKind k) {
    switch (k) {
        case GoalKind::Install: return "install";
        case GoalKind::Run: return "run";
        case GoalKind::Stop: return "stop";
        case GoalKind::Uninstall: return "uninstall";
    }
    return "?";
}

std::optional<GoalKind> goalKindFromName(std::string_view name) {
    for (GoalKind k : {GoalKind::Install, GoalKind::Run, GoalKind::Stop, GoalKind::Uninstall}) {
        if (name == goalKindName(k)) return k;
    }
    return std::nullopt;
}

LifecycleState goalTargetState(GoalKind k) {
    switch (k) {
        case GoalKind::Install:
        case GoalKind::Stop:
            return LifecycleState::Installed;
        case GoalKind::Run:
            return LifecycleState::Running;
        case GoalKind::Uninstall:
            return LifecycleState::Uninstalled;
    }
    return LifecycleState::Uninstalled;
}

bool Problem::operator==(const Problem& other) const {
    bool sameCatalog =
        catalog == other.catalog || (catalog && other.catalog && *catalog == *other.catalog);
    return sameCatalog && name == other.name && instances == other.instances &&
           actives == other.actives && bindings == other.bindings &&
           counterInit == other.counterInit && goals == other.goals;
}

Configuration initialConfiguration(const Problem& problem) {
    Configuration config;
    config.catalog = problem.catalog;
    for (const InitialInstance& ii : problem.instances) {
        Instance inst;
        inst.id = ii.id;
        inst.component = problem.catalog->indexOf(ii.component);
        if (inst.component < 0) {
            throw ModelError("initial instance " + std::to_string(ii.id) +
                             " has unknown component '" + ii.component + "'");
        }
        inst.state = ii.state;
        config.instances.push_back(inst);
    }
    config.activeProvides = problem.actives;
    config.bindings = problem.bindings;
    config.counter = problem.counterInit;
    return config;
}

}  // namespace deploy
