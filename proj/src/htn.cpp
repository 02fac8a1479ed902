#include "deploy/htn.h"

#include <algorithm>

namespace deploy {

Task componentTask(TaskKind kind, std::string component) {
    Task t;
    t.kind = kind;
    t.component = std::move(component);
    return t;
}

Task instanceTask(TaskKind kind, InstanceId instance) {
    Task t;
    t.kind = kind;
    t.instance = instance;
    return t;
}

Task satisfyPortTask(std::string port, InstanceId instance, LifecycleState target) {
    Task t;
    t.kind = TaskKind::SatisfyPort;
    t.port = std::move(port);
    t.instance = instance;
    t.target = target;
    return t;
}

Task bindToProviderTask(std::string port, InstanceId instance, std::string component) {
    Task t;
    t.kind = TaskKind::BindToProvider;
    t.port = std::move(port);
    t.instance = instance;
    t.component = std::move(component);
    return t;
}

Task unbindPortsTask(InstanceId instance, LifecycleState target) {
    Task t;
    t.kind = TaskKind::UnbindPorts;
    t.instance = instance;
    t.target = target;
    return t;
}

Task primitiveTask(DeploymentAction action) {
    Task t;
    t.kind = TaskKind::Primitive;
    t.action = std::move(action);
    return t;
}

Task goalToTask(const Goal& goal) {
    switch (goal.kind) {
        case GoalKind::Install: return componentTask(TaskKind::Install, goal.component);
        case GoalKind::Run: return componentTask(TaskKind::Run, goal.component);
        case GoalKind::Stop: return componentTask(TaskKind::Stop, goal.component);
        case GoalKind::Uninstall: return componentTask(TaskKind::Uninstall, goal.component);
    }
    throw ModelError("unknown goal kind");
}

bool isCompound(const Task& task) { return task.kind != TaskKind::Primitive; }

std::string toText(const Task& task) {
    switch (task.kind) {
        case TaskKind::Install: return "Install(" + task.component + ")";
        case TaskKind::Run: return "Run(" + task.component + ")";
        case TaskKind::Stop: return "Stop(" + task.component + ")";
        case TaskKind::Uninstall: return "Uninstall(" + task.component + ")";
        case TaskKind::InstallInstance:
            return "InstallInstance(" + std::to_string(task.instance) + ")";
        case TaskKind::RunInstance: return "RunInstance(" + std::to_string(task.instance) + ")";
        case TaskKind::StopInstance: return "StopInstance(" + std::to_string(task.instance) + ")";
        case TaskKind::UninstallInstance:
            return "UninstallInstance(" + std::to_string(task.instance) + ")";
        case TaskKind::SatisfyPort:
            return "SatisfyPort(" + task.port + ", " + std::to_string(task.instance) + ", " +
                   stateName(task.target) + ")";
        case TaskKind::BindToProvider:
            return "BindToProvider(" + task.port + ", " + std::to_string(task.instance) + ", " +
                   task.component + ")";
        case TaskKind::UnbindPorts:
            return "UnbindPorts(" + std::to_string(task.instance) + ", " +
                   stateName(task.target) + ")";
        case TaskKind::Primitive: return toText(task.action);
    }
    return "?";
}

namespace {

struct ComponentTaskShape {
    LifecycleState target;
    bool upward;
};

ComponentTaskShape shapeOf(TaskKind kind) {
    switch (kind) {
        case TaskKind::Install: return {LifecycleState::Installed, true};
        case TaskKind::Run: return {LifecycleState::Running, true};
        case TaskKind::Stop: return {LifecycleState::Installed, false};
        case TaskKind::Uninstall: return {LifecycleState::Uninstalled, false};
        default: break;
    }
    throw ModelError("not a component-level task");
}

TaskKind raiseStepKind(LifecycleState from) {
    return from == LifecycleState::Uninstalled ? TaskKind::InstallInstance : TaskKind::RunInstance;
}

TaskKind lowerStepKind(LifecycleState from) {
    return from == LifecycleState::Running ? TaskKind::StopInstance : TaskKind::UninstallInstance;
}

// The instance-level task chain that moves `id` stepwise from `from` to `to`.
std::vector<Task> stepChain(InstanceId id, LifecycleState from, LifecycleState to) {
    std::vector<Task> chain;
    int s = stateRank(from);
    const int goal = stateRank(to);
    while (s < goal) {
        chain.push_back(instanceTask(raiseStepKind(static_cast<LifecycleState>(s)), id));
        ++s;
    }
    while (s > goal) {
        chain.push_back(instanceTask(lowerStepKind(static_cast<LifecycleState>(s)), id));
        --s;
    }
    return chain;
}

std::vector<Decomposition> decomposeComponentTask(const Task& task, const Configuration& config,
                                                  const SearchLimits& limits) {
    std::vector<Decomposition> out;
    const int componentIdx = config.catalog->indexOf(task.component);
    if (componentIdx < 0) return out;
    const auto [target, upward] = shapeOf(task.kind);

    // Reuse an instance already at the target state.
    for (const Instance& inst : config.instances) {
        if (inst.component == componentIdx && inst.state == target) {
            out.push_back({"already-" + std::string(stateName(target)), {}});
            break;
        }
    }
    // Advance (or lower) an existing instance, ascending id.
    for (const Instance& inst : config.instances) {
        if (inst.component != componentIdx) continue;
        const bool suitable = upward ? stateRank(inst.state) < stateRank(target)
                                     : stateRank(inst.state) > stateRank(target);
        if (!suitable) continue;
        out.push_back({"transition-existing", stepChain(inst.id, inst.state, target)});
    }
    // Create a fresh instance. Tried after reuse so plans stay short, but
    // kept available as a backtrack alternative even when instances exist.
    if (config.countOf(componentIdx) < limits.maxInstancesPerComponent) {
        std::vector<Task> subtasks;
        subtasks.push_back(primitiveTask(makeCreate(task.component)));
        const InstanceId promised = config.counter;
        if (upward) {
            for (Task& step : stepChain(promised, LifecycleState::Uninstalled, target)) {
                subtasks.push_back(std::move(step));
            }
        } else {
            subtasks.push_back(instanceTask(task.kind == TaskKind::Stop
                                                ? TaskKind::StopInstance
                                                : TaskKind::UninstallInstance,
                                            promised));
        }
        out.push_back({"create-new", std::move(subtasks)});
    }
    return out;
}

struct InstanceTaskShape {
    LifecycleState target;
    ActionKind transition;
    bool deactivatesPorts;  // the transition can drop provides, so unbind first
};

InstanceTaskShape instanceShapeOf(TaskKind kind) {
    switch (kind) {
        case TaskKind::InstallInstance:
            return {LifecycleState::Installed, ActionKind::Start, false};
        case TaskKind::RunInstance: return {LifecycleState::Running, ActionKind::Run, true};
        case TaskKind::StopInstance: return {LifecycleState::Installed, ActionKind::Stop, true};
        case TaskKind::UninstallInstance:
            return {LifecycleState::Uninstalled, ActionKind::Terminate, true};
        default: break;
    }
    throw ModelError("not an instance-level task");
}

std::vector<Decomposition> decomposeInstanceTask(const Task& task, const Configuration& config) {
    std::vector<Decomposition> out;
    const Instance* inst = config.findInstance(task.instance);
    if (!inst) return out;
    const InstanceTaskShape shape = instanceShapeOf(task.kind);

    std::vector<std::string> unsatisfied;
    for (const std::string& p : requiresOf(config.typeOf(*inst), shape.target)) {
        if (!satisfied(config, p, inst->id)) unsatisfied.push_back(p);
    }
    if (unsatisfied.empty()) {
        // All requirements of the target state hold; transition, deactivating
        // ports the target state no longer provides.
        std::vector<Task> subtasks;
        if (shape.deactivatesPorts) {
            subtasks.push_back(unbindPortsTask(inst->id, shape.target));
        }
        subtasks.push_back(primitiveTask(makeTransition(shape.transition, inst->id)));
        out.push_back({"transition", std::move(subtasks)});
    } else {
        // Activate the first missing requirement, then try again. Port order
        // is immaterial: the recursion explores every way of satisfying the
        // remaining ports whatever port goes first, so alternative orders
        // would only re-explore the same combinations.
        out.push_back({"satisfy-" + unsatisfied.front(),
                       {satisfyPortTask(unsatisfied.front(), inst->id, shape.target), task}});
    }
    return out;
}

bool providesInSomeState(const ComponentType& c, const std::string& port,
                         std::vector<LifecycleState>* states = nullptr) {
    bool any = false;
    for (LifecycleState s : {LifecycleState::Installed, LifecycleState::Running}) {
        if (providesOf(c, s).count(port) > 0) {
            any = true;
            if (states) states->push_back(s);
        }
    }
    return any;
}

// True when dropping to / rising toward `next` is barred for instance j:
// either a binding j provides would have to be severed while its requirer's
// current state still needs it, or the one-step transition itself is
// strict-inapplicable.
bool transitionStepBlocked(const Configuration& config, const Instance& j,
                           LifecycleState next, ActionKind step) {
    for (const Binding& b : config.bindings) {
        if (b.provider != j.id) continue;
        if (providesOf(config.typeOf(j), next).count(b.port) > 0) continue;
        const Instance* r = config.findInstance(b.requirer);
        if (r && requiresOf(config.typeOf(*r), r->state).count(b.port) > 0) return true;
    }
    return strictViolation(config, makeTransition(step, j.id)).has_value();
}

bool cannotSupplyWithoutBlockedTransition(const Configuration& config, const Instance& j,
                                          const std::string& port) {
    const ComponentType& type = config.typeOf(j);
    for (LifecycleState s : {LifecycleState::Installed, LifecycleState::Running}) {
        if (providesOf(type, s).count(port) == 0 || s == j.state) continue;
        const bool up = stateRank(s) > stateRank(j.state);
        const LifecycleState next =
            static_cast<LifecycleState>(stateRank(j.state) + (up ? 1 : -1));
        ActionKind step;
        if (up) {
            step = j.state == LifecycleState::Uninstalled ? ActionKind::Start : ActionKind::Run;
        } else {
            step = j.state == LifecycleState::Running ? ActionKind::Stop : ActionKind::Terminate;
        }
        if (!transitionStepBlocked(config, j, next, step)) return false;
    }
    return true;
}

std::vector<Decomposition> decomposeSatisfyPort(const Task& task, const Configuration& config,
                                                const SearchLimits& limits) {
    std::vector<Decomposition> out;
    const std::string& port = task.port;

    // An instance already offering the port: just bind to it.
    for (const Instance& j : config.instances) {
        if (j.id == task.instance) continue;
        if (config.activeProvides.count({port, j.id}) == 0) continue;
        out.push_back({"bind-existing", {primitiveTask(makeBind(port, task.instance, j.id))}});
    }
    // Bring a provider component to the state in which it offers the port.
    for (const ComponentType& c : config.catalog->components) {
        if (providesOf(c, LifecycleState::Installed).count(port) > 0) {
            out.push_back({"install-provider",
                           {componentTask(TaskKind::Install, c.name),
                            bindToProviderTask(port, task.instance, c.name)}});
        }
    }
    for (const ComponentType& c : config.catalog->components) {
        if (providesOf(c, LifecycleState::Running).count(port) > 0) {
            out.push_back({"run-provider",
                           {componentTask(TaskKind::Run, c.name),
                            bindToProviderTask(port, task.instance, c.name)}});
        }
    }
    // Duplication: an existing provider instance is pinned by its bindings
    // and cannot reach a state offering the port, so deploy a sibling.
    for (const ComponentType& c : config.catalog->components) {
        std::vector<LifecycleState> providingStates;
        if (!providesInSomeState(c, port, &providingStates)) continue;
        const int componentIdx = config.catalog->indexOf(c.name);
        if (config.countOf(componentIdx) >= limits.maxInstancesPerComponent) continue;
        bool pinnedSibling = false;
        for (const Instance& j : config.instances) {
            if (j.component != componentIdx || j.state == LifecycleState::Uninstalled) continue;
            if (config.activeProvides.count({port, j.id}) > 0) continue;
            const bool hasBoundProvide =
                std::any_of(config.bindings.begin(), config.bindings.end(),
                            [&](const Binding& b) { return b.provider == j.id; });
            if (hasBoundProvide && cannotSupplyWithoutBlockedTransition(config, j, port)) {
                pinnedSibling = true;
                break;
            }
        }
        if (!pinnedSibling) continue;
        for (LifecycleState s : providingStates) {
            std::vector<Task> subtasks;
            subtasks.push_back(primitiveTask(makeCreate(c.name)));
            const InstanceId promised = config.counter;
            for (Task& step : stepChain(promised, LifecycleState::Uninstalled, s)) {
                subtasks.push_back(std::move(step));
            }
            subtasks.push_back(primitiveTask(makeBind(port, task.instance, promised)));
            out.push_back({"duplicate-provider", std::move(subtasks)});
        }
    }
    return out;
}

std::vector<Decomposition> decomposeBindToProvider(const Task& task,
                                                   const Configuration& config) {
    std::vector<Decomposition> out;
    const int componentIdx = config.catalog->indexOf(task.component);
    if (componentIdx < 0) return out;
    // Lowest-id active provider first; later ids stay as backtrack
    // alternatives.
    for (const Instance& j : config.instances) {
        if (j.component != componentIdx || j.id == task.instance) continue;
        if (config.activeProvides.count({task.port, j.id}) == 0) continue;
        out.push_back({"bind-provider", {primitiveTask(makeBind(task.port, task.instance, j.id))}});
    }
    return out;
}

std::vector<Decomposition> decomposeUnbindPorts(const Task& task, const Configuration& config) {
    std::vector<Decomposition> out;
    const Instance* inst = config.findInstance(task.instance);
    if (!inst) return out;
    const PortSet& kept = providesOf(config.typeOf(*inst), task.target);

    bool anyDroppable = false;
    for (const Binding& b : config.bindings) {  // set order: (port, requirer, provider)
        if (b.provider != inst->id || kept.count(b.port) > 0) continue;
        anyDroppable = true;
        const Instance* r = config.findInstance(b.requirer);
        if (r && requiresOf(config.typeOf(*r), r->state).count(b.port) > 0) {
            // The requirer still needs this port in its current state; the
            // binding must not be severed. Try another droppable binding.
            continue;
        }
        // Unbind order among droppable bindings cannot affect the outcome
        // (requirer states do not change), so one alternative suffices.
        out.push_back({"unbind-and-recurse",
                       {primitiveTask(makeUnbind(b.port, b.requirer, b.provider)), task}});
        return out;
    }
    if (!anyDroppable) {
        out.push_back({"nothing-to-unbind", {}});
    }
    // anyDroppable with every droppable binding pinned: no method applies.
    return out;
}

}  // namespace

std::vector<Decomposition> decompositions(const Task& task, const Configuration& config,
                                          const SearchLimits& limits) {
    switch (task.kind) {
        case TaskKind::Install:
        case TaskKind::Run:
        case TaskKind::Stop:
        case TaskKind::Uninstall:
            return decomposeComponentTask(task, config, limits);
        case TaskKind::InstallInstance:
        case TaskKind::RunInstance:
        case TaskKind::StopInstance:
        case TaskKind::UninstallInstance:
            return decomposeInstanceTask(task, config);
        case TaskKind::SatisfyPort:
            return decomposeSatisfyPort(task, config, limits);
        case TaskKind::BindToProvider:
            return decomposeBindToProvider(task, config);
        case TaskKind::UnbindPorts:
            return decomposeUnbindPorts(task, config);
        case TaskKind::Primitive:
            throw ModelError("primitive tasks have no decompositions");
    }
    return {};
}

}  // namespace deploy
