#include "deploy/actions.h"

#include <algorithm>

namespace deploy {

const char* actionKindName(ActionKind k) {
    switch (k) {
        case ActionKind::CreateInstance: return "createInstance";
        case ActionKind::Start: return "start";
        case ActionKind::Run: return "run";
        case ActionKind::Stop: return "stop";
        case ActionKind::Terminate: return "terminate";
        case ActionKind::Bind: return "bind";
        case ActionKind::Unbind: return "unbind";
    }
    return "?";
}

std::optional<ActionKind> actionKindFromName(std::string_view name) {
    for (ActionKind k : {ActionKind::CreateInstance, ActionKind::Start, ActionKind::Run,
                         ActionKind::Stop, ActionKind::Terminate, ActionKind::Bind,
                         ActionKind::Unbind}) {
        if (name == actionKindName(k)) return k;
    }
    return std::nullopt;
}

DeploymentAction makeCreate(std::string component) {
    DeploymentAction a;
    a.kind = ActionKind::CreateInstance;
    a.component = std::move(component);
    return a;
}

DeploymentAction makeTransition(ActionKind kind, InstanceId instance) {
    DeploymentAction a;
    a.kind = kind;
    a.instance = instance;
    return a;
}

DeploymentAction makeBind(std::string port, InstanceId requirer, InstanceId provider) {
    DeploymentAction a;
    a.kind = ActionKind::Bind;
    a.port = std::move(port);
    a.requirer = requirer;
    a.provider = provider;
    return a;
}

DeploymentAction makeUnbind(std::string port, InstanceId requirer, InstanceId provider) {
    DeploymentAction a = makeBind(std::move(port), requirer, provider);
    a.kind = ActionKind::Unbind;
    return a;
}

std::string toText(const DeploymentAction& a) {
    switch (a.kind) {
        case ActionKind::CreateInstance:
            return "(createInstance " + a.component + ")";
        case ActionKind::Start:
        case ActionKind::Run:
        case ActionKind::Stop:
        case ActionKind::Terminate:
            return std::string("(") + actionKindName(a.kind) + " i" +
                   std::to_string(a.instance) + ")";
        case ActionKind::Bind:
        case ActionKind::Unbind:
            return std::string("(") + actionKindName(a.kind) + " " + a.port + " i" +
                   std::to_string(a.requirer) + " i" + std::to_string(a.provider) + ")";
    }
    return "(?)";
}

namespace {

// Target state of a lifecycle transition action, and the state it leaves.
LifecycleState transitionSource(ActionKind k) {
    switch (k) {
        case ActionKind::Start: return LifecycleState::Uninstalled;
        case ActionKind::Run: return LifecycleState::Installed;
        case ActionKind::Stop: return LifecycleState::Running;
        case ActionKind::Terminate: return LifecycleState::Installed;
        default: break;
    }
    throw ModelError("not a transition action");
}

LifecycleState transitionTarget(ActionKind k) {
    switch (k) {
        case ActionKind::Start: return LifecycleState::Installed;
        case ActionKind::Run: return LifecycleState::Running;
        case ActionKind::Stop: return LifecycleState::Installed;
        case ActionKind::Terminate: return LifecycleState::Uninstalled;
        default: break;
    }
    throw ModelError("not a transition action");
}

bool requiredInSomeState(const ComponentType& c, const std::string& port) {
    for (int s = 0; s < kStateCount; ++s) {
        if (c.requirePorts[s].count(port) > 0) return true;
    }
    return false;
}

}  // namespace

std::optional<std::string> relaxedBlocker(const Configuration& config,
                                          const DeploymentAction& a) {
    switch (a.kind) {
        case ActionKind::CreateInstance: {
            if (!config.catalog || config.catalog->indexOf(a.component) < 0) {
                return "component '" + a.component + "' is not in the catalog";
            }
            return std::nullopt;
        }
        case ActionKind::Start:
        case ActionKind::Run:
        case ActionKind::Stop:
        case ActionKind::Terminate: {
            const Instance* inst = config.findInstance(a.instance);
            if (!inst) {
                return "instance " + std::to_string(a.instance) + " does not exist";
            }
            const LifecycleState needed = transitionSource(a.kind);
            if (inst->state != needed) {
                return std::string(actionKindName(a.kind)) + " needs instance " +
                       std::to_string(a.instance) + " to be " + stateName(needed) +
                       ", but it is " + stateName(inst->state);
            }
            return std::nullopt;
        }
        case ActionKind::Bind: {
            if (a.requirer == a.provider) return "bind requirer equals provider";
            const Instance* r = config.findInstance(a.requirer);
            if (!r) return "requirer instance " + std::to_string(a.requirer) + " does not exist";
            const Instance* q = config.findInstance(a.provider);
            if (!q) return "provider instance " + std::to_string(a.provider) + " does not exist";
            if (config.activeProvides.count({a.port, a.provider}) == 0) {
                return "port '" + a.port + "' of instance " + std::to_string(a.provider) +
                       " is not active";
            }
            if (!requiredInSomeState(config.typeOf(*r), a.port)) {
                return "component " + config.typeOf(*r).name + " requires port '" + a.port +
                       "' in no state";
            }
            if (config.bindings.count({a.port, a.requirer, a.provider}) > 0) {
                return "binding already present";
            }
            return std::nullopt;
        }
        case ActionKind::Unbind: {
            if (config.bindings.count({a.port, a.requirer, a.provider}) == 0) {
                return "binding (" + a.port + ", " + std::to_string(a.requirer) + ", " +
                       std::to_string(a.provider) + ") is not present";
            }
            return std::nullopt;
        }
    }
    return "unknown action kind";
}

bool applicableRelaxed(const Configuration& config, const DeploymentAction& a) {
    return !relaxedBlocker(config, a).has_value();
}

Configuration applyRelaxed(const Configuration& config, const DeploymentAction& a) {
    if (auto blocker = relaxedBlocker(config, a)) {
        throw ModelError("cannot apply " + toText(a) + ": " + *blocker);
    }
    Configuration next = config;
    switch (a.kind) {
        case ActionKind::CreateInstance: {
            Instance inst;
            inst.id = config.counter;  // pre-increment counter value
            inst.component = config.catalog->indexOf(a.component);
            inst.state = LifecycleState::Uninstalled;
            next.instances.push_back(inst);
            next.counter = config.counter + 1;
            break;
        }
        case ActionKind::Start:
        case ActionKind::Run:
        case ActionKind::Stop:
        case ActionKind::Terminate: {
            Instance* inst = next.findInstance(a.instance);
            inst->state = transitionTarget(a.kind);
            // The instance's active set becomes exactly the target state's
            // provides: ports no longer provided are dropped, new ones added.
            std::erase_if(next.activeProvides,
                          [&](const ActiveProvide& ap) { return ap.second == a.instance; });
            for (const std::string& p : providesOf(next.typeOf(*inst), inst->state)) {
                next.activeProvides.insert({p, a.instance});
            }
            break;
        }
        case ActionKind::Bind:
            next.bindings.insert({a.port, a.requirer, a.provider});
            break;
        case ActionKind::Unbind:
            next.bindings.erase({a.port, a.requirer, a.provider});
            break;
    }
    return next;
}

std::optional<std::string> strictViolation(const Configuration& config,
                                           const DeploymentAction& a) {
    if (auto blocker = relaxedBlocker(config, a)) {
        return "not applicable: " + *blocker;
    }
    const std::vector<Violation> violations = wellFormednessViolations(applyRelaxed(config, a));
    if (violations.empty()) return std::nullopt;
    return violations.front().message;
}

bool applicableStrict(const Configuration& config, const DeploymentAction& a) {
    return !strictViolation(config, a).has_value();
}

StrictOutcome applyStrict(const Configuration& config, const DeploymentAction& a) {
    StrictOutcome out;
    if (auto violation = strictViolation(config, a)) {
        out.violation = *violation;
        return out;
    }
    out.config = applyRelaxed(config, a);
    return out;
}

std::vector<DeploymentAction> enumerateGroundActions(const Configuration& config,
                                                     int maxInstancesPerComponent) {
    std::vector<DeploymentAction> out;
    if (!config.catalog) return out;

    for (const ComponentType& c : config.catalog->components) {
        if (config.countOf(config.catalog->indexOf(c.name)) < maxInstancesPerComponent) {
            out.push_back(makeCreate(c.name));
        }
    }
    for (ActionKind k : {ActionKind::Start, ActionKind::Run, ActionKind::Stop,
                         ActionKind::Terminate}) {
        for (const Instance& inst : config.instances) {
            DeploymentAction a = makeTransition(k, inst.id);
            if (applicableRelaxed(config, a)) out.push_back(a);
        }
    }
    for (const Instance& r : config.instances) {
        for (const Instance& q : config.instances) {
            if (r.id == q.id) continue;
            for (const std::string& p : config.catalog->ports) {
                DeploymentAction a = makeBind(p, r.id, q.id);
                if (applicableRelaxed(config, a)) out.push_back(a);
            }
        }
    }
    for (const Binding& b : config.bindings) {
        out.push_back(makeUnbind(b.port, b.requirer, b.provider));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace deploy
