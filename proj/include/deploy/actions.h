#ifndef DEPLOY_ACTIONS_H
#define DEPLOY_ACTIONS_H

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "deploy/model.h"

namespace deploy {

enum class ActionKind {
    CreateInstance = 0,
    Start,
    Run,
    Stop,
    Terminate,
    Bind,
    Unbind,
};

const char* actionKindName(ActionKind k);
std::optional<ActionKind> actionKindFromName(std::string_view name);

// One ground deployment action. Exactly the argument group matching `kind`
// is meaningful; the rest stay at their defaults. Field order gives the
// enumeration order: kind, then component, instance and binding ids, then
// the port name.
struct DeploymentAction {
    ActionKind kind = ActionKind::CreateInstance;
    std::string component;      // CreateInstance
    InstanceId instance = -1;   // Start/Run/Stop/Terminate
    InstanceId requirer = -1;   // Bind/Unbind
    InstanceId provider = -1;   // Bind/Unbind
    std::string port;           // Bind/Unbind

    auto operator<=>(const DeploymentAction&) const = default;
};

// A deployment run: a numbered sequence of ground actions.
struct Plan {
    std::vector<DeploymentAction> steps;

    bool operator==(const Plan&) const = default;
};

DeploymentAction makeCreate(std::string component);
DeploymentAction makeTransition(ActionKind kind, InstanceId instance);
DeploymentAction makeBind(std::string port, InstanceId requirer, InstanceId provider);
DeploymentAction makeUnbind(std::string port, InstanceId requirer, InstanceId provider);

// Diagnostic form, e.g. "(bind httpd i0 i1)".
std::string toText(const DeploymentAction& a);

// Relaxed applicability: the action-level preconditions only. Returns the
// failing clause, or nullopt when the action is applicable.
std::optional<std::string> relaxedBlocker(const Configuration& config,
                                          const DeploymentAction& a);
bool applicableRelaxed(const Configuration& config, const DeploymentAction& a);

// Applies the action under relaxed semantics. All effect reads evaluate
// against the pre-action configuration; createInstance assigns the
// pre-increment counter value as the new id. Throws ModelError when the
// action is not relaxed-applicable.
Configuration applyRelaxed(const Configuration& config, const DeploymentAction& a);

// Strict applicability: relaxed-applicable and the post-action configuration
// is well-formed. Returns a violation description, or nullopt when ok.
std::optional<std::string> strictViolation(const Configuration& config,
                                           const DeploymentAction& a);
bool applicableStrict(const Configuration& config, const DeploymentAction& a);

struct StrictOutcome {
    std::optional<Configuration> config;  // set iff the action was applicable
    std::string violation;                // set iff it was not

    bool ok() const { return config.has_value(); }
};

StrictOutcome applyStrict(const Configuration& config, const DeploymentAction& a);

// Every relaxed-applicable ground action, duplicate-free, in a stable order
// (kind, then argument ids, then port). createInstance(c) is included only
// while the instance count of c is below the bound.
std::vector<DeploymentAction> enumerateGroundActions(const Configuration& config,
                                                     int maxInstancesPerComponent);

}  // namespace deploy

#endif
