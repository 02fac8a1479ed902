#ifndef DEPLOY_HTN_H
#define DEPLOY_HTN_H

#include <chrono>
#include <string>
#include <vector>

#include "deploy/actions.h"
#include "deploy/problem.h"

namespace deploy {

// Resource bounds for decomposition and search. On-demand instance creation
// and method recursion make every one of these necessary for termination.
struct SearchLimits {
    int maxDepth = 500;
    int maxInstancesPerComponent = 3;
    int maxPlanLength = 200;
    std::chrono::milliseconds timeBudget{30000};
};

enum class TaskKind {
    // Component-level tasks (carry a component name).
    Install,
    Run,
    Stop,
    Uninstall,
    // Instance-level tasks (carry an instance id).
    InstallInstance,
    RunInstance,
    StopInstance,
    UninstallInstance,
    // Port work.
    SatisfyPort,      // port, instance, targetState
    BindToProvider,   // port, instance, component
    UnbindPorts,      // instance, targetState
    // A ground deployment action.
    Primitive,
};

struct Task {
    TaskKind kind = TaskKind::Primitive;
    std::string component;
    InstanceId instance = -1;
    std::string port;
    LifecycleState target = LifecycleState::Uninstalled;
    DeploymentAction action;

    bool operator==(const Task&) const = default;
};

Task componentTask(TaskKind kind, std::string component);
Task instanceTask(TaskKind kind, InstanceId instance);
Task satisfyPortTask(std::string port, InstanceId instance, LifecycleState target);
Task bindToProviderTask(std::string port, InstanceId instance, std::string component);
Task unbindPortsTask(InstanceId instance, LifecycleState target);
Task primitiveTask(DeploymentAction action);

Task goalToTask(const Goal& goal);

bool isCompound(const Task& task);
std::string toText(const Task& task);

// One applicable method instantiation: the subtasks that replace the task,
// plus the method name for diagnostics.
struct Decomposition {
    std::string method;
    std::vector<Task> subtasks;
};

// Every applicable method instantiation for a compound task, in priority
// order (reuse before creation, creation before duplication), with
// deterministic witness enumeration: instances by ascending id, components
// and ports lexicographic. An empty result is a dead end. Pure function.
std::vector<Decomposition> decompositions(const Task& task, const Configuration& config,
                                          const SearchLimits& limits);

}  // namespace deploy

#endif
