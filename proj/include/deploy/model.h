#ifndef DEPLOY_MODEL_H
#define DEPLOY_MODEL_H

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deploy {

// Raised when an operation is handed arguments that violate its contract,
// e.g. a configuration referencing an instance id that does not exist.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Component lifecycle. The order is total: Uninstalled < Installed < Running,
// and every deployment action moves an instance at most one step.
enum class LifecycleState { Uninstalled = 0, Installed = 1, Running = 2 };

constexpr int kStateCount = 3;

constexpr int stateRank(LifecycleState s) { return static_cast<int>(s); }

const char* stateName(LifecycleState s);
std::optional<LifecycleState> stateFromName(std::string_view name);

using PortSet = std::set<std::string>;

// An abstract software component: a name plus the static require/provide
// port tables, one set per lifecycle state. Both tables are empty for
// Uninstalled, and requirePorts[s] and providePorts[s] never intersect.
struct ComponentType {
    std::string name;
    std::array<PortSet, kStateCount> requirePorts;
    std::array<PortSet, kStateCount> providePorts;

    bool operator==(const ComponentType&) const = default;
};

const PortSet& requiresOf(const ComponentType& c, LifecycleState s);
const PortSet& providesOf(const ComponentType& c, LifecycleState s);

// The immutable problem vocabulary: component types (sorted by name) and the
// declared port names. Shared by every configuration derived from a problem.
struct Catalog {
    std::vector<ComponentType> components;
    std::set<std::string> ports;

    const ComponentType* find(std::string_view name) const;
    int indexOf(std::string_view name) const;  // -1 when absent

    bool operator==(const Catalog&) const = default;
};

using CatalogPtr = std::shared_ptr<const Catalog>;

using InstanceId = int;

struct Instance {
    InstanceId id = 0;
    int component = -1;  // index into Catalog::components
    LifecycleState state = LifecycleState::Uninstalled;

    bool operator==(const Instance&) const = default;
};

// A require port of `requirer` wired to the same-named provide port of
// `provider`. requirer != provider always.
struct Binding {
    std::string port;
    InstanceId requirer = 0;
    InstanceId provider = 0;

    auto operator<=>(const Binding&) const = default;
};

using ActiveProvide = std::pair<std::string, InstanceId>;

// Full world state: the catalog, the live instances, which provide ports are
// currently active, the bindings, and the id counter for new instances.
struct Configuration {
    CatalogPtr catalog;
    std::vector<Instance> instances;  // sorted by id, ids unique
    std::set<ActiveProvide> activeProvides;
    std::set<Binding> bindings;
    int counter = 0;

    const Instance* findInstance(InstanceId id) const;
    Instance* findInstance(InstanceId id);
    const ComponentType& typeOf(const Instance& inst) const;
    // Throws ModelError when the id is unknown.
    const Instance& instanceAt(InstanceId id) const;
    int countOf(int componentIndex) const;
    std::vector<InstanceId> instancesOf(int componentIndex) const;

    bool operator==(const Configuration& other) const;
};

// True iff some binding (port, requirer, j) exists with (port, j) active.
// Throws ModelError when `requirer` does not exist in the configuration.
bool satisfied(const Configuration& config, const std::string& port, InstanceId requirer);

struct Violation {
    std::string message;
    std::string port;         // offending port, when one is involved
    InstanceId instance = -1;  // offending instance, when one is involved
};

// Checks, in order: structural integrity (catalog/instance/binding/counter
// references), that every instance's current-state require ports are
// satisfied, and that activeProvides is exactly the set derived from the
// instance states. An empty result means the configuration is well-formed.
std::vector<Violation> wellFormednessViolations(const Configuration& config);
bool isWellFormed(const Configuration& config);

// The set { (p, i) : p in provides(type(i), state(i)) }.
std::set<ActiveProvide> derivedActiveProvides(const Configuration& config);

// Canonical one-line encoding of a configuration; equal strings iff equal
// configurations (catalog identity aside). Used for search-state dedup.
std::string fingerprint(const Configuration& config);

}  // namespace deploy

#endif
