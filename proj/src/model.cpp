#include "deploy/model.h"

#include <algorithm>
#include <sstream>

namespace deploy {

const char* stateName(LifecycleState s) {
    switch (s) {
        case LifecycleState::Uninstalled: return "uninstalled";
        case LifecycleState::Installed: return "installed";
        case LifecycleState::Running: return "running";
    }
    return "?";
}

std::optional<LifecycleState> stateFromName(std::string_view name) {
    if (name == "uninstalled") return LifecycleState::Uninstalled;
    if (name == "installed") return LifecycleState::Installed;
    if (name == "running") return LifecycleState::Running;
    return std::nullopt;
}

const PortSet& requiresOf(const ComponentType& c, LifecycleState s) {
    return c.requirePorts[stateRank(s)];
}

const PortSet& providesOf(const ComponentType& c, LifecycleState s) {
    return c.providePorts[stateRank(s)];
}

const ComponentType* Catalog::find(std::string_view name) const {
    int idx = indexOf(name);
    return idx < 0 ? nullptr : &components[idx];
}

int Catalog::indexOf(std::string_view name) const {
    for (size_t i = 0; i < components.size(); ++i) {
        if (components[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

const Instance* Configuration::findInstance(InstanceId id) const {
    auto it = std::lower_bound(instances.begin(), instances.end(), id,
                               [](const Instance& a, InstanceId b) { return a.id < b; });
    if (it == instances.end() || it->id != id) return nullptr;
    return &*it;
}

Instance* Configuration::findInstance(InstanceId id) {
    return const_cast<Instance*>(std::as_const(*this).findInstance(id));
}

const ComponentType& Configuration::typeOf(const Instance& inst) const {
    return catalog->components.at(static_cast<size_t>(inst.component));
}

const Instance& Configuration::instanceAt(InstanceId id) const {
    const Instance* inst = findInstance(id);
    if (!inst) {
        throw ModelError("configuration has no instance with id " + std::to_string(id));
    }
    return *inst;
}

int Configuration::countOf(int componentIndex) const {
    int n = 0;
    for (const Instance& inst : instances) {
        if (inst.component == componentIndex) ++n;
    }
    return n;
}

std::vector<InstanceId> Configuration::instancesOf(int componentIndex) const {
    std::vector<InstanceId> ids;
    for (const Instance& inst : instances) {
        if (inst.component == componentIndex) ids.push_back(inst.id);
    }
    return ids;
}

bool Configuration::operator==(const Configuration& other) const {
    bool sameCatalog =
        catalog == other.catalog || (catalog && other.catalog && *catalog == *other.catalog);
    return sameCatalog && instances == other.instances &&
           activeProvides == other.activeProvides && bindings == other.bindings &&
           counter == other.counter;
}

bool satisfied(const Configuration& config, const std::string& port, InstanceId requirer) {
    config.instanceAt(requirer);
    for (const Binding& b : config.bindings) {
        if (b.port == port && b.requirer == requirer &&
            config.activeProvides.count({b.port, b.provider}) > 0) {
            return true;
        }
    }
    return false;
}

std::set<ActiveProvide> derivedActiveProvides(const Configuration& config) {
    std::set<ActiveProvide> derived;
    for (const Instance& inst : config.instances) {
        for (const std::string& p : providesOf(config.typeOf(inst), inst.state)) {
            derived.insert({p, inst.id});
        }
    }
    return derived;
}

std::vector<Violation> wellFormednessViolations(const Configuration& config) {
    std::vector<Violation> out;
    if (!config.catalog) {
        out.push_back({"configuration has no catalog", "", -1});
        return out;
    }
    const int numComponents = static_cast<int>(config.catalog->components.size());

    // Structural checks first; the derived checks below assume these hold.
    InstanceId prevId = -1;
    bool structuralOk = true;
    for (const Instance& inst : config.instances) {
        if (inst.id <= prevId) {
            out.push_back({"instance ids are not strictly increasing near id " +
                               std::to_string(inst.id),
                           "", inst.id});
            structuralOk = false;
        }
        prevId = inst.id;
        if (inst.component < 0 || inst.component >= numComponents) {
            out.push_back({"instance " + std::to_string(inst.id) +
                               " references a component type outside the catalog",
                           "", inst.id});
            structuralOk = false;
        }
        if (inst.id >= config.counter) {
            out.push_back({"counter " + std::to_string(config.counter) +
                               " does not dominate instance id " + std::to_string(inst.id),
                           "", inst.id});
        }
    }
    for (const Binding& b : config.bindings) {
        const Instance* r = config.findInstance(b.requirer);
        const Instance* q = config.findInstance(b.provider);
        if (!r || !q) {
            out.push_back({"binding (" + b.port + ", " + std::to_string(b.requirer) + ", " +
                               std::to_string(b.provider) + ") references a missing instance",
                           b.port, !r ? b.requirer : b.provider});
            continue;
        }
        if (b.requirer == b.provider) {
            out.push_back({"binding (" + b.port + ") connects instance " +
                               std::to_string(b.requirer) + " to itself",
                           b.port, b.requirer});
        }
        if (!structuralOk) continue;
        bool requiredSomewhere = false;
        bool providedSomewhere = false;
        for (int s = 0; s < kStateCount; ++s) {
            requiredSomewhere |= config.typeOf(*r).requirePorts[s].count(b.port) > 0;
            providedSomewhere |= config.typeOf(*q).providePorts[s].count(b.port) > 0;
        }
        if (!requiredSomewhere) {
            out.push_back({"binding port '" + b.port + "' is required in no state of " +
                               config.typeOf(*r).name,
                           b.port, b.requirer});
        }
        if (!providedSomewhere) {
            out.push_back({"binding port '" + b.port + "' is provided in no state of " +
                               config.typeOf(*q).name,
                           b.port, b.provider});
        }
    }
    if (!structuralOk) return out;

    // Clause (a): every require port of every instance's current state is
    // bound to an active provider.
    for (const Instance& inst : config.instances) {
        for (const std::string& p : requiresOf(config.typeOf(inst), inst.state)) {
            if (!satisfied(config, p, inst.id)) {
                out.push_back({"instance " + std::to_string(inst.id) + " (" +
                                   config.typeOf(inst).name + ") is " + stateName(inst.state) +
                                   " but require port '" + p +
                                   "' is not bound to an active provider",
                               p, inst.id});
            }
        }
    }

    // Clause (b): activeProvides mirrors the instance states exactly.
    const std::set<ActiveProvide> derived = derivedActiveProvides(config);
    for (const ActiveProvide& ap : config.activeProvides) {
        if (derived.count(ap) == 0) {
            out.push_back({"active provide (" + ap.first + ", " + std::to_string(ap.second) +
                               ") is not justified by the instance's state",
                           ap.first, ap.second});
        }
    }
    for (const ActiveProvide& ap : derived) {
        if (config.activeProvides.count(ap) == 0) {
            out.push_back({"provide port (" + ap.first + ", " + std::to_string(ap.second) +
                               ") should be active in state " +
                               stateName(config.instanceAt(ap.second).state) + " but is not",
                           ap.first, ap.second});
        }
    }
    return out;
}

bool isWellFormed(const Configuration& config) {
    return wellFormednessViolations(config).empty();
}

std::string fingerprint(const Configuration& config) {
    std::ostringstream os;
    for (const Instance& inst : config.instances) {
        os << inst.id << ':' << inst.component << ':' << stateRank(inst.state) << ';';
    }
    os << '|';
    for (const ActiveProvide& ap : config.activeProvides) {
        os << ap.first << ':' << ap.second << ';';
    }
    os << '|';
    for (const Binding& b : config.bindings) {
        os << b.port << ':' << b.requirer << ':' << b.provider << ';';
    }
    os << '|' << config.counter;
    return os.str();
}

}  // namespace deploy
