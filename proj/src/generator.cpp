#include "deploy/generator.h"

#include <algorithm>

namespace deploy {

std::optional<Difficulty> difficultyFromName(std::string_view name) {
    if (name == "easy") return Difficulty::Easy;
    if (name == "medium") return Difficulty::Medium;
    if (name == "hard") return Difficulty::Hard;
    return std::nullopt;
}

const char* difficultyName(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        case Difficulty::Hard: return "hard";
    }
    return "?";
}

GeneratorSpec presetSpec(Difficulty d, int numComponents, int numPorts, std::uint64_t seed,
                         int goalCount) {
    GeneratorSpec spec;
    spec.numComponents = numComponents;
    spec.numPorts = numPorts;
    spec.seed = seed;
    spec.goalCount = goalCount;
    switch (d) {
        case Difficulty::Easy:
            spec.requireDensity = 0.1;
            spec.provideDensity = 0.5;
            spec.cycleInjection = false;
            break;
        case Difficulty::Medium:
            spec.requireDensity = 0.25;
            spec.provideDensity = 0.4;
            spec.cycleInjection = false;
            break;
        case Difficulty::Hard:
            spec.requireDensity = 0.35;
            spec.provideDensity = 0.3;
            spec.cycleInjection = true;
            break;
    }
    return spec;
}

namespace {

void validateSpec(const GeneratorSpec& spec) {
    if (spec.numComponents < 1) throw ModelError("generator needs at least one component");
    if (spec.numComponents > 26) {
        throw ModelError("at most 26 components: plan tokens need distinct component initials");
    }
    if (spec.numPorts < 0) throw ModelError("negative port count");
    if (spec.requireDensity < 0.0 || spec.requireDensity > 1.0 || spec.provideDensity < 0.0 ||
        spec.provideDensity > 1.0) {
        throw ModelError("densities must lie in [0, 1]");
    }
    if (spec.goalCount < 0 || spec.goalCount > spec.numComponents) {
        throw ModelError("goal count must lie in [0, number of components]");
    }
    if (spec.numPorts == 0 && (spec.requireDensity > 0.0 || spec.provideDensity > 0.0)) {
        throw ModelError("positive port densities need at least one port");
    }
    if (spec.cycleInjection && (spec.numComponents < 2 || spec.numPorts < 2)) {
        throw ModelError("cycle injection needs at least two components and two ports");
    }
}

}  // namespace

Problem generateProblem(const GeneratorSpec& spec) {
    validateSpec(spec);
    Xorshift64Star rng(spec.seed);

    auto catalog = std::make_shared<Catalog>();
    for (int k = 0; k < spec.numComponents; ++k) {
        ComponentType c;
        c.name = std::string(1, static_cast<char>('a' + k)) + std::to_string(k);
        catalog->components.push_back(std::move(c));
    }
    std::vector<std::string> portNames;
    for (int m = 0; m < spec.numPorts; ++m) {
        portNames.push_back("p" + std::to_string(m));
        catalog->ports.insert(portNames.back());
    }

    // The last two ports are reserved for the injected cycle and stay out of
    // the random tables so the cycle shape is exact.
    const int randomPorts = spec.cycleInjection ? spec.numPorts - 2 : spec.numPorts;
    const LifecycleState activeStates[] = {LifecycleState::Installed, LifecycleState::Running};
    for (ComponentType& c : catalog->components) {
        for (LifecycleState s : activeStates) {
            for (int m = 0; m < randomPorts; ++m) {
                const bool requirePort = rng.nextUnit() < spec.requireDensity;
                const bool providePort = rng.nextUnit() < spec.provideDensity;
                if (requirePort) {
                    c.requirePorts[stateRank(s)].insert(portNames[m]);
                } else if (providePort) {
                    c.providePorts[stateRank(s)].insert(portNames[m]);
                }
            }
        }
    }

    // Providability closure: every require fact needs a provider on another
    // component. Repair by adding a provide fact; drop the require fact when
    // no component can take one without supplying itself.
    for (int k = 0; k < spec.numComponents; ++k) {
        ComponentType& c = catalog->components[static_cast<size_t>(k)];
        for (LifecycleState s : activeStates) {
            PortSet& required = c.requirePorts[stateRank(s)];
            for (auto it = required.begin(); it != required.end();) {
                const std::string& port = *it;
                bool provided = false;
                for (int other = 0; other < spec.numComponents && !provided; ++other) {
                    if (other == k) continue;
                    const ComponentType& o = catalog->components[static_cast<size_t>(other)];
                    for (LifecycleState s2 : activeStates) {
                        if (providesOf(o, s2).count(port) > 0) {
                            provided = true;
                            break;
                        }
                    }
                }
                if (provided) {
                    ++it;
                    continue;
                }
                bool repaired = false;
                for (int offset = 1; offset < spec.numComponents && !repaired; ++offset) {
                    ComponentType& candidate =
                        catalog->components[static_cast<size_t>((k + offset) % spec.numComponents)];
                    for (LifecycleState s2 : activeStates) {
                        if (candidate.requirePorts[stateRank(s2)].count(port) > 0) continue;
                        candidate.providePorts[stateRank(s2)].insert(port);
                        repaired = true;
                        break;
                    }
                }
                it = repaired ? std::next(it) : required.erase(it);
            }
        }
    }

    if (spec.cycleInjection) {
        ComponentType& a = catalog->components[0];
        ComponentType& b = catalog->components[1];
        const std::string& portA = portNames[static_cast<size_t>(spec.numPorts - 2)];
        const std::string& portB = portNames[static_cast<size_t>(spec.numPorts - 1)];
        a.requirePorts[stateRank(LifecycleState::Running)].insert(portA);
        b.providePorts[stateRank(LifecycleState::Installed)].insert(portA);
        b.requirePorts[stateRank(LifecycleState::Running)].insert(portB);
        a.providePorts[stateRank(LifecycleState::Installed)].insert(portB);
    }

    Problem problem;
    problem.name = "gen" + std::to_string(spec.seed) + "-" + std::to_string(spec.numComponents) +
                   "c" + std::to_string(spec.numPorts) + "p";
    problem.catalog = catalog;
    problem.counterInit = 0;

    std::vector<int> order(static_cast<size_t>(spec.numComponents));
    for (int k = 0; k < spec.numComponents; ++k) order[static_cast<size_t>(k)] = k;
    for (int g = 0; g < spec.goalCount; ++g) {
        const int pick = g + rng.below(spec.numComponents - g);
        std::swap(order[static_cast<size_t>(g)], order[static_cast<size_t>(pick)]);
        problem.goals.push_back(
            {GoalKind::Run, catalog->components[static_cast<size_t>(order[static_cast<size_t>(g)])].name});
    }
    return problem;
}

}  // namespace deploy
