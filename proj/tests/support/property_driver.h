#ifndef DEPLOY_TESTS_PROPERTY_DRIVER_H
#define DEPLOY_TESTS_PROPERTY_DRIVER_H

#include <string>
#include <vector>

#include "deploy/actions.h"
#include "deploy/generator.h"
#include "deploy/validator.h"

namespace deploy::testing {

struct PropertyReport {
    long pairsChecked = 0;
    std::vector<std::string> failures;  // first few, for diagnostics

    bool ok() const { return failures.empty(); }
};

// Exercises the strict-semantics properties on random (configuration,
// action) pairs: configurations come from strict random walks over seeded
// generator problems, candidate actions from the ground enumeration.
//   - strict-applicable implies relaxed-applicable
//   - strict application preserves well-formedness
//   - bind followed by unbind restores the configuration
//   - only createInstance changes the counter, by exactly +1
//   - an action on instance i never changes the state of j != i
inline PropertyReport runStrictSemanticsProperties(long minPairs, std::uint64_t seedBase = 1) {
    PropertyReport report;
    auto note = [&report](const std::string& what) {
        if (report.failures.size() < 8) report.failures.push_back(what);
    };

    std::uint64_t seed = seedBase;
    while (report.pairsChecked < minPairs) {
        GeneratorSpec spec;
        Xorshift64Star rng(seed * 7919 + 13);
        spec.seed = seed++;
        spec.numComponents = 2 + rng.below(2);
        spec.numPorts = 2 + rng.below(2);
        spec.requireDensity = 0.3;
        spec.provideDensity = 0.4;
        spec.cycleInjection = rng.below(4) == 0;
        spec.goalCount = 1;
        const Problem problem = generateProblem(spec);

        Configuration config = initialConfiguration(problem);
        const int walkLength = 4 + rng.below(10);
        for (int step = 0; step < walkLength; ++step) {
            const auto actions = enumerateGroundActions(config, 2);
            if (actions.empty()) break;

            // Probe a handful of candidates against the current state.
            for (int probe = 0; probe < 3; ++probe) {
                const DeploymentAction& a = actions[static_cast<size_t>(
                    rng.below(static_cast<int>(actions.size())))];
                ++report.pairsChecked;

                const bool relaxedOk = applicableRelaxed(config, a);
                const auto strict = strictViolation(config, a);
                if (!strict.has_value() && !relaxedOk) {
                    note("strict ok but relaxed blocked: " + toText(a));
                }
                if (!relaxedOk) continue;
                const Configuration next = applyRelaxed(config, a);

                if (!strict.has_value() && isWellFormed(config) && !isWellFormed(next)) {
                    note("strict application broke well-formedness: " + toText(a));
                }
                const int counterDelta = next.counter - config.counter;
                const int expectedDelta = a.kind == ActionKind::CreateInstance ? 1 : 0;
                if (counterDelta != expectedDelta) {
                    note("counter moved by " + std::to_string(counterDelta) + " on " +
                         toText(a));
                }
                for (const Instance& before : config.instances) {
                    const bool isTarget =
                        (a.kind == ActionKind::Start || a.kind == ActionKind::Run ||
                         a.kind == ActionKind::Stop || a.kind == ActionKind::Terminate) &&
                        before.id == a.instance;
                    if (isTarget) continue;
                    const Instance* after = next.findInstance(before.id);
                    if (!after || after->state != before.state) {
                        note("frame violation on instance " + std::to_string(before.id) +
                             " by " + toText(a));
                    }
                }
                if (a.kind == ActionKind::Bind) {
                    const Configuration back =
                        applyRelaxed(next, makeUnbind(a.port, a.requirer, a.provider));
                    if (!(back == config)) {
                        note("bind/unbind did not restore the configuration: " + toText(a));
                    }
                }
            }

            // Advance the walk along a strict-applicable action so reachable
            // well-formed states keep being exercised.
            bool advanced = false;
            const size_t offset = static_cast<size_t>(rng.below(static_cast<int>(actions.size())));
            for (size_t k = 0; k < actions.size(); ++k) {
                const DeploymentAction& a = actions[(offset + k) % actions.size()];
                StrictOutcome outcome = applyStrict(config, a);
                if (outcome.ok()) {
                    config = std::move(*outcome.config);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return report;
}

}  // namespace deploy::testing

#endif
