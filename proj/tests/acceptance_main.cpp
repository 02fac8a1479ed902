// Acceptance suite: one line per criterion, PASS or FAIL, exit code is the
// number of failed criteria. Run it from ctest or directly.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "deploy/generator.h"
#include "deploy/parser.h"
#include "deploy/planner.h"
#include "deploy/validator.h"
#include "support/fixtures.h"
#include "support/property_driver.h"

using namespace deploy;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool passed, const std::string& label, const std::string& detail) {
    std::cout << (passed ? "PASS" : "FAIL") << " criterion " << criterion << ": " << label;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!passed) ++failures;
}

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Reference deployment end-to-end: parse, solve, validate, compare
//    step-exactly with the reference 10-step plan after canonicalization.
void criterion1() {
    const auto start = Clock::now();
    std::ostringstream detail;
    bool ok = true;
    try {
        const Problem problem = parseProblem(deploy::testing::kWordpressProblem);
        const PlanResult result = solve(problem);
        if (!result.ok()) {
            ok = false;
            detail << "no plan: " << failureReasonName(result.failure);
        } else {
            const Verdict verdict = validatePlan(problem, *result.plan);
            if (!verdict.valid) {
                ok = false;
                detail << "planner output invalid: " << verdict.violation;
            }
            const Plan reference = parsePlan(deploy::testing::kWordpressPlan, problem);
            if (canonicalizePlan(*result.plan) != canonicalizePlan(reference)) {
                ok = false;
                detail << "plan differs from the reference run";
            }
        }
        const double elapsed = secondsSince(start);
        if (elapsed >= 1.0) {
            ok = false;
            detail << " took " << elapsed << "s";
        } else if (ok) {
            detail << "10 steps, " << elapsed << "s";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(1, ok, "reference problem solves to the reference plan in < 1 s", detail.str());
}

// 2. Reference plan replay: the corrected run validates; the variant whose
//    second create names the wrong component is rejected at step 3.
void criterion2() {
    std::ostringstream detail;
    bool ok = true;
    try {
        const Problem problem = parseProblem(deploy::testing::kWordpressProblem);
        const Verdict good =
            validatePlan(problem, parsePlan(deploy::testing::kWordpressPlan, problem));
        if (!good.valid) {
            ok = false;
            detail << "reference plan rejected: " << good.violation;
        }
        const Verdict bad = validatePlan(
            problem, parsePlan(deploy::testing::kWordpressPlanMislabeledCreate, problem));
        if (bad.valid || !bad.failedStep.has_value() || *bad.failedStep != 3 ||
            bad.violation.empty()) {
            ok = false;
            detail << "mislabeled-create variant not rejected at step 3";
        } else if (ok) {
            detail << "variant rejected at step 3: " << bad.violation;
        }
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(2, ok, "reference plan validates; mislabeled variant fails at step 3", detail.str());
}

// 3. Oracle equivalence on >= 200 generated problems: whenever the BFS
//    oracle finds a run (depth 12, bound 2), the planner finds a valid plan;
//    the planner never emits an invalid one.
void criterion3() {
    const auto start = Clock::now();
    std::ostringstream detail;
    bool ok = true;
    int problems = 0, solvable = 0, mismatches = 0, invalidPlans = 0;
    try {
        const Difficulty difficulties[] = {Difficulty::Easy, Difficulty::Medium,
                                           Difficulty::Hard};
        for (std::uint64_t seed = 1; seed <= 70 && ok; ++seed) {
            for (Difficulty d : difficulties) {
                GeneratorSpec spec = presetSpec(d, 2 + static_cast<int>(seed % 2),
                                                2 + static_cast<int>((seed / 2) % 2), seed,
                                                1 + static_cast<int>(seed % 2));
                const Problem problem = generateProblem(spec);
                ++problems;

                const auto oraclePlan = bfsOracle(problem, 12, 2);
                SearchLimits limits;
                limits.maxInstancesPerComponent = 2;
                limits.timeBudget = std::chrono::milliseconds(5000);
                const PlanResult solved = solve(problem, limits);

                if (solved.ok()) {
                    if (!validatePlan(problem, *solved.plan).valid) {
                        ++invalidPlans;
                    }
                }
                if (oraclePlan.has_value()) {
                    ++solvable;
                    if (!solved.ok()) ++mismatches;
                }
            }
        }
        const double elapsed = secondsSince(start);
        ok = mismatches == 0 && invalidPlans == 0 && problems >= 200 && elapsed < 300.0;
        detail << problems << " problems, " << solvable << " solvable, " << mismatches
               << " planner misses, " << invalidPlans << " invalid plans, " << elapsed << "s";
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(3, ok, "planner matches the BFS oracle on generated problems", detail.str());
}

// 4. Strict-semantics property suite on >= 1000 random pairs.
void criterion4() {
    std::ostringstream detail;
    bool ok = true;
    try {
        const auto propertyReport = deploy::testing::runStrictSemanticsProperties(1000);
        ok = propertyReport.ok() && propertyReport.pairsChecked >= 1000;
        detail << propertyReport.pairsChecked << " pairs";
        for (const std::string& f : propertyReport.failures) detail << "; " << f;
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(4, ok, "strict-semantics properties hold on random pairs", detail.str());
}

// 5. Byte-exact round-trips on the reference problem and all generator
//    outputs: parse(render(parse(t))) == parse(t) and render is idempotent.
void criterion5() {
    std::ostringstream detail;
    bool ok = true;
    int files = 0;
    try {
        auto roundTrip = [&](const std::string& text) {
            const Problem p = parseProblem(text);
            const std::string rendered = renderProblem(p);
            const Problem reparsed = parseProblem(rendered);
            if (!(reparsed == p) || renderProblem(reparsed) != rendered) return false;
            ++files;
            return true;
        };
        ok = roundTrip(deploy::testing::kWordpressProblem);
        const Difficulty difficulties[] = {Difficulty::Easy, Difficulty::Medium,
                                           Difficulty::Hard};
        for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
            for (Difficulty d : difficulties) {
                const Problem p = generateProblem(presetSpec(d, 3, 3, seed));
                if (!roundTrip(renderProblem(p))) {
                    ok = false;
                    detail << "round-trip failed for seed " << seed << " " << difficultyName(d);
                    break;
                }
            }
        }
        if (ok) detail << files << " files byte-exact";
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(5, ok, "parser round-trips are byte-exact", detail.str());
}

// 6. Generator determinism and validity across two runs of 100 seeds.
void criterion6() {
    std::ostringstream detail;
    bool ok = true;
    try {
        for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
            const GeneratorSpec spec = presetSpec(Difficulty::Medium, 3, 3, seed);
            const std::string first = renderProblem(generateProblem(spec));
            const std::string second = renderProblem(generateProblem(spec));
            if (first != second) {
                ok = false;
                detail << "seed " << seed << " not deterministic";
                break;
            }
            const Problem p = parseProblem(first);
            if (!isWellFormed(initialConfiguration(p))) {
                ok = false;
                detail << "seed " << seed << " initial configuration malformed";
                break;
            }
            for (size_t k = 0; k < p.catalog->components.size() && ok; ++k) {
                const ComponentType& c = p.catalog->components[k];
                for (int s = 0; s < kStateCount && ok; ++s) {
                    for (const std::string& port : c.requirePorts[s]) {
                        bool provided = false;
                        for (size_t o = 0; o < p.catalog->components.size(); ++o) {
                            if (o == k) continue;
                            for (int s2 = 0; s2 < kStateCount; ++s2) {
                                provided |= p.catalog->components[o].providePorts[s2].count(
                                                port) > 0;
                            }
                        }
                        if (!provided) {
                            ok = false;
                            detail << "seed " << seed << " port " << port << " unprovided";
                        }
                    }
                }
            }
        }
        if (ok) detail << "100 seeds, byte-identical and closed";
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(6, ok, "generator is deterministic, closed and well-formed", detail.str());
}

// 7. Cycle/duplication: the injected two-component cycle is unsolvable at
//    instance bound 1 (planner and oracle agree) and solvable at bound 2
//    with a duplicated component.
void criterion7() {
    std::ostringstream detail;
    bool ok = true;
    try {
        GeneratorSpec spec;
        spec.numComponents = 2;
        spec.numPorts = 2;
        spec.requireDensity = 0.0;
        spec.provideDensity = 0.0;
        spec.cycleInjection = true;
        spec.goalCount = 2;
        spec.seed = 7;
        const Problem problem = generateProblem(spec);

        SearchLimits tight;
        tight.maxInstancesPerComponent = 1;
        const PlanResult bounded = solve(problem, tight);
        const auto boundedOracle = bfsOracle(problem, 12, 1);
        if (bounded.ok() || bounded.failure != FailureReason::Exhausted ||
            boundedOracle.has_value()) {
            ok = false;
            detail << "bound-1 case not jointly unsolvable";
        }

        SearchLimits loose;
        loose.maxInstancesPerComponent = 2;
        const PlanResult solved = solve(problem, loose);
        const auto oraclePlan = bfsOracle(problem, 12, 2);
        if (!solved.ok() || !oraclePlan.has_value()) {
            ok = false;
            detail << "bound-2 case not jointly solvable";
        } else {
            if (!validatePlan(problem, *solved.plan).valid) {
                ok = false;
                detail << "planner plan invalid";
            }
            bool duplicated = false;
            for (const ComponentType& c : problem.catalog->components) {
                duplicated |= std::count(solved.plan->steps.begin(), solved.plan->steps.end(),
                                         makeCreate(c.name)) == 2;
            }
            if (!duplicated) {
                ok = false;
                detail << "no component was instantiated twice";
            } else if (ok) {
                detail << "bound 1 unsolvable; bound 2 solved in "
                       << solved.plan->steps.size() << " steps with duplication";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report(7, ok, "injected cycle needs duplication and respects bounds", detail.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (failures == 0) {
        std::cout << "all acceptance criteria passed\n";
    } else {
        std::cout << failures << " acceptance criteria failed\n";
    }
    return failures;
}
