#include "deploy/cli.h"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "deploy/generator.h"
#include "deploy/parser.h"
#include "deploy/planner.h"
#include "deploy/validator.h"

namespace deploy {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoPlan = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeArtifact(const std::string& text, const std::string& outputPath, std::ostream& out) {
    if (outputPath.empty()) {
        out << text;
        return;
    }
    std::ofstream file(outputPath, std::ios::binary);
    if (!file) throw ModelError("cannot write '" + outputPath + "'");
    file << text;
}

double defaultTimeBudgetSeconds() {
    if (const char* env = std::getenv("DEPLOY_TIME_BUDGET")) {
        try {
            double value = std::stod(env);
            if (value > 0) return value;
        } catch (const std::exception&) {
        }
    }
    return 30.0;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HTN planner for component deployment problems", "deploy"};
    app.require_subcommand(1);

    std::string problemPath, planPath, outputPath;

    auto* planCmd = app.add_subcommand("plan", "solve a problem and write the plan");
    SearchLimits limits;
    double timeBudgetSeconds = defaultTimeBudgetSeconds();
    bool numericIds = false;
    planCmd->add_option("-p,--problem", problemPath, "problem file")->required();
    planCmd->add_option("-o,--output", outputPath, "write the plan here instead of stdout");
    planCmd->add_option("--max-depth", limits.maxDepth, "decomposition depth bound");
    planCmd->add_option("--max-instances", limits.maxInstancesPerComponent,
                        "instances per component bound");
    planCmd->add_option("--max-steps", limits.maxPlanLength, "plan length bound");
    planCmd->add_option("--time-budget", timeBudgetSeconds, "search time budget in seconds");
    planCmd->add_flag("--numeric-ids", numericIds, "write i0-style instance tokens");

    auto* validateCmd = app.add_subcommand("validate", "replay a plan under strict semantics");
    validateCmd->add_option("-p,--problem", problemPath, "problem file")->required();
    validateCmd->add_option("-l,--plan", planPath, "plan file")->required();

    auto* generateCmd = app.add_subcommand("generate", "emit a random problem file");
    int components = 0, ports = 0, goals = 1;
    std::uint64_t seed = 0;
    std::string difficultyWord = "easy";
    double requireDensity = -1.0, provideDensity = -1.0;
    bool cycle = false;
    generateCmd->add_option("--components", components, "number of components")->required();
    generateCmd->add_option("--ports", ports, "number of ports")->required();
    generateCmd->add_option("--seed", seed, "generator seed")->required();
    generateCmd->add_option("--difficulty", difficultyWord, "easy|medium|hard");
    generateCmd->add_option("--goals", goals, "number of run goals");
    generateCmd->add_option("--require-density", requireDensity, "override preset density");
    generateCmd->add_option("--provide-density", provideDensity, "override preset density");
    generateCmd->add_flag("--cycle", cycle, "force a mutual-requirement cycle");
    generateCmd->add_option("-o,--output", outputPath, "write the problem here");

    auto* showCmd = app.add_subcommand("show", "print a problem in canonical form");
    showCmd->add_option("-p,--problem", problemPath, "problem file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitBadInput;
    }

    try {
        if (planCmd->parsed()) {
            const Problem problem = parseProblem(readFile(problemPath));
            limits.timeBudget =
                std::chrono::milliseconds(static_cast<long>(timeBudgetSeconds * 1000.0));
            const PlanResult result = solve(problem, limits);
            if (!result.ok()) {
                err << "no plan within bounds: " << failureReasonName(result.failure) << "\n";
                return kExitNoPlan;
            }
            writeArtifact(renderPlan(*result.plan, problem, numericIds), outputPath, out);
            err << "plan found: " << result.plan->steps.size() << " steps\n";
            return kExitOk;
        }
        if (validateCmd->parsed()) {
            const Problem problem = parseProblem(readFile(problemPath));
            const Plan plan = parsePlan(readFile(planPath), problem);
            const Verdict verdict = validatePlan(problem, plan);
            if (verdict.valid) {
                out << "valid (" << plan.steps.size() << " steps)\n";
                return kExitOk;
            }
            if (verdict.failedStep) {
                out << "invalid at step " << *verdict.failedStep << ": " << verdict.violation
                    << "\n";
            } else {
                out << "invalid: " << verdict.violation << "\n";
            }
            return kExitNoPlan;
        }
        if (generateCmd->parsed()) {
            auto difficulty = difficultyFromName(difficultyWord);
            if (!difficulty) {
                err << "unknown difficulty '" << difficultyWord << "'\n";
                return kExitBadInput;
            }
            GeneratorSpec spec = presetSpec(*difficulty, components, ports, seed, goals);
            if (requireDensity >= 0.0) spec.requireDensity = requireDensity;
            if (provideDensity >= 0.0) spec.provideDensity = provideDensity;
            if (cycle) spec.cycleInjection = true;
            writeArtifact(renderProblem(generateProblem(spec)), outputPath, out);
            return kExitOk;
        }
        if (showCmd->parsed()) {
            out << renderProblem(parseProblem(readFile(problemPath)));
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace deploy
