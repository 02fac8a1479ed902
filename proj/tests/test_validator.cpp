#include "doctest.h"

#include "deploy/planner.h"
#include "deploy/validator.h"
#include "support/fixtures.h"

using namespace deploy;

TEST_CASE("reference plan replays strictly and achieves the goal") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Plan plan = parsePlan(deploy::testing::kWordpressPlan, problem);
    const Verdict verdict = validatePlan(problem, plan);

    REQUIRE(verdict.valid);
    REQUIRE(verdict.finalConfiguration.has_value());
    CHECK_FALSE(verdict.failedStep.has_value());
    CHECK(goalAchieved(*verdict.finalConfiguration, problem.goals));
}

TEST_CASE("mislabeled second create is rejected at step 3") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Plan plan = parsePlan(deploy::testing::kWordpressPlanMislabeledCreate, problem);
    const Verdict verdict = validatePlan(problem, plan);

    CHECK_FALSE(verdict.valid);
    REQUIRE(verdict.failedStep.has_value());
    CHECK(*verdict.failedStep == 3);
    CHECK(verdict.violation.find("httpd") != std::string::npos);
}

TEST_CASE("binding before the provider starts is rejected at the bind step") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Plan plan = parsePlan(deploy::testing::kWordpressPlanBindBeforeStart, problem);
    const Verdict verdict = validatePlan(problem, plan);

    CHECK_FALSE(verdict.valid);
    REQUIRE(verdict.failedStep.has_value());
    CHECK(*verdict.failedStep == 3);
    CHECK(verdict.violation.find("not active") != std::string::npos);
}

TEST_CASE("empty plan fails on the unachieved goal") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Verdict verdict = validatePlan(problem, Plan{});

    CHECK_FALSE(verdict.valid);
    CHECK_FALSE(verdict.failedStep.has_value());
    CHECK(verdict.violation.find("goal") != std::string::npos);
}

TEST_CASE("goal achievement checks state, component and well-formedness") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Plan plan = parsePlan(deploy::testing::kWordpressPlan, problem);
    const Configuration final = *validatePlan(problem, plan).finalConfiguration;

    CHECK(goalAchieved(final, {{GoalKind::Run, "wordpress"}}));
    CHECK(goalAchieved(final, {{GoalKind::Install, "apache2"}}));
    // The web server ends the run installed, not running.
    CHECK(final.instanceAt(1).state == LifecycleState::Installed);
    CHECK_FALSE(goalAchieved(final, {{GoalKind::Run, "apache2"}}));
    CHECK(goalAchieved(final, {}));
    CHECK_THROWS_AS(goalAchieved(final, {{GoalKind::Run, "nginx"}}), ModelError);

    Configuration broken = final;
    broken.activeProvides.insert({"mysql-in", 2});
    CHECK_FALSE(goalAchieved(broken, {{GoalKind::Run, "wordpress"}}));
}

TEST_CASE("canonicalization renames ids to first-use order") {
    const Problem problem = deploy::testing::wordpressProblem();
    const Plan plan = parsePlan(deploy::testing::kWordpressPlan, problem);

    // Ids created from counter 0 in creation order are already canonical.
    CHECK(canonicalizePlan(plan) == plan);

    SUBCASE("a shifted counter base maps back to zero-based ids") {
        Plan shifted;
        shifted.steps = {makeCreate("a"), makeCreate("b"), makeTransition(ActionKind::Start, 6),
                         makeTransition(ActionKind::Start, 5)};
        const Plan canonical = canonicalizePlan(shifted, 5);
        CHECK(canonical.steps[2] == makeTransition(ActionKind::Start, 1));
        CHECK(canonical.steps[3] == makeTransition(ActionKind::Start, 0));
        CHECK(canonicalizePlan(canonical) == canonical);
    }
    SUBCASE("ids no create assigns are errors") {
        Plan stray;
        stray.steps = {makeCreate("a"), makeTransition(ActionKind::Start, 3)};
        CHECK_THROWS_AS(canonicalizePlan(stray), ModelError);
    }
    SUBCASE("validity is preserved") {
        const Plan canonical = canonicalizePlan(plan);
        CHECK(validatePlan(problem, canonical).valid == validatePlan(problem, plan).valid);
    }
}

TEST_CASE("oracle finds a shortest run for the reference problem") {
    const Problem problem = deploy::testing::wordpressProblem();
    const auto plan = bfsOracle(problem, 12, 2);

    REQUIRE(plan.has_value());
    CHECK(plan->steps.size() == 10);
    CHECK(validatePlan(problem, *plan).valid);

    // The planner's run is exactly as short; the step orders differ (the
    // oracle's tie-breaking brings the web server up first), so equality is
    // over length and validity, not the canonical sequence.
    const PlanResult solved = solve(problem);
    REQUIRE(solved.ok());
    CHECK(solved.plan->steps.size() == plan->steps.size());
    CHECK(canonicalizePlan(*solved.plan) ==
          canonicalizePlan(parsePlan(deploy::testing::kWordpressPlan, problem)));
}

TEST_CASE("oracle on the trivial problem") {
    const auto plan = bfsOracle(deploy::testing::trivialProblem(), 12, 1);
    REQUIRE(plan.has_value());
    CHECK(plan->steps.size() == 3);
}

TEST_CASE("oracle reports unsatisfiable requirements as none") {
    const Problem problem = parseProblem(R"((define (problem stuck)
 (:domain deployment)
 (:objects lonely other - component missing - port)
 (:init
  (installed-require lonely missing)
  (installed-provide other missing)
  (running-require other missing)
  (= (instance-number) 0)
 )
 (:htn :tasks (install lonely) :ordering () :constraints ())
))");
    // 'other' provides the port while installed, but the only requirer goal
    // is reachable: sanity-check the solvable case first, then make it
    // unsolvable by bounding instances of the provider to zero... which the
    // bound cannot express, so use a genuinely absent provider instead.
    CHECK(bfsOracle(problem, 12, 2).has_value());

    const Problem unsolvable = parseProblem(R"((define (problem stuck2)
 (:domain deployment)
 (:objects lonely - component missing - port)
 (:init
  (running-require lonely missing)
  (= (instance-number) 0)
 )
 (:htn :tasks (run lonely) :ordering () :constraints ())
))");
    CHECK_FALSE(bfsOracle(unsolvable, 12, 2).has_value());
}

TEST_CASE("oracle minimality at tiny bounds") {
    // Exhaustively confirm no shorter strict-valid run exists for the
    // trivial problem: every run of length < 3 fails the goal.
    const Problem problem = deploy::testing::trivialProblem();
    const Configuration init = initialConfiguration(problem);
    std::vector<Configuration> level{init};
    for (int depth = 0; depth < 2; ++depth) {
        std::vector<Configuration> next;
        for (const Configuration& c : level) {
            CHECK_FALSE(goalAchieved(c, problem.goals));
            for (const DeploymentAction& a : enumerateGroundActions(c, 1)) {
                StrictOutcome outcome = applyStrict(c, a);
                if (outcome.ok()) next.push_back(*outcome.config);
            }
        }
        level = std::move(next);
    }
    for (const Configuration& c : level) {
        CHECK_FALSE(goalAchieved(c, problem.goals));
    }
}
