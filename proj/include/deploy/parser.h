#ifndef DEPLOY_PARSER_H
#define DEPLOY_PARSER_H

#include <stdexcept>
#include <string>

#include "deploy/actions.h"
#include "deploy/problem.h"

namespace deploy {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                             message),
          line(line),
          column(column),
          message(message) {}

    int line;
    int column;
    std::string message;
};

// Reads a problem file. Rejects anything outside the supported grammar:
// undeclared objects, duplicate facts, conflicting state/type facts, a
// missing or malformed counter init, non-empty :ordering/:constraints, and
// any file whose initial configuration is not well-formed. Keywords are
// case-insensitive, names case-sensitive; ';' comments run to end of line.
Problem parseProblem(const std::string& text);

// Canonical text form: sorted objects and facts, two-space indent.
// parseProblem(renderProblem(p)) == p and rendering is idempotent.
std::string renderProblem(const Problem& problem);

// Reads a plan: numbered lines "N. (action args...)", consecutively
// numbered from 1. Instance tokens are a letter prefix plus the numeric id
// ("w0", "i2"); parsing keys on the id. createInstance arguments name the
// component either exactly or by its unique initial. Empty text is the
// empty plan.
Plan parsePlan(const std::string& text, const Problem& problem);

// Writes a plan in the lettered dialect ("w0") or, with numericIds, the
// "i0" dialect in which createInstance carries the full component name.
// The lettered dialect needs pairwise-distinct component initials.
std::string renderPlan(const Plan& plan, const Problem& problem, bool numericIds = false);

}  // namespace deploy

#endif
