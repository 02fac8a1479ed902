#ifndef DEPLOY_GENERATOR_H
#define DEPLOY_GENERATOR_H

#include <cstdint>
#include <optional>
#include <string_view>

#include "deploy/problem.h"

namespace deploy {

// Parameters of random problem generation. Output is a pure function of the
// spec: the same seed gives byte-identical problem files on every platform.
struct GeneratorSpec {
    int numComponents = 2;
    int numPorts = 2;
    double requireDensity = 0.1;   // probability per (component, state, port)
    double provideDensity = 0.5;   // probability per (component, state, port)
    bool cycleInjection = false;   // force one mutual-requirement cycle
    std::uint64_t seed = 0;
    int goalCount = 1;
};

enum class Difficulty { Easy, Medium, Hard };

std::optional<Difficulty> difficultyFromName(std::string_view name);
const char* difficultyName(Difficulty d);

GeneratorSpec presetSpec(Difficulty d, int numComponents, int numPorts, std::uint64_t seed,
                         int goalCount = 1);

// Generates a deployment problem: zero initial instances, Run goals over
// distinct components, every require port provided by some other component.
// With cycleInjection the first two components each require, in the running
// state, a port the other provides only while installed, so running both
// needs an extra instance. Throws ModelError on infeasible specs.
Problem generateProblem(const GeneratorSpec& spec);

// xorshift64* with the multiplier 0x2545F4914F6CDD1D; seed 0 is remapped to
// the odd constant 0x9E3779B97F4A7C15. Fixed here so generated problems are
// reproducible across standard libraries.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double nextUnit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    // Uniform in [0, n); modulo bias is irrelevant at the sizes used here.
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

}  // namespace deploy

#endif
