#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "las/solver.hpp"
#include "las/space.hpp"
#include "las/task.hpp"

namespace las {

// I includes every inclusion and no exclusion; atoms outside the table are
// simply absent from I.
bool extends(const GroundProgram& ground, const Interpretation& interpretation, const PartialInterpretation& pi);

// Acceptance of hypotheses for one example. B ∪ context is grounded once, over
// a universe that also holds the constants of `vocabulary` (typically the
// hypothesis space); each query grounds the hypothesis and runs the solver.
class ExampleEvaluator {
public:
    ExampleEvaluator(const Program& background, const Example& example, const TypedConstants& typed,
                     const std::vector<Rule>& vocabulary = {}, const SolverConfig& config = {});

    bool accepts(const std::vector<const Rule*>& hypothesis);
    const Example& example() const { return example_; }

private:
    Example example_;
    HerbrandUniverse universe_;
    GroundProgram work_;
    std::size_t base_rules_ = 0;
    SolverConfig config_;
};

// Positive: some answer set of B ∪ H ∪ context extends the example; negative:
// none does. Solver and grounding errors are rethrown naming the example.
bool accepts(const Program& background, const std::vector<Rule>& hypothesis, const Example& example,
             const TypedConstants& typed = {}, const SolverConfig& config = {});

// Σ rule costs + Σ penalties of examples not accepted.
long score(const std::vector<Rule>& hypothesis, const LasTask& task, const ScoringFunction& scoring,
           const SolverConfig& config = {});

struct LearnerConfig {
    SolverConfig solver;
    std::optional<std::size_t> max_rules;  // overrides the task's #maxrules
    std::size_t space_cap = 100000;
};

struct ExampleReport {
    std::string id;
    bool positive = true;
    int penalty = 0;
    bool accepted = false;
};

struct LearnResult {
    HypothesisSpace space;
    std::vector<std::size_t> chosen;  // indices into space.rules, ascending
    std::vector<Rule> rules;
    long cost = 0;
    long rule_cost = 0;
    long penalty_cost = 0;
    std::vector<ExampleReport> examples;
    bool fully_covering = false;
    std::size_t nodes = 0;  // hypotheses scored by the search
};

// Canonical rule texts joined by newlines; the final tie-break key.
std::string hypothesis_text(const std::vector<Rule>& rules);

// Minimal score over all subsets of the space with at most max_rules rules;
// ties go to fewer rules, then to the smaller hypothesis text.
LearnResult learn(const LasTask& task, const ScoringFunction& scoring, const LearnerConfig& config = {});
LearnResult learn(const LasTask& task, const HypothesisSpace& space, const ScoringFunction& scoring,
                  const LearnerConfig& config = {});

} // namespace las
