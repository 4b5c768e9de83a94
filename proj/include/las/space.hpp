#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "las/ast.hpp"
#include "las/bias.hpp"

namespace las {

// Candidate rules induced by a mode bias, ordered by canonical text.
struct HypothesisSpace {
    std::vector<Rule> rules;
    std::vector<int> base_costs;
    SpaceBounds bounds;

    std::size_t size() const { return rules.size(); }
};

// Rule-level surcharge on top of the literal count.
struct ScoringFunction {
    std::string name = "default";
    std::function<int(const Rule&)> rule_bias;
};

ScoringFunction default_scoring();

// Adds `surcharge` to every rule whose body mentions fewer than two distinct
// variables of `time_type`.
ScoringFunction multi_timestamp_scoring(int surcharge, std::string_view time_type = "time");

// A variable at a var(t) slot must be typed t in `var_types` when it is typed
// at all.
bool compatible(const Literal& literal, const ModeDeclaration& mode, const TypedConstants& constants,
                const std::map<Symbol, Symbol>& var_types = {});

// Throws TaskError without head declarations and LimitError once more than
// `cap` distinct rules are generated.
HypothesisSpace enumerate_space(const ModeBias& bias, std::size_t cap = 100000);

// Smallest canonical form of a rule over all renamings of its variables to
// V1..Vn; `var_types` follows the renaming.
Rule canonical_rule(const Rule& rule);

int base_cost(const Rule& rule);
int rule_cost(const Rule& rule, const ScoringFunction& scoring);

} // namespace las
