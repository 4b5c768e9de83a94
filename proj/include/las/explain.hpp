#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "las/solver.hpp"

namespace las {

enum class NodeKind : std::uint8_t {
    atom,     // true atom justified by a rule
    fact,     // true atom given as a fact
    naf,      // "not a" with a false in the model
    rule,     // ground rule, labelled with its text
    absent,   // root of an absence explanation
    blocker,  // the body literal that keeps a rule from firing
};

struct ExplanationNode {
    NodeKind kind = NodeKind::atom;
    std::string label;
    Atom atom;              // atom, fact, naf, absent, blocker
    std::size_t rule = 0;   // rule: index into the ground program
    int stage = 0;          // atom, fact: fixpoint iteration that derived it
    std::vector<std::string> notes;
};

// Edges run from a supporter to what it supports: body literal -> rule,
// rule -> head atom. Every node reaches the root.
struct ExplanationEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    friend bool operator==(const ExplanationEdge&, const ExplanationEdge&) = default;
};

struct ExplanationDag {
    std::vector<ExplanationNode> nodes;
    std::vector<ExplanationEdge> edges;
    std::size_t root = 0;
};

struct ExplainOptions {
    // Annotate atoms with the other rules that would also support them.
    bool all_supports = false;
};

// Each true atom is justified by the lowest-index rule deriving it at the
// earliest iteration of the least-model fixpoint of the reduct. Choice rules
// are explained through their translation with complement atoms hidden.
// Throws InputError when the model is not stable or `target` is not in it.
ExplanationDag explain_atom(const GroundProgram& ground, const Interpretation& model, const Atom& target,
                            const ExplainOptions& options = {});

// Root "not target" with one child per rule for target, each blocked by the
// first failing body literal in canonical order.
ExplanationDag explain_absence(const GroundProgram& ground, const Interpretation& model, const Atom& target);

// `digraph` text: atoms boxed, rules diamonds, naf leaves dashed, nodes n0..nk.
std::string to_graph_text(const ExplanationDag& dag);

} // namespace las
