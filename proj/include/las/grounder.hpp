#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "las/ast.hpp"
#include "las/bias.hpp"

namespace las {

using AtomId = std::uint32_t;

// Bijection between ground atoms and dense ids, assigned in first-occurrence order.
class AtomTable {
public:
    AtomId intern(const Atom& atom);
    std::optional<AtomId> find(const Atom& atom) const;
    const Atom& atom(AtomId id) const { return atoms_[id]; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::unordered_map<Atom, AtomId, AtomHash> index_;
};

struct GroundRule {
    HeadKind head_kind = HeadKind::none;
    std::vector<AtomId> head;  // one atom, the choice elements, or empty
    int lower = 0;
    int upper = 0;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    bool is_constraint() const { return head_kind == HeadKind::none; }
    bool is_choice() const { return head_kind == HeadKind::choice; }
    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

struct GroundProgram {
    std::vector<GroundRule> rules;
    AtomTable atoms;

    Rule rule(std::size_t index) const;
    Program to_program() const;
};

struct HerbrandUniverse {
    std::vector<Term> constants;  // universe order: integers ascending, then names
    TypedConstants typed;

    bool empty() const { return constants.empty(); }
};

// All constants of the program plus the declared ones.
HerbrandUniverse herbrand_universe(const Program& program, const TypedConstants& extra = {});

// Naive full instantiation. Untyped variables range over the whole universe,
// typed variables (Rule::var_types) over the constants of their type.
GroundProgram ground(const Program& program, const HerbrandUniverse& universe);

// Appends the instances of one rule to `out`, in substitution order.
void ground_rule(const Rule& rule, const HerbrandUniverse& universe, GroundProgram& out);

bool eval_builtin(std::int32_t lhs, Comparator op, std::int32_t rhs);

} // namespace las
