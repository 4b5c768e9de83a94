#include "las/grounder.hpp"

#include <algorithm>

#include "las/error.hpp"

namespace las {

AtomId AtomTable::intern(const Atom& atom) {
    auto [it, inserted] = index_.emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) atoms_.push_back(atom);
    return it->second;
}

std::optional<AtomId> AtomTable::find(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Rule GroundProgram::rule(std::size_t index) const {
    const GroundRule& g = rules[index];
    std::vector<Literal> body;
    for (AtomId a : g.pos) body.push_back(Literal::pos(atoms.atom(a)));
    for (AtomId a : g.neg) body.push_back(Literal::naf(atoms.atom(a)));
    switch (g.head_kind) {
    case HeadKind::atom: return Rule::normal(atoms.atom(g.head.front()), std::move(body));
    case HeadKind::choice: {
        std::vector<Atom> elems;
        for (AtomId a : g.head) elems.push_back(atoms.atom(a));
        return Rule::choice_rule(g.lower, std::move(elems), g.upper, std::move(body));
    }
    case HeadKind::none: break;
    }
    return Rule::constraint(std::move(body));
}

Program GroundProgram::to_program() const {
    Program p;
    for (std::size_t i = 0; i < rules.size(); ++i) p.rules.push_back(rule(i));
    return p;
}

bool eval_builtin(std::int32_t lhs, Comparator op, std::int32_t rhs) {
    switch (op) {
    case Comparator::lt: return lhs < rhs;
    case Comparator::le: return lhs <= rhs;
    case Comparator::eq: return lhs == rhs;
    case Comparator::ne: return lhs != rhs;
    case Comparator::gt: return lhs > rhs;
    case Comparator::ge: return lhs >= rhs;
    }
    return false;
}

HerbrandUniverse herbrand_universe(const Program& program, const TypedConstants& extra) {
    HerbrandUniverse u;
    u.typed = extra;
    auto add = [&](const Term& t) {
        if (t.is_ground()) u.constants.push_back(t);
    };
    for (const Rule& r : program.rules) {
        for (const Atom* a : r.head_atoms())
            for (const Term& t : a->args) add(t);
        for (const Literal& l : r.body) {
            if (l.is_builtin()) {
                add(l.lhs);
                add(l.rhs);
            } else {
                for (const Term& t : l.atom.args) add(t);
            }
        }
    }
    for (const auto& [type, values] : extra.table())
        for (const Term& v : values) u.constants.push_back(v);
    std::sort(u.constants.begin(), u.constants.end());
    u.constants.erase(std::unique(u.constants.begin(), u.constants.end()), u.constants.end());
    return u;
}

namespace {

// Argument slot: a ground term or a reference to a rule variable.
struct Slot {
    int var = -1;
    Term term;
};

struct AtomPattern {
    Symbol predicate;
    std::vector<Slot> slots;
};

class RuleInstantiator {
public:
    RuleInstantiator(const Rule& rule, const HerbrandUniverse& universe) : rule_(rule) {
        vars_ = variables_of(rule);
        domains_.reserve(vars_.size());
        for (Symbol v : vars_) {
            // a type without declared constants ranges over the whole universe
            auto it = rule.var_types.find(v);
            bool typed = it != rule.var_types.end() && !universe.typed.of(it->second).empty();
            domains_.push_back(typed ? &universe.typed.of(it->second) : &universe.constants);
        }
        if (!vars_.empty() && universe.empty())
            throw GroundingError("empty Herbrand universe while rule has variables: " + rule.text());
        for (const Atom* a : rule.head_atoms()) heads_.push_back(pattern(*a));
        for (const Literal& l : rule.body) {
            if (l.is_builtin()) {
                for (const Term* t : {&l.lhs, &l.rhs})
                    if (t->is_constant())
                        throw GroundingError("builtin compares non-integer constant " + t->text() + " in " +
                                             rule.text());
                builtins_.push_back({slot(l.lhs), l.op, slot(l.rhs)});
            } else {
                (l.is_naf() ? neg_ : pos_).push_back(pattern(l.atom));
            }
        }
    }

    void run(GroundProgram& out) {
        std::vector<std::size_t> odometer(vars_.size(), 0);
        binding_.assign(vars_.size(), Term());
        for (const auto* d : domains_)
            if (d->empty()) return;
        while (true) {
            for (std::size_t i = 0; i < vars_.size(); ++i) binding_[i] = (*domains_[i])[odometer[i]];
            emit(out);
            std::size_t k = vars_.size();
            while (k > 0) {
                --k;
                if (++odometer[k] < domains_[k]->size()) break;
                odometer[k] = 0;
                if (k == 0) return;
            }
            if (vars_.empty()) return;
        }
    }

private:
    struct BuiltinPattern {
        Slot lhs;
        Comparator op;
        Slot rhs;
    };

    Slot slot(const Term& t) const {
        if (!t.is_variable()) return {-1, t};
        auto it = std::find(vars_.begin(), vars_.end(), t.symbol());
        return {static_cast<int>(it - vars_.begin()), {}};
    }

    AtomPattern pattern(const Atom& a) const {
        AtomPattern p{a.predicate, {}};
        for (const Term& t : a.args) p.slots.push_back(slot(t));
        return p;
    }

    const Term& value(const Slot& s) const { return s.var < 0 ? s.term : binding_[s.var]; }

    AtomId instantiate(const AtomPattern& p, GroundProgram& out) {
        scratch_.predicate = p.predicate;
        scratch_.args.resize(p.slots.size());
        for (std::size_t i = 0; i < p.slots.size(); ++i) scratch_.args[i] = value(p.slots[i]);
        return out.atoms.intern(scratch_);
    }

    void emit(GroundProgram& out) {
        for (const auto& b : builtins_) {
            const Term& l = value(b.lhs);
            const Term& r = value(b.rhs);
            // Comparisons are only defined on integers; symbolic bindings fail.
            if (!l.is_integer() || !r.is_integer()) return;
            if (!eval_builtin(l.value(), b.op, r.value())) return;
        }
        GroundRule g;
        g.head_kind = rule_.head_kind;
        g.lower = rule_.lower;
        g.upper = rule_.upper;
        for (const auto& p : heads_) g.head.push_back(instantiate(p, out));
        for (const auto& p : pos_) g.pos.push_back(instantiate(p, out));
        for (const auto& p : neg_) g.neg.push_back(instantiate(p, out));
        out.rules.push_back(std::move(g));
    }

    const Rule& rule_;
    std::vector<Symbol> vars_;
    std::vector<const std::vector<Term>*> domains_;
    std::vector<AtomPattern> heads_, pos_, neg_;
    std::vector<BuiltinPattern> builtins_;
    std::vector<Term> binding_;
    Atom scratch_;
};

} // namespace

void ground_rule(const Rule& rule, const HerbrandUniverse& universe, GroundProgram& out) {
    RuleInstantiator(rule, universe).run(out);
}

GroundProgram ground(const Program& program, const HerbrandUniverse& universe) {
    GroundProgram out;
    for (const Rule& r : program.rules) ground_rule(r, universe, out);
    return out;
}

} // namespace las
