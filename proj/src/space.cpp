#include "las/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "las/error.hpp"

namespace las {

namespace {

Symbol pool_variable(std::size_t i) { return Symbol("V" + std::to_string(i + 1)); }

// A literal instantiated from a mode, with the types its variables take.
struct Candidate {
    Literal literal;
    std::vector<std::pair<Symbol, Symbol>> typing;
};

void instantiate_args(const std::vector<ModeArg>& slots, const TypedConstants& constants, std::size_t pool,
                      std::vector<Term>& args, std::vector<std::pair<Symbol, Symbol>>& typing,
                      const std::function<void()>& emit) {
    std::size_t i = args.size();
    if (i == slots.size()) {
        emit();
        return;
    }
    const ModeArg& slot = slots[i];
    switch (slot.kind) {
    case ModeArg::Kind::fixed:
        args.push_back(slot.fixed);
        instantiate_args(slots, constants, pool, args, typing, emit);
        args.pop_back();
        break;
    case ModeArg::Kind::constant_of_type:
        for (const Term& c : constants.of(slot.type)) {
            args.push_back(c);
            instantiate_args(slots, constants, pool, args, typing, emit);
            args.pop_back();
        }
        break;
    case ModeArg::Kind::var:
        for (std::size_t v = 0; v < pool; ++v) {
            args.push_back(Term::variable(pool_variable(v)));
            typing.emplace_back(pool_variable(v), slot.type);
            instantiate_args(slots, constants, pool, args, typing, emit);
            typing.pop_back();
            args.pop_back();
        }
        break;
    }
}

std::vector<Candidate> candidates(const ModeDeclaration& mode, const TypedConstants& constants, std::size_t pool) {
    std::vector<Candidate> out;
    if (mode.comparison) {
        Symbol type = mode.args[0].type;
        for (std::size_t i = 0; i < pool; ++i)
            for (std::size_t j = 0; j < pool; ++j) {
                if (i == j) continue;
                out.push_back({Literal::builtin(Term::variable(pool_variable(i)), mode.op,
                                                Term::variable(pool_variable(j))),
                               {{pool_variable(i), type}, {pool_variable(j), type}}});
            }
        return out;
    }
    std::vector<Term> args;
    std::vector<std::pair<Symbol, Symbol>> typing;
    instantiate_args(mode.args, constants, pool, args, typing, [&] {
        Atom atom(mode.predicate, args);
        out.push_back({Literal::pos(atom), typing});
        if (mode.polarity == ModePolarity::body && mode.naf_allowed) out.push_back({Literal::naf(atom), typing});
    });
    return out;
}

bool assign_types(std::map<Symbol, Symbol>& types, const Candidate& c) {
    for (const auto& [var, type] : c.typing) {
        auto [it, fresh] = types.emplace(var, type);
        if (!fresh && !(it->second == type)) return false;
    }
    return true;
}

Term rename(const Term& t, const std::map<Symbol, Symbol>& names) {
    return t.is_variable() ? Term::variable(names.at(t.symbol())) : t;
}

Literal rename(const Literal& l, const std::map<Symbol, Symbol>& names) {
    if (l.is_builtin()) return Literal::builtin(rename(l.lhs, names), l.op, rename(l.rhs, names));
    Atom a = l.atom;
    for (Term& t : a.args) t = rename(t, names);
    return l.is_naf() ? Literal::naf(std::move(a)) : Literal::pos(std::move(a));
}

Rule renamed(const Rule& rule, const std::map<Symbol, Symbol>& names) {
    Rule r;
    r.head_kind = rule.head_kind;
    r.head = rule.head;
    for (Term& t : r.head.args) t = rename(t, names);
    for (const Literal& l : rule.body) r.body.push_back(rename(l, names));
    std::sort(r.body.begin(), r.body.end(),
              [](const Literal& a, const Literal& b) { return a.text() < b.text(); });
    r.body.erase(std::unique(r.body.begin(), r.body.end()), r.body.end());
    for (const auto& [var, type] : rule.var_types) r.var_types[names.at(var)] = type;
    return r;
}

} // namespace

ScoringFunction default_scoring() { return {"default", [](const Rule&) { return 0; }}; }

ScoringFunction multi_timestamp_scoring(int surcharge, std::string_view time_type) {
    Symbol type(time_type);
    return {"multi-timestamp", [surcharge, type](const Rule& rule) {
                std::set<Symbol> seen;
                auto note = [&](const Term& t) {
                    if (!t.is_variable()) return;
                    auto it = rule.var_types.find(t.symbol());
                    if (it != rule.var_types.end() && it->second == type) seen.insert(t.symbol());
                };
                for (const Literal& l : rule.body) {
                    if (l.is_builtin()) {
                        note(l.lhs);
                        note(l.rhs);
                    } else {
                        for (const Term& t : l.atom.args) note(t);
                    }
                }
                return seen.size() < 2 ? surcharge : 0;
            }};
}

bool compatible(const Literal& literal, const ModeDeclaration& mode, const TypedConstants& constants,
                const std::map<Symbol, Symbol>& var_types) {
    auto slot_ok = [&](const Term& t, const ModeArg& slot) {
        switch (slot.kind) {
        case ModeArg::Kind::fixed: return t == slot.fixed;
        case ModeArg::Kind::constant_of_type: return t.is_ground() && constants.has(slot.type, t);
        case ModeArg::Kind::var: {
            if (!t.is_variable()) return false;
            auto it = var_types.find(t.symbol());
            return it == var_types.end() || it->second == slot.type;
        }
        }
        return false;
    };
    if (mode.comparison) {
        return literal.is_builtin() && literal.op == mode.op && slot_ok(literal.lhs, mode.args[0]) &&
               slot_ok(literal.rhs, mode.args[1]);
    }
    if (literal.is_builtin()) return false;
    if (literal.is_naf() && (mode.polarity == ModePolarity::head || !mode.naf_allowed)) return false;
    if (!(literal.atom.predicate == mode.predicate) || literal.atom.arity() != mode.args.size()) return false;
    for (std::size_t i = 0; i < mode.args.size(); ++i)
        if (!slot_ok(literal.atom.args[i], mode.args[i])) return false;
    return true;
}

Rule canonical_rule(const Rule& rule) {
    std::vector<Symbol> vars = variables_of(rule);
    std::vector<std::size_t> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rule best;
    std::string best_text;
    bool first = true;
    do {
        std::map<Symbol, Symbol> names;
        for (std::size_t i = 0; i < vars.size(); ++i) names[vars[i]] = pool_variable(perm[i]);
        Rule r = renamed(rule, names);
        std::string text = r.text();
        if (first || text < best_text) {
            best = std::move(r);
            best_text = std::move(text);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

HypothesisSpace enumerate_space(const ModeBias& bias, std::size_t cap) {
    if (bias.heads.empty()) throw TaskError("mode bias has no head declaration");
    const SpaceBounds& bounds = bias.bounds;
    const std::size_t pool = bounds.max_variables;

    std::vector<Candidate> body;
    for (const ModeDeclaration& m : bias.bodies)
        for (Candidate& c : candidates(m, bias.constants, pool)) body.push_back(std::move(c));

    std::map<std::string, Rule> found;
    auto consider = [&](const Rule& rule) {
        if (first_unsafe_variable(rule)) return;
        Rule canon = canonical_rule(rule);
        std::string text = canon.text();
        if (found.count(text)) return;
        found.emplace(std::move(text), std::move(canon));
        if (found.size() > cap)
            throw LimitError("hypothesis space exceeds the cap of " + std::to_string(cap) + " rules");
    };

    for (const ModeDeclaration& hm : bias.heads) {
        for (const Candidate& head : candidates(hm, bias.constants, pool)) {
            Rule rule = Rule::fact(head.literal.atom);
            if (!assign_types(rule.var_types, head)) continue;
            // bodies are strictly increasing index sequences over `body`
            std::function<void(std::size_t)> extend = [&](std::size_t from) {
                consider(rule);
                if (rule.body.size() == bounds.max_body_literals) return;
                for (std::size_t i = from; i < body.size(); ++i) {
                    std::map<Symbol, Symbol> saved = rule.var_types;
                    if (assign_types(rule.var_types, body[i])) {
                        rule.body.push_back(body[i].literal);
                        extend(i + 1);
                        rule.body.pop_back();
                    }
                    rule.var_types = std::move(saved);
                }
            };
            extend(0);
        }
    }

    HypothesisSpace space;
    space.bounds = bounds;
    for (auto& [text, rule] : found) {
        space.base_costs.push_back(base_cost(rule));
        space.rules.push_back(std::move(rule));
    }
    return space;
}

int base_cost(const Rule& rule) { return 1 + static_cast<int>(rule.body.size()); }

int rule_cost(const Rule& rule, const ScoringFunction& scoring) {
    return base_cost(rule) + (scoring.rule_bias ? scoring.rule_bias(rule) : 0);
}

} // namespace las
