#include "las/solver.hpp"

#include <algorithm>
#include <bit>

#include "las/error.hpp"

namespace las {

Interpretation::Interpretation(std::size_t capacity, std::initializer_list<AtomId> ids) : Interpretation(capacity) {
    for (AtomId id : ids) insert(id);
}

void Interpretation::insert(AtomId id) {
    if (id / 64 >= words_.size()) words_.resize(id / 64 + 1, 0);
    words_[id / 64] |= std::uint64_t{1} << (id % 64);
}

void Interpretation::erase(AtomId id) {
    if (id / 64 < words_.size()) words_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
}

std::size_t Interpretation::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<AtomId> Interpretation::ids() const {
    std::vector<AtomId> out;
    for (std::size_t w = 0; w < words_.size(); ++w)
        for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
            out.push_back(static_cast<AtomId>(w * 64 + std::countr_zero(bits)));
    return out;
}

bool Interpretation::is_subset_of(const Interpretation& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
        if (words_[w] & ~o) return false;
    }
    return true;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
    std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
        std::uint64_t x = w < a.words_.size() ? a.words_[w] : 0;
        std::uint64_t y = w < b.words_.size() ? b.words_[w] : 0;
        if (x != y) return false;
    }
    return true;
}

bool operator<(const Interpretation& a, const Interpretation& b) {
    auto x = a.ids(), y = b.ids();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

bool is_internal(const Atom& atom) {
    auto name = atom.predicate.name();
    return !name.empty() && name.front() == '_';
}

namespace {

Atom complement_of(const Atom& a) {
    return Atom(Symbol("_not_" + std::string(a.predicate.name())), a.args);
}

// Calls `emit` with every k-subset of `items`.
void for_each_subset(const std::vector<AtomId>& items, std::size_t k,
                     const std::function<void(const std::vector<AtomId>&)>& emit) {
    std::vector<AtomId> current;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (current.size() == k) {
            emit(current);
            return;
        }
        for (std::size_t i = start; i + (k - current.size()) <= items.size(); ++i) {
            current.push_back(items[i]);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
}

bool body_holds(const GroundRule& r, const Interpretation& s) {
    for (AtomId a : r.pos)
        if (!s.contains(a)) return false;
    for (AtomId a : r.neg)
        if (s.contains(a)) return false;
    return true;
}

bool has_choice(const GroundProgram& g) {
    return std::any_of(g.rules.begin(), g.rules.end(), [](const GroundRule& r) { return r.is_choice(); });
}

// Depth-first enumeration over the atoms that occur under default negation.
// Each node brackets the model between the least model of the rules that are
// certainly applicable and the least model of the rules that may still apply.
class StableSearch {
public:
    StableSearch(const GroundProgram& normal, std::size_t visible, const SolverConfig& config)
        : atom_count_(normal.atoms.size()), visible_(visible) {
        for (const GroundRule& g : normal.rules) {
            Rule r;
            r.head = g.is_constraint() ? -1 : static_cast<std::int64_t>(g.head.front());
            r.pos = g.pos;
            std::sort(r.pos.begin(), r.pos.end());
            r.pos.erase(std::unique(r.pos.begin(), r.pos.end()), r.pos.end());
            r.neg = g.neg;
            std::sort(r.neg.begin(), r.neg.end());
            r.neg.erase(std::unique(r.neg.begin(), r.neg.end()), r.neg.end());
            rules_.push_back(std::move(r));
        }
        simplify();
        std::vector<char> in_base(atom_count_, 0);
        std::vector<char> is_guess(atom_count_, 0);
        for (const Rule& r : rules_) {
            if (r.head >= 0) in_base[r.head] = 1;
            for (AtomId a : r.pos) in_base[a] = 1;
            for (AtomId a : r.neg) in_base[a] = is_guess[a] = 1;
        }
        std::size_t base = static_cast<std::size_t>(std::count(in_base.begin(), in_base.end(), 1));
        if (base > config.max_base_atoms)
            throw LimitError("answer set search is limited to " + std::to_string(config.max_base_atoms) +
                             " base atoms, program has " + std::to_string(base));
        for (AtomId a = 0; a < atom_count_; ++a)
            if (is_guess[a]) guess_index_.emplace_back(a);
        index_occurrences();
    }

    // Returns false when the visitor stopped the enumeration.
    bool run(const std::function<bool(const Interpretation&)>& visit) {
        std::vector<signed char> value(guess_index_.size(), unknown);
        return descend(value, visit);
    }

private:
    static constexpr signed char unknown = -1;

    struct Rule {
        std::int64_t head = -1;
        std::vector<AtomId> pos;
        std::vector<AtomId> neg;
    };

    void index_occurrences() {
        pos_occ_.assign(atom_count_, {});
        for (std::uint32_t i = 0; i < rules_.size(); ++i)
            for (AtomId a : rules_[i].pos) pos_occ_[a].push_back(i);
        guess_slot_.assign(atom_count_, -1);
        for (std::size_t k = 0; k < guess_index_.size(); ++k) guess_slot_[guess_index_[k]] = static_cast<int>(k);
    }

    // Least model of the enabled rules (negative bodies ignored).
    std::vector<char> closure(const std::vector<char>& enabled) const {
        std::vector<char> in(atom_count_, 0);
        std::vector<std::size_t> missing(rules_.size());
        std::vector<AtomId> queue;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            missing[i] = rules_[i].pos.size();
            if (enabled[i] && missing[i] == 0 && rules_[i].head >= 0 && !in[rules_[i].head]) {
                in[rules_[i].head] = 1;
                queue.push_back(static_cast<AtomId>(rules_[i].head));
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (std::uint32_t r : pos_occ_[a]) {
                if (--missing[r] == 0 && enabled[r] && rules_[r].head >= 0 && !in[rules_[r].head]) {
                    in[rules_[r].head] = 1;
                    queue.push_back(static_cast<AtomId>(rules_[r].head));
                }
            }
        }
        return in;
    }

    void simplify() {
        pos_occ_.assign(atom_count_, {});
        for (std::uint32_t i = 0; i < rules_.size(); ++i)
            for (AtomId a : rules_[i].pos) pos_occ_[a].push_back(i);
        std::vector<char> all(rules_.size(), 1);
        std::vector<char> possible = closure(all);
        std::vector<Rule> kept;
        for (Rule& r : rules_) {
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return possible[a]; })) continue;
            std::erase_if(r.neg, [&](AtomId a) { return !possible[a]; });
            kept.push_back(std::move(r));
        }
        rules_ = std::move(kept);
    }

    int value_of(const std::vector<signed char>& value, AtomId a) const {
        int slot = guess_slot_[a];
        return slot < 0 ? 0 : value[slot];
    }

    bool descend(std::vector<signed char>& value, const std::function<bool(const Interpretation&)>& visit) {
        std::vector<char> lower, upper;
        std::vector<char> en_lower(rules_.size()), en_upper(rules_.size());
        while (true) {
            for (std::size_t i = 0; i < rules_.size(); ++i) {
                bool all_false = true, none_true = true;
                for (AtomId b : rules_[i].neg) {
                    int v = value_of(value, b);
                    if (v != 0) all_false = false;
                    if (v == 1) none_true = false;
                }
                en_lower[i] = all_false;
                en_upper[i] = none_true;
            }
            lower = closure(en_lower);
            upper = closure(en_upper);
            bool changed = false;
            for (std::size_t k = 0; k < guess_index_.size(); ++k) {
                AtomId a = guess_index_[k];
                if (value[k] == 1 && !upper[a]) return true;
                if (value[k] == 0 && lower[a]) return true;
                if (value[k] == unknown) {
                    if (!upper[a]) {
                        value[k] = 0;
                        changed = true;
                    } else if (lower[a]) {
                        value[k] = 1;
                        changed = true;
                    }
                }
            }
            for (const Rule& r : rules_) {
                if (r.head >= 0) continue;
                bool violated = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return lower[a]; }) &&
                                std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId a) {
                                    return value_of(value, a) == 0 || !upper[a];
                                });
                if (violated) return true;
            }
            if (!changed) break;
        }
        auto open = std::find(value.begin(), value.end(), unknown);
        if (open == value.end()) {
            Interpretation model(visible_);
            for (AtomId a = 0; a < visible_; ++a)
                if (lower[a]) model.insert(a);
            return visit(model);
        }
        for (signed char choice : {1, 0}) {
            std::vector<signed char> branch = value;
            branch[open - value.begin()] = choice;
            if (!descend(branch, visit)) return false;
        }
        return true;
    }

    std::size_t atom_count_;
    std::size_t visible_;
    std::vector<Rule> rules_;
    std::vector<AtomId> guess_index_;
    std::vector<int> guess_slot_;
    std::vector<std::vector<std::uint32_t>> pos_occ_;
};

} // namespace

ChoiceTranslation translate_choice_traced(const GroundProgram& ground) {
    ChoiceTranslation t;
    t.program.atoms = ground.atoms;
    t.original_atoms = ground.atoms.size();
    for (std::size_t i = 0; i < ground.rules.size(); ++i) {
        const GroundRule& r = ground.rules[i];
        if (!r.is_choice()) {
            t.program.rules.push_back(r);
            t.source.push_back(i);
            continue;
        }
        auto push = [&](GroundRule g) {
            t.program.rules.push_back(std::move(g));
            t.source.push_back(i);
        };
        std::vector<AtomId> elems;
        for (AtomId a : r.head)
            if (std::find(elems.begin(), elems.end(), a) == elems.end()) elems.push_back(a);
        for (AtomId a : elems) {
            AtomId c = t.program.atoms.intern(complement_of(t.program.atoms.atom(a)));
            GroundRule in{HeadKind::atom, {a}, 0, 0, r.pos, r.neg};
            in.neg.push_back(c);
            GroundRule out{HeadKind::atom, {c}, 0, 0, r.pos, r.neg};
            out.neg.push_back(a);
            push(std::move(in));
            push(std::move(out));
        }
        const long n = static_cast<long>(elems.size());
        if (r.lower > 0) {
            // at least `lower` true: every (n - lower + 1)-subset has a true member
            long k = n - r.lower + 1;
            if (k <= 0) {
                push(GroundRule{HeadKind::none, {}, 0, 0, r.pos, r.neg});
            } else {
                for_each_subset(elems, static_cast<std::size_t>(k), [&](const std::vector<AtomId>& s) {
                    GroundRule c{HeadKind::none, {}, 0, 0, r.pos, r.neg};
                    c.neg.insert(c.neg.end(), s.begin(), s.end());
                    push(std::move(c));
                });
            }
        }
        if (r.upper < n) {
            for_each_subset(elems, static_cast<std::size_t>(r.upper + 1), [&](const std::vector<AtomId>& s) {
                GroundRule c{HeadKind::none, {}, 0, 0, r.pos, r.neg};
                c.pos.insert(c.pos.end(), s.begin(), s.end());
                push(std::move(c));
            });
        }
    }
    return t;
}

GroundProgram translate_choice(const GroundProgram& ground) {
    if (!has_choice(ground)) return ground;
    return translate_choice_traced(ground).program;
}

GroundProgram reduct(const GroundProgram& normal, const Interpretation& candidate) {
    GroundProgram out;
    out.atoms = normal.atoms;
    for (const GroundRule& r : normal.rules) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return candidate.contains(a); })) continue;
        GroundRule d = r;
        d.neg.clear();
        out.rules.push_back(std::move(d));
    }
    return out;
}

Interpretation least_model(const GroundProgram& definite) {
    const std::size_t n = definite.atoms.size();
    Interpretation model(n);
    std::vector<std::vector<std::size_t>> occ(n);
    std::vector<std::size_t> missing(definite.rules.size());
    std::vector<AtomId> queue;
    auto derive = [&](const GroundRule& r) {
        if (r.head_kind != HeadKind::atom) return;
        AtomId h = r.head.front();
        if (!model.contains(h)) {
            model.insert(h);
            queue.push_back(h);
        }
    };
    for (std::size_t i = 0; i < definite.rules.size(); ++i) {
        const GroundRule& r = definite.rules[i];
        missing[i] = r.pos.size();
        for (AtomId a : r.pos) occ[a].push_back(i);
        if (r.pos.empty()) derive(r);
    }
    while (!queue.empty()) {
        AtomId a = queue.back();
        queue.pop_back();
        for (std::size_t i : occ[a])
            if (--missing[i] == 0) derive(definite.rules[i]);
    }
    return model;
}

Interpretation with_complements(const ChoiceTranslation& translation, const Interpretation& model) {
    Interpretation full(translation.program.atoms.size());
    for (AtomId a : model.ids()) full.insert(a);
    for (const GroundRule& r : translation.program.rules)
        if (r.head_kind == HeadKind::atom && r.head.front() >= translation.original_atoms && body_holds(r, model))
            full.insert(r.head.front());
    return full;
}

bool is_stable(const GroundProgram& ground, const Interpretation& candidate) {
    if (has_choice(ground)) {
        ChoiceTranslation t = translate_choice_traced(ground);
        for (AtomId a : candidate.ids())
            if (a >= t.original_atoms) return false;
        return is_stable(t.program, with_complements(t, candidate));
    }
    GroundProgram rules;
    rules.atoms = ground.atoms;
    for (const GroundRule& r : ground.rules) {
        if (r.is_constraint()) {
            if (body_holds(r, candidate)) return false;
        } else {
            rules.rules.push_back(r);
        }
    }
    return least_model(reduct(rules, candidate)) == candidate;
}

void for_each_answer_set(const GroundProgram& ground, const std::function<bool(const Interpretation&)>& visit,
                         const SolverConfig& config) {
    const std::size_t visible = ground.atoms.size();
    if (has_choice(ground)) {
        GroundProgram normal = translate_choice(ground);
        StableSearch(normal, visible, config).run(visit);
    } else {
        StableSearch(ground, visible, config).run(visit);
    }
}

AnswerSetCollection answer_sets(const GroundProgram& ground, std::optional<std::size_t> limit,
                                const SolverConfig& config) {
    AnswerSetCollection out;
    for_each_answer_set(ground, [&](const Interpretation& m) {
        out.models.push_back(m);
        return true;
    }, config);
    std::sort(out.models.begin(), out.models.end());
    out.models.erase(std::unique(out.models.begin(), out.models.end()), out.models.end());
    if (limit && out.models.size() > *limit) {
        out.models.resize(*limit);
        out.complete = false;
    }
    return out;
}

Entailment entailment(const GroundProgram& ground, const Atom& atom, const SolverConfig& config) {
    Entailment e;
    auto id = ground.atoms.find(atom);
    for_each_answer_set(ground, [&](const Interpretation& m) {
        e.has_models = true;
        bool in = id && m.contains(*id);
        e.brave = e.brave || in;
        e.cautious = e.cautious && in;
        return true;
    }, config);
    return e;
}

bool brave_entails(const GroundProgram& ground, const Atom& atom, const SolverConfig& config) {
    return entailment(ground, atom, config).brave;
}

bool cautious_entails(const GroundProgram& ground, const Atom& atom, const SolverConfig& config) {
    return entailment(ground, atom, config).cautious;
}

std::string model_text(const GroundProgram& ground, const Interpretation& model) {
    std::vector<std::string> names;
    for (AtomId a : model.ids()) {
        if (a >= ground.atoms.size()) continue;
        const Atom& atom = ground.atoms.atom(a);
        if (!is_internal(atom)) names.push_back(atom.text());
    }
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out + "}";
}

} // namespace las
