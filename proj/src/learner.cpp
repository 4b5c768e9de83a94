#include "las/learner.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

#include "las/error.hpp"

namespace las {

namespace {

template <class F>
auto tagged(const Example& e, F&& f) {
    try {
        return f();
    } catch (const LimitError& err) {
        throw LimitError("example " + e.id + ": " + err.what());
    } catch (const GroundingError& err) {
        throw GroundingError("example " + e.id + ": " + err.what());
    }
}

HerbrandUniverse example_universe(const Program& background, const Example& example, const TypedConstants& typed,
                                  const std::vector<Rule>& vocabulary) {
    Program all = background;
    all.rules.insert(all.rules.end(), example.context.rules.begin(), example.context.rules.end());
    all.rules.insert(all.rules.end(), vocabulary.begin(), vocabulary.end());
    return herbrand_universe(all, typed);
}

struct PiIds {
    std::vector<AtomId> inclusions;
    std::vector<AtomId> exclusions;
};

PiIds intern_pi(AtomTable& table, const PartialInterpretation& pi) {
    PiIds ids;
    for (const Atom& a : pi.inclusions) ids.inclusions.push_back(table.intern(a));
    for (const Atom& a : pi.exclusions) ids.exclusions.push_back(table.intern(a));
    return ids;
}

bool extends_ids(const Interpretation& model, const PiIds& pi) {
    for (AtomId a : pi.inclusions)
        if (!model.contains(a)) return false;
    for (AtomId a : pi.exclusions)
        if (model.contains(a)) return false;
    return true;
}

bool solve_for(const GroundProgram& g, const Example& e, const PiIds& pi, const SolverConfig& config) {
    bool found = false;
    for_each_answer_set(
        g,
        [&](const Interpretation& model) {
            found = extends_ids(model, pi);
            return !found;
        },
        config);
    return e.positive() ? found : !found;
}

// Acceptance with sound program reductions and a cache keyed by the reduced
// hypothesis instances. Instances whose positive body cannot be derived are
// dropped; instances blocked by a definitely-true atom are dropped; instances
// that fire in every model become facts. Hypotheses that reduce to the same
// ground rules share one solver call.
class CachedExample {
public:
    CachedExample(const Program& background, const Example& example, const TypedConstants& typed,
                  const std::vector<Rule>& vocabulary, const SolverConfig& config)
        : example_(&example), config_(config) {
        universe_ = example_universe(background, example, typed, vocabulary);
        Program base = background;
        base.rules.insert(base.rules.end(), example.context.rules.begin(), example.context.rules.end());
        work_ = ground(base, universe_);
        base_rules_ = work_.rules.size();
        pi_ = intern_pi(work_.atoms, example.pi);
        occ_.assign(work_.atoms.size(), {});
        for (std::uint32_t i = 0; i < base_rules_; ++i)
            for (AtomId a : work_.rules[i].pos) occ_[a].push_back(i);
        definite0_ = closure({}, {}, true);
        possible0_ = closure({}, {}, false);
    }

    const Example& example() const { return *example_; }

    bool accepts(const std::vector<const Rule*>& hypothesis) {
        for (const Rule* r : hypothesis) ground_rule(*r, universe_, work_);
        std::vector<GroundRule> instances(work_.rules.begin() + static_cast<std::ptrdiff_t>(base_rules_),
                                          work_.rules.end());
        work_.rules.resize(base_rules_);

        std::vector<char> definite = closure(definite0_, instances, true);
        std::vector<char> possible = closure(possible0_, instances, false);
        auto all_in = [](const std::vector<AtomId>& ids, const std::vector<char>& set) {
            return std::all_of(ids.begin(), ids.end(), [&](AtomId a) { return a < set.size() && set[a]; });
        };
        auto any_in = [](const std::vector<AtomId>& ids, const std::vector<char>& set) {
            return std::any_of(ids.begin(), ids.end(), [&](AtomId a) { return a < set.size() && set[a]; });
        };
        std::vector<GroundRule> reduced;
        for (GroundRule& g : instances) {
            if (!all_in(g.pos, possible) || any_in(g.neg, definite)) continue;
            if (g.neg.empty() && all_in(g.pos, definite)) {
                if (all_in(g.head, definite0_)) continue;
                g.pos.clear();
            }
            reduced.push_back(std::move(g));
        }
        auto less = [](const GroundRule& a, const GroundRule& b) {
            return std::tie(a.head, a.pos, a.neg) < std::tie(b.head, b.pos, b.neg);
        };
        std::sort(reduced.begin(), reduced.end(), less);
        reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());

        std::vector<AtomId> key;
        for (const GroundRule& g : reduced) {
            for (const auto* part : {&g.head, &g.pos, &g.neg}) {
                key.push_back(static_cast<AtomId>(part->size()));
                key.insert(key.end(), part->begin(), part->end());
            }
        }
        auto hit = cache_.find(key);
        if (hit != cache_.end()) return hit->second;

        work_.rules.insert(work_.rules.end(), reduced.begin(), reduced.end());
        bool ok;
        try {
            ok = tagged(*example_, [&] { return solve_for(work_, *example_, pi_, config_); });
        } catch (...) {
            work_.rules.resize(base_rules_);
            throw;
        }
        work_.rules.resize(base_rules_);
        cache_.emplace(std::move(key), ok);
        return ok;
    }

private:
    // Atoms derivable from the base rules plus `extra`, starting from `start`;
    // negative bodies are ignored, or the rules having them skipped when
    // `definite_only`. Choice elements count as derivable only then.
    std::vector<char> closure(std::vector<char> in, const std::vector<GroundRule>& extra, bool definite_only) const {
        in.resize(work_.atoms.size(), 0);
        std::vector<AtomId> queue;
        auto usable = [&](const GroundRule& r) {
            if (r.is_constraint()) return false;
            return !definite_only || (r.neg.empty() && !r.is_choice());
        };
        auto fires = [&](const GroundRule& r) {
            return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in[a] != 0; });
        };
        auto derive = [&](const GroundRule& r) {
            bool changed = false;
            for (AtomId h : r.head)
                if (!in[h]) {
                    in[h] = 1;
                    queue.push_back(h);
                    changed = true;
                }
            return changed;
        };
        for (std::size_t i = 0; i < base_rules_; ++i)
            if (usable(work_.rules[i]) && fires(work_.rules[i])) derive(work_.rules[i]);
        bool changed = true;
        while (changed) {
            changed = false;
            while (!queue.empty()) {
                AtomId a = queue.back();
                queue.pop_back();
                if (a >= occ_.size()) continue;
                for (std::uint32_t r : occ_[a])
                    if (usable(work_.rules[r]) && fires(work_.rules[r])) derive(work_.rules[r]);
            }
            for (const GroundRule& r : extra)
                if (usable(r) && fires(r) && derive(r)) changed = true;
        }
        return in;
    }

    const Example* example_;
    SolverConfig config_;
    HerbrandUniverse universe_;
    GroundProgram work_;
    std::size_t base_rules_ = 0;
    PiIds pi_;
    std::vector<std::vector<std::uint32_t>> occ_;
    std::vector<char> definite0_;
    std::vector<char> possible0_;
    std::map<std::vector<AtomId>, bool> cache_;
};

} // namespace

bool extends(const GroundProgram& ground, const Interpretation& interpretation, const PartialInterpretation& pi) {
    for (const Atom& a : pi.inclusions) {
        auto id = ground.atoms.find(a);
        if (!id || !interpretation.contains(*id)) return false;
    }
    for (const Atom& a : pi.exclusions) {
        auto id = ground.atoms.find(a);
        if (id && interpretation.contains(*id)) return false;
    }
    return true;
}

ExampleEvaluator::ExampleEvaluator(const Program& background, const Example& example, const TypedConstants& typed,
                                   const std::vector<Rule>& vocabulary, const SolverConfig& config)
    : example_(example), config_(config) {
    universe_ = example_universe(background, example, typed, vocabulary);
    Program base = background;
    base.rules.insert(base.rules.end(), example.context.rules.begin(), example.context.rules.end());
    work_ = tagged(example_, [&] { return ground(base, universe_); });
    base_rules_ = work_.rules.size();
}

bool ExampleEvaluator::accepts(const std::vector<const Rule*>& hypothesis) {
    work_.rules.resize(base_rules_);
    return tagged(example_, [&] {
        for (const Rule* r : hypothesis) ground_rule(*r, universe_, work_);
        bool found = false;
        for_each_answer_set(
            work_,
            [&](const Interpretation& model) {
                found = extends(work_, model, example_.pi);
                return !found;
            },
            config_);
        return example_.positive() ? found : !found;
    });
}

bool accepts(const Program& background, const std::vector<Rule>& hypothesis, const Example& example,
             const TypedConstants& typed, const SolverConfig& config) {
    std::vector<const Rule*> ptrs;
    for (const Rule& r : hypothesis) ptrs.push_back(&r);
    return ExampleEvaluator(background, example, typed, hypothesis, config).accepts(ptrs);
}

long score(const std::vector<Rule>& hypothesis, const LasTask& task, const ScoringFunction& scoring,
           const SolverConfig& config) {
    long total = 0;
    for (const Rule& r : hypothesis) total += rule_cost(r, scoring);
    for (const Example& e : task.examples)
        if (!accepts(task.background, hypothesis, e, task.bias.constants, config)) total += e.penalty;
    return total;
}

std::string hypothesis_text(const std::vector<Rule>& rules) {
    std::string out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i) out += '\n';
        out += rules[i].text();
    }
    return out;
}

LearnResult learn(const LasTask& task, const ScoringFunction& scoring, const LearnerConfig& config) {
    return learn(task, enumerate_space(task.bias, config.space_cap), scoring, config);
}

LearnResult learn(const LasTask& task, const HypothesisSpace& space, const ScoringFunction& scoring,
                  const LearnerConfig& config) {
    const std::size_t max_rules = config.max_rules.value_or(task.bias.bounds.max_rules);
    const std::size_t n = space.rules.size();

    std::vector<long> cost(n);
    for (std::size_t i = 0; i < n; ++i) cost[i] = rule_cost(space.rules[i], scoring);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });

    std::vector<CachedExample> examples;
    examples.reserve(task.examples.size());
    for (const Example& e : task.examples)
        examples.push_back(
            tagged(e, [&] { return CachedExample(task.background, e, task.bias.constants, space.rules, config.solver); }));

    LearnResult result;
    result.space = space;
    long best_score = LONG_MAX;
    std::vector<std::size_t> best;
    std::string best_text;

    std::vector<std::size_t> chosen;  // space indices in search order
    std::vector<const Rule*> rules;
    auto text_of = [&](std::vector<std::size_t> ids) {
        std::sort(ids.begin(), ids.end());
        std::vector<Rule> rs;
        for (std::size_t i : ids) rs.push_back(space.rules[i]);
        return hypothesis_text(rs);
    };
    auto visit = [&](long rule_total) {
        ++result.nodes;
        long total = rule_total;
        for (CachedExample& ex : examples) {
            if (!ex.accepts(rules)) total += ex.example().penalty;
            if (total > best_score) return;
        }
        if (total == best_score) {
            if (chosen.size() > best.size()) return;
            std::string text = text_of(chosen);
            if (chosen.size() == best.size() && text >= best_text) return;
            best_text = std::move(text);
        } else {
            best_text = text_of(chosen);
        }
        best_score = total;
        best = chosen;
    };
    std::function<void(std::size_t, long)> descend = [&](std::size_t from, long rule_total) {
        visit(rule_total);
        if (chosen.size() == max_rules) return;
        for (std::size_t p = from; p < n; ++p) {
            std::size_t j = order[p];
            // costs are visited in nondecreasing order, so every later sibling is bounded too
            if (rule_total + cost[j] > best_score) break;
            chosen.push_back(j);
            rules.push_back(&space.rules[j]);
            descend(p + 1, rule_total + cost[j]);
            rules.pop_back();
            chosen.pop_back();
        }
    };
    descend(0, 0);

    std::sort(best.begin(), best.end());
    result.chosen = best;
    rules.clear();
    for (std::size_t i : best) {
        result.rules.push_back(space.rules[i]);
        rules.push_back(&space.rules[i]);
        result.rule_cost += cost[i];
    }
    result.fully_covering = true;
    for (CachedExample& ex : examples) {
        const Example& e = ex.example();
        bool ok = ex.accepts(rules);
        result.examples.push_back({e.id, e.positive(), e.penalty, ok});
        if (!ok) {
            result.penalty_cost += e.penalty;
            result.fully_covering = false;
        }
    }
    result.cost = result.rule_cost + result.penalty_cost;
    return result;
}

} // namespace las
