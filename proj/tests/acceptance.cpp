// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "demo.hpp"
#include "las/explain.hpp"
#include "las/parser.hpp"
#include "las/weather.hpp"
#include "support/dag_checks.hpp"
#include "support/random_programs.hpp"
#include "support/random_tasks.hpp"

using namespace las;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Criterion 1's corpus, reused by 2 and 7.
struct Corpus {
    std::vector<GroundProgram> programs;
    std::vector<std::vector<Interpretation>> models;
    double seconds = 0;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus c;
        std::mt19937_64 rng(20240601);
        auto t0 = Clock::now();
        for (int i = 0; i < 200; ++i) {
            c.programs.push_back(oracle::random_ground_program(rng, {8, 12, 3, 0.4, 0.1}));
            c.models.push_back(answer_sets(c.programs.back()).models);
        }
        c.seconds = seconds_since(t0);
        return c;
    }();
    return c;
}

Verdict stable_models() {
    std::size_t mismatches = 0, total = 0;
    const Corpus& c = corpus();
    auto t0 = Clock::now();
    for (std::size_t i = 0; i < c.programs.size(); ++i) {
        if (c.models[i] != oracle::brute_force_answer_sets(c.programs[i])) ++mismatches;
        total += c.models[i].size();
    }
    const double seconds = c.seconds + seconds_since(t0);  // solving plus the oracle
    return {mismatches == 0 && seconds < 30.0, std::to_string(c.programs.size()) + " programs, " +
                                                   std::to_string(total) + " models, " + std::to_string(mismatches) +
                                                   " mismatches, " + fmt("%.3f s", seconds)};
}

Verdict reduct_fixpoint() {
    std::size_t checked = 0, violations = 0;
    const Corpus& c = corpus();
    for (std::size_t i = 0; i < c.programs.size(); ++i)
        for (const Interpretation& s : c.models[i]) {
            ++checked;
            if (!(least_model(reduct(c.programs[i], s)) == s)) ++violations;
        }
    return {violations == 0 && checked > 0,
            std::to_string(checked) + " models, " + std::to_string(violations) + " violations"};
}

Verdict choice_translation() {
    std::size_t cases = 0, wrong = 0;
    const char* names[] = {"a", "b", "c", "d"};
    for (int n = 1; n <= 4; ++n)
        for (int lo = 0; lo <= n; ++lo)  // every valid pair 0 <= L <= U <= n
            for (int hi = lo; hi <= n; ++hi)
                for (int body = 0; body < 3; ++body) {  // no body, satisfied body, blocked body
                    std::string elems;
                    for (int k = 0; k < n; ++k) elems += (k ? " ; " : "") + std::string(names[k]);
                    std::string text = std::to_string(lo) + " { " + elems + " } " + std::to_string(hi);
                    text += body == 0 ? "." : " :- g.";
                    if (body == 1) text += " g.";
                    Program p = parse_program(text);
                    GroundProgram g = ground(p, herbrand_universe(p));
                    std::set<std::string> got;
                    for (const Interpretation& m : answer_sets(g).models) {
                        std::string s;
                        for (AtomId a : m.ids()) {
                            const Atom& atom = g.atoms.atom(a);
                            if (!is_internal(atom) && atom.predicate != Symbol("g")) s += atom.text();
                        }
                        got.insert(s);
                    }
                    std::set<std::string> want;
                    for (int mask = 0; mask < (1 << n); ++mask) {
                        int size = __builtin_popcount(mask);
                        bool fires = body != 2;
                        if (fires ? (size < lo || size > hi) : mask != 0) continue;
                        std::string s;
                        for (int k = 0; k < n; ++k)
                            if (mask >> k & 1) s += names[k];
                        want.insert(s);
                    }
                    ++cases;
                    if (got != want) ++wrong;
                }
    return {wrong == 0, std::to_string(cases) + " programs, " + std::to_string(wrong) + " mismatches"};
}

Verdict learner_optimality() {
    std::mt19937_64 rng(777);
    std::size_t wrong = 0;
    auto t0 = Clock::now();
    for (int i = 0; i < 50; ++i) {
        oracle::RandomTask t = oracle::random_task(rng, 12, 6);
        LearnResult r = learn(t.task, t.space, default_scoring());
        oracle::OracleOptimum o = oracle::exhaustive_optimum(t.task, t.space, default_scoring(), t.task.bias.bounds.max_rules);
        if (r.cost != o.score) ++wrong;
    }
    const double total = seconds_since(t0);
    return {wrong == 0 && total < 60.0,
            "50 tasks, " + std::to_string(wrong) + " cost mismatches, " + fmt("%.3f s", total)};
}

DiscretizationSpec weather_spec() {
    return parse_discretization(cli::read_file(std::string(LAS_ASSET_DIR) + "/weather/disc.toml"));
}

Program planted_rule() { return parse_program(cli::read_file(std::string(LAS_ASSET_DIR) + "/weather/planted_rule.lp")); }

Verdict planted_recovery() {
    const DiscretizationSpec spec = weather_spec();
    const Program planted = planted_rule();
    const std::string want = canonical_rule(planted.rules.at(0)).text();
    const ScoringFunction scoring = multi_timestamp_scoring(5);
    int recovered = 0, oracle_disagreements = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        DiscreteSeries s = synthesize(spec, planted, {240, 0.10, seed});
        LasTask task = build_task(s, spec);
        HypothesisSpace space = enumerate_space(task.bias);
        LearnResult r = learn(task, space, scoring);
        oracle::OracleOptimum o = oracle::exhaustive_optimum(task, space, scoring, task.bias.bounds.max_rules);
        if (r.cost != o.score || hypothesis_text(r.rules) != o.text) ++oracle_disagreements;
        if (r.rules.size() == 1 && canonical_rule(r.rules[0]).text() == want) ++recovered;
    }
    return {recovered >= 9 && oracle_disagreements == 0,
            std::to_string(recovered) + "/10 seeds recovered, " + std::to_string(oracle_disagreements) +
                " oracle disagreements"};
}

Verdict crossval_accuracy() {
    const DiscretizationSpec spec = weather_spec();
    const Program planted = planted_rule();
    CrossvalOptions options;
    options.scoring = multi_timestamp_scoring(5);
    bool pass = true;
    std::string detail;
    for (double noise : {0.0, 0.10}) {
        detail += noise == 0 ? "noise 0:" : "; noise 0.10:";
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            CrossvalReport r = crossval(synthesize(spec, planted, {240, noise, seed}), spec, options);
            pass = pass && (noise == 0 ? r.mean_accuracy == 1.0 : r.mean_accuracy >= 0.85);
            detail += fmt(" %.4f", r.mean_accuracy);
        }
    }
    return {pass, detail + " (seeds 1-3)"};
}

Verdict dag_well_formed() {
    std::size_t dags = 0, violations = 0;
    std::string first;
    const Corpus& c = corpus();
    for (std::size_t i = 0; i < c.programs.size(); ++i) {
        const GroundProgram& g = c.programs[i];
        for (const Interpretation& m : c.models[i])
            for (AtomId a : m.ids()) {
                ExplanationDag d = explain_atom(g, m, g.atoms.atom(a));
                ++dags;
                std::string why;
                if (!oracle::is_acyclic(d)) why = "cycle";
                else if (!oracle::is_rooted(d)) why = "unrooted";
                else why = oracle::support_violation(d, g, m);
                if (!why.empty()) {
                    ++violations;
                    if (first.empty()) first = " (first: " + why + ")";
                }
            }
    }
    return {violations == 0 && dags > 0, std::to_string(dags) + " DAGs, " + std::to_string(violations) + " violations" + first};
}

Verdict legal_demo() {
    const std::string dir = std::string(LAS_ASSET_DIR) + "/legal/";
    // independent count on the bundled encoding
    Program vague = parse_program(cli::read_file(dir + "statute.lp") + cli::read_file(dir + "vague_case.lp"));
    GroundProgram g = ground(vague, herbrand_universe(vague));
    std::vector<std::string> classifications;
    for (const Interpretation& m : answer_sets(g).models) {
        std::string v;
        for (AtomId a : m.ids())
            if (g.atoms.atom(a).predicate == Symbol("verdict")) v += g.atoms.atom(a).args.at(1).text();
        classifications.push_back(v);
    }
    std::sort(classifications.begin(), classifications.end());
    bool vague_ok = classifications == std::vector<std::string>{"robbery", "theft_aggravated"};

    cli::LegalReport r = cli::legal_demo(LAS_ASSET_DIR);
    bool single = !r.cases.empty();
    for (const auto& c : r.cases) single = single && c.verdicts.size() == 1;

    // some rule node must be a ground instance of a learned rule
    bool has_learned = false;
    const std::string case_id = r.explained.args.empty() ? "" : r.explained.args[0].text();
    for (const ExplanationNode& n : r.dag.nodes) {
        if (n.kind != NodeKind::rule) continue;
        for (const Rule& learned : r.learned.rules) {
            std::string text = learned.text();
            for (Symbol v : variables_of(learned))
                for (std::size_t at; (at = text.find(v.name())) != std::string::npos;)
                    text.replace(at, v.name().size(), case_id);
            has_learned = has_learned || n.label == text;
        }
    }
    std::string detail = std::to_string(classifications.size()) + " vague answer sets; after learning " +
                         std::to_string(r.learned.rules.size()) + " rules:";
    for (const auto& c : r.cases) detail += " " + c.id + "=" + std::to_string(c.verdicts.size());
    detail += has_learned ? "; DAG has learned rule node" : "; DAG lacks learned rule node";
    return {vague_ok && single && has_learned, detail};
}

Verdict round_trip_and_determinism() {
    std::mt19937_64 rng(99);
    std::size_t broken = 0;
    for (int i = 0; i < 1000; ++i) {
        Program p = parse_program(oracle::random_program_text(rng));
        std::string text = canonical_text(p);
        Program q = parse_program(text);
        if (!(q == p) || canonical_text(q) != text) ++broken;
    }

    const std::string a = LAS_ASSET_DIR;
    const std::vector<std::vector<std::string>> commands = {
        {"ground", a + "/legal/statute.lp"},
        {"solve", a + "/nondet.lp"},
        {"solve", a + "/unsat.lp"},
        {"space", a + "/legal/precedents.task"},
        {"learn", a + "/legal/precedents.task"},
        {"explain", a + "/nondet.lp", "--atom", "a"},
        {"taskgen", a + "/weather/sample.csv", "--spec", a + "/weather/disc.toml", "--window", "2"},
        {"--seed", "7", "evaluate", "--spec", a + "/weather/disc.toml", "--synthetic", a + "/weather/planted_rule.lp",
         "--noise", "0.1", "--scoring", "multi-timestamp"},
        {"demo", "legal"},
        {"--seed", "7", "demo", "weather"},
    };
    std::size_t differing = 0;
    for (const auto& cmd : commands) {
        std::ostringstream o1, e1, o2, e2;
        int c1 = cli::run(cmd, o1, e1);
        int c2 = cli::run(cmd, o2, e2);
        if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str() || o1.str().empty()) ++differing;
    }
    return {broken == 0 && differing == 0, "1000 programs, " + std::to_string(broken) + " round-trip failures; " +
                                               std::to_string(commands.size()) + " CLI invocations, " +
                                               std::to_string(differing) + " nondeterministic"};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
        {"stable-model oracle equivalence", stable_models},
        {"reduct fixpoint invariant", reduct_fixpoint},
        {"choice-translation soundness", choice_translation},
        {"learner optimality", learner_optimality},
        {"planted-rule recovery", planted_recovery},
        {"cross-validation accuracy", crossval_accuracy},
        {"explanation DAG well-formedness", dag_well_formed},
        {"legal vagueness demo", legal_demo},
        {"round-trip and determinism", round_trip_and_determinism},
    };
    // no arguments: every criterion; otherwise the listed ids
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) ids.push_back(i);
    for (int id : ids) {
        if (id < 1 || id > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "no criterion %d\n", id);
            return 2;
        }
        report(id, criteria[id - 1].first, criteria[id - 1].second);
    }
    return failures == 0 ? 0 : 1;
}
