#include "demo.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "las/error.hpp"
#include "las/parser.hpp"

namespace las::cli {

namespace {

Program concat(std::initializer_list<Program> parts) {
    Program out;
    for (const Program& p : parts) out.rules.insert(out.rules.end(), p.rules.begin(), p.rules.end());
    return out;
}

// Case ids in order of first snatching(...) fact.
std::vector<std::string> case_ids(const Program& facts) {
    std::vector<std::string> out;
    for (const Rule& r : facts.rules)
        if (r.is_fact() && r.head.predicate == Symbol("snatching")) {
            std::string id = r.head.args.at(0).text();
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        }
    return out;
}

std::vector<CaseVerdicts> verdicts(const GroundProgram& g, const std::vector<Interpretation>& models,
                                   const std::vector<std::string>& ids) {
    std::vector<CaseVerdicts> out;
    for (const std::string& id : ids) {
        std::set<std::string> seen;
        for (const Interpretation& m : models)
            for (AtomId a : m.ids()) {
                const Atom& atom = g.atoms.atom(a);
                if (atom.predicate == Symbol("verdict") && atom.args.at(0).text() == id)
                    seen.insert(atom.args.at(1).text());
            }
        out.push_back({id, {seen.begin(), seen.end()}});
    }
    return out;
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

LegalReport legal_demo(const std::string& asset_dir, const SolverConfig& solver) {
    const std::string dir = asset_dir + "/legal/";
    Program statute = parse_program(read_file(dir + "statute.lp"));
    Program vague_case = parse_program(read_file(dir + "vague_case.lp"));
    LasTask precedents = parse_task(read_file(dir + "precedents.task"));
    Program tests = parse_program(read_file(dir + "test_cases.lp"));

    LegalReport report;
    Program vague = concat({statute, vague_case});
    GroundProgram gv = ground(vague, herbrand_universe(vague));
    std::vector<Interpretation> vm = answer_sets(gv, std::nullopt, solver).models;
    for (const Interpretation& m : vm) report.vague_models.push_back(model_text(gv, m));
    auto vv = verdicts(gv, vm, case_ids(vague_case));
    if (vv.size() != 1) throw InputError("vague_case.lp must describe exactly one case");
    report.vague = vv.front();

    LearnerConfig config;
    config.solver = solver;
    report.learned = learn(precedents, default_scoring(), config);

    Program applied = concat({statute, Program{report.learned.rules}, tests});
    GroundProgram ga = ground(applied, herbrand_universe(applied));
    std::vector<Interpretation> am = answer_sets(ga, std::nullopt, solver).models;
    report.test_models = am.size();
    report.cases = verdicts(ga, am, case_ids(tests));
    if (am.empty()) return report;

    // explain the verdict of the last case in the first answer set
    const std::string& last = report.cases.back().id;
    for (AtomId a : am.front().ids()) {
        const Atom& atom = ga.atoms.atom(a);
        if (atom.predicate == Symbol("verdict") && atom.args.at(0).text() == last) report.explained = atom;
    }
    if (report.explained.predicate.empty()) return report;
    report.dag = explain_atom(ga, am.front(), report.explained);
    return report;
}

WeatherReport weather_demo(const std::string& asset_dir, std::uint64_t seed, double noise,
                           const LearnerConfig& learner) {
    const std::string dir = asset_dir + "/weather/";
    DiscretizationSpec spec = parse_discretization(read_file(dir + "disc.toml"));
    Program planted = parse_program(read_file(dir + "planted_rule.lp"));

    WeatherReport report;
    report.planted = canonical_text(planted);
    report.series = synthesize(spec, planted, {240, noise, seed});
    LasTask task = build_task(report.series, spec);
    report.learned = learn(task, multi_timestamp_scoring(5), learner);
    CrossvalOptions options;
    options.scoring = multi_timestamp_scoring(5);
    options.learner = learner;
    report.crossval = crossval(report.series, spec, options);
    return report;
}

} // namespace las::cli
