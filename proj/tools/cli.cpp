#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "demo.hpp"
#include "las/error.hpp"
#include "las/explain.hpp"
#include "las/parser.hpp"
#include "las/weather.hpp"

#ifndef LAS_ASSET_DIR
#define LAS_ASSET_DIR "assets"
#endif

namespace las::cli {

namespace {

struct Globals {
    std::size_t max_base_atoms = 24;
    std::size_t space_cap = 100000;
    std::uint64_t seed = 1;
    bool quiet = false;
    std::string output;
    std::string assets = LAS_ASSET_DIR;

    SolverConfig solver() const { return {max_base_atoms}; }
    LearnerConfig learner() const {
        LearnerConfig c;
        c.solver = solver();
        c.space_cap = space_cap;
        return c;
    }
};

// Parse errors carry a line:column; prefix the file so the message is positioned.
template <class F>
auto with_file(const std::string& path, F&& parse) {
    std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(path + ":" + (dynamic_cast<const ParseError*>(&e) ? "" : " ") + e.what());
    }
}

Program load_program(const std::string& path) {
    return with_file(path, [](const std::string& t) { return parse_program(t); });
}

LasTask load_task(const std::string& path) {
    return with_file(path, [](const std::string& t) { return parse_task(t); });
}

DiscretizationSpec load_spec(const std::string& path) {
    return with_file(path, [](const std::string& t) { return parse_discretization(t); });
}

GroundProgram ground_file(const std::string& path) {
    Program p = load_program(path);
    return ground(p, herbrand_universe(p));
}

// "a, p(x,y), b" -> atoms; commas inside parentheses do not split.
std::vector<Atom> atom_list(std::string_view text) {
    if (!text.empty() && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
    std::vector<Atom> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        char c = i < text.size() ? text[i] : ',';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c != ',' || depth != 0) continue;
        std::string_view item = text.substr(start, i - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.push_back(parse_atom(item));
        start = i + 1;
    }
    return out;
}

Interpretation model_of(const GroundProgram& g, const std::vector<Atom>& atoms) {
    Interpretation m(g.atoms.size());
    for (const Atom& a : atoms) {
        auto id = g.atoms.find(a);
        if (!id) throw InputError("model atom " + a.text() + " is not in the Herbrand base");
        m.insert(*id);
    }
    return m;
}

ScoringFunction scoring_named(const std::string& name, int surcharge) {
    if (name == "multi-timestamp") return multi_timestamp_scoring(surcharge);
    return default_scoring();
}

void print_learned(std::ostream& o, const LearnResult& r) {
    if (r.rules.empty()) o << "% empty hypothesis\n";
    for (const Rule& rule : r.rules) o << rule.text() << "\n";
    o << "% cost " << r.cost << " = rules " << r.rule_cost << " + penalties " << r.penalty_cost << "\n";
    std::size_t width = 7;
    for (const ExampleReport& e : r.examples) width = std::max(width, e.id.size());
    char buf[256];
    std::snprintf(buf, sizeof buf, "%% %-*s  polarity  penalty  accepted\n", static_cast<int>(width), "example");
    o << buf;
    for (const ExampleReport& e : r.examples) {
        std::snprintf(buf, sizeof buf, "%% %-*s  %-8s  %7d  %s\n", static_cast<int>(width), e.id.c_str(),
                      e.positive ? "pos" : "neg", e.penalty, e.accepted ? "yes" : "no");
        o << buf;
    }
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learning from answer sets: ground, solve, learn and explain logic programs", "las"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-base-atoms", g.max_base_atoms, "solver limit on simplified ground atoms")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--space-cap", g.space_cap, "largest hypothesis space to enumerate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for synthetic data")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "omit comment lines from reports");
    app.add_option("-o,--output", g.output, "write the result to this file instead of stdout");
    app.add_option("--assets", g.assets, "directory of bundled demo assets")->capture_default_str();

    std::ostringstream body;
    std::function<int()> action;
    auto note = [&](const std::string& line) {
        if (!g.quiet) body << line << "\n";
    };

    std::string file;
    auto* ground_cmd = app.add_subcommand("ground", "print the ground instantiation of a program");
    ground_cmd->add_option("file", file, ".lp file")->required();
    ground_cmd->callback([&] {
        action = [&] {
            body << canonical_text(ground_file(file).to_program());
            return ok;
        };
    });

    std::string brave, cautious;
    auto* solve_cmd = app.add_subcommand("solve", "enumerate answer sets, one per line");
    solve_cmd->add_option("file", file, ".lp file")->required();
    solve_cmd->add_option("--brave", brave, "print whether ATOM holds in some answer set");
    solve_cmd->add_option("--cautious", cautious, "print whether ATOM holds in every answer set");
    solve_cmd->callback([&] {
        action = [&] {
            GroundProgram gp = ground_file(file);
            if (!brave.empty() || !cautious.empty()) {
                bool any = false;
                for (const auto& [query, is_brave] : {std::pair{brave, true}, std::pair{cautious, false}}) {
                    if (query.empty()) continue;
                    Entailment e = entailment(gp, parse_atom(query), g.solver());
                    any = e.has_models;
                    body << ((is_brave ? e.brave : e.cautious) ? "true" : "false") << "\n";
                }
                return any ? ok : no_model;
            }
            AnswerSetCollection all = answer_sets(gp, std::nullopt, g.solver());
            for (const Interpretation& m : all.models) body << model_text(gp, m) << "\n";
            note("% " + std::to_string(all.models.size()) + " answer set" + (all.models.size() == 1 ? "" : "s"));
            return all.models.empty() ? no_model : ok;
        };
    });

    auto* space_cmd = app.add_subcommand("space", "enumerate the hypothesis space of a task");
    space_cmd->add_option("file", file, ".task file")->required();
    space_cmd->callback([&] {
        action = [&] {
            HypothesisSpace s = enumerate_space(load_task(file).bias, g.space_cap);
            char buf[32];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%zu\t%d\t", i, s.base_costs[i]);
                body << buf << s.rules[i].text() << "\n";
            }
            note("% " + std::to_string(s.size()) + " rules");
            return ok;
        };
    });

    std::string scoring = "default";
    int surcharge = 5;
    std::size_t max_rules = 0;
    auto* learn_cmd = app.add_subcommand("learn", "find an optimal hypothesis for a task");
    learn_cmd->add_option("file", file, ".task file")->required();
    learn_cmd->add_option("--scoring", scoring)->check(CLI::IsMember({"default", "multi-timestamp"}))->capture_default_str();
    learn_cmd->add_option("--surcharge", surcharge, "multi-timestamp surcharge")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    learn_cmd->add_option("--max-rules", max_rules, "override the task's #maxrules")->check(CLI::PositiveNumber);
    learn_cmd->callback([&] {
        action = [&] {
            LearnerConfig c = g.learner();
            if (max_rules) c.max_rules = max_rules;
            print_learned(body, learn(load_task(file), scoring_named(scoring, surcharge), c));
            return ok;
        };
    });

    std::string model, atom;
    bool absent = false, all_supports = false;
    auto* explain_cmd = app.add_subcommand("explain", "explanation graph for an atom of an answer set");
    explain_cmd->add_option("file", file, ".lp file")->required();
    explain_cmd->add_option("--model", model, "answer set as \"a, b\" (default: the first one)");
    explain_cmd->add_option("--atom", atom, "atom to explain")->required();
    explain_cmd->add_flag("--absent", absent, "explain why the atom is false");
    explain_cmd->add_flag("--all-supports", all_supports, "annotate alternative supporting rules");
    explain_cmd->callback([&] {
        action = [&] {
            GroundProgram gp = ground_file(file);
            Interpretation m;
            if (explain_cmd->count("--model")) {
                m = model_of(gp, atom_list(model));
            } else {
                AnswerSetCollection first = answer_sets(gp, 1, g.solver());
                if (first.models.empty()) throw InputError(file + " has no answer set to explain");
                m = first.models.front();
            }
            Atom target = parse_atom(atom);
            ExplainOptions options;
            options.all_supports = all_supports;
            body << to_graph_text(absent ? explain_absence(gp, m, target) : explain_atom(gp, m, target, options));
            return ok;
        };
    });

    std::string spec_path;
    std::size_t window = 0;
    auto* taskgen_cmd = app.add_subcommand("taskgen", "turn a time series into a learning task");
    taskgen_cmd->add_option("data", file, "CSV with a timestamp column")->required();
    taskgen_cmd->add_option("--spec", spec_path, "discretization spec (TOML)")->required();
    taskgen_cmd->add_option("--window", window, "history length (default from the [task] section)")->check(CLI::PositiveNumber);
    taskgen_cmd->callback([&] {
        action = [&] {
            DiscretizationSpec spec = load_spec(spec_path);
            if (window) spec.task.window = window;
            SeriesTable table = with_file(file, [](const std::string& t) { return ingest(t); });
            LasTask task = build_task(discretize(table, spec), spec);
            note("% " + std::to_string(table.rows()) + " rows, " + std::to_string(task.examples.size()) + " windows");
            body << task_text(task);
            return ok;
        };
    });

    std::size_t folds = 10, train_days = 4, rows = 240;
    double noise = 0.0;
    std::string planted;
    auto* eval_cmd = app.add_subcommand("evaluate", "cross-validate the learner against a one-feature stump");
    eval_cmd->add_option("data", file, "CSV with a timestamp column (omit with --synthetic)");
    eval_cmd->add_option("--spec", spec_path, "discretization spec (TOML)")->required();
    eval_cmd->add_option("--folds", folds)->check(CLI::PositiveNumber)->capture_default_str();
    eval_cmd->add_option("--train-days", train_days)->check(CLI::PositiveNumber)->capture_default_str();
    eval_cmd->add_option("--synthetic", planted, "generate the series from this planted rule instead");
    eval_cmd->add_option("--rows", rows, "synthetic series length")->check(CLI::PositiveNumber)->capture_default_str();
    eval_cmd->add_option("--noise", noise, "synthetic label-flip rate")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    eval_cmd->add_option("--scoring", scoring)->check(CLI::IsMember({"default", "multi-timestamp"}))->capture_default_str();
    eval_cmd->add_option("--surcharge", surcharge)->check(CLI::NonNegativeNumber)->capture_default_str();
    eval_cmd->callback([&] {
        action = [&]() -> int {
            DiscretizationSpec spec = load_spec(spec_path);
            DiscreteSeries series;
            if (!planted.empty()) {
                series = synthesize(spec, load_program(planted), {rows, noise, g.seed});
            } else if (!file.empty()) {
                series = discretize(with_file(file, [](const std::string& t) { return ingest(t); }), spec);
            } else {
                throw CLI::RequiredError("evaluate needs a data file or --synthetic");
            }
            CrossvalOptions o;
            o.folds = folds;
            o.train_days = train_days;
            o.scoring = scoring_named(scoring, surcharge);
            o.learner = g.learner();
            CrossvalReport r = crossval(series, spec, o);
            for (const FoldReport& f : r.folds) {
                note("% fold " + std::to_string(f.fold) + ": " + (f.hypothesis.empty() ? "(empty)" : f.hypothesis) +
                     " | stump " + f.stump);
            }
            body << comparison_table(r);
            return ok;
        };
    });

    std::string demo_name;
    double demo_noise = 0.1;
    auto* demo_cmd = app.add_subcommand("demo", "bundled end-to-end demos");
    demo_cmd->add_option("name", demo_name)->required()->check(CLI::IsMember({"legal", "weather"}));
    demo_cmd->add_option("--noise", demo_noise, "weather label-flip rate")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    demo_cmd->callback([&] {
        action = [&] {
            if (demo_name == "legal") {
                LegalReport r = legal_demo(g.assets, g.solver());
                note("% vague case: " + std::to_string(r.vague_models.size()) + " answer sets");
                for (const std::string& m : r.vague_models) body << m << "\n";
                body << r.vague.id << ": " << join(r.vague.verdicts, " | ") << "\n";
                note("% learned from the precedents");
                print_learned(body, r.learned);
                note("% test cases: " + std::to_string(r.test_models) + " answer set" + (r.test_models == 1 ? "" : "s"));
                for (const CaseVerdicts& c : r.cases) body << c.id << ": " << join(c.verdicts, " | ") << "\n";
                if (!r.explained.predicate.empty()) {
                    note("% why " + r.explained.text());
                    body << to_graph_text(r.dag);
                }
                return ok;
            }
            WeatherReport r = weather_demo(g.assets, g.seed, demo_noise, g.learner());
            note("% planted: " + r.planted.substr(0, r.planted.size() - (r.planted.empty() ? 0 : 1)));
            note("% " + std::to_string(r.series.rows()) + " synthetic rows, seed " + std::to_string(g.seed));
            print_learned(body, r.learned);
            body << comparison_table(r.crossval);
            return ok;
        };
    });

    if (args.empty()) {
        err << app.help();
        return usage;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return usage;
    }

    int code = ok;
    try {
        code = action();
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input;
    }
    if (g.output.empty()) {
        out << body.str();
    } else {
        std::ofstream f(g.output, std::ios::binary);
        if (!(f << body.str())) {
            err << "error: cannot write " << g.output << "\n";
            return input;
        }
    }
    return code;
}

} // namespace las::cli
