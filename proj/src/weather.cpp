#include "las/weather.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <variant>

#include "las/error.hpp"

namespace las {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        auto at = s.find(sep);
        out.push_back(trim(s.substr(0, at)));
        if (at == std::string_view::npos) return out;
        s.remove_prefix(at + 1);
    }
}

std::vector<std::string_view> lines_of(std::string_view text) { return split(text, '\n'); }

template <class T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool valid_constant(std::string_view s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

// ---- TOML subset ----

using Scalar = std::variant<double, std::string, bool>;
struct Value {
    std::variant<Scalar, std::vector<Scalar>> v;
    std::size_t line = 0;
};
using Table = std::map<std::string, std::map<std::string, Value>>;

Scalar parse_scalar(std::string_view s, std::size_t line) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return std::string(s.substr(1, s.size() - 2));
    if (s == "true") return true;
    if (s == "false") return false;
    double d;
    if (parse_number(s, d) && std::isfinite(d)) return d;
    throw InputError("spec line " + std::to_string(line) + ": cannot read value '" + std::string(s) + "'");
}

Table parse_toml(std::string_view text) {
    Table table;
    std::string section;
    std::size_t line_no = 0;
    for (std::string_view raw : lines_of(text)) {
        ++line_no;
        // strip comments outside strings
        bool quoted = false;
        std::size_t cut = raw.size();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"') quoted = !quoted;
            if (raw[i] == '#' && !quoted) {
                cut = i;
                break;
            }
        }
        std::string_view line = trim(raw.substr(0, cut));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InputError("spec line " + std::to_string(line_no) + ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw InputError("spec line " + std::to_string(line_no) + ": empty section name");
            table[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("spec line " + std::to_string(line_no) + ": expected key = value");
        if (section.empty())
            throw InputError("spec line " + std::to_string(line_no) + ": key outside of a section");
        std::string key(trim(line.substr(0, eq)));
        std::string_view rhs = trim(line.substr(eq + 1));
        Value value;
        value.line = line_no;
        if (!rhs.empty() && rhs.front() == '[') {
            if (rhs.back() != ']') throw InputError("spec line " + std::to_string(line_no) + ": unterminated array");
            std::vector<Scalar> items;
            std::string_view inner = trim(rhs.substr(1, rhs.size() - 2));
            if (!inner.empty())
                for (std::string_view item : split(inner, ',')) items.push_back(parse_scalar(item, line_no));
            value.v = std::move(items);
        } else {
            value.v = parse_scalar(rhs, line_no);
        }
        if (!table[section].emplace(key, std::move(value)).second)
            throw InputError("spec line " + std::to_string(line_no) + ": duplicate key " + key);
    }
    return table;
}

std::string where(const std::string& section, const std::string& key, const Value& v) {
    return "spec line " + std::to_string(v.line) + " ([" + section + "] " + key + ")";
}

double as_number(const std::string& section, const std::string& key, const Value& v) {
    const Scalar* s = std::get_if<Scalar>(&v.v);
    if (!s || !std::holds_alternative<double>(*s)) throw InputError(where(section, key, v) + ": expected a number");
    return std::get<double>(*s);
}

std::size_t as_count(const std::string& section, const std::string& key, const Value& v) {
    double d = as_number(section, key, v);
    if (d < 1 || d != std::floor(d) || d > 1e9)
        throw InputError(where(section, key, v) + ": expected a positive integer");
    return static_cast<std::size_t>(d);
}

std::string as_string(const std::string& section, const std::string& key, const Value& v) {
    const Scalar* s = std::get_if<Scalar>(&v.v);
    if (!s || !std::holds_alternative<std::string>(*s)) throw InputError(where(section, key, v) + ": expected a string");
    return std::get<std::string>(*s);
}

const std::vector<Scalar>& as_array(const std::string& section, const std::string& key, const Value& v) {
    const auto* a = std::get_if<std::vector<Scalar>>(&v.v);
    if (!a) throw InputError(where(section, key, v) + ": expected an array");
    return *a;
}

std::string ordinal_level(const std::vector<std::string>& levels, std::size_t i) { return levels.at(i); }

Term time_term(std::size_t t) { return Term::integer(static_cast<std::int32_t>(t)); }

Atom level_atom(const std::string& column, const std::string& level, Term t) {
    return Atom("level", {Term::constant(column), Term::constant(level), t});
}

std::vector<std::string> body_columns(const DiscretizationSpec& spec) {
    if (!spec.task.body_columns.empty()) return spec.task.body_columns;
    std::vector<std::string> out;
    for (const auto& [name, levels] : spec.columns)
        if (name != spec.task.target) out.push_back(name);
    return out;
}

void check_task_columns(const DiscreteSeries& series, const DiscretizationSpec& spec) {
    if (!spec.columns.count(spec.task.target) || series.column_index(spec.task.target) == series.columns.size())
        throw InputError("target column " + spec.task.target + " is not discretized");
    for (const std::string& c : body_columns(spec))
        if (!spec.columns.count(c) || series.column_index(c) == series.columns.size())
            throw InputError("body column " + c + " is not discretized");
    if (spec.task.default_level) {
        const auto& lv = spec.columns.at(spec.task.target).levels;
        if (std::find(lv.begin(), lv.end(), *spec.task.default_level) == lv.end())
            throw InputError("default level " + *spec.task.default_level + " is not a level of " + spec.task.target);
    }
}

// Background and bias shared by every window.
LasTask skeleton(const DiscretizationSpec& spec) {
    const TaskSettings& ts = spec.task;
    const std::size_t w = ts.window;
    LasTask task;
    for (std::size_t k = 1; k <= w; ++k)
        task.background.rules.push_back(Rule::fact(Atom("next", {time_term(k), time_term(k + 1)})));
    task.background.rules.push_back(Rule::fact(Atom("target_time", {time_term(w + 1)})));
    const auto& target_levels = spec.columns.at(ts.target).levels;
    if (ts.default_level) {
        Term t = Term::variable("T");
        std::vector<Literal> body{Literal::pos(Atom("target_time", {t}))};
        for (const std::string& l : target_levels)
            if (l != *ts.default_level) body.push_back(Literal::naf(level_atom(ts.target, l, t)));
        task.background.rules.push_back(Rule::normal(level_atom(ts.target, *ts.default_level, t), std::move(body)));
    }

    ModeBias& bias = task.bias;
    for (std::size_t k = 1; k <= w + 1; ++k) bias.constants.add(Symbol("time"), time_term(k));
    const std::string head_type = ts.target + "_class";
    for (const std::string& l : target_levels)
        if (!ts.default_level || l != *ts.default_level) bias.constants.add(Symbol(head_type), Term::constant(l));
    ModeDeclaration head;
    head.polarity = ModePolarity::head;
    head.predicate = Symbol("level");
    head.args = {ModeArg::literal(Term::constant(ts.target)), ModeArg::of_type(head_type), ModeArg::var("time")};
    bias.heads.push_back(head);
    ModeDeclaration next;
    next.polarity = ModePolarity::body;
    next.predicate = Symbol("next");
    next.args = {ModeArg::var("time"), ModeArg::var("time")};
    bias.bodies.push_back(next);
    for (const std::string& c : body_columns(spec)) {
        const std::string type = c + "_level";
        for (const std::string& l : spec.columns.at(c).levels) bias.constants.add(Symbol(type), Term::constant(l));
        ModeDeclaration m;
        m.polarity = ModePolarity::body;
        m.predicate = Symbol("level");
        m.args = {ModeArg::literal(Term::constant(c)), ModeArg::of_type(type), ModeArg::var("time")};
        bias.bodies.push_back(m);
    }
    bias.bounds = ts.bounds;
    return task;
}

Example window_example(const DiscreteSeries& series, const DiscretizationSpec& spec, std::size_t target_row) {
    const TaskSettings& ts = spec.task;
    const std::size_t w = ts.window;
    Example e;
    e.id = "w" + std::to_string(target_row);
    e.penalty = ts.penalty;
    for (std::size_t j = 0; j < w; ++j) {
        const std::size_t row = target_row - w + j;
        for (std::size_t c = 0; c < series.columns.size(); ++c)
            e.context.rules.push_back(Rule::fact(level_atom(series.columns[c], series.levels[row][c], time_term(j + 1))));
    }
    const std::string& observed = series.levels[target_row][series.column_index(ts.target)];
    for (const std::string& l : spec.columns.at(ts.target).levels) {
        Atom a = level_atom(ts.target, l, time_term(w + 1));
        (l == observed ? e.pi.inclusions : e.pi.exclusions).push_back(a);
    }
    return e;
}

std::string level_text(const Atom& a) { return a.args.at(1).text(); }

std::string majority(const std::map<std::string, std::size_t>& counts, const std::vector<std::string>& order) {
    std::string best;
    std::size_t best_n = 0;
    for (const std::string& l : order) {
        auto it = counts.find(l);
        std::size_t n = it == counts.end() ? 0 : it->second;
        if (best.empty() || n > best_n) {
            best = l;
            best_n = n;
        }
    }
    return best;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

} // namespace

const std::vector<double>& SeriesTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw InputError("missing column " + std::string(name));
}

SeriesTable ingest(std::string_view csv_text) {
    SeriesTable table;
    std::size_t line_no = 0;
    bool header = true;
    for (std::string_view line : lines_of(csv_text)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> cells = split(line, ',');
        if (header) {
            if (cells.size() < 2) throw InputError("row 1: header needs a timestamp column and a variable column");
            std::set<std::string_view> seen;
            for (std::string_view c : cells)
                if (c.empty() || !seen.insert(c).second)
                    throw InputError("row " + std::to_string(line_no) + ": empty or duplicate column name");
            table.time_column = std::string(cells[0]);
            for (std::size_t i = 1; i < cells.size(); ++i) table.names.emplace_back(cells[i]);
            table.columns.resize(table.names.size());
            header = false;
            continue;
        }
        const std::string row = "row " + std::to_string(line_no);
        if (cells.size() != table.names.size() + 1)
            throw InputError(row + ": expected " + std::to_string(table.names.size() + 1) + " cells, got " +
                             std::to_string(cells.size()));
        std::int64_t ts;
        if (!parse_number(cells[0], ts)) throw InputError(row + ": timestamp '" + std::string(cells[0]) + "' is not an integer");
        if (!table.timestamps.empty() && ts <= table.timestamps.back())
            throw InputError(row + ": timestamp " + std::to_string(ts) + " is not greater than the previous one");
        std::vector<double> values;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            double v;
            if (!parse_number(cells[i], v) || !std::isfinite(v))
                throw InputError(row + ": missing or non-numeric value '" + std::string(cells[i]) + "' in column " +
                                 table.names[i - 1]);
            values.push_back(v);
        }
        table.timestamps.push_back(ts);
        for (std::size_t i = 0; i < values.size(); ++i) table.columns[i].push_back(values[i]);
    }
    if (header) throw InputError("empty data file");
    return table;
}

DiscretizationSpec parse_discretization(std::string_view toml_text) {
    DiscretizationSpec spec;
    for (const auto& [section, keys] : parse_toml(toml_text)) {
        if (section == "task") {
            TaskSettings& ts = spec.task;
            for (const auto& [key, v] : keys) {
                if (key == "target") ts.target = as_string(section, key, v);
                else if (key == "default_level") ts.default_level = as_string(section, key, v);
                else if (key == "window") ts.window = as_count(section, key, v);
                else if (key == "penalty") ts.penalty = static_cast<int>(as_count(section, key, v));
                else if (key == "day_length") ts.day_length = as_count(section, key, v);
                else if (key == "max_body") ts.bounds.max_body_literals = as_count(section, key, v);
                else if (key == "max_vars") ts.bounds.max_variables = as_count(section, key, v);
                else if (key == "max_rules") ts.bounds.max_rules = as_count(section, key, v);
                else if (key == "body_columns") {
                    for (const Scalar& s : as_array(section, key, v)) {
                        if (!std::holds_alternative<std::string>(s))
                            throw InputError(where(section, key, v) + ": expected column names");
                        ts.body_columns.push_back(std::get<std::string>(s));
                    }
                } else {
                    throw InputError(where(section, key, v) + ": unknown key");
                }
            }
            continue;
        }
        ColumnLevels col;
        bool has_levels = false;
        for (const auto& [key, v] : keys) {
            if (key == "thresholds") {
                for (const Scalar& s : as_array(section, key, v)) {
                    if (!std::holds_alternative<double>(s)) throw InputError(where(section, key, v) + ": expected numbers");
                    col.thresholds.push_back(std::get<double>(s));
                }
                for (std::size_t i = 1; i < col.thresholds.size(); ++i)
                    if (!(col.thresholds[i - 1] < col.thresholds[i]))
                        throw InputError(where(section, key, v) + ": thresholds must be strictly increasing");
            } else if (key == "levels") {
                has_levels = true;
                for (const Scalar& s : as_array(section, key, v)) {
                    if (!std::holds_alternative<std::string>(s) || !valid_constant(std::get<std::string>(s)))
                        throw InputError(where(section, key, v) + ": levels must be lowercase constant names");
                    col.levels.push_back(std::get<std::string>(s));
                }
            } else if (key == "min") {
                col.minimum = as_number(section, key, v);
            } else {
                throw InputError(where(section, key, v) + ": unknown key");
            }
        }
        if (!has_levels || col.levels.size() != col.thresholds.size() + 1)
            throw InputError("spec section [" + section + "]: needs one more level than thresholds");
        if (!valid_constant(section)) throw InputError("spec section [" + section + "]: column names must be constants");
        std::set<std::string> distinct(col.levels.begin(), col.levels.end());
        if (distinct.size() != col.levels.size()) throw InputError("spec section [" + section + "]: duplicate level");
        spec.columns.emplace(section, std::move(col));
    }
    if (spec.task.window < 1) throw InputError("window must be at least 1");
    return spec;
}

std::size_t DiscreteSeries::column_index(std::string_view name) const {
    return static_cast<std::size_t>(std::find(columns.begin(), columns.end(), name) - columns.begin());
}

std::string level_of(double value, const ColumnLevels& levels) {
    if (levels.minimum && value < *levels.minimum)
        throw InputError("value " + fmt("%g", value) + " is below the declared minimum " + fmt("%g", *levels.minimum));
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(levels.thresholds.begin(), levels.thresholds.end(), value) - levels.thresholds.begin());
    return ordinal_level(levels.levels, i);
}

DiscreteSeries discretize(const SeriesTable& table, const DiscretizationSpec& spec) {
    DiscreteSeries out;
    out.timestamps = table.timestamps;
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < table.names.size(); ++i)
        if (spec.columns.count(table.names[i])) {
            used.push_back(i);
            out.columns.push_back(table.names[i]);
        }
    for (const auto& [name, levels] : spec.columns)
        if (std::find(out.columns.begin(), out.columns.end(), name) == out.columns.end())
            throw InputError("column " + name + " of the discretization is missing from the data");
    out.levels.resize(table.rows());
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t k = 0; k < used.size(); ++k) {
            try {
                out.levels[r].push_back(level_of(table.columns[used[k]][r], spec.columns.at(out.columns[k])));
            } catch (const InputError& e) {
                throw InputError("row " + std::to_string(r + 2) + ", column " + out.columns[k] + ": " + e.what());
            }
        }
    }
    return out;
}

std::vector<Atom> row_facts(const DiscreteSeries& series, std::size_t row) {
    std::int64_t ts = series.timestamps.at(row);
    if (ts < INT32_MIN || ts > INT32_MAX) throw InputError("timestamp " + std::to_string(ts) + " exceeds 32 bits");
    std::vector<Atom> out;
    for (std::size_t c = 0; c < series.columns.size(); ++c)
        out.push_back(level_atom(series.columns[c], series.levels[row][c], Term::integer(static_cast<std::int32_t>(ts))));
    return out;
}

LasTask build_task(const DiscreteSeries& series, const DiscretizationSpec& spec) {
    return build_task(series, spec, spec.task.window, series.rows() ? series.rows() - 1 : 0);
}

LasTask build_task(const DiscreteSeries& series, const DiscretizationSpec& spec, std::size_t first_target,
                   std::size_t last_target) {
    const std::size_t w = spec.task.window;
    if (series.rows() < w + 1)
        throw InputError("need at least " + std::to_string(w + 1) + " rows for window " + std::to_string(w) + ", got " +
                         std::to_string(series.rows()));
    check_task_columns(series, spec);
    LasTask task = skeleton(spec);
    for (std::size_t r = std::max(first_target, w); r <= last_target && r < series.rows(); ++r)
        task.examples.push_back(window_example(series, spec, r));
    return task;
}

DiscreteSeries synthesize(const DiscretizationSpec& spec, const Program& planted, const SyntheticOptions& options) {
    const TaskSettings& ts = spec.task;
    std::mt19937_64 rng(options.seed);
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    DiscreteSeries series;
    for (const auto& [name, levels] : spec.columns) series.columns.push_back(name);
    check_task_columns(series, spec);
    const std::size_t target = series.column_index(ts.target);
    const auto& target_levels = spec.columns.at(ts.target).levels;
    const std::string rest = ts.default_level.value_or(target_levels.front());
    LasTask task = skeleton(spec);

    for (std::size_t r = 0; r < options.rows; ++r) {
        series.timestamps.push_back(static_cast<std::int64_t>(r + 1));
        std::vector<std::string> row;
        for (std::size_t c = 0; c < series.columns.size(); ++c) {
            const auto& lv = spec.columns.at(series.columns[c]).levels;
            row.push_back(c == target ? rest : lv[below(lv.size())]);
        }
        series.levels.push_back(std::move(row));
        if (r < ts.window) continue;
        std::string clean = predict(task, planted.rules, window_example(series, spec, r), rest);
        std::string label = clean;
        if (unit() < options.noise && target_levels.size() > 1) {
            std::size_t k = below(target_levels.size() - 1);
            std::size_t clean_index =
                static_cast<std::size_t>(std::find(target_levels.begin(), target_levels.end(), clean) - target_levels.begin());
            if (k >= clean_index) ++k;
            label = target_levels[k];
        }
        series.levels[r][target] = label;
    }
    return series;
}

std::string predict(const LasTask& task, const std::vector<Rule>& hypothesis, const Example& window,
                    const std::string& fallback, const SolverConfig& config) {
    Program base = task.background;
    base.rules.insert(base.rules.end(), window.context.rules.begin(), window.context.rules.end());
    Program all = base;
    all.rules.insert(all.rules.end(), hypothesis.begin(), hypothesis.end());
    HerbrandUniverse u = herbrand_universe(all, task.bias.constants);
    GroundProgram g = ground(base, u);
    std::vector<std::size_t> learned_len;  // per ground rule appended for the hypothesis
    const std::size_t first_learned = g.rules.size();
    for (const Rule& r : hypothesis) {
        std::size_t before = g.rules.size();
        ground_rule(r, u, g);
        learned_len.resize(learned_len.size() + (g.rules.size() - before), r.body.size());
    }

    std::vector<Atom> candidates = window.pi.inclusions;
    candidates.insert(candidates.end(), window.pi.exclusions.begin(), window.pi.exclusions.end());
    std::sort(candidates.begin(), candidates.end());
    std::set<std::string> entailed;
    std::map<std::string, std::size_t> support;  // level -> longest satisfied learned body
    for_each_answer_set(
        g,
        [&](const Interpretation& m) {
            for (const Atom& a : candidates) {
                auto id = g.atoms.find(a);
                if (id && m.contains(*id)) entailed.insert(level_text(a));
            }
            for (std::size_t i = first_learned; i < g.rules.size(); ++i) {
                const GroundRule& r = g.rules[i];
                if (r.head.empty() || !m.contains(r.head.front())) continue;
                bool holds = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return m.contains(a); }) &&
                             std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.contains(a); });
                if (!holds) continue;
                const Atom& head = g.atoms.atom(r.head.front());
                if (!std::binary_search(candidates.begin(), candidates.end(), head)) continue;
                std::size_t& best = support[level_text(head)];
                best = std::max(best, learned_len[i - first_learned]);
            }
            return true;
        },
        config);
    if (entailed.size() == 1) return *entailed.begin();
    if (entailed.empty()) return fallback;
    std::string pick;
    std::size_t longest = 0;
    for (const std::string& l : entailed) {  // set order breaks ties
        auto it = support.find(l);
        if (it != support.end() && (pick.empty() || it->second > longest)) {
            pick = l;
            longest = it->second;
        }
    }
    return pick.empty() ? fallback : pick;
}

CrossvalReport crossval(const DiscreteSeries& series, const DiscretizationSpec& spec, const CrossvalOptions& options) {
    const TaskSettings& ts = spec.task;
    const std::size_t day = ts.day_length;
    const std::size_t blocks = series.rows() / day;
    if (options.folds == 0 || blocks < options.folds)
        throw InputError("insufficient day-blocks: " + std::to_string(blocks) + " blocks of " + std::to_string(day) +
                         " rows for " + std::to_string(options.folds) + " folds");
    if (options.train_days == 0 || options.train_days >= blocks)
        throw InputError("train_days must be between 1 and " + std::to_string(blocks - 1));

    LasTask all = build_task(series, spec);
    const HypothesisSpace space = enumerate_space(all.bias, options.learner.space_cap);
    const auto& target_levels = spec.columns.at(ts.target).levels;
    const std::size_t target = series.column_index(ts.target);
    const std::vector<std::string> features = body_columns(spec);
    auto block_of = [&](std::size_t row) { return std::min(row / day, blocks - 1); };

    CrossvalReport report;
    for (std::size_t f = 0; f < options.folds; ++f) {
        FoldReport fold;
        fold.fold = f;
        const std::size_t first = f * blocks / options.folds;
        std::set<std::size_t> train_blocks;
        for (std::size_t k = 0; k < options.train_days; ++k) train_blocks.insert((first + k) % blocks);
        fold.train_blocks.assign(train_blocks.begin(), train_blocks.end());

        LasTask train = all;
        train.examples.clear();
        std::vector<std::size_t> validation;  // target rows
        std::vector<std::size_t> training;
        for (std::size_t i = 0; i < all.examples.size(); ++i) {
            const std::size_t row = ts.window + i;
            if (train_blocks.count(block_of(row))) {
                train.examples.push_back(all.examples[i]);
                training.push_back(row);
            } else {
                validation.push_back(row);
            }
        }
        fold.train_windows = training.size();
        fold.validation_windows = validation.size();

        LearnResult learned = learn(train, space, options.scoring, options.learner);
        fold.hypothesis = hypothesis_text(learned.rules);
        fold.cost = learned.cost;

        std::map<std::string, std::size_t> counts;
        for (std::size_t row : training) ++counts[series.levels[row][target]];
        const std::string fallback = majority(counts, target_levels);

        std::size_t correct = 0;
        for (std::size_t row : validation) {
            const Example& e = all.examples[row - ts.window];
            if (predict(all, learned.rules, e, fallback, options.learner.solver) == series.levels[row][target]) ++correct;
        }
        fold.accuracy = validation.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(validation.size());

        // stump: the feature level at the last history row decides the target
        double best_train = -1;
        std::map<std::string, std::string> best_map;
        std::string best_feature;
        for (const std::string& feature : features) {
            const std::size_t c = series.column_index(feature);
            std::map<std::string, std::map<std::string, std::size_t>> table;
            for (std::size_t row : training) ++table[series.levels[row - 1][c]][series.levels[row][target]];
            std::map<std::string, std::string> mapping;
            for (const std::string& l : spec.columns.at(feature).levels)
                mapping[l] = table.count(l) ? majority(table[l], target_levels) : fallback;
            std::size_t hits = 0;
            for (std::size_t row : training)
                if (mapping[series.levels[row - 1][c]] == series.levels[row][target]) ++hits;
            double acc = training.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(training.size());
            if (acc > best_train) {
                best_train = acc;
                best_map = mapping;
                best_feature = feature;
            }
        }
        std::size_t stump_correct = 0;
        if (!best_feature.empty()) {
            const std::size_t c = series.column_index(best_feature);
            for (std::size_t row : validation)
                if (best_map[series.levels[row - 1][c]] == series.levels[row][target]) ++stump_correct;
            fold.stump = best_feature + ":";
            for (const std::string& l : spec.columns.at(best_feature).levels) fold.stump += " " + l + "->" + best_map[l];
        }
        fold.stump_accuracy =
            validation.empty() ? 0.0 : static_cast<double>(stump_correct) / static_cast<double>(validation.size());
        report.folds.push_back(std::move(fold));
    }
    for (const FoldReport& f : report.folds) {
        report.mean_accuracy += f.accuracy;
        report.mean_stump_accuracy += f.stump_accuracy;
    }
    report.mean_accuracy /= static_cast<double>(report.folds.size());
    report.mean_stump_accuracy /= static_cast<double>(report.folds.size());
    return report;
}

std::string comparison_table(const CrossvalReport& report) {
    std::string out = "fold  train  valid  learner   stump\n";
    char buf[128];
    for (const FoldReport& f : report.folds) {
        std::snprintf(buf, sizeof buf, "%4zu  %5zu  %5zu  %7.4f  %7.4f\n", f.fold, f.train_windows, f.validation_windows,
                      f.accuracy, f.stump_accuracy);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "mean                %7.4f  %7.4f\n", report.mean_accuracy, report.mean_stump_accuracy);
    out += buf;
    return out;
}

std::string baseline_compare(const DiscreteSeries& series, const DiscretizationSpec& spec,
                             const CrossvalOptions& options) {
    return comparison_table(crossval(series, spec, options));
}

} // namespace las
