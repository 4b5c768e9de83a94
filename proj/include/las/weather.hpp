#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "las/learner.hpp"

namespace las {

struct SeriesTable {
    std::string time_column;
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return timestamps.size(); }
    const std::vector<double>& column(std::string_view name) const;
};

// Header row first; the first column holds strictly increasing integer
// timestamps. Throws InputError naming the offending row.
SeriesTable ingest(std::string_view csv_text);

struct ColumnLevels {
    std::vector<double> thresholds;   // strictly increasing
    std::vector<std::string> levels;  // thresholds.size() + 1 constants
    std::optional<double> minimum;    // values below are rejected
};

struct TaskSettings {
    std::string target = "rain";
    std::optional<std::string> default_level;
    std::vector<std::string> body_columns;  // empty: every discretized column except the target
    std::size_t window = 1;
    int penalty = 1;
    std::size_t day_length = 24;
    SpaceBounds bounds{3, 2, 1};
};

struct DiscretizationSpec {
    std::map<std::string, ColumnLevels> columns;
    TaskSettings task;
};

// TOML subset: `[column]` sections with `thresholds`, `levels`, `min`, and an
// optional `[task]` section mirroring TaskSettings.
DiscretizationSpec parse_discretization(std::string_view toml_text);

// Level constants per row and column.
struct DiscreteSeries {
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> levels;  // [row][column]

    std::size_t rows() const { return timestamps.size(); }
    std::size_t column_index(std::string_view name) const;
};

// Right-closed intervals: a value equal to a threshold takes the higher level.
std::string level_of(double value, const ColumnLevels& levels);
DiscreteSeries discretize(const SeriesTable& table, const DiscretizationSpec& spec);

// level(column, level, timestamp) facts of one row.
std::vector<Atom> row_facts(const DiscreteSeries& series, std::size_t row);

// One positive example per window of `window` history rows; context facts at
// relative timestamps 1..W, target at W+1.
LasTask build_task(const DiscreteSeries& series, const DiscretizationSpec& spec);
LasTask build_task(const DiscreteSeries& series, const DiscretizationSpec& spec, std::size_t first_target,
                   std::size_t last_target);

struct SyntheticOptions {
    std::size_t rows = 240;
    double noise = 0.0;
    std::uint64_t seed = 1;
};

// Features uniform over their levels; the target follows `planted` (added to
// the task background) and is flipped to a uniformly chosen other level with
// probability `noise`.
DiscreteSeries synthesize(const DiscretizationSpec& spec, const Program& planted, const SyntheticOptions& options);

struct CrossvalOptions {
    std::size_t folds = 10;
    std::size_t train_days = 4;
    ScoringFunction scoring = default_scoring();
    LearnerConfig learner;
};

struct FoldReport {
    std::size_t fold = 0;
    std::vector<std::size_t> train_blocks;
    std::size_t train_windows = 0;
    std::size_t validation_windows = 0;
    std::string hypothesis;
    long cost = 0;
    double accuracy = 0;
    std::string stump;
    double stump_accuracy = 0;
};

struct CrossvalReport {
    std::vector<FoldReport> folds;
    double mean_accuracy = 0;
    double mean_stump_accuracy = 0;
};

// The target level bravely entailed for each window; several entailed levels
// go to the longest satisfied learned rule, none to `fallback`.
std::string predict(const LasTask& task, const std::vector<Rule>& hypothesis, const Example& window,
                    const std::string& fallback, const SolverConfig& config = {});

CrossvalReport crossval(const DiscreteSeries& series, const DiscretizationSpec& spec, const CrossvalOptions& options);

// Learner vs. one-feature stump, one line per fold plus the means.
std::string comparison_table(const CrossvalReport& report);
std::string baseline_compare(const DiscreteSeries& series, const DiscretizationSpec& spec,
                             const CrossvalOptions& options);

} // namespace las
