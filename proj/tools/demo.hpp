#pragma once

#include <string>
#include <vector>

#include "las/explain.hpp"
#include "las/weather.hpp"

namespace las::cli {

struct CaseVerdicts {
    std::string id;
    std::vector<std::string> verdicts;  // distinct, sorted, across all answer sets
};

struct LegalReport {
    std::vector<std::string> vague_models;  // model texts of the vague case
    CaseVerdicts vague;
    LearnResult learned;
    std::size_t test_models = 0;
    std::vector<CaseVerdicts> cases;
    Atom explained;
    ExplanationDag dag;
};

// Statute + vague case, then learning from the precedents and classifying the
// test cases with the learned rules.
LegalReport legal_demo(const std::string& asset_dir, const SolverConfig& solver = {});

struct WeatherReport {
    std::string planted;
    DiscreteSeries series;
    LearnResult learned;
    CrossvalReport crossval;
};

WeatherReport weather_demo(const std::string& asset_dir, std::uint64_t seed, double noise,
                           const LearnerConfig& learner = {});

std::string read_file(const std::string& path);

} // namespace las::cli
