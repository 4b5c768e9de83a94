#pragma once

#include <string>
#include <vector>

#include "las/ast.hpp"
#include "las/bias.hpp"

namespace las {

struct PartialInterpretation {
    std::vector<Atom> inclusions;
    std::vector<Atom> exclusions;
    friend bool operator==(const PartialInterpretation&, const PartialInterpretation&) = default;
};

enum class ExamplePolarity : std::uint8_t { positive, negative };

// Weighted context-dependent partial interpretation.
struct Example {
    std::string id;
    int penalty = 1;
    PartialInterpretation pi;
    Program context;
    ExamplePolarity polarity = ExamplePolarity::positive;

    bool positive() const { return polarity == ExamplePolarity::positive; }
    friend bool operator==(const Example&, const Example&) = default;
};

struct LasTask {
    Program background;
    ModeBias bias;
    std::vector<Example> examples;
};

// Serializes a task in the task-file syntax (reparses to an equal task).
std::string task_text(const LasTask& task);

} // namespace las
