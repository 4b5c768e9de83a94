#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "las/grounder.hpp"

namespace las {

// A set of ground atoms over the dense ids of a GroundProgram.
class Interpretation {
public:
    Interpretation() = default;
    explicit Interpretation(std::size_t capacity) : words_((capacity + 63) / 64, 0) {}
    Interpretation(std::size_t capacity, std::initializer_list<AtomId> ids);

    bool contains(AtomId id) const {
        return id / 64 < words_.size() && (words_[id / 64] >> (id % 64) & 1U);
    }
    void insert(AtomId id);
    void erase(AtomId id);
    std::size_t count() const;
    bool empty() const { return count() == 0; }
    std::vector<AtomId> ids() const;
    bool is_subset_of(const Interpretation& other) const;

    friend bool operator==(const Interpretation& a, const Interpretation& b);
    // Lexicographic order of the sorted id sequences.
    friend bool operator<(const Interpretation& a, const Interpretation& b);

private:
    std::vector<std::uint64_t> words_;
};

struct SolverConfig {
    std::size_t max_base_atoms = 24;
};

struct AnswerSetCollection {
    std::vector<Interpretation> models;
    bool complete = true;
};

struct ChoiceTranslation {
    GroundProgram program;              // normal rules and constraints only
    std::vector<std::size_t> source;    // translated rule -> rule of the input program
    std::size_t original_atoms = 0;     // ids at or beyond this are complement atoms
};

// Replaces every choice rule by a pair of complementary rules per element plus
// cardinality constraints; atom ids of the input are preserved.
ChoiceTranslation translate_choice_traced(const GroundProgram& ground);
GroundProgram translate_choice(const GroundProgram& ground);

// Atoms introduced by the translation are not user visible.
bool is_internal(const Atom& atom);

GroundProgram reduct(const GroundProgram& normal, const Interpretation& candidate);

// Least fixpoint of the immediate consequence operator; constraints ignored.
Interpretation least_model(const GroundProgram& definite);

// Programs with choice rules are translated first; complement atoms of the
// candidate are then implied by its original atoms.
bool is_stable(const GroundProgram& ground, const Interpretation& candidate);

// Extends a model of `translation`'s source program with the complement atoms
// implied by it.
Interpretation with_complements(const ChoiceTranslation& translation, const Interpretation& model);

// All stable models, sorted, truncated at `limit`. Throws LimitError when the
// simplified base exceeds config.max_base_atoms.
AnswerSetCollection answer_sets(const GroundProgram& ground, std::optional<std::size_t> limit = std::nullopt,
                                const SolverConfig& config = {});

// Visits stable models in search order until `visit` returns false.
void for_each_answer_set(const GroundProgram& ground, const std::function<bool(const Interpretation&)>& visit,
                         const SolverConfig& config = {});

struct Entailment {
    bool brave = false;
    bool cautious = true;   // vacuously true without models
    bool has_models = false;
};

Entailment entailment(const GroundProgram& ground, const Atom& atom, const SolverConfig& config = {});
bool brave_entails(const GroundProgram& ground, const Atom& atom, const SolverConfig& config = {});
bool cautious_entails(const GroundProgram& ground, const Atom& atom, const SolverConfig& config = {});

// Sorted, comma separated visible atoms of a model.
std::string model_text(const GroundProgram& ground, const Interpretation& model);

} // namespace las
