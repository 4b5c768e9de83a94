#include <gtest/gtest.h>

#include <random>

#include "las/error.hpp"
#include "las/parser.hpp"
#include "las/solver.hpp"
#include "support/random_programs.hpp"

using namespace las;

namespace {

GroundProgram ground_text(std::string_view text) {
    Program p = parse_program(text);
    return ground(p, herbrand_universe(p));
}

Interpretation set_of(const GroundProgram& g, std::initializer_list<const char*> atoms) {
    Interpretation s(g.atoms.size());
    for (const char* a : atoms) s.insert(*g.atoms.find(parse_atom(a)));
    return s;
}

std::vector<std::string> models_text(std::string_view text) {
    GroundProgram g = ground_text(text);
    std::vector<std::string> out;
    for (const auto& m : answer_sets(g).models) out.push_back(model_text(g, m));
    return out;
}

} // namespace

TEST(Reduct, RemovesNafWhenUnblocked) {
    GroundProgram g = ground_text("a :- not b.");
    EXPECT_EQ(canonical_text(reduct(g, set_of(g, {"a"})).to_program()), "a.\n");
}

TEST(Reduct, DropsBlockedRule) {
    GroundProgram g = ground_text("a :- not b.");
    EXPECT_TRUE(reduct(g, set_of(g, {"b"})).rules.empty());
}

TEST(Reduct, DefiniteProgramUnchanged) {
    GroundProgram g = ground_text("a. b :- a, c.");
    EXPECT_EQ(reduct(g, set_of(g, {"c"})).rules, g.rules);
}

TEST(LeastModel, Closure) {
    GroundProgram g = ground_text("a. b :- a.");
    EXPECT_EQ(least_model(g), set_of(g, {"a", "b"}));
}

TEST(LeastModel, NoFactsNoAtoms) {
    EXPECT_TRUE(least_model(ground_text("b :- a.")).empty());
    EXPECT_TRUE(least_model(ground_text("p :- p.")).empty());
}

TEST(IsStable, DefinitionOnEvenLoop) {
    GroundProgram g = ground_text("a :- not b. b :- not a.");
    EXPECT_TRUE(is_stable(g, set_of(g, {"a"})));
    EXPECT_TRUE(is_stable(g, set_of(g, {"b"})));
    EXPECT_FALSE(is_stable(g, set_of(g, {"a", "b"})));
    EXPECT_FALSE(is_stable(g, set_of(g, {})));
}

TEST(IsStable, FactMustHold) {
    GroundProgram g = ground_text("a.");
    EXPECT_FALSE(is_stable(g, set_of(g, {})));
    EXPECT_TRUE(is_stable(g, set_of(g, {"a"})));
}

TEST(IsStable, ConstraintsReject) {
    GroundProgram g = ground_text("a. :- a.");
    EXPECT_FALSE(is_stable(g, set_of(g, {"a"})));
}

TEST(AnswerSets, EvenLoop) {
    EXPECT_EQ(models_text("a :- not b. b :- not a."), (std::vector<std::string>{"{a}", "{b}"}));
}

TEST(AnswerSets, ConstraintKillsOnlyCandidate) {
    EXPECT_TRUE(models_text("a. :- a.").empty());
}

TEST(AnswerSets, EmptyProgram) {
    EXPECT_EQ(models_text(""), std::vector<std::string>{"{}"});
}

TEST(AnswerSets, OddLoopHasNoModel) {
    EXPECT_TRUE(models_text("a :- not a.").empty());
}

TEST(AnswerSets, LimitTruncates) {
    GroundProgram g = ground_text("a :- not b. b :- not a. c :- not d. d :- not c.");
    auto all = answer_sets(g);
    EXPECT_EQ(all.models.size(), 4u);
    EXPECT_TRUE(all.complete);
    auto two = answer_sets(g, 2);
    EXPECT_EQ(two.models.size(), 2u);
    EXPECT_FALSE(two.complete);
    EXPECT_EQ(two.models[0], all.models[0]);
}

TEST(AnswerSets, BaseLimitNamesSizes) {
    std::string text;
    for (int i = 0; i < 13; ++i)
        text += "a" + std::to_string(i) + " :- not b" + std::to_string(i) + ". b" + std::to_string(i) +
                " :- not a" + std::to_string(i) + ".\n";
    GroundProgram g = ground_text(text);
    try {
        answer_sets(g);
        FAIL() << "expected LimitError";
    } catch (const LimitError& e) {
        EXPECT_NE(std::string(e.what()).find("24"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("26"), std::string::npos);
    }
    SolverConfig wide;
    wide.max_base_atoms = 26;
    EXPECT_EQ(answer_sets(g, std::nullopt, wide).models.size(), 8192u);
}

TEST(AnswerSets, DeadRulesDoNotCountTowardsBase) {
    std::string text = "a.\n";
    for (int i = 0; i < 40; ++i) text += "x" + std::to_string(i) + " :- missing, not y" + std::to_string(i) + ".\n";
    EXPECT_EQ(models_text(text), std::vector<std::string>{"{a}"});
}

TEST(Choice, OptionalSingleton) {
    EXPECT_EQ(models_text("0 { a } 1."), (std::vector<std::string>{"{}", "{a}"}));
}

TEST(Choice, ForcedSingleton) {
    EXPECT_EQ(models_text("1 { a } 1."), std::vector<std::string>{"{a}"});
}

TEST(Choice, NoChoiceMeansIdentity) {
    GroundProgram g = ground_text("a :- not b. :- c.");
    GroundProgram t = translate_choice(g);
    EXPECT_EQ(t.rules, g.rules);
    EXPECT_EQ(t.atoms.size(), g.atoms.size());
}

TEST(Choice, TranslationShape) {
    GroundProgram g = ground_text("1 { a ; b } 1 :- c. c.");
    GroundProgram t = translate_choice(g);
    // 2 pairs + one lower-bound constraint + one upper-bound constraint + the fact
    EXPECT_EQ(t.rules.size(), 7u);
    EXPECT_EQ(models_text("1 { a ; b } 1 :- c. c."), (std::vector<std::string>{"{a, c}", "{b, c}"}));
}

TEST(Choice, IsStableOnChoiceProgram) {
    GroundProgram g = ground_text("1 { a ; b } 2.");
    EXPECT_TRUE(is_stable(g, set_of(g, {"a"})));
    EXPECT_TRUE(is_stable(g, set_of(g, {"a", "b"})));
    EXPECT_FALSE(is_stable(g, set_of(g, {})));
}

TEST(Entailment, EvenLoop) {
    GroundProgram g = ground_text("a :- not b. b :- not a.");
    EXPECT_TRUE(brave_entails(g, Atom("a")));
    EXPECT_FALSE(cautious_entails(g, Atom("a")));
}

TEST(Entailment, Fact) {
    GroundProgram g = ground_text("a.");
    EXPECT_TRUE(brave_entails(g, Atom("a")));
    EXPECT_TRUE(cautious_entails(g, Atom("a")));
}

TEST(Entailment, VacuousWithoutModels) {
    GroundProgram g = ground_text("a. :- a.");
    Entailment e = entailment(g, Atom("a"));
    EXPECT_FALSE(e.brave);
    EXPECT_TRUE(e.cautious);
    EXPECT_FALSE(e.has_models);
}

TEST(Entailment, AtomOutsideBase) {
    GroundProgram g = ground_text("a.");
    Entailment e = entailment(g, Atom("z"));
    EXPECT_FALSE(e.brave);
    EXPECT_FALSE(e.cautious);
}

TEST(Property, OracleEquivalenceAndMinimality) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 400; ++trial) {
        GroundProgram g = oracle::random_ground_program(rng, {10, 14, 3, 0.4, 0.1});
        auto got = answer_sets(g);
        ASSERT_EQ(got.models, oracle::brute_force_answer_sets(g)) << canonical_text(g.to_program());
        for (std::size_t i = 0; i < got.models.size(); ++i) {
            ASSERT_EQ(least_model(reduct(g, got.models[i])), got.models[i]);
            ASSERT_TRUE(is_stable(g, got.models[i]));
            for (std::size_t j = 0; j < got.models.size(); ++j)
                if (i != j) ASSERT_FALSE(got.models[i].is_subset_of(got.models[j]));
        }
        for (AtomId a = 0; a < g.atoms.size(); ++a) {
            Entailment e = entailment(g, g.atoms.atom(a));
            if (e.cautious && e.has_models) ASSERT_TRUE(e.brave);
        }
    }
}

TEST(Property, IsStableMatchesDefinition) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        GroundProgram g = oracle::random_ground_program(rng, {6, 8, 3, 0.4, 0.15});
        const std::size_t n = g.atoms.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<bool> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U;
            ASSERT_EQ(is_stable(g, oracle::to_interpretation(s)), oracle::oracle_is_stable(g, s));
        }
    }
}
