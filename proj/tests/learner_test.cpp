#include <gtest/gtest.h>

#include <random>

#include "las/error.hpp"
#include "las/learner.hpp"
#include "las/parser.hpp"
#include "support/random_tasks.hpp"

using namespace las;

namespace {

Example example_of(std::string_view text) { return parse_task(text).examples.at(0); }

std::vector<Rule> rules_of(std::string_view text) { return parse_program(text).rules; }

} // namespace

TEST(Extends, Definition) {
    Program p = parse_program("a. b. c.");
    GroundProgram g = ground(p, herbrand_universe(p));
    auto id = [&](const char* a) { return *g.atoms.find(parse_atom(a)); };
    PartialInterpretation pi{{Atom("a")}, {Atom("c")}};
    EXPECT_TRUE(extends(g, Interpretation(3, {id("a"), id("b")}), pi));
    EXPECT_FALSE(extends(g, Interpretation(3, {id("a"), id("c")}), pi));
    EXPECT_TRUE(extends(g, Interpretation(3), PartialInterpretation{}));
}

TEST(Accepts, Examples) {
    Example pos = example_of("#pos(e@1, {a}, {}).");
    Example neg = example_of("#neg(e@1, {a}, {}).");
    EXPECT_TRUE(accepts({}, rules_of("a."), pos));
    EXPECT_FALSE(accepts({}, rules_of("a."), neg));
    Example ctx = example_of("#pos(e@1, {a}, {}, {ctx.}).");
    EXPECT_TRUE(accepts(parse_program("b :- ctx."), rules_of("a :- b."), ctx));
    EXPECT_FALSE(accepts(parse_program("b :- ctx."), {}, ctx));
}

TEST(Accepts, ErrorsNameTheExample) {
    std::string ctx;
    for (int i = 0; i < 13; ++i) {
        std::string k = std::to_string(i);
        ctx += "x" + k + " :- not y" + k + ". y" + k + " :- not x" + k + ". ";
    }
    Example e = example_of("#pos(wide@1, {a}, {}, {" + ctx + "}).");
    try {
        accepts({}, {}, e);
        FAIL() << "expected LimitError";
    } catch (const LimitError& err) {
        EXPECT_NE(std::string(err.what()).find("wide"), std::string::npos);
    }
}

TEST(Score, Decomposition) {
    LasTask t = parse_task("#pos(e@5, {a}, {}).");
    EXPECT_EQ(score({}, t, default_scoring()), 5);
    EXPECT_EQ(score(rules_of("a."), t, default_scoring()), 1);
    ScoringFunction biased{"biased", [](const Rule&) { return 5; }};
    EXPECT_EQ(score(rules_of("a."), t, biased), 6);
}

TEST(Learn, PrefersCheaperFact) {
    LasTask t = parse_task("b. #modeh(h). #modeb(b, positive). #maxb(1). #maxv(0). #pos(e@10, {h}, {}).");
    LearnResult r = learn(t, default_scoring());
    EXPECT_EQ(hypothesis_text(r.rules), "h.");
    EXPECT_EQ(r.cost, 1);
    EXPECT_TRUE(r.fully_covering);
}

TEST(Learn, NoiseToleranceReturnsEmpty) {
    // both examples contradict each other; paying is cheaper than any rule
    LasTask t = parse_task("#modeh(h). #modeb(b). #maxb(1). #maxv(0). #pos(e1@1, {h}, {}). #pos(e2@1, {}, {h}).");
    LearnResult r = learn(t, default_scoring());
    EXPECT_TRUE(r.rules.empty());
    EXPECT_EQ(r.cost, 1);
    EXPECT_FALSE(r.fully_covering);
    auto oracle = oracle::exhaustive_optimum(t, r.space, default_scoring(), 3);
    EXPECT_EQ(oracle.score, r.cost);
}

TEST(Learn, ReportListsPenaltiesOnce) {
    LasTask t = parse_task("p(a). #constant(o, a). #modeh(h(var(o))). #modeb(p(var(o)), positive). "
                           "#pos(e1@3, {h(a)}, {}). #neg(e2@2, {h(a)}, {}). #pos(e3@1, {}, {h(a)}).");
    LearnResult r = learn(t, default_scoring());
    ASSERT_EQ(r.examples.size(), 3u);
    long paid = 0;
    for (const ExampleReport& e : r.examples)
        if (!e.accepted) paid += e.penalty;
    EXPECT_EQ(paid, r.penalty_cost);
    EXPECT_EQ(r.cost, r.rule_cost + r.penalty_cost);
    EXPECT_TRUE(r.rules.empty());  // h(V1) :- p(V1). would cost 2 + 2 + 1
    EXPECT_EQ(r.cost, 3);
}

TEST(Property, OptimalityAgainstExhaustiveOracle) {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        auto rt = oracle::random_task(rng);
        LearnResult got = learn(rt.task, rt.space, default_scoring());
        auto want = oracle::exhaustive_optimum(rt.task, rt.space, default_scoring(), rt.task.bias.bounds.max_rules);
        ASSERT_EQ(got.cost, want.score) << task_text(rt.task);
        ASSERT_EQ(hypothesis_text(got.rules), want.text) << task_text(rt.task);
        ASSERT_EQ(score(got.rules, rt.task, default_scoring()), got.cost);
    }
}

TEST(Property, RaisingAPenaltyNeverLowersTheOptimum) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto rt = oracle::random_task(rng);
        long before = learn(rt.task, rt.space, default_scoring()).cost;
        LasTask raised = rt.task;
        raised.examples[oracle::uniform(rng, raised.examples.size())].penalty += 1 + static_cast<int>(oracle::uniform(rng, 5));
        ASSERT_GE(learn(raised, rt.space, default_scoring()).cost, before);
    }
}

TEST(Property, ScoreDecompositionBound) {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        auto rt = oracle::random_task(rng);
        const LasTask& t = rt.task;
        std::vector<bool> base;
        for (const Example& e : t.examples) base.push_back(accepts(t.background, {}, e, t.bias.constants));
        for (const Rule& r : rt.space.rules) {
            bool superset = true;
            for (std::size_t i = 0; i < t.examples.size(); ++i)
                if (base[i] && !accepts(t.background, {r}, t.examples[i], t.bias.constants)) superset = false;
            if (!superset) continue;
            ASSERT_LE(score({r}, t, default_scoring()) - score({}, t, default_scoring()), rule_cost(r, default_scoring()));
        }
    }
}

TEST(Property, LearnIsDeterministic) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto rt = oracle::random_task(rng);
        LearnResult a = learn(rt.task, default_scoring());
        LearnResult b = learn(rt.task, default_scoring());
        ASSERT_EQ(a.chosen, b.chosen);
        ASSERT_EQ(a.cost, b.cost);
    }
}
