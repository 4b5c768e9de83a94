#include <gtest/gtest.h>

#include <random>

#include "las/error.hpp"
#include "las/parser.hpp"
#include "support/random_programs.hpp"

using namespace las;

TEST(Parse, SingleFact) {
    Program p = parse_program("a.");
    ASSERT_EQ(p.rules.size(), 1u);
    EXPECT_TRUE(p.rules[0].is_fact());
    EXPECT_EQ(p.rules[0].head, Atom("a"));
    EXPECT_EQ(p.rules[0].head.arity(), 0u);
}

TEST(Parse, NormalRuleWithNaf) {
    Program p = parse_program("p(X) :- q(X), not r(X).");
    ASSERT_EQ(p.rules.size(), 1u);
    const Rule& r = p.rules[0];
    ASSERT_EQ(r.body.size(), 2u);
    EXPECT_TRUE(r.body[0].is_positive());
    EXPECT_TRUE(r.body[1].is_naf());
    EXPECT_EQ(r.body[1].atom, Atom("r", {Term::variable("X")}));
}

TEST(Parse, SafetyViolationNamesVariable) {
    try {
        parse_program("p(X) :- not q(X).");
        FAIL() << "expected SafetyError";
    } catch (const SafetyError& e) {
        EXPECT_EQ(e.variable(), "X");
        EXPECT_EQ(e.rule_index(), 0u);
    }
}

TEST(Parse, UnsafeBuiltinAndConstraint) {
    EXPECT_THROW(parse_program("p :- q, X < 1."), SafetyError);
    EXPECT_THROW(parse_program(":- not q(Y)."), SafetyError);
    EXPECT_THROW(parse_program("{ p(X) } :- q."), SafetyError);
    EXPECT_NO_THROW(parse_program(":- q(Y), not r(Y), Y != 2."));
}

TEST(Parse, SyntaxErrorIsPositioned) {
    try {
        parse_program("a.\nb :- c d.");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 8u);
        EXPECT_NE(std::string(e.what()).find("expected"), std::string::npos);
    }
}

TEST(Parse, ArityClash) {
    try {
        parse_program("p(a). q :- p(a,b).");
        FAIL() << "expected ArityError";
    } catch (const ArityError& e) {
        EXPECT_NE(std::string(e.what()).find("p"), std::string::npos);
    }
}

TEST(Parse, CommentsAndNegativeIntegers) {
    Program p = parse_program("% header\nv(-3). % trailing\nw(X) :- v(X), X >= -5.\n");
    ASSERT_EQ(p.rules.size(), 2u);
    EXPECT_EQ(p.rules[0].head.args[0], Term::integer(-3));
    EXPECT_TRUE(p.rules[1].body[1].is_builtin());
    EXPECT_EQ(p.rules[1].body[1].op, Comparator::ge);
}

TEST(Parse, IntegerRange) {
    EXPECT_NO_THROW(parse_program("v(2147483647). v(-2147483648)."));
    EXPECT_THROW(parse_program("v(2147483648)."), ParseError);
}

TEST(Parse, ChoiceBounds) {
    Program p = parse_program("{ a ; b }. 1 { c } :- a.");
    EXPECT_EQ(p.rules[0].lower, 0);
    EXPECT_EQ(p.rules[0].upper, 2);
    EXPECT_EQ(p.rules[1].lower, 1);
    EXPECT_EQ(p.rules[1].upper, 1);
    EXPECT_THROW(parse_program("2 { a } 3."), ParseError);
    EXPECT_THROW(parse_program("2 { a ; b } 1."), ParseError);
}

TEST(CanonicalText, Forms) {
    EXPECT_EQ(canonical_text(parse_program("a.")), "a.\n");
    EXPECT_EQ(canonical_text(parse_program("p:-q,not  r.")), "p :- q, not r.\n");
    EXPECT_EQ(canonical_text(parse_program("1{a;b}2:-c.")), "1 { a ; b } 2 :- c.\n");
    EXPECT_EQ(canonical_text(parse_program(":- a, X = 1, s(X).")), ":- a, X = 1, s(X).\n");
    EXPECT_EQ(canonical_text(parse_program("r( a , -1 ).")), "r(a,-1).\n");
}

TEST(ParseTask, ExampleFieldMapping) {
    LasTask t = parse_task("#pos(e1@5, {a}, {b}, {c.}).");
    ASSERT_EQ(t.examples.size(), 1u);
    const Example& e = t.examples[0];
    EXPECT_EQ(e.id, "e1");
    EXPECT_EQ(e.penalty, 5);
    EXPECT_TRUE(e.positive());
    EXPECT_EQ(e.pi.inclusions, std::vector<Atom>{Atom("a")});
    EXPECT_EQ(e.pi.exclusions, std::vector<Atom>{Atom("b")});
    EXPECT_EQ(e.context, parse_program("c."));
}

TEST(ParseTask, PenaltyMustBePositive) {
    EXPECT_THROW(parse_task("#pos(e1@0, {a}, {}, {})."), TaskError);
    EXPECT_THROW(parse_task("#neg(e1@-2, {a}, {})."), TaskError);
}

TEST(ParseTask, DuplicateIdentifier) {
    EXPECT_THROW(parse_task("#pos(e1@1, {a}, {}). #neg(e1@1, {b}, {})."), TaskError);
}

TEST(ParseTask, ModesConstantsAndBounds) {
    LasTask t = parse_task(
        "b(1). b(2).\n"
        "#constant(cell, c1). #constant(cell, c0).\n"
        "#modeh(h(var(cell))).\n"
        "#modeb(p(var(cell), const(cell))).\n"
        "#modeb(q(var(cell)), positive).\n"
        "#modeb(var(num) < var(num)).\n"
        "#maxv(2). #maxb(1). #maxrules(4).\n");
    EXPECT_EQ(t.background.rules.size(), 2u);
    ASSERT_EQ(t.bias.heads.size(), 1u);
    ASSERT_EQ(t.bias.bodies.size(), 3u);
    EXPECT_FALSE(t.bias.heads[0].naf_allowed);
    EXPECT_TRUE(t.bias.bodies[0].naf_allowed);
    EXPECT_FALSE(t.bias.bodies[1].naf_allowed);
    EXPECT_TRUE(t.bias.bodies[2].comparison);
    EXPECT_EQ(t.bias.constants.of(Symbol("cell")),
              (std::vector<Term>{Term::constant("c0"), Term::constant("c1")}));
    EXPECT_EQ(t.bias.bounds.max_variables, 2u);
    EXPECT_EQ(t.bias.bounds.max_body_literals, 1u);
    EXPECT_EQ(t.bias.bounds.max_rules, 4u);
}

TEST(ParseTask, ConstPlaceholderNeedsConstants) {
    EXPECT_THROW(parse_task("#modeh(h(const(colour)))."), TaskError);
}

TEST(ParseTask, ContextRulesAreChecked) {
    EXPECT_THROW(parse_task("#pos(e@1, {a}, {}, {a :- not b(X).})."), SafetyError);
    EXPECT_THROW(parse_task("p(a). #pos(e@1, {p}, {})."), ArityError);
    EXPECT_THROW(parse_task("#pos(e@1, {a}, {a})."), TaskError);
}

TEST(ParseTask, TaskTextRoundTrip) {
    const char* text =
        "q(a). q(b).\n"
        "#constant(t, a). #constant(t, 3).\n"
        "#modeh(h(var(t))). #modeb(q(var(t)), positive). #modeb(r(const(t))).\n"
        "#maxv(2). #maxb(2). #maxrules(2).\n"
        "#pos(e1@3, {h(a)}, {h(b)}, {r(a). s :- r(a).}).\n"
        "#neg(e2@1, {h(b)}, {}).\n";
    LasTask t = parse_task(text);
    LasTask u = parse_task(task_text(t));
    EXPECT_EQ(u.background, t.background);
    EXPECT_EQ(u.examples, t.examples);
    EXPECT_EQ(u.bias.heads, t.bias.heads);
    EXPECT_EQ(u.bias.bodies, t.bias.bodies);
    EXPECT_EQ(u.bias.constants, t.bias.constants);
    EXPECT_EQ(u.bias.bounds, t.bias.bounds);
}

TEST(Property, RoundTripOnFuzzedPrograms) {
    std::mt19937_64 rng(20241019);
    for (int i = 0; i < 500; ++i) {
        std::string text = oracle::random_program_text(rng);
        Program p = parse_program(text);
        std::string canon = canonical_text(p);
        ASSERT_EQ(parse_program(canon), p) << text;
        ASSERT_EQ(canonical_text(parse_program(canon)), canon);
    }
}

TEST(Property, MutatedInputsNeverCrash) {
    std::mt19937_64 rng(7);
    static const std::string alphabet = "abXY(),.:-{};<=>!0123456789 %#@not\n";
    for (int i = 0; i < 2000; ++i) {
        std::string text = oracle::random_program_text(rng);
        std::size_t edits = 1 + oracle::uniform(rng, 4);
        for (std::size_t k = 0; k < edits && !text.empty(); ++k) {
            std::size_t at = oracle::uniform(rng, text.size());
            if (oracle::chance(rng, 0.5)) text.erase(at, 1);
            else text.insert(at, 1, alphabet[oracle::uniform(rng, alphabet.size())]);
        }
        try {
            Program p = parse_program(text);
            ASSERT_EQ(parse_program(canonical_text(p)), p);
        } catch (const ParseError& e) {
            EXPECT_GE(e.line(), 1u);
        } catch (const Error&) {
            // safety or arity violations introduced by the edit
        }
    }
}
