#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/errors.hpp"
#include "mee/text_io.hpp"

using namespace mee;
using namespace mee::testing;

TEST(TextIo, ParsesInlineFormula) {
    const char* text = R"(
# implication chain
relation imp arity 2
00
01
11
relation pos arity 1
1
vars a b c
clause imp a b
clause imp b c   # trailing comment
clause pos a
)";
    auto f = parse_cnf(text);
    EXPECT_EQ(f.num_vars(), 3);
    EXPECT_EQ(f.num_clauses(), 3);
    EXPECT_EQ(truth_table(f).count(), 1u);
}

TEST(TextIo, CnfRoundTrip) {
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        auto f = random_cnf(ihsb_plus_base(), uniform(rng, 1, 5), uniform(rng, 0, 5), rng);
        auto g = parse_cnf(serialize(f));
        EXPECT_EQ(g, f);
    }
}

TEST(TextIo, BasisAndFormulaRoundTrip) {
    Basis b({or_fn(2), xor_fn(3), maj_fn()});
    auto b2 = parse_basis(serialize(b));
    EXPECT_EQ(b2, b);
    Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        auto f = random_bformula(b, uniform(rng, 1, 7), {"a", "b", "c"}, rng);
        EXPECT_EQ(parse_bformula(serialize(f)), f);
    }
}

TEST(TextIo, FunctionBits) {
    auto f = parse_function("function nimp arity 2 table 0010");
    EXPECT_EQ(f.arity(), 2);
    EXPECT_EQ(f.bits(), "0010");
    EXPECT_TRUE(f(0b10));
    EXPECT_FALSE(f(0b01));
}

TEST(TextIo, InstanceRoundTrip) {
    Basis b({and_fn(2)});
    MeeInstance inst;
    inst.formula = PostFormula{b, BFormula::apply("and2", {BFormula::var("a"), BFormula::var("b")})};
    inst.bound = 2;
    inst.measure = SizeMeasure::Literals;
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
    inst.fixed_negative = true;
    inst.bound = 0;
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
}

TEST(TextIo, DnfRoundTrip) {
    Dnf d{{Literal{"x", true}, Literal{"y", false}}, {Literal{"z", true}}};
    EXPECT_EQ(parse_dnf(serialize(d)), d);
}

TEST(TextIo, MalformedInputThrows) {
    EXPECT_THROW(parse_cnf("vars a\nclause missing a\n"), ParseError);
    EXPECT_THROW(parse_relation("relation r arity 2\n012\n"), ParseError);
    EXPECT_THROW(parse_bformula("(or2 a"), ParseError);
}
