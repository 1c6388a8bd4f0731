#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/errors.hpp"
#include "mee/min_post.hpp"
#include "mee/oracle.hpp"
#include "mee/text_io.hpp"

using namespace mee;
using namespace mee::testing;

namespace {

BFormula v(const char* s) { return BFormula::var(s); }
BFormula ap(const std::string& f, std::vector<BFormula> args) { return BFormula::apply(f, std::move(args)); }

}  // namespace

TEST(TupleCompose, RelevantArgument) {
    EXPECT_EQ(tuple_compose({0, 2, 2, 1}, {0, 2, 2, 1}, true, BasisVerdict::POr), (FuncTuple{0, 3, 3, 2}));
    EXPECT_EQ(tuple_compose({1, 2, 2, 1}, {1, 2, 2, 1}, true, BasisVerdict::PXor), (FuncTuple{0, 3, 3, 2}));
}

TEST(TupleCompose, IrrelevantArgument) {
    EXPECT_EQ(tuple_compose({0, 1, 2, 1}, {0, 1, 1, 0}, false, BasisVerdict::POr), (FuncTuple{0, 1, 2, 1}));
    EXPECT_THROW(tuple_compose({0, 2, 2, 1}, {0, 1, 1, 0}, false, BasisVerdict::POr), ModelError);
    EXPECT_THROW(tuple_compose({0, 0, 2, 1}, {0, 1, 1, 0}, true, BasisVerdict::POr), ModelError);
}

TEST(TupleIdentify, OrAndXorRules) {
    EXPECT_EQ(tuple_identify({0, 2, 2, 1}, BasisVerdict::POr), (FuncTuple{0, 1, 2, 1}));
    EXPECT_EQ(tuple_identify({0, 2, 2, 1}, BasisVerdict::PXor), (FuncTuple{0, 0, 2, 1}));
    EXPECT_EQ(tuple_identify({1, 3, 3, 1}, BasisVerdict::PXor), (FuncTuple{1, 1, 3, 1}));
    EXPECT_THROW(tuple_identify({0, 1, 2, 1}, BasisVerdict::POr), ModelError);
}

TEST(RelevantVariables, Examples) {
    Basis ors({or_fn(2)});
    auto r = relevant_variables(ap("or2", {v("x"), ap("or2", {v("x"), v("y")})}), ors);
    EXPECT_EQ(r.relevant, (std::vector<std::string>{"x", "y"}));
    EXPECT_FALSE(r.c);
    Basis xors({xor_fn(2)});
    auto z = relevant_variables(ap("xor2", {v("x"), v("x")}), xors);
    EXPECT_TRUE(z.relevant.empty());
    EXPECT_FALSE(z.c);
}

TEST(MinPost, OrAbsorbsRepeatedLeaf) {
    Basis b({or_fn(2)});
    auto r = min_post(b, ap("or2", {v("x"), ap("or2", {v("x"), v("y")})}), SizeMeasure::Literals);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->size, 2);
    EXPECT_EQ(serialize(r->witness), serialize(ap("or2", {v("x"), v("y")})));
}

TEST(MinPost, Or3NeedsThreeLeaves) {
    Basis b({or_fn(3)});
    auto r = min_post(b, ap("or3", {v("x"), v("y"), v("x")}), SizeMeasure::Literals);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->size, 3);
    EXPECT_TRUE(equivalent(PostFormula{b, r->witness}, PostFormula{b, ap("or3", {v("x"), v("y"), v("y")})}));
}

TEST(MinPost, XorConstantNeedsOneGate) {
    Basis b({xor_fn(2)});
    auto r = min_post(b, ap("xor2", {v("x"), v("x")}), SizeMeasure::Gates);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->size, 1);
    EXPECT_FALSE(satisfiable(PostFormula{b, r->witness}));
}

TEST(MinPost, AndBasisViaDuality) {
    Basis b({and_fn(2)});
    auto phi = ap("and2", {ap("and2", {v("a"), v("b")}), ap("and2", {v("b"), v("a")})});
    auto r = min_post(b, phi, SizeMeasure::Gates);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->size, 1);
    EXPECT_TRUE(equivalent(PostFormula{b, r->witness}, PostFormula{b, phi}));
}

TEST(MinPost, RejectsMixedBasis) {
    Basis b({and_fn(2), or_fn(2)});
    EXPECT_THROW(min_post(b, ap("and2", {v("a"), v("b")}), SizeMeasure::Literals), ClassificationError);
    Basis o({or_fn(2)});
    EXPECT_THROW(min_post(o, v("a"), SizeMeasure::Clauses), ModelError);
}

TEST(MinPost, AgreesWithOracle) {
    Rng rng(9);
    const std::vector<Basis> bases{Basis({or_fn(2), or_fn(3)}), Basis({xor_fn(2)}), Basis({and_fn(3)})};
    for (const auto& b : bases)
        for (int i = 0; i < 40; ++i) {
            auto phi = random_bformula(b, uniform(rng, 1, 5), {"a", "b", "c"}, rng);
            for (auto m : {SizeMeasure::Literals, SizeMeasure::Gates}) {
                auto got = min_post(b, phi, m);
                auto best = brute_min_bformula(b, phi, m, 7);
                ASSERT_EQ(got.has_value(), best.has_value()) << serialize(phi);
                if (got) EXPECT_EQ(got->size, best->size) << serialize(phi) << " " << to_string(m);
            }
        }
}
