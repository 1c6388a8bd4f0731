#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/oracle.hpp"

using namespace mee;
using namespace mee::testing;

TEST(BruteMinCnf, RemovesImpliedClauses) {
    auto lang = ihsb_plus_base();
    // a -> b, b -> c, a -> c
    CnfFormula f(lang, {"a", "b", "c"}, {Clause{2, {0, 1}}, Clause{2, {1, 2}}, Clause{2, {0, 2}}});
    auto best = brute_min_cnf(lang, f, 4);
    ASSERT_TRUE(best);
    EXPECT_EQ(best->count, 2);
    EXPECT_TRUE(equivalent(best->witness, f));
}

TEST(BruteMinCnf, RespectsBound) {
    auto lang = ihsb_plus_base();
    CnfFormula f(lang, {"a", "b", "c"}, {Clause{0, {0}}, Clause{0, {1}}, Clause{0, {2}}});
    EXPECT_FALSE(brute_min_cnf(lang, f, 2));
    EXPECT_TRUE(brute_min_cnf(lang, f, 3));
}

TEST(BruteMinBFormula, FindsSmallerEquivalent) {
    Basis b({or_fn(2)});
    auto f = BFormula::apply("or2", {BFormula::var("a"), BFormula::apply("or2", {BFormula::var("a"), BFormula::var("b")})});
    auto lits = brute_min_bformula(b, f, SizeMeasure::Literals, 5);
    ASSERT_TRUE(lits);
    EXPECT_EQ(lits->size, 2);
    auto gates = brute_min_bformula(b, f, SizeMeasure::Gates, 5);
    ASSERT_TRUE(gates);
    EXPECT_EQ(gates->size, 1);
}

TEST(Expressible, ImplicationFromOrAndNeg) {
    ConstraintLanguage base({or_rel(2), neg_rel()});
    EXPECT_FALSE(expressible(imp_rel(), base, 4));
    EXPECT_TRUE(expressible(eq_rel(), ConstraintLanguage({imp_rel()}), 2));
    EXPECT_FALSE(expressible(eq_rel(), ConstraintLanguage({imp_rel()}), 1));
}

TEST(MinUnsat, SmallestContradiction) {
    auto a = min_unsat_formula(ConstraintLanguage({pos_rel(), neg_rel()}), 4);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->num_clauses(), 2);
    EXPECT_FALSE(satisfiable(*a));
    auto b = min_unsat_formula(ConstraintLanguage({xor_rel()}), 4);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->num_clauses(), 1);
    EXPECT_FALSE(min_unsat_formula(ConstraintLanguage({or_rel(2)}), 4));
}
