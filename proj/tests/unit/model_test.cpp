#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/errors.hpp"
#include "mee/model.hpp"

using namespace mee;
using namespace mee::testing;

TEST(TruthTable, CountsAndSubsets) {
    auto x = TruthTable::variable(3, 0);
    auto y = TruthTable::variable(3, 1);
    EXPECT_EQ(x.count(), 4u);
    EXPECT_EQ((x & y).count(), 2u);
    EXPECT_TRUE((x & y).subset_of(x));
    EXPECT_FALSE(x.subset_of(y));
    EXPECT_TRUE((~x | x).is_ones());
    EXPECT_TRUE((x ^ x).is_zero());
}

TEST(TruthTable, FirstVariableIsMostSignificant) {
    auto x = TruthTable::variable(2, 0);
    EXPECT_FALSE(x.get(0b01));
    EXPECT_TRUE(x.get(0b10));
}

TEST(Relation, TupleOrderIsMsbFirst) {
    auto imp = imp_rel();
    EXPECT_TRUE(imp.contains(0b01));
    EXPECT_FALSE(imp.contains(0b10));
    EXPECT_TRUE(tuple_bit(0b10, 2, 0));
    EXPECT_FALSE(tuple_bit(0b10, 2, 1));
}

TEST(Relation, RejectsOutOfRangeTuples) {
    EXPECT_THROW(Relation("bad", 2, {4}), ModelError);
}

TEST(CnfFormula, EvaluatesClauses) {
    ConstraintLanguage lang({imp_rel(), pos_rel()});
    CnfFormula f(lang, {"a", "b"}, {Clause{0, {0, 1}}, Clause{1, {0}}});
    EXPECT_TRUE(eval(f, Assignment({true, true})));
    EXPECT_FALSE(eval(f, Assignment({true, false})));
    EXPECT_FALSE(eval(f, Assignment({false, true})));
    EXPECT_EQ(truth_table(f).count(), 1u);
}

TEST(CnfFormula, CanonicalIgnoresClauseOrder) {
    ConstraintLanguage lang({imp_rel(), pos_rel()});
    CnfFormula f(lang, {"a", "b"}, {Clause{0, {0, 1}}, Clause{1, {0}}});
    CnfFormula g(lang, {"a", "b"}, {Clause{1, {0}}, Clause{0, {0, 1}}});
    EXPECT_EQ(f.canonical(), g.canonical());
    EXPECT_TRUE(equivalent(f, g));
}

TEST(BFormula, SizesAndVariables) {
    auto f = BFormula::apply("or2", {BFormula::var("a"), BFormula::apply("or2", {BFormula::var("b"), BFormula::var("a")})});
    EXPECT_EQ(f.literal_count(), 3);
    EXPECT_EQ(f.gate_count(), 2);
    EXPECT_EQ(size_of(f, SizeMeasure::Literals), 3);
    EXPECT_EQ(size_of(f, SizeMeasure::Gates), 2);
    EXPECT_EQ(f.variables().size(), 2u);
}

TEST(BFormula, EvaluatesOverBasis) {
    Basis b({and_fn(2), or_fn(2)});
    auto f = BFormula::apply("and2", {BFormula::var("a"), BFormula::apply("or2", {BFormula::var("b"), BFormula::var("c")})});
    auto t = truth_table(f, b, {"a", "b", "c"});
    EXPECT_EQ(t.count(), 3u);
    EXPECT_TRUE(t.get(0b101));
    EXPECT_FALSE(t.get(0b011));
}

TEST(Duality, RelationDualComplementsTuples) {
    auto d = dualize(imp_rel());
    EXPECT_TRUE(d.same_tuples(imp_rev_rel()));
    EXPECT_EQ(d.name(), dual_name("imp"));
    EXPECT_EQ(dual_name(dual_name("imp")), "imp");
}

TEST(Duality, DualFormulaHasComplementedModels) {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        auto f = random_cnf(ihsb_plus_base(), 4, 4, rng);
        auto d = dualize(f);
        auto tf = truth_table(f);
        auto td = truth_table(d);
        for (std::uint64_t row = 0; row < tf.num_rows(); ++row) EXPECT_EQ(tf.get(row), td.get(row ^ 0xF));
    }
}

TEST(Duality, BasisDualIsInvolution) {
    Basis b({or_fn(2), maj_fn()});
    auto dd = dualize(dualize(b));
    ASSERT_EQ(dd.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(dd[i].table(), b[i].table());
    EXPECT_EQ(dualize(or_fn(2)).table(), and_fn(2).table());
}

TEST(Satisfiability, DetectsUnsat) {
    ConstraintLanguage lang({pos_rel(), neg_rel()});
    CnfFormula f(lang, {"a"}, {Clause{0, {0}}, Clause{1, {0}}});
    EXPECT_FALSE(satisfiable(f));
    Basis b({xor_fn(2)});
    EXPECT_FALSE(satisfiable(PostFormula{b, BFormula::apply("xor2", {BFormula::var("a"), BFormula::var("a")})}));
}
