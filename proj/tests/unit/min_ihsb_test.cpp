#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/min_ihsb.hpp"
#include "mee/minimize.hpp"
#include "mee/oracle.hpp"

using namespace mee;
using namespace mee::testing;

namespace {

CnfFormula build(int n, std::vector<Clause> cs) { return CnfFormula(ihsb_plus_base(), var_names(n), std::move(cs)); }

enum { Pos, Neg, Imp, Eq, Or2, Or3 };

}  // namespace

TEST(MinIhsb, Transitivity) {
    auto f = build(3, {{Imp, {0, 1}}, {Imp, {1, 2}}, {Imp, {0, 2}}});
    auto out = minimize_ihsb_plus(f);
    EXPECT_EQ(out.num_clauses(), 2);
    EXPECT_TRUE(equivalent(out, f));
}

TEST(MinIhsb, CycleCollapsesToEquality) {
    auto f = build(3, {{Imp, {0, 1}}, {Imp, {1, 2}}, {Imp, {2, 0}}, {Imp, {0, 2}}});
    auto base = min_ihsb(normalize_to_base(f));
    EXPECT_EQ(base.clause_count(), 2);
    EXPECT_TRUE(base.imps.empty());
    EXPECT_TRUE(leadsto(base, 2, 0));
}

TEST(MinIhsb, OrSubsumedThroughImplication) {
    // (a | b) with a -> b makes b true.
    auto f = build(2, {{Or2, {0, 1}}, {Imp, {0, 1}}});
    auto base = min_ihsb(normalize_to_base(f));
    EXPECT_EQ(base.pos, std::set<int>{1});
    EXPECT_TRUE(base.ors.empty());
}

TEST(MinIhsb, NegativeUnitsPropagate) {
    auto f = build(3, {{Or3, {0, 1, 2}}, {Neg, {2}}, {Imp, {1, 2}}});
    auto out = minimize_ihsb_plus(f);
    EXPECT_TRUE(equivalent(out, f));
    EXPECT_EQ(out.num_clauses(), 3);
}

TEST(MinIhsb, UnsatisfiableGivesMinimalContradiction) {
    auto f = build(2, {{Pos, {0}}, {Imp, {0, 1}}, {Neg, {1}}});
    EXPECT_TRUE(unsat_check_ihsb(normalize_to_base(f)));
    MinimizeStats stats;
    auto out = minimize(f, &stats);
    EXPECT_TRUE(stats.unsatisfiable);
    EXPECT_FALSE(satisfiable(out));
    EXPECT_EQ(out.num_clauses(), 2);
}

TEST(MinIhsb, DualLanguageUsesMirror) {
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        auto f = dualize(random_cnf(ihsb_plus_base(), uniform(rng, 1, 5), uniform(rng, 1, 5), rng));
        if (!satisfiable(f)) continue;
        auto out = minimize_ihsb_minus(f);
        auto best = brute_min_cnf(f.language(), f, 6);
        ASSERT_TRUE(best);
        EXPECT_EQ(out.num_clauses(), best->count);
        EXPECT_TRUE(equivalent(out, f));
    }
}

TEST(MinIhsb, RestrictedVocabularyWithoutEquality) {
    ConstraintLanguage lang({imp_rel(), or_rel(2)});
    CnfFormula f(lang, {"a", "b", "c"}, {Clause{0, {0, 1}}, Clause{0, {1, 2}}, Clause{0, {2, 0}}, Clause{1, {0, 2}}});
    auto out = minimize(f);
    auto best = brute_min_cnf(lang, f, 6);
    ASSERT_TRUE(best);
    EXPECT_EQ(out.num_clauses(), best->count);
    EXPECT_TRUE(equivalent(out, f));
}
