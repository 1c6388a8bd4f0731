#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/errors.hpp"
#include "mee/min_affine.hpp"
#include "mee/oracle.hpp"

using namespace mee;
using namespace mee::testing;

TEST(Gf2Row, AddCancelsSharedCoefficients) {
    Gf2Row a;
    a.coeffs.assign(1, 0);
    a.flip(0);
    a.flip(2);
    a.constant = true;
    Gf2Row b;
    b.coeffs.assign(1, 0);
    b.flip(2);
    b.flip(3);
    a.add(b);
    EXPECT_TRUE(a.coeff(0));
    EXPECT_FALSE(a.coeff(2));
    EXPECT_TRUE(a.coeff(3));
    EXPECT_TRUE(a.constant);
    EXPECT_FALSE(a.zero());
}

TEST(AffineParity, RejectsNonAffineRelations) {
    EXPECT_THROW(affine_parity(or_rel(2)), ClassificationError);
    EXPECT_NO_THROW(affine_parity(parity_rel(3, 1)));
}

TEST(MinAffine, DropsDependentEquations) {
    auto lang = affine_base();
    // a+b=0, b+c=0, a+c=0: the third is the sum of the first two.
    CnfFormula f(lang, {"a", "b", "c"}, {Clause{2, {0, 1}}, Clause{2, {1, 2}}, Clause{2, {0, 2}}});
    MinimizeStats stats;
    auto out = min_affine(f, &stats);
    EXPECT_EQ(out.num_clauses(), 2);
    ASSERT_TRUE(stats.rank);
    EXPECT_EQ(*stats.rank, 2);
    EXPECT_TRUE(equivalent(out, f));
}

TEST(MinAffine, InconsistentSystem) {
    auto lang = affine_base();
    CnfFormula f(lang, {"a", "b"}, {Clause{2, {0, 1}}, Clause{3, {0, 1}}});
    EXPECT_FALSE(analyze_affine(f).consistent);
    auto out = min_affine(f);
    EXPECT_FALSE(satisfiable(out));
}

TEST(MinAffine, SolutionCountMatchesRank) {
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        const int n = uniform(rng, 3, 10);
        auto f = random_cnf(affine_base(), n, uniform(rng, 1, n), rng);
        auto a = analyze_affine(f);
        if (!a.consistent) continue;
        EXPECT_EQ(truth_table(f).count(), std::uint64_t{1} << (n - a.rank));
    }
}

TEST(MinAffine, AgreesWithOracle) {
    Rng rng(6);
    for (int i = 0; i < 80; ++i) {
        auto f = random_cnf(affine_base(), uniform(rng, 1, 5), uniform(rng, 1, 5), rng);
        auto out = min_affine(f);
        auto best = brute_min_cnf(f.language(), f, 6);
        ASSERT_TRUE(best);
        EXPECT_EQ(out.num_clauses(), best->count);
        EXPECT_TRUE(equivalent(out, f));
    }
}
