#include <gtest/gtest.h>

#include "generators.hpp"
#include "mee/classify.hpp"
#include "mee/errors.hpp"
#include "mee/min_ihsb.hpp"
#include "mee/oracle.hpp"

using namespace mee;
using namespace mee::testing;

TEST(Closure, TemplatesAreInTheirClasses) {
    EXPECT_TRUE(closed_under(or_rel(3), ClosureOp::Max2));
    EXPECT_FALSE(closed_under(or_rel(3), ClosureOp::Min2));
    EXPECT_TRUE(closed_under(or_rel(3), ClosureOp::OrAndMix));
    EXPECT_FALSE(closed_under(or_rel(3), ClosureOp::Maj3));
    EXPECT_TRUE(closed_under(or_rel(2), ClosureOp::Maj3));
    EXPECT_TRUE(closed_under(xor_rel(), ClosureOp::Xor3));
    EXPECT_FALSE(closed_under(xor_rel(), ClosureOp::Min2));
    EXPECT_TRUE(closed_under(imp_rel(), ClosureOp::Min2));
    EXPECT_TRUE(closed_under(imp_rel(), ClosureOp::Max2));
    EXPECT_TRUE(closed_under(nand_rel(), ClosureOp::AndOrMix));
    EXPECT_FALSE(closed_under(nand_rel(), ClosureOp::OrAndMix));
}

TEST(Irreducible, DetectsDecomposableRelations) {
    EXPECT_TRUE(is_irreducible(or_rel(3)));
    EXPECT_TRUE(is_irreducible(imp_rel()));
    EXPECT_TRUE(is_irreducible(eq_rel()));
    // x & (y | z) splits into two clauses.
    auto split = Relation::from_predicate("split", 3, [](std::uint32_t t) { return (t & 4) && (t & 3); });
    EXPECT_FALSE(is_irreducible(split));
    EXPECT_TRUE(brute_reducible(split));
    EXPECT_FALSE(brute_reducible(or_rel(3)));
}

TEST(Irreducible, AgreesWithBruteForceUpToArityFour) {
    for (int arity = 1; arity <= 4; ++arity)
        for (const auto& r : all_relations(arity)) ASSERT_EQ(is_irreducible(r), !brute_reducible(r)) << r.name();
}

TEST(ClassifyLanguage, Verdicts) {
    EXPECT_EQ(classify_language(ihsb_plus_base()).verdict, LanguageVerdict::PIhsbPlus);
    EXPECT_EQ(classify_language(dualize(ihsb_plus_base())).verdict, LanguageVerdict::PIhsbMinus);
    EXPECT_EQ(classify_language(affine_base()).verdict, LanguageVerdict::PAffine);
    EXPECT_EQ(classify_language(ConstraintLanguage(bijunctive_templates())).verdict, LanguageVerdict::PBijunctive);
    EXPECT_TRUE(is_polynomial(LanguageVerdict::PBijunctive));
}

TEST(ClassifyLanguage, AffineTakesPrecedence) {
    ConstraintLanguage lang({pos_rel(), eq_rel()});
    EXPECT_EQ(classify_language(lang).verdict, LanguageVerdict::PAffine);
}

TEST(ClassifyLanguage, HornWithImplicationIsHard) {
    auto horn3 = Relation::from_predicate("horn3", 3, [](std::uint32_t t) { return t != 6; });
    auto report = classify_language(ConstraintLanguage({horn3}));
    EXPECT_EQ(report.verdict, LanguageVerdict::NpCompleteHorn);
    ASSERT_TRUE(report.witness.has_value());
    EXPECT_EQ(report.witness->k, 2);
}

TEST(ClassifyLanguage, NonSchaeferIsCoNpHard) {
    auto one_in_three = rel("one_in_three", 3, {1, 2, 4});
    EXPECT_EQ(classify_language(ConstraintLanguage({one_in_three})).verdict, LanguageVerdict::CoNpHardNonSchaefer);
}

TEST(ClassifyBasis, Verdicts) {
    EXPECT_EQ(classify_basis(Basis({or_fn(2), or_fn(3)})).verdict, BasisVerdict::POr);
    EXPECT_EQ(classify_basis(Basis({and_fn(2)})).verdict, BasisVerdict::PAnd);
    EXPECT_EQ(classify_basis(Basis({xor_fn(3)})).verdict, BasisVerdict::PXor);
    EXPECT_EQ(classify_basis(Basis({and_fn(2), or_fn(2)})).verdict, BasisVerdict::CoNpHard);
    EXPECT_EQ(classify_basis(Basis({maj_fn()})).verdict, BasisVerdict::CoNpHard);
}

TEST(IhsbVocabulary, RejectsNonTemplates) {
    EXPECT_NO_THROW(ihsb_vocabulary(ihsb_plus_base()));
    EXPECT_THROW(ihsb_vocabulary(ConstraintLanguage({nand_rel()})), ClassificationError);
}
