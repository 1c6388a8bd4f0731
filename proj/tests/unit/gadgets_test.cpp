#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "mee/errors.hpp"
#include "mee/gadgets.hpp"

using namespace mee;
using namespace mee::testing;

namespace {

BFormula v(const char* s) { return BFormula::var(s); }
BFormula ap(const std::string& f, std::vector<BFormula> args) { return BFormula::apply(f, std::move(args)); }

}  // namespace

TEST(MaxVarsWithinGates, ClosedForm) {
    EXPECT_EQ(max_vars_within_gates(Basis({or_fn(2)}), 3), 4);
    EXPECT_EQ(max_vars_within_gates(Basis({or_fn(2), or_fn(3)}), 2), 5);
}

TEST(UnsatPost, UnsatisfiableInputGivesBoundedInstance) {
    Basis b({BoolFunction::from_bits("f", 2, "0010")});
    auto psi = ap("f", {v("x"), v("x")});
    auto inst = reduce_unsat_to_mee_post(b, psi, ap("f", {v("a"), v("a")}), SizeMeasure::Literals);
    EXPECT_FALSE(inst.fixed_negative);
    EXPECT_EQ(inst.bound, 2);
    auto neg = reduce_unsat_to_mee_post(b, psi, ap("f", {v("a"), v("b")}), SizeMeasure::Literals);
    EXPECT_TRUE(neg.fixed_negative);
    EXPECT_THROW(reduce_unsat_to_mee_post(b, v("x"), v("a"), SizeMeasure::Literals), ModelError);
}

TEST(UnsatCnf, SatisfiableInputIsFixedNegative) {
    ConstraintLanguage lang({pos_rel(), neg_rel()});
    CnfFormula sat(lang, {"a"}, {Clause{0, {0}}});
    EXPECT_TRUE(reduce_unsat_to_mee_cnf(lang, sat).fixed_negative);
    CnfFormula unsat(lang, {"a"}, {Clause{0, {0}}, Clause{1, {0}}});
    auto inst = reduce_unsat_to_mee_cnf(lang, unsat);
    EXPECT_FALSE(inst.fixed_negative);
    EXPECT_EQ(inst.bound, 2);
}

TEST(AndOrGadget, SizeAndFreshVariables) {
    Basis b({and_fn(2), or_fn(2)});
    auto g = build_and_or_gadget(b, ap("and2", {v("x"), v("y")}), ap("or2", {v("x"), v("y")}), v("a"), v("b"),
                                 SizeMeasure::Literals);
    EXPECT_EQ(g.l, 2);
    auto vars = g.formula.variables();
    EXPECT_NE(std::find(vars.begin(), vars.end(), "t"), vars.end());
    EXPECT_NE(std::find(vars.begin(), vars.end(), "z2"), vars.end());
    EXPECT_THROW(build_and_or_gadget(b, ap("and2", {v("x"), v("y")}), ap("or2", {v("x"), v("y")}), v("t"), v("b"),
                                     SizeMeasure::Literals),
                 ModelError);
}

TEST(AndOrGadget, RejectsWrongTemplate) {
    Basis b({and_fn(2), or_fn(2)});
    EXPECT_THROW(build_and_or_gadget(b, ap("or2", {v("x"), v("y")}), ap("or2", {v("x"), v("y")}), v("a"), v("b"),
                                     SizeMeasure::Gates),
                 ModelError);
}

TEST(MajGadget, EquivalentInputsCollapse) {
    Basis b({maj_fn()});
    auto g = build_maj_gadget(b, ap("maj", {v("x"), v("y"), v("z")}), v("a"), v("a"), SizeMeasure::Literals);
    EXPECT_GT(g.l, 0);
    EXPECT_TRUE(g.formula.literal_count() > g.l);
}

TEST(HornDnf, NegationIsHorn) {
    Dnf d{{Literal{"x", true}, Literal{"y", true}, Literal{"z", false}}, {Literal{"x", true}, Literal{"w", false}}};
    auto cnf = pure_horn_dnf_to_cnf(d);
    EXPECT_EQ(cnf.num_clauses(), 2);
    EXPECT_EQ(cnf.language(), horn3_language());
    EXPECT_THROW(pure_horn_dnf_to_cnf({{Literal{"x", true}, Literal{"y", true}}}), ModelError);
}
