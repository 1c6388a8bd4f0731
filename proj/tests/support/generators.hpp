#pragma once

// Relations, languages and random formulas shared by the unit tests and the
// acceptance suite.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mee/model.hpp"

namespace mee::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Relation rel(const std::string& name, int arity, std::vector<std::uint32_t> tuples) {
    return Relation(name, arity, std::move(tuples));
}

inline Relation pos_rel() { return rel("pos", 1, {1}); }
inline Relation neg_rel() { return rel("neg", 1, {0}); }
inline Relation or_rel(int k) {
    std::vector<std::uint32_t> ts;
    for (std::uint32_t t = 1; t < (1U << k); ++t) ts.push_back(t);
    return rel("or" + std::to_string(k), k, ts);
}
inline Relation nand_rel() { return rel("nand", 2, {0, 1, 2}); }
inline Relation imp_rel() { return rel("imp", 2, {0, 1, 3}); }
inline Relation imp_rev_rel() { return rel("impr", 2, {0, 2, 3}); }
inline Relation eq_rel() { return rel("eq", 2, {0, 3}); }
inline Relation xor_rel() { return rel("xor", 2, {1, 2}); }
inline Relation parity_rel(int k, int c) {
    std::vector<std::uint32_t> ts;
    for (std::uint32_t t = 0; t < (1U << k); ++t)
        if (__builtin_popcount(t) % 2 == c) ts.push_back(t);
    return rel("par" + std::to_string(k) + "_" + std::to_string(c), k, ts);
}

// {x, !x, ->, =, OR2, OR3}
inline ConstraintLanguage ihsb_plus_base() {
    return ConstraintLanguage({pos_rel(), neg_rel(), imp_rel(), eq_rel(), or_rel(2), or_rel(3)});
}

// The eight irreducible bijunctive relations.
inline std::vector<Relation> bijunctive_templates() {
    return {pos_rel(), neg_rel(), or_rel(2), nand_rel(), imp_rel(), imp_rev_rel(), eq_rel(), xor_rel()};
}

inline ConstraintLanguage affine_base() {
    return ConstraintLanguage({parity_rel(1, 1), parity_rel(1, 0), parity_rel(2, 0), parity_rel(2, 1),
                               parity_rel(3, 0), parity_rel(3, 1)});
}

inline std::vector<std::string> var_names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
}

inline CnfFormula random_cnf(const ConstraintLanguage& lang, int n, int m, Rng& rng) {
    std::vector<Clause> cs;
    for (int i = 0; i < m; ++i) {
        Clause c;
        c.relation = uniform(rng, 0, static_cast<int>(lang.size()) - 1);
        for (int j = 0; j < lang[c.relation].arity(); ++j) c.vars.push_back(uniform(rng, 0, n - 1));
        cs.push_back(std::move(c));
    }
    return CnfFormula(lang, var_names(n), std::move(cs));
}

inline BoolFunction or_fn(int k) {
    return BoolFunction::from_predicate("or" + std::to_string(k), k, [](std::uint32_t t) { return t != 0; });
}
inline BoolFunction and_fn(int k) {
    return BoolFunction::from_predicate("and" + std::to_string(k), k,
                                        [k](std::uint32_t t) { return t == (1U << k) - 1; });
}
inline BoolFunction xor_fn(int k) {
    return BoolFunction::from_predicate("xor" + std::to_string(k), k,
                                        [](std::uint32_t t) { return __builtin_popcount(t) % 2 == 1; });
}
inline BoolFunction maj_fn() {
    return BoolFunction::from_predicate("maj", 3, [](std::uint32_t t) { return __builtin_popcount(t) >= 2; });
}

// Random tree with the given number of leaves over vars; functions of arity
// zero are used only when no leaves remain.
inline BFormula random_bformula(const Basis& basis, int leaves, const std::vector<std::string>& vars, Rng& rng) {
    if (leaves <= 1) {
        if (leaves == 0) {
            for (const auto& f : basis.functions())
                if (f.arity() == 0) return BFormula::apply(f.name(), {});
        }
        return BFormula::var(vars[uniform(rng, 0, static_cast<int>(vars.size()) - 1)]);
    }
    std::vector<const BoolFunction*> usable;
    for (const auto& f : basis.functions())
        if (f.arity() >= 2 && f.arity() <= leaves) usable.push_back(&f);
    if (usable.empty()) return BFormula::var(vars[0]);
    const auto* f = usable[uniform(rng, 0, static_cast<int>(usable.size()) - 1)];
    // Split the leaves among the arguments, each getting at least one.
    std::vector<int> share(f->arity(), 1);
    for (int extra = leaves - f->arity(); extra > 0; --extra) ++share[uniform(rng, 0, f->arity() - 1)];
    std::vector<BFormula> args;
    for (int s : share) args.push_back(random_bformula(basis, s, vars, rng));
    return BFormula::apply(f->name(), std::move(args));
}

}  // namespace mee::testing
