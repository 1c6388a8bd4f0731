#pragma once

// Instance generators built from the hardness reductions.

#include "mee/model.hpp"
#include "mee/oracle.hpp"

namespace mee {

// Largest number of variables a B-formula with at most k gates can mention.
int max_vars_within_gates(const Basis& basis, int k);

// (phi, size(psi_unsat)) or the fixed negative instance. Positive iff phi is
// unsatisfiable. Throws ModelError when psi_unsat is satisfiable.
MeeInstance reduce_unsat_to_mee_post(const Basis& basis, const BFormula& psi_unsat, const BFormula& phi,
                                     SizeMeasure measure, const Limits& limits = {});

struct Gadget {
    BFormula formula;
    int l = 0;
};

// f_and is a template over x, y with f_and == x & y; f_or is a template over
// x, y, t with f_or(x, y, 1) == x | y. Fresh variables are t and z1, z2, ...
Gadget build_and_or_gadget(const Basis& basis, const BFormula& f_and, const BFormula& f_or, const BFormula& h1,
                           const BFormula& h2, SizeMeasure measure);

// f_maj is a template over x, y, z computing the majority. Fresh variables
// are t, f and z1, z2, ...
Gadget build_maj_gadget(const Basis& basis, const BFormula& f_maj, const BFormula& h1, const BFormula& h2,
                        SizeMeasure measure);

// (phi, k_min) or the fixed negative instance, where k_min is the clause
// count of a minimum unsatisfiable Gamma-formula. Positive iff phi is
// unsatisfiable.
MeeInstance reduce_unsat_to_mee_cnf(const ConstraintLanguage& lang, const CnfFormula& phi,
                                    const OracleLimits& limits = {});

// The language {horn3} with horn3(x, y, z) = (x & y -> z).
ConstraintLanguage horn3_language();

// Negation of a pure Horn 3-DNF as a horn3-formula. Each term has two or
// three literals, exactly one of them negative.
CnfFormula pure_horn_dnf_to_cnf(const Dnf& dnf);

}  // namespace mee
