#pragma once

// Exhaustive reference searches used as ground truth at small scale.

#include <optional>
#include <vector>

#include "mee/model.hpp"

namespace mee {

struct OracleLimits {
    int max_vars = 8;            // variables of the searched formula
    int max_clauses = 6;         // clause bound for CNF searches
    int max_bformula_size = 7;   // leaves or gates for B-formula searches
    int max_relation_arity = 4;  // expressibility and reducibility searches
    int max_expr_clauses = 8;
    int max_unsat_clauses = 4;
    long long max_candidates = 2'000'000;
    long long max_steps = 200'000'000;  // table operations in B-formula search
};

struct CnfSearchResult {
    int count = 0;
    CnfFormula witness;
};

// Smallest Gamma-formula over var(phi) equivalent to phi, if one exists with
// at most k_max clauses.
std::optional<CnfSearchResult> brute_min_cnf(const ConstraintLanguage& lang, const CnfFormula& phi, int k_max,
                                             const OracleLimits& limits = {});

struct BFormulaSearchResult {
    int size = 0;
    BFormula witness;
};

std::optional<BFormulaSearchResult> brute_min_bformula(const Basis& basis, const BFormula& phi, SizeMeasure measure,
                                                       int bound, const OracleLimits& limits = {});

// Plain expressibility: a conjunction of at most clause_bound base clauses
// over exactly R's variables, no auxiliary variables.
bool expressible(const Relation& r, const ConstraintLanguage& base, int clause_bound,
                 const OracleLimits& limits = {});

// Minimum-clause unsatisfiable Gamma-formula (over one variable), if any.
std::optional<CnfFormula> min_unsat_formula(const ConstraintLanguage& lang, int clause_bound,
                                            const OracleLimits& limits = {});

enum class SchaeferClass { Affine, Bijunctive, Horn, DualHorn, IhsbPlus, IhsbMinus };

std::string to_string(SchaeferClass c);

// Defining relations of a class, up to the given arity.
ConstraintLanguage base_language(SchaeferClass c, int arity);

// Reducibility by enumerating every decomposition into clauses that each
// miss at least one variable.
bool brute_reducible(const Relation& r, const OracleLimits& limits = {});

// Every nonempty relation of the given arity, named "r<arity>_<mask>".
std::vector<Relation> all_relations(int arity);

}  // namespace mee
