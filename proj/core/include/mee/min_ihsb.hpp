#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mee/minimize.hpp"
#include "mee/model.hpp"

namespace mee {

// Formula over the base vocabulary {x, !x, u->v, u=v, OR^m}, split by clause
// kind. Variables are ids of the source formula.
struct BaseFormula {
    int num_vars = 0;
    std::set<std::vector<int>> ors;       // sorted, at least two distinct variables
    std::set<std::pair<int, int>> imps;   // u -> v with u != v
    std::set<std::pair<int, int>> eqs;    // u = v with u < v
    std::set<int> pos;
    std::set<int> neg;

    int clause_count() const {
        return static_cast<int>(ors.size() + imps.size() + eqs.size() + pos.size() + neg.size());
    }
    friend bool operator==(const BaseFormula&, const BaseFormula&) = default;
};

// How each base clause kind can be written with a language's relations.
struct IhsbVocabulary {
    std::optional<int> pos, neg, eq;
    std::optional<int> imp;
    bool imp_reversed = false;     // relation is {00,10,11}: R(a,b) = b -> a
    std::map<int, int> ors;        // OR arity -> relation index
};

// Throws ClassificationError when a relation is not a permutation of a base
// relation.
IhsbVocabulary ihsb_vocabulary(const ConstraintLanguage& lang);

BaseFormula normalize_to_base(const CnfFormula& f);
bool leadsto(const BaseFormula& f, int u, int v);
bool unsat_check_ihsb(const BaseFormula& f);

// Fixpoint minimization of a satisfiable base formula.
BaseFormula min_ihsb(const BaseFormula& f, int* passes = nullptr);

// One clause of `lang` per base clause; throws VocabularyError when a shape
// has no encoding.
CnfFormula restrict_vocabulary(const BaseFormula& f, const ConstraintLanguage& lang,
                               const std::vector<std::string>& variables);

CnfFormula minimize_ihsb_plus(const CnfFormula& f, MinimizeStats* stats = nullptr);
CnfFormula minimize_ihsb_minus(const CnfFormula& f, MinimizeStats* stats = nullptr);

}  // namespace mee
