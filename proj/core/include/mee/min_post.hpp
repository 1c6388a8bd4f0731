#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mee/classify.hpp"
#include "mee/model.hpp"

namespace mee {

// Summary of a B-formula read with pairwise distinct leaves: constant c is
// the value on all zeros, l the relevant leaves, n all leaves, g the gates.
struct FuncTuple {
    int c = 0;
    int l = 0;
    int n = 0;
    int g = 0;

    friend bool operator==(const FuncTuple&, const FuncTuple&) = default;
};

// Substitute t2 for one argument of t1 (a relevant one or an irrelevant
// one). The class must be POr or PXor. Throws ModelError when the guard fails.
FuncTuple tuple_compose(const FuncTuple& t1, const FuncTuple& t2, bool relevant, BasisVerdict cls);
// Identify two relevant leaves.
FuncTuple tuple_identify(const FuncTuple& t, BasisVerdict cls);

struct RelevanceSummary {
    bool c = false;
    std::vector<std::string> relevant;    // in order of first appearance
    std::vector<std::string> irrelevant;
};

RelevanceSummary relevant_variables(const BFormula& phi, const Basis& basis);

struct PostResult {
    int size = 0;
    BFormula witness;
    FuncTuple tuple;  // (c, l, n) of the witness before identification
};

// Minimum equivalent B-formula for the literal or gate measure. Throws
// ClassificationError when B is not all-OR, all-AND or all-XOR. Returns
// nullopt when no B-formula realizes phi.
std::optional<PostResult> min_post(const Basis& basis, const BFormula& phi, SizeMeasure measure);

}  // namespace mee
