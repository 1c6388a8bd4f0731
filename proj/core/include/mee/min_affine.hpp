#pragma once

#include <cstdint>
#include <vector>

#include "mee/minimize.hpp"
#include "mee/model.hpp"

namespace mee {

// Row over GF(2): coefficient bits for n variables plus a constant.
struct Gf2Row {
    std::vector<std::uint64_t> coeffs;
    bool constant = false;

    bool zero() const;
    void add(const Gf2Row& other);
    bool coeff(int var) const { return (coeffs[var / 64] >> (var % 64)) & 1U; }
    void flip(int var) { coeffs[var / 64] ^= std::uint64_t{1} << (var % 64); }
};

// Parity of an irreducible affine relation: the relation must be
// x1 ^ ... ^ xk = c over all its positions. Throws ClassificationError.
bool affine_parity(const Relation& r);

Gf2Row clause_to_equation(const CnfFormula& f, const Clause& c);

// Rank of the clause system and whether it is consistent.
struct AffineAnalysis {
    int rank = 0;
    bool consistent = true;
    std::vector<int> independent;  // clause indices, greedy in input order
};

AffineAnalysis analyze_affine(const CnfFormula& f);

CnfFormula min_affine(const CnfFormula& f, MinimizeStats* stats = nullptr);

}  // namespace mee
