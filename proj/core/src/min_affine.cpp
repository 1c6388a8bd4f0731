#include "mee/min_affine.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "mee/errors.hpp"

namespace mee {

bool Gf2Row::zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](std::uint64_t w) { return w == 0; });
}

void Gf2Row::add(const Gf2Row& other) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] ^= other.coeffs[i];
    constant ^= other.constant;
}

bool affine_parity(const Relation& r) {
    const int k = r.arity();
    const auto& ts = r.tuples();
    if (k == 0 || ts.size() != (std::size_t{1} << (k - 1)))
        throw ClassificationError("relation " + r.name() + " is not a single parity equation");
    const bool parity = std::popcount(ts.front()) & 1;
    for (auto t : ts)
        if ((std::popcount(t) & 1) != static_cast<int>(parity))
            throw ClassificationError("relation " + r.name() + " is not a single parity equation");
    return parity;
}

Gf2Row clause_to_equation(const CnfFormula& f, const Clause& c) {
    Gf2Row row;
    row.coeffs.assign((f.num_vars() + 63) / 64, 0);
    row.constant = affine_parity(f.relation_of(c));
    for (int v : c.vars) row.flip(v);
    return row;
}

AffineAnalysis analyze_affine(const CnfFormula& f) {
    AffineAnalysis out;
    std::map<int, Gf2Row> pivots;  // pivot variable -> reduced row
    for (int i = 0; i < f.num_clauses(); ++i) {
        auto row = clause_to_equation(f, f.clauses()[i]);
        for (const auto& [p, prow] : pivots)
            if (row.coeff(p)) row.add(prow);
        if (row.zero()) {
            if (row.constant) out.consistent = false;
            continue;
        }
        int pivot = 0;
        while (!row.coeff(pivot)) ++pivot;
        for (auto& [p, prow] : pivots)
            if (prow.coeff(pivot)) prow.add(row);
        pivots.emplace(pivot, std::move(row));
        out.independent.push_back(i);
    }
    out.rank = static_cast<int>(out.independent.size());
    return out;
}

CnfFormula min_affine(const CnfFormula& f, MinimizeStats* stats) {
    const auto a = analyze_affine(f);
    MinimizeStats st;
    st.algorithm = "affine";
    st.input_clauses = f.num_clauses();
    st.passes = 1;
    st.rank = a.rank;
    CnfFormula out;
    if (!a.consistent) {
        st.unsatisfiable = true;
        out = min_unsat_for(f);
    } else {
        std::vector<Clause> kept;
        for (int i : a.independent) kept.push_back(f.clauses()[i]);
        out = f.with_clauses(std::move(kept));
    }
    st.output_clauses = out.num_clauses();
    if (stats) *stats = st;
    return out;
}

}  // namespace mee
