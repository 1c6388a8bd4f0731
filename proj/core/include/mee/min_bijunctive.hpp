#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mee/minimize.hpp"
#include "mee/model.hpp"

namespace mee {

// Literal 2v is variable v, literal 2v+1 its negation.
inline int lit_of(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
inline int negate_lit(int lit) { return lit ^ 1; }

enum class BinaryShape { Pos, Neg, Or, Nand, Imp, ImpRev, Eq, Xor };

// Shape of an irreducible bijunctive relation; nullopt for anything else.
std::optional<BinaryShape> binary_shape(const Relation& r);

struct LiteralGraph {
    int num_vars = 0;
    // Implication u -> v between literals; each pair u->v, !v->!u comes from
    // one binary clause. A unit literal l is the edge !l -> l.
    std::vector<std::pair<int, int>> edges;
};

// Throws ClassificationError on a relation outside the eight templates.
LiteralGraph to_literal_graph(const CnfFormula& f);

CnfFormula min_bijunctive(const CnfFormula& f, MinimizeStats* stats = nullptr);

}  // namespace mee
