#pragma once

#include <optional>
#include <string>

#include "mee/classify.hpp"
#include "mee/model.hpp"

namespace mee {

struct MinimizeStats {
    std::string algorithm;
    int input_clauses = 0;
    int output_clauses = 0;
    int passes = 0;
    std::optional<int> rank;
    bool unsatisfiable = false;

    std::string format() const;  // key=value lines
};

// Minimum unsatisfiable formula of the language over phi's first variable.
// Searched once per language and cached.
CnfFormula min_unsat_for(const CnfFormula& phi);

// Classifies phi's language and dispatches to the matching minimizer.
// Throws ClassificationError when no polynomial minimizer applies.
CnfFormula minimize(const CnfFormula& phi, MinimizeStats* stats = nullptr);

}  // namespace mee
