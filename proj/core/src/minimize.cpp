#include "mee/minimize.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "mee/errors.hpp"
#include "mee/min_affine.hpp"
#include "mee/min_bijunctive.hpp"
#include "mee/min_ihsb.hpp"
#include "mee/oracle.hpp"
#include "mee/text_io.hpp"

namespace mee {

std::string MinimizeStats::format() const {
    std::ostringstream os;
    os << "algorithm=" << algorithm << '\n'
       << "input_clauses=" << input_clauses << '\n'
       << "output_clauses=" << output_clauses << '\n'
       << "passes=" << passes << '\n';
    if (rank) os << "rank=" << *rank << '\n';
    os << "unsatisfiable=" << (unsatisfiable ? "true" : "false") << '\n';
    return os.str();
}

CnfFormula min_unsat_for(const CnfFormula& phi) {
    static std::mutex mu;
    static std::map<std::string, std::vector<Clause>> cache;

    const auto key = serialize(phi.language());
    std::vector<Clause> clauses;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it == cache.end()) {
            OracleLimits limits;
            auto found = min_unsat_formula(phi.language(), limits.max_unsat_clauses, limits);
            if (!found) throw ResourceError("no unsatisfiable formula within the clause bound");
            it = cache.emplace(key, found->clauses()).first;
        }
        clauses = it->second;
    }
    if (phi.num_vars() == 0) return CnfFormula(phi.language(), {"x"}, std::move(clauses));
    return phi.with_clauses(std::move(clauses));
}

CnfFormula minimize(const CnfFormula& phi, MinimizeStats* stats) {
    const auto report = classify_language(phi.language());
    if (!report.irreducible) throw ClassificationError("language is not irreducible");
    switch (report.verdict) {
        case LanguageVerdict::PAffine: return min_affine(phi, stats);
        case LanguageVerdict::PIhsbPlus: return minimize_ihsb_plus(phi, stats);
        case LanguageVerdict::PIhsbMinus: return minimize_ihsb_minus(phi, stats);
        case LanguageVerdict::PBijunctive: return min_bijunctive(phi, stats);
        default: break;
    }
    throw ClassificationError("no polynomial minimizer for verdict " + to_string(report.verdict));
}

}  // namespace mee
