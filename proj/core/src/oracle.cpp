#include "mee/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "mee/errors.hpp"

namespace mee {

namespace {

struct Candidate {
    int relation;
    std::vector<int> vars;
    TruthTable table;
};

// Clauses over n variables that are implied by `target`, deduplicated by
// solution set, with tautologies and dominated clauses removed.
std::vector<Candidate> implied_candidates(const ConstraintLanguage& lang, int n, const TruthTable& target,
                                          const OracleLimits& limits) {
    std::vector<TruthTable> var_tables;
    for (int j = 0; j < n; ++j) var_tables.push_back(TruthTable::variable(n, j));
    std::vector<Candidate> out;
    std::unordered_set<TruthTable, TruthTableHash> seen;
    long long budget = limits.max_candidates;
    for (std::size_t ri = 0; ri < lang.size(); ++ri) {
        const auto& r = lang[ri];
        const int a = r.arity();
        if (n == 0) break;
        long long combos = 1;
        for (int j = 0; j < a; ++j) {
            combos *= n;
            if (combos > budget) throw ResourceError("oracle candidate enumeration exceeds cap");
        }
        budget -= combos;
        std::vector<int> vars(a, 0);
        std::vector<const TruthTable*> args(a);
        for (;;) {
            for (int j = 0; j < a; ++j) args[j] = &var_tables[vars[j]];
            auto t = apply_relation(r, args, n);
            if (!t.is_ones() && target.subset_of(t) && seen.insert(t).second)
                out.push_back(Candidate{static_cast<int>(ri), vars, std::move(t)});
            int j = a - 1;
            while (j >= 0 && ++vars[j] == n) vars[j--] = 0;
            if (j < 0) break;
        }
    }
    std::vector<Candidate> kept;
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < out.size() && !dominated; ++j)
            dominated = j != i && out[j].table.subset_of(out[i].table) && !(out[j].table == out[i].table);
        if (!dominated) kept.push_back(out[i]);
    }
    return kept;
}

struct CoverSearch {
    const std::vector<Candidate>& cands;
    std::vector<std::vector<int>> by_row;  // candidates excluding each row
    std::vector<int> chosen;

    CoverSearch(const std::vector<Candidate>& c, const TruthTable& nonsolutions) : cands(c) {
        by_row.resize(nonsolutions.num_rows());
        for (std::uint64_t row = 0; row < nonsolutions.num_rows(); ++row) {
            if (!nonsolutions.get(row)) continue;
            for (std::size_t i = 0; i < cands.size(); ++i)
                if (!cands[i].table.get(row)) by_row[row].push_back(static_cast<int>(i));
        }
    }

    bool dfs(const TruthTable& remaining, int depth) {
        const auto row = remaining.first_one();
        for (int ci : by_row[row]) {
            auto rest = remaining & cands[ci].table;
            chosen.push_back(ci);
            if (rest.is_zero()) return true;
            if (depth > 1 && dfs(rest, depth - 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

// Fewest candidates whose conjunction equals target, by iterative deepening.
std::optional<std::vector<int>> min_cover(const std::vector<Candidate>& cands, const TruthTable& target, int k_max) {
    const auto nonsolutions = ~target;
    if (nonsolutions.is_zero()) return std::vector<int>{};
    TruthTable all = TruthTable(target.num_vars(), true);
    for (const auto& c : cands) all &= c.table;
    if (!(all == target)) return std::nullopt;
    CoverSearch search(cands, nonsolutions);
    for (int k = 1; k <= k_max; ++k) {
        search.chosen.clear();
        if (search.dfs(nonsolutions, k)) return search.chosen;
    }
    return std::nullopt;
}

std::vector<Clause> clauses_of(const std::vector<Candidate>& cands, const std::vector<int>& picked) {
    std::vector<Clause> out;
    for (int i : picked) out.push_back(Clause{cands[i].relation, cands[i].vars});
    return out;
}

TruthTable relation_as_table(const Relation& r) {
    TruthTable t(r.arity());
    for (auto tuple : r.tuples()) t.set(tuple, true);
    return t;
}

}  // namespace

std::optional<CnfSearchResult> brute_min_cnf(const ConstraintLanguage& lang, const CnfFormula& phi, int k_max,
                                             const OracleLimits& limits) {
    if (phi.num_vars() > limits.max_vars)
        throw ResourceError("oracle: " + std::to_string(phi.num_vars()) + " variables exceed cap " +
                            std::to_string(limits.max_vars));
    if (k_max > limits.max_clauses)
        throw ResourceError("oracle: clause bound " + std::to_string(k_max) + " exceeds cap " +
                            std::to_string(limits.max_clauses));
    const int n = phi.num_vars();
    const auto target = truth_table(phi);
    auto cands = implied_candidates(lang, n, target, limits);
    auto picked = min_cover(cands, target, k_max);
    if (!picked) return std::nullopt;
    CnfFormula w(lang, phi.variables(), clauses_of(cands, *picked));
    return CnfSearchResult{static_cast<int>(picked->size()), std::move(w)};
}

bool expressible(const Relation& r, const ConstraintLanguage& base, int clause_bound, const OracleLimits& limits) {
    if (r.arity() > limits.max_relation_arity)
        throw ResourceError("oracle: relation arity exceeds cap " + std::to_string(limits.max_relation_arity));
    if (clause_bound > limits.max_expr_clauses)
        throw ResourceError("oracle: clause bound exceeds cap " + std::to_string(limits.max_expr_clauses));
    const auto target = relation_as_table(r);
    auto cands = implied_candidates(base, r.arity(), target, limits);
    return min_cover(cands, target, clause_bound).has_value();
}

std::optional<CnfFormula> min_unsat_formula(const ConstraintLanguage& lang, int clause_bound,
                                            const OracleLimits& limits) {
    if (clause_bound > limits.max_unsat_clauses)
        throw ResourceError("oracle: clause bound exceeds cap " + std::to_string(limits.max_unsat_clauses));
    const TruthTable target(1, false);
    auto cands = implied_candidates(lang, 1, target, limits);
    auto picked = min_cover(cands, target, clause_bound);
    if (!picked) return std::nullopt;
    return CnfFormula(lang, {"x"}, clauses_of(cands, *picked));
}

// ---- B-formula search ----------------------------------------------------

namespace {

struct Entry {
    TruthTable table;
    BFormula formula;
};

class BFormulaSearch {
public:
    BFormulaSearch(const Basis& basis, std::vector<std::string> vars, SizeMeasure measure, const OracleLimits& limits)
        : basis_(basis), vars_(std::move(vars)), measure_(measure), budget_(limits.max_steps) {}

    std::optional<BFormulaSearchResult> run(const TruthTable& target, int bound) {
        const int n = static_cast<int>(vars_.size());
        const int leaf_cost = measure_ == SizeMeasure::Literals ? 1 : 0;
        const int gate_cost = measure_ == SizeMeasure::Gates ? 1 : 0;
        levels_.assign(bound + 1, {});
        for (int s = 0; s <= bound; ++s) {
            if (s == leaf_cost)
                for (int j = 0; j < n; ++j)
                    if (auto hit = add(s, TruthTable::variable(n, j), BFormula::var(vars_[j]), target)) return hit;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& fn : basis_.functions()) {
                    const int rest = s - gate_cost;
                    if (rest < 0) continue;
                    if (fn.arity() == 0) {
                        if (rest != 0) continue;
                        auto before = entries_.size();
                        if (auto hit = add(s, TruthTable(n, fn(0)), BFormula::apply(fn.name(), {}), target)) return hit;
                        changed |= entries_.size() != before;
                        continue;
                    }
                    std::vector<int> parts(fn.arity(), 0);
                    if (auto hit = compositions(fn, s, rest, 0, parts, target, changed)) return hit;
                }
                // Only zero-cost nodes can feed a level back into itself.
                if (gate_cost == 1) break;
            }
        }
        return std::nullopt;
    }

private:
    std::optional<BFormulaSearchResult> add(int level, TruthTable t, BFormula f, const TruthTable& target) {
        if (index_.count(t)) return std::nullopt;
        bool hit = t == target;
        index_.emplace(t, static_cast<int>(entries_.size()));
        levels_[level].push_back(static_cast<int>(entries_.size()));
        entries_.push_back(Entry{std::move(t), std::move(f)});
        if (hit) return BFormulaSearchResult{level, entries_.back().formula};
        return std::nullopt;
    }

    std::optional<BFormulaSearchResult> compositions(const BoolFunction& fn, int level, int rest, int pos,
                                                     std::vector<int>& parts, const TruthTable& target,
                                                     bool& changed) {
        const int a = fn.arity();
        if (pos == a - 1) {
            parts[pos] = rest;
            std::vector<int> pick(a, 0);
            return products(fn, level, parts, 0, pick, target, changed);
        }
        for (int p = 0; p <= rest; ++p) {
            parts[pos] = p;
            if (auto hit = compositions(fn, level, rest - p, pos + 1, parts, target, changed)) return hit;
        }
        return std::nullopt;
    }

    std::optional<BFormulaSearchResult> products(const BoolFunction& fn, int level, const std::vector<int>& parts,
                                                 int pos, std::vector<int>& pick, const TruthTable& target,
                                                 bool& changed) {
        const int a = fn.arity();
        if (pos == a) {
            if (--budget_ < 0) throw ResourceError("oracle: B-formula search exceeds step cap");
            std::vector<const TruthTable*> args;
            std::vector<BFormula> children;
            for (int j = 0; j < a; ++j) args.push_back(&entries_[pick[j]].table);
            auto t = apply_function(fn, args, static_cast<int>(vars_.size()));
            if (index_.count(t)) return std::nullopt;
            for (int j = 0; j < a; ++j) children.push_back(entries_[pick[j]].formula);
            changed = true;
            return add(level, std::move(t), BFormula::apply(fn.name(), std::move(children)), target);
        }
        // Entries appended during this round are seen in the next one.
        const std::size_t count = levels_[parts[pos]].size();
        for (std::size_t i = 0; i < count; ++i) {
            pick[pos] = levels_[parts[pos]][i];
            if (auto hit = products(fn, level, parts, pos + 1, pick, target, changed)) return hit;
        }
        return std::nullopt;
    }

    const Basis& basis_;
    std::vector<std::string> vars_;
    SizeMeasure measure_;
    long long budget_;
    std::vector<Entry> entries_;
    std::vector<std::vector<int>> levels_;
    std::unordered_map<TruthTable, int, TruthTableHash> index_;
};

}  // namespace

std::optional<BFormulaSearchResult> brute_min_bformula(const Basis& basis, const BFormula& phi, SizeMeasure measure,
                                                       int bound, const OracleLimits& limits) {
    if (measure == SizeMeasure::Clauses) throw ModelError("B-formulas are measured in literals or gates");
    if (bound > limits.max_bformula_size)
        throw ResourceError("oracle: size bound " + std::to_string(bound) + " exceeds cap " +
                            std::to_string(limits.max_bformula_size));
    auto vars = phi.variables();
    if (vars.empty()) vars.push_back("z");
    if (static_cast<int>(vars.size()) > limits.max_vars + 8)
        throw ResourceError("oracle: too many variables for B-formula search");
    const auto target = truth_table(phi, basis, vars);
    BFormulaSearch search(basis, vars, measure, limits);
    return search.run(target, bound);
}

// ---- classes and relation enumeration ------------------------------------

std::string to_string(SchaeferClass c) {
    switch (c) {
        case SchaeferClass::Affine: return "affine";
        case SchaeferClass::Bijunctive: return "bijunctive";
        case SchaeferClass::Horn: return "horn";
        case SchaeferClass::DualHorn: return "dualHorn";
        case SchaeferClass::IhsbPlus: return "ihsbPlus";
        case SchaeferClass::IhsbMinus: return "ihsbMinus";
    }
    return "?";
}

ConstraintLanguage base_language(SchaeferClass c, int arity) {
    std::vector<Relation> rs;
    auto pred = [&](std::string name, int k, auto f) { rs.push_back(Relation::from_predicate(std::move(name), k, f)); };
    auto ones = [](std::uint32_t t) { return std::popcount(t); };
    switch (c) {
        case SchaeferClass::Affine:
            for (int m = 1; m <= arity; ++m)
                for (int parity = 0; parity <= 1; ++parity)
                    pred("xor" + std::to_string(m) + "_" + std::to_string(parity), m,
                         [&](std::uint32_t t) { return (ones(t) & 1) == parity; });
            break;
        case SchaeferClass::Bijunctive:
            pred("pos", 1, [](std::uint32_t t) { return t == 1; });
            pred("neg", 1, [](std::uint32_t t) { return t == 0; });
            for (std::uint32_t mask = 1; mask < 16; ++mask)
                pred("bin" + std::to_string(mask), 2, [mask](std::uint32_t t) { return (mask >> t) & 1; });
            break;
        case SchaeferClass::Horn:
            pred("pos", 1, [](std::uint32_t t) { return t == 1; });
            for (int m = 1; m <= arity; ++m)
                pred("nand" + std::to_string(m), m, [m](std::uint32_t t) { return t != (std::uint32_t{1} << m) - 1; });
            for (int k = 1; k + 1 <= arity; ++k)
                pred("horn" + std::to_string(k), k + 1, [k](std::uint32_t t) {
                    const std::uint32_t body = ((std::uint32_t{1} << (k + 1)) - 1) & ~std::uint32_t{1};
                    return (t & body) != body || (t & 1U);
                });
            break;
        case SchaeferClass::IhsbPlus:
            pred("pos", 1, [](std::uint32_t t) { return t == 1; });
            pred("neg", 1, [](std::uint32_t t) { return t == 0; });
            pred("imp", 2, [](std::uint32_t t) { return t != 0b10; });
            for (int m = 2; m <= arity; ++m)
                pred("or" + std::to_string(m), m, [](std::uint32_t t) { return t != 0; });
            break;
        case SchaeferClass::DualHorn: return dualize(base_language(SchaeferClass::Horn, arity));
        case SchaeferClass::IhsbMinus: return dualize(base_language(SchaeferClass::IhsbPlus, arity));
    }
    return ConstraintLanguage(std::move(rs));
}

namespace {

// Distinct tables of every clause over n variables that omits at least one
// variable, computed once per arity.
const std::vector<TruthTable>& partial_clause_tables(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<TruthTable>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<TruthTable> var_tables;
    for (int j = 0; j < n; ++j) var_tables.push_back(TruthTable::variable(n, j));
    std::unordered_set<TruthTable, TruthTableHash> seen;
    std::vector<TruthTable> out;
    for (int a = 1; a < n; ++a) {
        for (const auto& s : all_relations(a)) {
            std::vector<int> vars(a, 0);
            std::vector<const TruthTable*> args(a);
            for (;;) {
                for (int j = 0; j < a; ++j) args[j] = &var_tables[vars[j]];
                auto t = apply_relation(s, args, n);
                if (!t.is_ones() && seen.insert(t).second) out.push_back(std::move(t));
                int j = a - 1;
                while (j >= 0 && ++vars[j] == n) vars[j--] = 0;
                if (j < 0) break;
            }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace

bool brute_reducible(const Relation& r, const OracleLimits& limits) {
    const int n = r.arity();
    if (n > limits.max_relation_arity)
        throw ResourceError("oracle: relation arity exceeds cap " + std::to_string(limits.max_relation_arity));
    const auto target = relation_as_table(r);
    TruthTable all(n, true);
    for (const auto& t : partial_clause_tables(n))
        if (target.subset_of(t)) all &= t;
    return all == target;
}

std::vector<Relation> all_relations(int arity) {
    if (arity < 1 || arity > 4) throw ResourceError("relation enumeration supports arity 1 to 4");
    const std::uint32_t rows = std::uint32_t{1} << arity;
    const std::uint64_t count = std::uint64_t{1} << rows;
    std::vector<Relation> out;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        std::vector<std::uint32_t> tuples;
        for (std::uint32_t t = 0; t < rows; ++t)
            if ((mask >> t) & 1) tuples.push_back(t);
        out.emplace_back("r" + std::to_string(arity) + "_" + std::to_string(mask), arity, std::move(tuples));
    }
    return out;
}

}  // namespace mee
