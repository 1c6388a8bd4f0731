#include "mee/min_bijunctive.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mee/errors.hpp"

namespace mee {

std::optional<BinaryShape> binary_shape(const Relation& r) {
    const auto& ts = r.tuples();
    using T = std::vector<std::uint32_t>;
    if (r.arity() == 1) {
        if (ts == T{1}) return BinaryShape::Pos;
        if (ts == T{0}) return BinaryShape::Neg;
        return std::nullopt;
    }
    if (r.arity() != 2) return std::nullopt;
    if (ts == T{1, 2, 3}) return BinaryShape::Or;
    if (ts == T{0, 1, 2}) return BinaryShape::Nand;
    if (ts == T{0, 1, 3}) return BinaryShape::Imp;
    if (ts == T{0, 2, 3}) return BinaryShape::ImpRev;
    if (ts == T{0, 3}) return BinaryShape::Eq;
    if (ts == T{1, 2}) return BinaryShape::Xor;
    return std::nullopt;
}

namespace {

using LitPair = std::pair<int, int>;  // disjunction l1 | l2

BinaryShape checked_binary_shape(const Relation& r) {
    if (auto s = binary_shape(r)) return *s;
    throw ClassificationError("relation " + r.name() + " is not an irreducible bijunctive template");
}

std::vector<LitPair> disjunctions(BinaryShape s, const std::vector<int>& v) {
    const int a = v[0];
    const int b = v.size() > 1 ? v[1] : v[0];
    switch (s) {
        case BinaryShape::Pos: return {{lit_of(a, true), lit_of(a, true)}};
        case BinaryShape::Neg: return {{lit_of(a, false), lit_of(a, false)}};
        case BinaryShape::Or: return {{lit_of(a, true), lit_of(b, true)}};
        case BinaryShape::Nand: return {{lit_of(a, false), lit_of(b, false)}};
        case BinaryShape::Imp: return {{lit_of(a, false), lit_of(b, true)}};
        case BinaryShape::ImpRev: return {{lit_of(a, true), lit_of(b, false)}};
        case BinaryShape::Eq: return {{lit_of(a, false), lit_of(b, true)}, {lit_of(a, true), lit_of(b, false)}};
        case BinaryShape::Xor: return {{lit_of(a, true), lit_of(b, true)}, {lit_of(a, false), lit_of(b, false)}};
    }
    return {};
}

void add_edges(const LitPair& d, std::vector<std::pair<int, int>>& out) {
    auto [l1, l2] = d;
    if (l1 == negate_lit(l2)) return;  // tautology
    out.push_back({negate_lit(l1), l2});
    if (l1 != l2) out.push_back({negate_lit(l2), l1});
}

using Matrix = std::vector<std::vector<char>>;

Matrix closure(int nodes, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : edges) adj[u].push_back(v);
    Matrix reach(nodes, std::vector<char>(nodes, 0));
    std::vector<int> stack;
    for (int s = 0; s < nodes; ++s) {
        auto& seen = reach[s];
        seen[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return reach;
}

class Emitter {
public:
    explicit Emitter(const ConstraintLanguage& lang) {
        for (std::size_t i = 0; i < lang.size(); ++i) {
            auto s = checked_binary_shape(lang[i]);
            index_.emplace(s, static_cast<int>(i));
        }
    }

    bool has(BinaryShape s) const { return index_.count(s) != 0; }

    // Clause for l1 | l2 (a unit when l1 == l2), if the language has one.
    std::optional<Clause> disjunction(int l1, int l2) const {
        if (l1 > l2) std::swap(l1, l2);
        const int a = l1 / 2, b = l2 / 2;
        const bool pa = (l1 & 1) == 0, pb = (l2 & 1) == 0;
        std::vector<Clause> options;
        auto offer = [&](BinaryShape s, std::vector<int> vars) {
            if (auto it = index_.find(s); it != index_.end()) options.push_back(Clause{it->second, std::move(vars)});
        };
        if (l1 == l2) {
            offer(pa ? BinaryShape::Pos : BinaryShape::Neg, {a});
            offer(pa ? BinaryShape::Or : BinaryShape::Nand, {a, a});
        } else if (pa && pb) {
            offer(BinaryShape::Or, {a, b});
        } else if (!pa && !pb) {
            offer(BinaryShape::Nand, {a, b});
        } else {
            const int p = pa ? a : b, q = pa ? b : a;  // p | !q, i.e. q -> p
            offer(BinaryShape::Imp, {q, p});
            offer(BinaryShape::ImpRev, {p, q});
        }
        if (options.empty()) return std::nullopt;
        return *std::min_element(options.begin(), options.end(),
                                 [](const Clause& x, const Clause& y) { return x.relation < y.relation; });
    }

    std::optional<Clause> implication(int u, int v) const { return disjunction(negate_lit(u), v); }

    std::optional<Clause> binary(BinaryShape s, int a, int b) const {
        if (auto it = index_.find(s); it != index_.end()) return Clause{it->second, {a, b}};
        return std::nullopt;
    }

private:
    std::map<BinaryShape, int> index_;
};

// Clauses making one literal class strongly connected, using the cheapest
// construction the vocabulary allows.
std::vector<Clause> connect_class(const Emitter& em, std::vector<int> pos, std::vector<int> neg) {
    std::vector<std::vector<Clause>> plans;
    const std::size_t P = pos.size(), N = neg.size();
    const bool eq = em.has(BinaryShape::Eq), xr = em.has(BinaryShape::Xor);

    auto eq_chain = [&](const std::vector<int>& vs, std::vector<Clause>& out) {
        for (std::size_t i = 1; i < vs.size(); ++i) out.push_back(*em.binary(BinaryShape::Eq, vs[i - 1], vs[i]));
    };

    if (N == 0 && eq) {
        std::vector<Clause> plan;
        eq_chain(pos, plan);
        plans.push_back(std::move(plan));
    }
    if (N > 0 && xr) {
        std::vector<Clause> plan;
        if (eq) {
            eq_chain(pos, plan);
            eq_chain(neg, plan);
            plan.push_back(*em.binary(BinaryShape::Xor, pos[0], neg[0]));
        } else {
            for (int p : pos) plan.push_back(*em.binary(BinaryShape::Xor, p, neg[0]));
            for (std::size_t j = 1; j < N; ++j) plan.push_back(*em.binary(BinaryShape::Xor, pos[0], neg[j]));
        }
        plans.push_back(std::move(plan));
    }

    // Directed cycle through all literals; same-sign steps may use equality.
    {
        std::vector<int> cycle;
        for (int p : pos) cycle.push_back(lit_of(p, true));
        for (int q : neg) cycle.push_back(lit_of(q, false));
        std::vector<Clause> plan;
        bool ok = true;
        const std::size_t k = cycle.size();
        for (std::size_t i = 0; i < k && ok; ++i) {
            const int u = cycle[i], v = cycle[(i + 1) % k];
            if (auto c = em.implication(u, v)) {
                plan.push_back(*c);
            } else if (eq && (u & 1) == (v & 1)) {
                plan.push_back(*em.binary(BinaryShape::Eq, std::min(u, v) / 2, std::max(u, v) / 2));
            } else {
                ok = false;
            }
        }
        if (ok) plans.push_back(std::move(plan));
    }

    // Alternating closed walk using only mixed-sign clauses; needs P >= N.
    if (N > 0 && P >= N) {
        std::vector<Clause> plan;
        bool ok = true;
        const std::size_t m = std::max(P, N);
        for (std::size_t i = 0; i < m && ok; ++i) {
            const int p = lit_of(pos[i % P], true), q = lit_of(neg[i % N], false);
            const int next = lit_of(pos[(i + 1) % P], true);
            auto c1 = em.implication(p, q), c2 = em.implication(q, next);
            if (!c1 || !c2) {
                ok = false;
                break;
            }
            plan.push_back(*c1);
            plan.push_back(*c2);
        }
        if (ok) plans.push_back(std::move(plan));
    }

    if (plans.empty()) throw VocabularyError("language cannot express a literal equivalence class");
    return *std::min_element(plans.begin(), plans.end(),
                             [](const auto& x, const auto& y) { return x.size() < y.size(); });
}

class ForcingSearch {
public:
    ForcingSearch(int num_lits, std::vector<std::pair<int, int>> base, std::vector<int> forced,
                  std::vector<std::pair<Clause, std::vector<std::pair<int, int>>>> cands)
        : num_lits_(num_lits), base_(std::move(base)), forced_(std::move(forced)), cands_(std::move(cands)) {}

    std::vector<Clause> run() {
        const int f = static_cast<int>(forced_.size());
        for (int d = (f + 1) / 2; d <= 2 * f + 2; ++d) {
            chosen_.clear();
            if (dfs(0, d)) {
                std::vector<Clause> out;
                for (int i : chosen_) out.push_back(cands_[i].first);
                return out;
            }
        }
        throw VocabularyError("language cannot force the required literals");
    }

private:
    bool dfs(std::size_t start, int left) {
        if (left == 0) return forces_all();
        for (std::size_t i = start; i < cands_.size(); ++i) {
            if (++steps_ > kMaxSteps) throw ResourceError("bijunctive forcing search exceeded its step budget");
            chosen_.push_back(static_cast<int>(i));
            if (dfs(i + 1, left - 1)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    bool forces_all() const {
        auto edges = base_;
        for (int i : chosen_) edges.insert(edges.end(), cands_[i].second.begin(), cands_[i].second.end());
        std::vector<std::vector<int>> adj(num_lits_);
        for (auto [u, v] : edges) adj[u].push_back(v);
        for (int l : forced_) {
            std::vector<char> seen(num_lits_, 0);
            std::vector<int> stack{negate_lit(l)};
            seen[negate_lit(l)] = 1;
            while (!stack.empty() && !seen[l]) {
                int u = stack.back();
                stack.pop_back();
                for (int v : adj[u])
                    if (!seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
            }
            if (!seen[l]) return false;
        }
        return true;
    }

    static constexpr long long kMaxSteps = 50'000'000;
    int num_lits_;
    std::vector<std::pair<int, int>> base_;
    std::vector<int> forced_;
    std::vector<std::pair<Clause, std::vector<std::pair<int, int>>>> cands_;
    std::vector<int> chosen_;
    long long steps_ = 0;
};

}  // namespace

LiteralGraph to_literal_graph(const CnfFormula& f) {
    LiteralGraph g;
    g.num_vars = f.num_vars();
    for (const auto& c : f.clauses())
        for (const auto& d : disjunctions(checked_binary_shape(f.relation_of(c)), c.vars)) add_edges(d, g.edges);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

CnfFormula min_bijunctive(const CnfFormula& f, MinimizeStats* stats) {
    const Emitter em(f.language());
    const auto graph = to_literal_graph(f);
    const int n = f.num_vars(), L = 2 * n;
    const auto reach = closure(L, graph.edges);

    MinimizeStats st;
    st.algorithm = "bijunctive";
    st.input_clauses = f.num_clauses();
    st.passes = 1;
    auto finish = [&](CnfFormula out) {
        st.output_clauses = out.num_clauses();
        if (stats) *stats = st;
        return out;
    };

    for (int v = 0; v < n; ++v)
        if (reach[2 * v][2 * v + 1] && reach[2 * v + 1][2 * v]) {
            st.unsatisfiable = true;
            return finish(min_unsat_for(f));
        }

    std::vector<char> forced(L, 0), fixed_var(n, 0);
    std::vector<int> forced_lits;
    for (int l = 0; l < L; ++l)
        if (reach[negate_lit(l)][l]) {
            forced[l] = 1;
            fixed_var[l / 2] = 1;
            forced_lits.push_back(l);
        }

    // Residual graph over unforced variables.
    std::vector<std::pair<int, int>> residual;
    for (auto [u, v] : graph.edges)
        if (!fixed_var[u / 2] && !fixed_var[v / 2]) residual.push_back({u, v});
    const auto rr = closure(L, residual);
    std::vector<int> comp(L, -1);
    for (int l = 0; l < L; ++l) {
        if (fixed_var[l / 2]) continue;
        for (int m = 0; m <= l; ++m)
            if (!fixed_var[m / 2] && rr[l][m] && rr[m][l]) {
                comp[l] = m;
                break;
            }
    }

    std::vector<Clause> out_classes, out_edges;
    std::vector<std::pair<int, int>> kept_edges;

    std::map<int, std::vector<int>> members;
    for (int l = 0; l < L; ++l)
        if (comp[l] >= 0) members[comp[l]].push_back(l);
    std::set<int> done;
    for (const auto& [rep, lits] : members) {
        if (lits.size() < 2 || done.count(rep)) continue;
        const int mirror = comp[negate_lit(rep)];
        done.insert(rep);
        done.insert(mirror);
        auto count_pos = [](const std::vector<int>& ls) {
            return std::count_if(ls.begin(), ls.end(), [](int l) { return (l & 1) == 0; });
        };
        const auto& other = members[mirror];
        const auto& side = count_pos(lits) >= count_pos(other) ? lits : other;
        std::vector<int> pos, neg;
        for (int l : side) (l & 1 ? neg : pos).push_back(l / 2);
        auto cs = connect_class(em, pos, neg);
        for (const auto& c : cs) {
            for (const auto& d : disjunctions(checked_binary_shape(f.language()[c.relation]), c.vars))
                add_edges(d, kept_edges);
            out_classes.push_back(c);
        }
    }

    // Transitive reduction of the condensation, one clause per skew pair.
    std::map<std::pair<int, int>, std::pair<int, int>> cond;
    for (auto [u, v] : residual) {
        const int a = comp[u], b = comp[v];
        if (a == b || !em.implication(u, v)) continue;
        cond.emplace(std::pair{a, b}, std::pair{u, v});
    }
    std::set<std::pair<int, int>> emitted;
    for (const auto& [ab, uv] : cond) {
        auto [a, b] = ab;
        bool redundant = false;
        for (auto it = cond.lower_bound({a, -1}); it != cond.end() && it->first.first == a; ++it) {
            const int c = it->first.second;
            if (c != b && rr[c][b]) {
                redundant = true;
                break;
            }
        }
        if (redundant || emitted.count(ab)) continue;
        auto [u, v] = uv;
        emitted.insert(ab);
        emitted.insert({comp[negate_lit(v)], comp[negate_lit(u)]});
        out_edges.push_back(*em.implication(u, v));
        kept_edges.push_back({u, v});
        kept_edges.push_back({negate_lit(v), negate_lit(u)});
    }

    std::vector<Clause> out_forced;
    bool all_units = true;
    for (int l : forced_lits) {
        auto c = em.disjunction(l, l);
        if (!c) {
            all_units = false;
            break;
        }
        out_forced.push_back(*c);
    }
    if (!all_units) {
        std::vector<std::pair<Clause, std::vector<std::pair<int, int>>>> cands;
        std::set<std::vector<std::pair<int, int>>> seen;
        for (std::size_t r = 0; r < f.language().size(); ++r) {
            const auto shape = checked_binary_shape(f.language()[r]);
            const int k = f.language()[r].arity();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < (k == 2 ? n : 1); ++b) {
                    std::vector<int> vars = k == 2 ? std::vector<int>{a, b} : std::vector<int>{a};
                    if (!fixed_var[a] && !fixed_var[vars.back()]) continue;
                    auto ds = disjunctions(shape, vars);
                    if (!std::all_of(ds.begin(), ds.end(), [&](const LitPair& d) {
                            return forced[d.first] || forced[d.second];
                        }))
                        continue;
                    std::vector<std::pair<int, int>> es;
                    for (const auto& d : ds) add_edges(d, es);
                    std::sort(es.begin(), es.end());
                    if (es.empty() || !seen.insert(es).second) continue;
                    cands.push_back({Clause{static_cast<int>(r), vars}, es});
                }
        }
        out_forced = ForcingSearch(L, kept_edges, forced_lits, std::move(cands)).run();
    }

    std::vector<Clause> out = std::move(out_forced);
    out.insert(out.end(), out_classes.begin(), out_classes.end());
    out.insert(out.end(), out_edges.begin(), out_edges.end());
    return finish(f.with_clauses(std::move(out)));
}

}  // namespace mee
