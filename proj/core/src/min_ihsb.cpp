#include "mee/min_ihsb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mee/errors.hpp"

namespace mee {

namespace {

enum class Shape { Pos, Neg, Imp, ImpRev, Eq, Or };

std::optional<Shape> shape_of(const Relation& r) {
    const int k = r.arity();
    const auto& ts = r.tuples();
    if (k == 1) {
        if (ts.size() != 1) return std::nullopt;
        return ts[0] == 1 ? Shape::Pos : Shape::Neg;
    }
    if (k == 2) {
        const std::vector<std::uint32_t> imp{0, 1, 3}, imp_rev{0, 2, 3}, eq{0, 3};
        if (ts == imp) return Shape::Imp;
        if (ts == imp_rev) return Shape::ImpRev;
        if (ts == eq) return Shape::Eq;
    }
    if (ts.size() + 1 == (std::size_t{1} << k) && !r.contains(0)) return Shape::Or;
    return std::nullopt;
}

Shape checked_shape(const Relation& r) {
    if (auto s = shape_of(r)) return *s;
    throw ClassificationError("relation " + r.name() + " is not a permutation of x, !x, ->, = or OR");
}

void add_or(BaseFormula& f, std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() == 1)
        f.pos.insert(vars[0]);
    else
        f.ors.insert(std::move(vars));
}

void add_imp(BaseFormula& f, int u, int v) {
    if (u != v) f.imps.insert({u, v});
}

void add_eq(BaseFormula& f, int u, int v) {
    if (u != v) f.eqs.insert({std::min(u, v), std::max(u, v)});
}

using Reach = std::vector<std::vector<char>>;

Reach compute_reach(const BaseFormula& f) {
    const int n = f.num_vars;
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : f.imps) adj[u].push_back(v);
    for (auto [u, v] : f.eqs) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    Reach reach(n, std::vector<char>(n, 0));
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
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

std::vector<int> eq_representatives(const BaseFormula& f) {
    std::vector<int> parent(f.num_vars);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : f.eqs) {
        int a = find(u), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> rep(f.num_vars);
    for (int x = 0; x < f.num_vars; ++x) rep[x] = find(x);
    return rep;
}

class Minimizer {
public:
    explicit Minimizer(BaseFormula f) : f_(std::move(f)) {}

    BaseFormula run(int* passes_out) {
        const long long total = f_.clause_count() + f_.num_vars;
        const long long cap = std::max<long long>(total * total, 16);
        int passes = 0;
        for (;;) {
            ++passes;
            if (passes > cap) throw std::logic_error("fixpoint iteration cap exceeded");
            rep_ = eq_representatives(f_);
            reach_ = compute_reach(f_);
            if (collapse_equalities() || subsume_ors() || introduce_literals() || propagate_positive() ||
                propagate_negative() || drop_negative_disjuncts() || reduce_within_clauses() || collapse_cycles() ||
                remove_tautologies() || reduce_locally())
                continue;
            break;
        }
        if (passes_out) *passes_out = passes;
        return f_;
    }

private:
    bool leads(int u, int v) const { return reach_[u][v] != 0; }

    // Every disjunct of a leads to some disjunct of b.
    bool implies(const std::vector<int>& a, const std::vector<int>& b) const {
        for (int x : a)
            if (std::none_of(b.begin(), b.end(), [&](int y) { return leads(x, y); })) return false;
        return true;
    }

    bool collapse_equalities() {
        BaseFormula g;
        g.num_vars = f_.num_vars;
        g.eqs = f_.eqs;
        for (const auto& c : f_.ors) {
            std::vector<int> vs;
            for (int x : c) vs.push_back(rep_[x]);
            add_or(g, std::move(vs));
        }
        for (auto [u, v] : f_.imps) add_imp(g, rep_[u], rep_[v]);
        for (int x : f_.pos) g.pos.insert(rep_[x]);
        for (int x : f_.neg) g.neg.insert(rep_[x]);
        if (g == f_) return false;
        f_ = std::move(g);
        return true;
    }

    bool subsume_ors() {
        for (const auto& c2 : f_.ors) {
            for (int p : f_.pos)
                if (implies({p}, c2)) {
                    auto victim = c2;
                    f_.ors.erase(victim);
                    return true;
                }
            for (const auto& c1 : f_.ors) {
                if (c1 == c2 || !implies(c1, c2)) continue;
                auto victim = implies(c2, c1) ? std::min(c1, c2) : c2;
                f_.ors.erase(victim);
                return true;
            }
        }
        return false;
    }

    bool introduce_literals() {
        for (const auto& c : f_.ors) {
            for (int v = 0; v < f_.num_vars; ++v) {
                if (rep_[v] != v) continue;
                if (!std::all_of(c.begin(), c.end(), [&](int x) { return leads(x, v); })) continue;
                bool changed = f_.pos.insert(v).second;
                for (auto it = f_.imps.begin(); it != f_.imps.end();) {
                    if (it->second == v) {
                        it = f_.imps.erase(it);
                        changed = true;
                    } else {
                        ++it;
                    }
                }
                if (!changed) {
                    auto victim = c;
                    f_.ors.erase(victim);
                }
                return true;
            }
        }
        return false;
    }

    bool propagate_positive() {
        std::vector<char> entailed(f_.num_vars, 0);
        for (int p : f_.pos)
            for (int y = 0; y < f_.num_vars; ++y)
                if (leads(p, y)) entailed[y] = 1;
        bool changed = false;
        for (auto it = f_.imps.begin(); it != f_.imps.end();) {
            if (entailed[it->first]) {
                f_.pos.insert(it->second);
                it = f_.imps.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        for (auto it = f_.eqs.begin(); it != f_.eqs.end();) {
            if (entailed[it->first] || entailed[it->second]) {
                f_.pos.insert(it->first);
                f_.pos.insert(it->second);
                it = f_.eqs.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        return changed;
    }

    std::vector<char> leading_to_negative() const {
        std::vector<char> out(f_.num_vars, 0);
        for (int z : f_.neg)
            for (int x = 0; x < f_.num_vars; ++x)
                if (leads(x, z)) out[x] = 1;
        return out;
    }

    bool propagate_negative() {
        const auto refuted = leading_to_negative();
        bool changed = false;
        for (auto it = f_.imps.begin(); it != f_.imps.end();) {
            if (refuted[it->second]) {
                f_.neg.insert(it->first);
                it = f_.imps.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        for (auto it = f_.eqs.begin(); it != f_.eqs.end();) {
            if (refuted[it->first] || refuted[it->second]) {
                f_.neg.insert(it->first);
                f_.neg.insert(it->second);
                it = f_.eqs.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        return changed;
    }

    bool drop_negative_disjuncts() {
        const auto refuted = leading_to_negative();
        for (const auto& c : f_.ors) {
            std::vector<int> kept;
            for (int x : c)
                if (!refuted[x]) kept.push_back(x);
            if (kept.size() == c.size()) continue;
            if (kept.empty()) throw std::logic_error("unsatisfiable formula reached the minimizer");
            auto old = c;
            f_.ors.erase(old);
            add_or(f_, std::move(kept));
            return true;
        }
        return false;
    }

    bool reduce_within_clauses() {
        for (const auto& c : f_.ors) {
            for (int xi : c)
                for (int xj : c) {
                    if (xi == xj || !leads(xi, xj)) continue;
                    std::vector<int> kept;
                    for (int x : c)
                        if (x != xi) kept.push_back(x);
                    auto old = c;
                    f_.ors.erase(old);
                    add_or(f_, std::move(kept));
                    return true;
                }
        }
        return false;
    }

    bool collapse_cycles() {
        bool changed = false;
        for (auto it = f_.imps.begin(); it != f_.imps.end();) {
            auto [u, v] = *it;
            if (leads(v, u)) {
                add_eq(f_, u, v);
                it = f_.imps.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        return changed;
    }

    bool remove_tautologies() {
        bool changed = false;
        for (auto it = f_.imps.begin(); it != f_.imps.end();) {
            if (f_.pos.count(it->second) || f_.neg.count(it->first)) {
                it = f_.imps.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        return changed;
    }

    bool reduce_locally() {
        std::set<std::pair<int, int>> chain;
        std::vector<int> last(f_.num_vars, -1);
        for (int x = 0; x < f_.num_vars; ++x) {
            int r = rep_[x];
            if (r == x) {
                last[r] = x;
                continue;
            }
            chain.insert({last[r], x});
            last[r] = x;
        }
        std::set<std::pair<int, int>> reduced;
        for (auto [u, w] : f_.imps) {
            bool redundant = false;
            for (auto [a, x] : f_.imps) {
                if (a != u || x == w) continue;
                if (leads(x, w)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) reduced.insert({u, w});
        }
        if (chain == f_.eqs && reduced == f_.imps) return false;
        f_.eqs = std::move(chain);
        f_.imps = std::move(reduced);
        return true;
    }

    BaseFormula f_;
    std::vector<int> rep_;
    Reach reach_;
};

}  // namespace

IhsbVocabulary ihsb_vocabulary(const ConstraintLanguage& lang) {
    IhsbVocabulary v;
    for (std::size_t i = 0; i < lang.size(); ++i) {
        const int id = static_cast<int>(i);
        switch (checked_shape(lang[i])) {
            case Shape::Pos:
                if (!v.pos) v.pos = id;
                break;
            case Shape::Neg:
                if (!v.neg) v.neg = id;
                break;
            case Shape::Eq:
                if (!v.eq) v.eq = id;
                break;
            case Shape::Imp:
            case Shape::ImpRev:
                if (!v.imp) {
                    v.imp = id;
                    v.imp_reversed = checked_shape(lang[i]) == Shape::ImpRev;
                }
                break;
            case Shape::Or: v.ors.emplace(lang[i].arity(), id); break;
        }
    }
    return v;
}

BaseFormula normalize_to_base(const CnfFormula& f) {
    BaseFormula b;
    b.num_vars = f.num_vars();
    for (const auto& c : f.clauses()) {
        const auto& vs = c.vars;
        switch (checked_shape(f.relation_of(c))) {
            case Shape::Pos: b.pos.insert(vs[0]); break;
            case Shape::Neg: b.neg.insert(vs[0]); break;
            case Shape::Imp: add_imp(b, vs[0], vs[1]); break;
            case Shape::ImpRev: add_imp(b, vs[1], vs[0]); break;
            case Shape::Eq: add_eq(b, vs[0], vs[1]); break;
            case Shape::Or: add_or(b, vs); break;
        }
    }
    return b;
}

bool leadsto(const BaseFormula& f, int u, int v) { return compute_reach(f)[u][v] != 0; }

bool unsat_check_ihsb(const BaseFormula& f) {
    const auto reach = compute_reach(f);
    auto refuted = [&](int x) {
        return std::any_of(f.neg.begin(), f.neg.end(), [&](int z) { return reach[x][z] != 0; });
    };
    for (int p : f.pos)
        if (refuted(p)) return true;
    for (const auto& c : f.ors)
        if (std::all_of(c.begin(), c.end(), refuted)) return true;
    return false;
}

BaseFormula min_ihsb(const BaseFormula& f, int* passes) { return Minimizer(f).run(passes); }

CnfFormula restrict_vocabulary(const BaseFormula& f, const ConstraintLanguage& lang,
                               const std::vector<std::string>& variables) {
    const auto v = ihsb_vocabulary(lang);
    std::vector<Clause> out;
    auto emit_imp = [&](int a, int b) {
        if (!v.imp) throw VocabularyError("language has no implication relation");
        out.push_back(v.imp_reversed ? Clause{*v.imp, {b, a}} : Clause{*v.imp, {a, b}});
    };
    auto emit_or = [&](std::vector<int> vars) {
        auto it = v.ors.lower_bound(static_cast<int>(vars.size()));
        if (it == v.ors.end())
            throw VocabularyError("language has no OR relation of arity >= " + std::to_string(vars.size()));
        while (static_cast<int>(vars.size()) < it->first) vars.push_back(vars.back());
        out.push_back(Clause{it->second, std::move(vars)});
    };
    for (int x : f.pos) {
        if (v.pos)
            out.push_back(Clause{*v.pos, {x}});
        else
            emit_or({x});
    }
    for (int x : f.neg) {
        if (!v.neg) throw VocabularyError("language has no negative literal relation");
        out.push_back(Clause{*v.neg, {x}});
    }
    if (v.eq) {
        for (auto [a, b] : f.eqs) out.push_back(Clause{*v.eq, {a, b}});
    } else {
        const auto rep = eq_representatives(f);
        std::map<int, std::vector<int>> classes;
        for (int x = 0; x < f.num_vars; ++x) classes[rep[x]].push_back(x);
        for (const auto& [r, members] : classes) {
            const auto k = members.size();
            if (k < 2) continue;
            if (k == 2) {
                emit_imp(members[0], members[1]);
                emit_imp(members[1], members[0]);
                continue;
            }
            for (std::size_t i = 0; i < k; ++i) emit_imp(members[i], members[(i + 1) % k]);
        }
    }
    for (auto [a, b] : f.imps) emit_imp(a, b);
    for (const auto& c : f.ors) emit_or(c);
    return CnfFormula(lang, variables, std::move(out));
}

CnfFormula minimize_ihsb_plus(const CnfFormula& f, MinimizeStats* stats) {
    auto base = normalize_to_base(f);
    MinimizeStats st;
    st.algorithm = "ihsb+";
    st.input_clauses = f.num_clauses();
    CnfFormula out;
    if (unsat_check_ihsb(base)) {
        out = min_unsat_for(f);
        st.unsatisfiable = true;
    } else {
        out = restrict_vocabulary(min_ihsb(base, &st.passes), f.language(), f.variables());
    }
    st.output_clauses = out.num_clauses();
    if (stats) *stats = st;
    return out;
}

CnfFormula minimize_ihsb_minus(const CnfFormula& f, MinimizeStats* stats) {
    auto out = dualize(minimize_ihsb_plus(dualize(f), stats));
    if (stats) stats->algorithm = "ihsb-";
    return out;
}

}  // namespace mee
