#include "mee/min_post.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "mee/errors.hpp"

namespace mee {

FuncTuple tuple_compose(const FuncTuple& t1, const FuncTuple& t2, bool relevant, BasisVerdict cls) {
    if (cls != BasisVerdict::POr && cls != BasisVerdict::PXor)
        throw ModelError("tuple composition needs the OR or XOR class");
    FuncTuple out;
    out.n = t1.n + t2.n - 1;
    out.g = t1.g + t2.g;
    if (relevant) {
        if (t1.l < 1) throw ModelError("no relevant argument to substitute");
        out.c = cls == BasisVerdict::POr ? (t1.c | t2.c) : (t1.c ^ t2.c);
        out.l = t1.l + t2.l - 1;
    } else {
        if (t1.l >= t1.n) throw ModelError("no irrelevant argument to substitute");
        out.c = t1.c;
        out.l = t1.l;
    }
    if (cls == BasisVerdict::POr && out.c == 1) out.l = 0;
    return out;
}

FuncTuple tuple_identify(const FuncTuple& t, BasisVerdict cls) {
    if (t.l < 2) throw ModelError("identification needs two relevant leaves");
    FuncTuple out = t;
    if (cls == BasisVerdict::POr)
        out.l -= 1;
    else if (cls == BasisVerdict::PXor)
        out.l -= 2;
    else
        throw ModelError("identification needs the OR or XOR class");
    return out;
}

RelevanceSummary relevant_variables(const BFormula& phi, const Basis& basis) {
    const auto vars = phi.variables();
    RelevanceSummary out;
    std::vector<bool> bits(vars.size(), false);
    out.c = eval(phi, basis, Assignment(bits));
    for (std::size_t i = 0; i < vars.size(); ++i) {
        bits[i] = true;
        const bool v = eval(phi, basis, Assignment(bits));
        bits[i] = false;
        (v != out.c ? out.relevant : out.irrelevant).push_back(vars[i]);
    }
    return out;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Derivation {
    int fn = -1;  // -1: variable leaf
    std::vector<int> children;
};

class PostDp {
public:
    PostDp(const Basis& basis, bool xor_class, int bound) : basis_(basis), xor_(xor_class), N_(bound) {
        const int cells = 2 * (N_ + 1) * (N_ + 1);
        g_.assign(cells, kInf);
        deriv_.assign(cells, {});
        for (const auto& f : basis.functions()) shapes_.push_back(function_shape(f));
        g_[index(0, 1, 1)] = 0;
    }

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t fi = 0; fi < basis_.size(); ++fi) changed |= apply(static_cast<int>(fi));
        }
    }

    int index(int c, int l, int n) const { return (c * (N_ + 1) + l) * (N_ + 1) + n; }
    std::tuple<int, int, int> unpack(int idx) const {
        const int n = idx % (N_ + 1);
        const int l = (idx / (N_ + 1)) % (N_ + 1);
        return {idx / ((N_ + 1) * (N_ + 1)), l, n};
    }
    int gates(int idx) const { return g_[idx]; }
    int bound() const { return N_; }
    const Derivation& derivation(int idx) const { return deriv_[idx]; }
    const FunctionShape& shape(int fn) const { return shapes_[fn]; }
    bool relevant_position(int fn, int pos) const {
        const auto& r = shapes_[fn].relevant;
        return std::find(r.begin(), r.end(), pos) != r.end();
    }

private:
    struct Partial {
        int g = kInf;
        std::vector<int> children;
    };

    bool apply(int fi) {
        const auto& f = basis_[fi];
        const auto& sh = shapes_[fi];
        std::map<std::tuple<int, int, int>, Partial> states;
        states[{sh.constant ? 1 : 0, 0, 0}] = Partial{1, {}};
        for (int pos = 0; pos < f.arity(); ++pos) {
            const bool rel = relevant_position(fi, pos);
            std::map<std::tuple<int, int, int>, Partial> next;
            for (const auto& [key, st] : states) {
                auto [c, l, n] = key;
                for (int idx = 0; idx < static_cast<int>(g_.size()); ++idx) {
                    if (g_[idx] >= kInf) continue;
                    auto [tc, tl, tn] = unpack(idx);
                    if (n + tn > N_) continue;
                    std::tuple<int, int, int> k2{c, l, n + tn};
                    if (rel) k2 = {xor_ ? (c ^ tc) : (c | tc), l + tl, n + tn};
                    const int g = st.g + g_[idx];
                    auto& slot = next[k2];
                    if (g < slot.g) {
                        slot.g = g;
                        slot.children = st.children;
                        slot.children.push_back(idx);
                    }
                }
            }
            states = std::move(next);
        }
        bool changed = false;
        for (auto& [key, st] : states) {
            auto [c, l, n] = key;
            if (!xor_ && c == 1) l = 0;
            const int idx = index(c, l, n);
            if (st.g < g_[idx]) {
                g_[idx] = st.g;
                deriv_[idx] = Derivation{fi, std::move(st.children)};
                changed = true;
            }
        }
        return changed;
    }

    const Basis& basis_;
    bool xor_;
    int N_;
    std::vector<FunctionShape> shapes_;
    std::vector<int> g_;
    std::vector<Derivation> deriv_;
};

struct Builder {
    const PostDp& dp;
    const Basis& basis;
    bool xor_class;
    std::vector<bool> leaf_relevant;

    BFormula build(int idx, bool relevant) {
        const auto& d = dp.derivation(idx);
        if (d.fn < 0) {
            leaf_relevant.push_back(relevant);
            return BFormula::var("#" + std::to_string(leaf_relevant.size() - 1));
        }
        auto [c, l, n] = dp.unpack(idx);
        if (!xor_class && c == 1) relevant = false;
        std::vector<BFormula> args;
        for (std::size_t i = 0; i < d.children.size(); ++i)
            args.push_back(build(d.children[i], relevant && dp.relevant_position(d.fn, static_cast<int>(i))));
        return BFormula::apply(basis[d.fn].name(), std::move(args));
    }
};

std::optional<PostResult> solve(const Basis& basis, const BFormula& phi, SizeMeasure measure, bool xor_class) {
    const auto target = relevant_variables(phi, basis);
    const int lt = static_cast<int>(target.relevant.size());
    const int ct = target.c ? 1 : 0;
    const int m = std::max(basis.max_arity(), 1);
    const int N = std::max({phi.literal_count(), m, 1 + phi.gate_count() * (m - 1)});

    PostDp dp(basis, xor_class, N);
    dp.run();

    auto matches = [&](int l) {
        if (xor_class) return l >= lt && (l - lt) % 2 == 0;
        return (l >= lt && lt >= 1) || (l == 0 && lt == 0);
    };
    int best = -1;
    std::tuple<int, int, int> best_key{kInf, kInf, kInf};
    for (int l = 0; l <= N; ++l) {
        if (!matches(l)) continue;
        for (int n = l; n <= N; ++n) {
            const int idx = dp.index(ct, l, n);
            const int g = dp.gates(idx);
            if (g >= kInf) continue;
            auto key = measure == SizeMeasure::Literals ? std::tuple{n, g, l} : std::tuple{g, n, l};
            if (key < best_key) {
                best_key = key;
                best = idx;
            }
        }
    }
    if (best < 0) return std::nullopt;

    Builder b{dp, basis, xor_class, {}};
    BFormula skeleton = b.build(best, true);

    std::string spare = !target.irrelevant.empty() ? target.irrelevant.front()
                        : !target.relevant.empty() ? target.relevant.front()
                                                   : std::string("z");
    std::vector<std::string> names(b.leaf_relevant.size(), spare);
    int seen = 0;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (!b.leaf_relevant[k]) continue;
        if (seen < lt)
            names[k] = target.relevant[seen];
        else if (!xor_class)
            names[k] = target.relevant.back();
        ++seen;
    }
    BFormula witness = skeleton.substitute([&](const std::string& v) -> std::optional<BFormula> {
        return BFormula::var(names[std::stoul(v.substr(1))]);
    });

    auto [c, l, n] = dp.unpack(best);
    PostResult out;
    out.witness = std::move(witness);
    out.tuple = FuncTuple{c, l, n, dp.gates(best)};
    out.size = measure == SizeMeasure::Literals ? n : dp.gates(best);
    return out;
}

}  // namespace

std::optional<PostResult> min_post(const Basis& basis, const BFormula& phi, SizeMeasure measure) {
    if (measure == SizeMeasure::Clauses) throw ModelError("B-formulas are measured in literals or gates");
    switch (classify_basis(basis).verdict) {
        case BasisVerdict::POr: return solve(basis, phi, measure, false);
        case BasisVerdict::PXor: return solve(basis, phi, measure, true);
        case BasisVerdict::PAnd: {
            auto r = solve(dualize(basis), dualize(phi), measure, false);
            if (r) r->witness = dualize(r->witness);
            return r;
        }
        case BasisVerdict::CoNpHard: break;
    }
    throw ClassificationError("basis is not all-OR, all-AND or all-XOR");
}

}  // namespace mee
