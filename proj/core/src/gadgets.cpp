#include "mee/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "mee/errors.hpp"

namespace mee {

int max_vars_within_gates(const Basis& basis, int k) {
    const int m = basis.max_arity();
    if (m <= 1) return 1;
    return 1 + k * (m - 1);
}

MeeInstance reduce_unsat_to_mee_post(const Basis& basis, const BFormula& psi_unsat, const BFormula& phi,
                                     SizeMeasure measure, const Limits& limits) {
    if (measure == SizeMeasure::Clauses) throw ModelError("B-formulas are measured in literals or gates");
    if (satisfiable(PostFormula{basis, psi_unsat}, limits))
        throw ModelError("the reference formula must be unsatisfiable");
    const int k = size_of(psi_unsat, measure);
    const int weight = measure == SizeMeasure::Literals ? k : max_vars_within_gates(basis, k);

    const auto vars = phi.variables();
    const int n = static_cast<int>(vars.size());
    std::vector<bool> bits(n, false);
    long long visited = 0;
    const long long cap = 1LL << limits.max_vars;
    // Assignments with at most `weight` ones, in lexicographic order of the
    // set positions.
    std::function<bool(int, int)> scan = [&](int from, int left) {
        if (++visited > cap) throw ResourceError("weight scan exceeds the enumeration cap");
        if (eval(phi, basis, Assignment(bits))) return true;
        if (left == 0) return false;
        for (int i = from; i < n; ++i) {
            bits[i] = true;
            const bool hit = scan(i + 1, left - 1);
            bits[i] = false;
            if (hit) return true;
        }
        return false;
    };

    MeeInstance out;
    out.formula = PostFormula{basis, phi};
    out.measure = measure;
    if (scan(0, weight)) {
        out.fixed_negative = true;
        out.bound = 0;
    } else {
        out.bound = k;
    }
    return out;
}

namespace {

BFormula instantiate(const BFormula& tmpl, const std::map<std::string, BFormula>& args) {
    return tmpl.substitute([&](const std::string& v) -> std::optional<BFormula> {
        if (auto it = args.find(v); it != args.end()) return it->second;
        return std::nullopt;
    });
}

void check_template(const Basis& basis, const BFormula& tmpl, const std::vector<std::string>& order,
                    const std::function<bool(std::uint64_t)>& expected, const std::string& what) {
    for (const auto& v : tmpl.variables())
        if (std::find(order.begin(), order.end(), v) == order.end())
            throw ModelError(what + " template uses variable " + v + " outside its parameters");
    const auto table = truth_table(tmpl, basis, order);
    for (std::uint64_t row = 0; row < table.num_rows(); ++row) {
        const bool want = expected(row);
        if (table.get(row) != want) throw ModelError(what + " template does not match its contract");
    }
}

std::vector<std::string> fresh_zs(int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back("z" + std::to_string(i));
    return out;
}

void check_fresh(const std::vector<const BFormula*>& hs, const std::vector<std::string>& fresh) {
    for (const auto* h : hs)
        for (const auto& v : h->variables())
            if (std::find(fresh.begin(), fresh.end(), v) != fresh.end())
                throw ModelError("variable " + v + " is reserved for the gadget");
}

BFormula balanced(const std::vector<BFormula>& items, std::size_t lo, std::size_t hi,
                  const std::function<BFormula(BFormula, BFormula)>& join) {
    if (hi - lo == 1) return items[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return join(balanced(items, lo, mid, join), balanced(items, mid, hi, join));
}

}  // namespace

Gadget build_and_or_gadget(const Basis& basis, const BFormula& f_and, const BFormula& f_or, const BFormula& h1,
                           const BFormula& h2, SizeMeasure measure) {
    if (measure == SizeMeasure::Clauses) throw ModelError("B-formulas are measured in literals or gates");
    check_template(basis, f_and, {"x", "y"}, [](std::uint64_t r) { return r == 3; }, "and");
    // Rows over (x, y, t); only t = 1 is constrained.
    const auto or_table = truth_table(f_or, basis, {"x", "y", "t"});
    for (const auto& v : f_or.variables())
        if (v != "x" && v != "y" && v != "t") throw ModelError("or template uses variable " + v + " outside its parameters");
    for (std::uint64_t xy = 0; xy < 4; ++xy)
        if (or_table.get(xy * 2 + 1) != (xy != 0)) throw ModelError("or template does not match its contract");

    const auto AND = [&](BFormula a, BFormula b) { return instantiate(f_and, {{"x", a}, {"y", b}}); };
    const BFormula t = BFormula::var("t");
    const auto OR = [&](BFormula a, BFormula b) { return instantiate(f_or, {{"x", a}, {"y", b}, {"t", t}}); };

    Gadget g;
    g.l = size_of(AND(h1, t), measure);
    const int count = measure == SizeMeasure::Gates ? basis.max_arity() * g.l : g.l;
    auto zs = fresh_zs(count);
    auto reserved = zs;
    reserved.push_back("t");
    check_fresh({&h1, &h2}, reserved);

    std::vector<BFormula> leaves;
    for (const auto& z : zs) leaves.push_back(BFormula::var(z));
    const BFormula Z = balanced(leaves, 0, leaves.size(), AND);
    g.formula = AND(OR(AND(h1, h2), AND(OR(h1, h2), Z)), t);
    return g;
}

Gadget build_maj_gadget(const Basis& basis, const BFormula& f_maj, const BFormula& h1, const BFormula& h2,
                        SizeMeasure measure) {
    if (measure == SizeMeasure::Clauses) throw ModelError("B-formulas are measured in literals or gates");
    check_template(basis, f_maj, {"x", "y", "z"},
                   [](std::uint64_t r) { return std::popcount(r) >= 2; }, "majority");

    const BFormula t = BFormula::var("t"), f = BFormula::var("f");
    const auto V = [&](BFormula a, BFormula b) { return instantiate(f_maj, {{"x", a}, {"y", b}, {"z", t}}); };
    const auto E = [&](BFormula a, BFormula b) { return instantiate(f_maj, {{"x", a}, {"y", b}, {"z", f}}); };

    Gadget g;
    g.l = size_of(V(f, E(h1, h2)), measure);
    const int count = measure == SizeMeasure::Gates ? basis.max_arity() * g.l : g.l + 1;
    auto zs = fresh_zs(count);
    auto reserved = zs;
    reserved.push_back("t");
    reserved.push_back("f");
    check_fresh({&h1, &h2}, reserved);

    std::vector<BFormula> leaves;
    for (const auto& z : zs) leaves.push_back(BFormula::var(z));
    const BFormula estar = balanced(leaves, 0, leaves.size(), E);
    g.formula = V(V(f, E(h1, h2)), E(E(t, V(h1, h2)), estar));
    return g;
}

MeeInstance reduce_unsat_to_mee_cnf(const ConstraintLanguage& lang, const CnfFormula& phi,
                                    const OracleLimits& limits) {
    const auto unsat = min_unsat_formula(lang, limits.max_unsat_clauses, limits);
    if (!unsat) throw ModelError("the language has no unsatisfiable formula; the reduction is undefined");
    const int k = unsat->num_clauses();
    const int n = phi.num_vars();
    if (n > limits.max_vars) throw ResourceError("formula exceeds the variable cap");
    const auto phi_table = truth_table(phi);

    std::vector<Clause> cands;
    for (std::size_t r = 0; r < lang.size() && n > 0; ++r) {
        const int a = lang[r].arity();
        std::vector<int> vars(a, 0);
        for (;;) {
            cands.push_back(Clause{static_cast<int>(r), vars});
            int i = a - 1;
            while (i >= 0 && vars[i] == n - 1) vars[i--] = 0;
            if (i < 0) break;
            ++vars[i];
        }
    }

    long long work = 0;
    std::vector<int> pick;
    // True when some solution of the picked clauses, zero elsewhere,
    // satisfies phi.
    auto hit = [&]() {
        std::vector<int> support;
        for (int i : pick)
            for (int v : cands[i].vars) support.push_back(v);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        const int s = static_cast<int>(support.size());
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits) {
            std::vector<bool> val(n, false);
            for (int j = 0; j < s; ++j) val[support[j]] = (bits >> j) & 1;
            bool ok = true;
            for (int i : pick) {
                const auto& c = cands[i];
                const int a = static_cast<int>(c.vars.size());
                std::uint32_t tuple = 0;
                for (int p = 0; p < a; ++p) tuple = (tuple << 1) | (val[c.vars[p]] ? 1U : 0U);
                if (!lang[c.relation].contains(tuple)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::uint64_t row = 0;
            for (int v = 0; v < n; ++v) row = (row << 1) | (val[v] ? 1 : 0);
            if (phi_table.get(row)) return true;
        }
        return false;
    };
    std::function<bool(std::size_t, int)> search = [&](std::size_t from, int left) {
        if (++work > limits.max_candidates) throw ResourceError("formula enumeration exceeds the candidate cap");
        if (hit()) return true;
        if (left == 0) return false;
        for (std::size_t i = from; i < cands.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            const bool found = search(i + 1, left - 1);
            pick.pop_back();
            if (found) return true;
        }
        return false;
    };

    MeeInstance out;
    out.formula = phi;
    out.measure = SizeMeasure::Clauses;
    if (search(0, k)) {
        out.fixed_negative = true;
        out.bound = 0;
    } else {
        out.bound = k;
    }
    return out;
}

ConstraintLanguage horn3_language() {
    return ConstraintLanguage({Relation("horn3", 3, {0, 1, 2, 3, 4, 5, 7})});
}

CnfFormula pure_horn_dnf_to_cnf(const Dnf& dnf) {
    std::vector<std::string> names;
    std::map<std::string, int> ids;
    auto id = [&](const std::string& v) {
        auto [it, inserted] = ids.emplace(v, static_cast<int>(names.size()));
        if (inserted) names.push_back(v);
        return it->second;
    };
    std::vector<Clause> clauses;
    for (const auto& term : dnf) {
        if (term.size() < 2 || term.size() > 3) throw ModelError("pure Horn terms have two or three literals");
        std::vector<int> body;
        int head = -1, negatives = 0;
        for (const auto& lit : term) {
            if (lit.positive) {
                body.push_back(id(lit.var));
            } else {
                head = id(lit.var);
                ++negatives;
            }
        }
        if (negatives != 1) throw ModelError("pure Horn terms have exactly one negative literal");
        if (body.size() == 1) body.push_back(body[0]);
        clauses.push_back(Clause{0, {body[0], body[1], head}});
    }
    return CnfFormula(horn3_language(), std::move(names), std::move(clauses));
}

}  // namespace mee
