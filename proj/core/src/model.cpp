#include "mee/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "mee/errors.hpp"

namespace mee {

// ---- Assignment ----------------------------------------------------------

Assignment Assignment::from_row(int num_vars, std::uint64_t row) {
    std::vector<bool> v(static_cast<std::size_t>(num_vars));
    for (int j = 0; j < num_vars; ++j) v[j] = (row >> (num_vars - 1 - j)) & 1;
    return Assignment(std::move(v));
}

Assignment Assignment::complement() const {
    std::vector<bool> v = values_;
    v.flip();
    return Assignment(std::move(v));
}

// ---- Relation ------------------------------------------------------------

Relation::Relation(std::string name, int arity, std::vector<std::uint32_t> tuples, int max_arity)
    : name_(std::move(name)), arity_(arity) {
    if (name_.empty()) throw ModelError("relation name must not be empty");
    if (arity < 1) throw ModelError("relation " + name_ + ": arity must be at least 1");
    if (arity > max_arity || arity > 20)
        throw ModelError("relation " + name_ + ": arity " + std::to_string(arity) + " exceeds cap " +
                         std::to_string(std::min(max_arity, 20)));
    if (tuples.empty()) throw ModelError("relation " + name_ + " is empty");
    members_.assign(std::size_t{1} << arity, false);
    for (auto t : tuples) {
        if (t >= members_.size()) throw ModelError("relation " + name_ + ": tuple out of range");
        members_[t] = true;
    }
    for (std::uint32_t t = 0; t < members_.size(); ++t)
        if (members_[t]) tuples_.push_back(t);
}

Relation Relation::from_predicate(std::string name, int arity, const std::function<bool(std::uint32_t)>& member) {
    std::vector<std::uint32_t> tuples;
    for (std::uint32_t t = 0; t < (std::uint32_t{1} << arity); ++t)
        if (member(t)) tuples.push_back(t);
    return Relation(std::move(name), arity, std::move(tuples), std::max(arity, 8));
}

Relation Relation::renamed(std::string name) const {
    Relation r = *this;
    r.name_ = std::move(name);
    return r;
}

// ---- ConstraintLanguage --------------------------------------------------

ConstraintLanguage::ConstraintLanguage(std::vector<Relation> relations) : relations_(std::move(relations)) {
    std::set<std::string> seen;
    for (const auto& r : relations_)
        if (!seen.insert(r.name()).second) throw ModelError("duplicate relation name: " + r.name());
}

std::optional<int> ConstraintLanguage::find(std::string_view name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name() == name) return static_cast<int>(i);
    return std::nullopt;
}

int ConstraintLanguage::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw ModelError("unknown relation: " + std::string(name));
}

int ConstraintLanguage::max_arity() const {
    int m = 0;
    for (const auto& r : relations_) m = std::max(m, r.arity());
    return m;
}

// ---- CnfFormula ----------------------------------------------------------

CnfFormula::CnfFormula(ConstraintLanguage language, std::vector<std::string> variables, std::vector<Clause> clauses)
    : language_(std::move(language)), variables_(std::move(variables)), clauses_(std::move(clauses)) {
    std::set<std::string> seen;
    for (const auto& v : variables_) {
        if (v.empty()) throw ModelError("empty variable name");
        if (!seen.insert(v).second) throw ModelError("duplicate variable: " + v);
    }
    for (const auto& c : clauses_) {
        if (c.relation < 0 || c.relation >= static_cast<int>(language_.size()))
            throw ModelError("clause references a relation outside the language");
        const auto& r = language_[c.relation];
        if (static_cast<int>(c.vars.size()) != r.arity())
            throw ModelError("clause over " + r.name() + " has " + std::to_string(c.vars.size()) +
                             " arguments, expected " + std::to_string(r.arity()));
        for (int v : c.vars)
            if (v < 0 || v >= num_vars()) throw ModelError("clause references an unknown variable id");
    }
}

std::optional<int> CnfFormula::find_variable(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

CnfFormula CnfFormula::with_clauses(std::vector<Clause> clauses) const {
    return CnfFormula(language_, variables_, std::move(clauses));
}

CnfFormula CnfFormula::canonical() const {
    auto key = [this](const Clause& c) { return std::tie(language_[c.relation].name(), c.vars); };
    std::vector<Clause> cs = clauses_;
    std::sort(cs.begin(), cs.end(), [&](const Clause& a, const Clause& b) { return key(a) < key(b); });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return with_clauses(std::move(cs));
}

// ---- BoolFunction / Basis ------------------------------------------------

BoolFunction::BoolFunction(std::string name, int arity, TruthTable table)
    : name_(std::move(name)), arity_(arity), table_(std::move(table)) {
    if (name_.empty()) throw ModelError("function name must not be empty");
    if (arity < 0 || arity > 16) throw ModelError("function " + name_ + ": arity out of range");
    if (table_.num_vars() != arity) throw ModelError("function " + name_ + ": table length must be 2^arity");
}

BoolFunction BoolFunction::from_bits(std::string name, int arity, std::string_view bits) {
    if (arity < 0 || arity > 16) throw ModelError("function " + name + ": arity out of range");
    if (bits.size() != (std::size_t{1} << arity))
        throw ModelError("function " + name + ": table has " + std::to_string(bits.size()) + " bits, expected " +
                         std::to_string(std::size_t{1} << arity));
    TruthTable t(arity);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw ModelError("function " + name + ": table must be binary");
        t.set(i, bits[i] == '1');
    }
    return BoolFunction(std::move(name), arity, std::move(t));
}

BoolFunction BoolFunction::from_predicate(std::string name, int arity, const std::function<bool(std::uint32_t)>& f) {
    TruthTable t(arity);
    for (std::uint32_t i = 0; i < (std::uint32_t{1} << arity); ++i) t.set(i, f(i));
    return BoolFunction(std::move(name), arity, std::move(t));
}

std::string BoolFunction::bits() const {
    std::string s;
    for (std::uint64_t i = 0; i < table_.num_rows(); ++i) s += table_.get(i) ? '1' : '0';
    return s;
}

Basis::Basis(std::vector<BoolFunction> functions) : functions_(std::move(functions)) {
    std::set<std::string> seen;
    for (const auto& f : functions_)
        if (!seen.insert(f.name()).second) throw ModelError("duplicate function name: " + f.name());
}

const BoolFunction* Basis::find(std::string_view name) const {
    for (const auto& f : functions_)
        if (f.name() == name) return &f;
    return nullptr;
}

const BoolFunction& Basis::at(std::string_view name) const {
    if (const auto* f = find(name)) return *f;
    throw ModelError("unknown function: " + std::string(name));
}

int Basis::max_arity() const {
    int m = 0;
    for (const auto& f : functions_) m = std::max(m, f.arity());
    return m;
}

// ---- BFormula ------------------------------------------------------------

BFormula BFormula::var(std::string name) {
    BFormula f;
    f.is_var_ = true;
    f.symbol_ = std::move(name);
    return f;
}

BFormula BFormula::apply(std::string function, std::vector<BFormula> args) {
    BFormula f;
    f.is_var_ = false;
    f.symbol_ = std::move(function);
    f.args_ = std::move(args);
    return f;
}

namespace {

void collect_variables(const BFormula& f, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (f.is_variable()) {
        if (seen.insert(f.symbol()).second) out.push_back(f.symbol());
        return;
    }
    for (const auto& a : f.args()) collect_variables(a, out, seen);
}

}  // namespace

std::vector<std::string> BFormula::variables() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_variables(*this, out, seen);
    return out;
}

int BFormula::literal_count() const {
    if (is_var_) return 1;
    int n = 0;
    for (const auto& a : args_) n += a.literal_count();
    return n;
}

int BFormula::gate_count() const {
    if (is_var_) return 0;
    int n = 1;
    for (const auto& a : args_) n += a.gate_count();
    return n;
}

BFormula BFormula::substitute(const std::function<std::optional<BFormula>(const std::string&)>& f) const {
    if (is_var_) {
        if (auto r = f(symbol_)) return *r;
        return *this;
    }
    std::vector<BFormula> args;
    args.reserve(args_.size());
    for (const auto& a : args_) args.push_back(a.substitute(f));
    return apply(symbol_, std::move(args));
}

BFormula BFormula::rename_functions(const std::function<std::string(const std::string&)>& f) const {
    if (is_var_) return *this;
    std::vector<BFormula> args;
    args.reserve(args_.size());
    for (const auto& a : args_) args.push_back(a.rename_functions(f));
    return apply(f(symbol_), std::move(args));
}

// ---- size measures -------------------------------------------------------

std::string to_string(SizeMeasure m) {
    switch (m) {
        case SizeMeasure::Literals: return "literals";
        case SizeMeasure::Gates: return "gates";
        case SizeMeasure::Clauses: return "clauses";
    }
    return "?";
}

SizeMeasure parse_size_measure(std::string_view text) {
    if (text == "literals") return SizeMeasure::Literals;
    if (text == "gates") return SizeMeasure::Gates;
    if (text == "clauses") return SizeMeasure::Clauses;
    throw ParseError("unknown size measure: " + std::string(text));
}

int size_of(const BFormula& f, SizeMeasure m) {
    switch (m) {
        case SizeMeasure::Literals: return f.literal_count();
        case SizeMeasure::Gates: return f.gate_count();
        case SizeMeasure::Clauses: break;
    }
    throw ModelError("clause count is not defined for B-formulas");
}

// ---- evaluation ----------------------------------------------------------

bool eval(const CnfFormula& f, const Assignment& a) {
    if (static_cast<int>(a.size()) != f.num_vars()) throw ModelError("assignment does not cover the formula");
    for (const auto& c : f.clauses()) {
        const auto& r = f.relation_of(c);
        std::uint32_t t = 0;
        for (int v : c.vars) t = (t << 1) | (a[v] ? 1U : 0U);
        if (!r.contains(t)) return false;
    }
    return true;
}

namespace {

bool eval_node(const BFormula& f, const Basis& basis, const std::map<std::string, bool>& env) {
    if (f.is_variable()) return env.at(f.symbol());
    const auto& fn = basis.at(f.symbol());
    if (static_cast<int>(f.args().size()) != fn.arity())
        throw ModelError("function " + fn.name() + " applied to " + std::to_string(f.args().size()) +
                         " arguments, expected " + std::to_string(fn.arity()));
    std::uint32_t t = 0;
    for (const auto& a : f.args()) t = (t << 1) | (eval_node(a, basis, env) ? 1U : 0U);
    return fn(t);
}

std::unordered_map<std::string, int> positions(const std::vector<std::string>& order, const Limits& limits) {
    if (static_cast<int>(order.size()) > limits.max_vars)
        throw ResourceError("enumeration over " + std::to_string(order.size()) + " variables exceeds cap " +
                            std::to_string(limits.max_vars));
    std::unordered_map<std::string, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], static_cast<int>(i));
    return pos;
}

// Rows where the literal pattern `t` (over the given argument tables) holds.
TruthTable tuple_rows(std::uint32_t t, const std::vector<const TruthTable*>& args, int n) {
    TruthTable acc(n, true);
    const int arity = static_cast<int>(args.size());
    for (int j = 0; j < arity; ++j) {
        if (tuple_bit(t, arity, j))
            acc &= *args[j];
        else
            acc &= ~*args[j];
    }
    return acc;
}

TruthTable table_of_tuples(const std::vector<std::uint32_t>& tuples, std::size_t total, bool negate,
                           const std::vector<const TruthTable*>& args, int n) {
    TruthTable acc(n, false);
    if (!negate) {
        for (auto t : tuples) acc |= tuple_rows(t, args, n);
        return acc;
    }
    std::vector<bool> in(total, false);
    for (auto t : tuples) in[t] = true;
    for (std::uint32_t t = 0; t < total; ++t)
        if (!in[t]) acc |= tuple_rows(t, args, n);
    return ~acc;
}


TruthTable bformula_table(const BFormula& f, const Basis& basis, const std::vector<TruthTable>& vars,
                          const std::unordered_map<std::string, int>& pos, int n) {
    if (f.is_variable()) {
        auto it = pos.find(f.symbol());
        if (it == pos.end()) throw ModelError("variable " + f.symbol() + " missing from enumeration order");
        return vars[it->second];
    }
    const auto& fn = basis.at(f.symbol());
    if (static_cast<int>(f.args().size()) != fn.arity())
        throw ModelError("function " + fn.name() + " applied to " + std::to_string(f.args().size()) +
                         " arguments, expected " + std::to_string(fn.arity()));
    std::vector<TruthTable> children;
    children.reserve(f.args().size());
    for (const auto& a : f.args()) children.push_back(bformula_table(a, basis, vars, pos, n));
    std::vector<const TruthTable*> ptrs;
    for (const auto& c : children) ptrs.push_back(&c);
    return apply_function(fn, ptrs, n);
}

}  // namespace

TruthTable apply_relation(const Relation& r, const std::vector<const TruthTable*>& args, int num_vars) {
    const std::size_t total = std::size_t{1} << r.arity();
    return table_of_tuples(r.tuples(), total, r.size() * 2 > total, args, num_vars);
}

TruthTable apply_function(const BoolFunction& f, const std::vector<const TruthTable*>& args, int num_vars) {
    if (f.arity() == 0) return TruthTable(num_vars, f(0));
    std::vector<std::uint32_t> ones;
    for (std::uint32_t t = 0; t < f.table().num_rows(); ++t)
        if (f(t)) ones.push_back(t);
    const std::size_t total = f.table().num_rows();
    return table_of_tuples(ones, total, ones.size() * 2 > total, args, num_vars);
}

bool eval(const BFormula& f, const Basis& basis, const Assignment& a) {
    const auto vars = f.variables();
    if (a.size() != vars.size()) throw ModelError("assignment does not cover the formula");
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = a[i];
    return eval_node(f, basis, env);
}

bool eval(const PostFormula& f, const Assignment& a) { return eval(f.formula, f.basis, a); }

TruthTable clause_table(const CnfFormula& f, const Clause& c) {
    const int n = f.num_vars();
    std::vector<TruthTable> vars;
    vars.reserve(c.vars.size());
    std::vector<const TruthTable*> ptrs;
    for (int v : c.vars) vars.push_back(TruthTable::variable(n, v));
    for (const auto& t : vars) ptrs.push_back(&t);
    return apply_relation(f.relation_of(c), ptrs, n);
}

TruthTable truth_table(const CnfFormula& f, const std::vector<std::string>& order, const Limits& limits) {
    const auto pos = positions(order, limits);
    const int n = static_cast<int>(order.size());
    std::vector<int> var_pos(f.num_vars());
    for (int v = 0; v < f.num_vars(); ++v) {
        auto it = pos.find(f.variables()[v]);
        if (it == pos.end()) throw ModelError("variable " + f.variables()[v] + " missing from enumeration order");
        var_pos[v] = it->second;
    }
    std::vector<TruthTable> vars;
    for (int j = 0; j < n; ++j) vars.push_back(TruthTable::variable(n, j));
    TruthTable acc(n, true);
    for (const auto& c : f.clauses()) {
        std::vector<const TruthTable*> ptrs;
        for (int v : c.vars) ptrs.push_back(&vars[var_pos[v]]);
        acc &= apply_relation(f.relation_of(c), ptrs, n);
        if (acc.is_zero()) break;
    }
    return acc;
}

TruthTable truth_table(const CnfFormula& f, const Limits& limits) { return truth_table(f, f.variables(), limits); }

TruthTable truth_table(const BFormula& f, const Basis& basis, const std::vector<std::string>& order,
                       const Limits& limits) {
    const auto pos = positions(order, limits);
    const int n = static_cast<int>(order.size());
    std::vector<TruthTable> vars;
    for (int j = 0; j < n; ++j) vars.push_back(TruthTable::variable(n, j));
    return bformula_table(f, basis, vars, pos, n);
}

namespace {

std::vector<std::string> union_order(std::vector<std::string> a, const std::vector<std::string>& b) {
    std::set<std::string> seen(a.begin(), a.end());
    for (const auto& v : b)
        if (seen.insert(v).second) a.push_back(v);
    return a;
}

}  // namespace

bool equivalent(const CnfFormula& a, const CnfFormula& b, const Limits& limits) {
    const auto order = union_order(a.variables(), b.variables());
    return truth_table(a, order, limits) == truth_table(b, order, limits);
}

bool equivalent(const PostFormula& a, const PostFormula& b, const Limits& limits) {
    const auto order = union_order(a.formula.variables(), b.formula.variables());
    return truth_table(a.formula, a.basis, order, limits) == truth_table(b.formula, b.basis, order, limits);
}

bool equivalent(const CnfFormula& a, const PostFormula& b, const Limits& limits) {
    const auto order = union_order(a.variables(), b.formula.variables());
    return truth_table(a, order, limits) == truth_table(b.formula, b.basis, order, limits);
}

bool satisfiable(const CnfFormula& f, const Limits& limits) { return !truth_table(f, limits).is_zero(); }

bool satisfiable(const PostFormula& f, const Limits& limits) {
    return !truth_table(f.formula, f.basis, f.formula.variables(), limits).is_zero();
}

// ---- duality -------------------------------------------------------------

std::string dual_name(std::string_view name) {
    constexpr std::string_view prefix = "dual_";
    if (name.substr(0, prefix.size()) == prefix) return std::string(name.substr(prefix.size()));
    return std::string(prefix) + std::string(name);
}

BoolFunction dualize(const BoolFunction& f) {
    const std::uint32_t mask = (std::uint32_t{1} << f.arity()) - 1;
    return BoolFunction::from_predicate(dual_name(f.name()), f.arity(),
                                        [&](std::uint32_t t) { return !f(t ^ mask); });
}

Relation dualize(const Relation& r) {
    const std::uint32_t mask = (std::uint32_t{1} << r.arity()) - 1;
    std::vector<std::uint32_t> tuples;
    for (auto t : r.tuples()) tuples.push_back(t ^ mask);
    return Relation(dual_name(r.name()), r.arity(), std::move(tuples), std::max(r.arity(), 8));
}

ConstraintLanguage dualize(const ConstraintLanguage& l) {
    std::vector<Relation> rs;
    for (const auto& r : l.relations()) rs.push_back(dualize(r));
    return ConstraintLanguage(std::move(rs));
}

Basis dualize(const Basis& b) {
    std::vector<BoolFunction> fs;
    for (const auto& f : b.functions()) fs.push_back(dualize(f));
    return Basis(std::move(fs));
}

CnfFormula dualize(const CnfFormula& f) { return CnfFormula(dualize(f.language()), f.variables(), f.clauses()); }

BFormula dualize(const BFormula& f) {
    return f.rename_functions([](const std::string& s) { return dual_name(s); });
}

PostFormula dualize(const PostFormula& f) { return PostFormula{dualize(f.basis), dualize(f.formula)}; }

}  // namespace mee
