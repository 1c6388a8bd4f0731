#pragma once

// Shared data model: relations, constraint languages, CNF-style formulas over
// a language, Boolean functions, bases and nested B-formulas. Every object is
// immutable once built and validated in its constructor.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mee/truth_table.hpp"

namespace mee {

struct Limits {
    int max_vars = 24;   // exhaustive enumeration cap
    int max_arity = 8;   // relation arity cap
};

// Bit vector indexed by variable id.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}
    // Row index of a truth table over num_vars variables (position 0 = MSB).
    static Assignment from_row(int num_vars, std::uint64_t row);

    bool operator[](std::size_t var) const { return values_[var]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<bool>& values() const { return values_; }
    Assignment complement() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<bool> values_;
};

// Tuples are encoded as integers with the first argument in the most
// significant of `arity` bits.
inline bool tuple_bit(std::uint32_t tuple, int arity, int position) {
    return (tuple >> (arity - 1 - position)) & 1U;
}

class Relation {
public:
    Relation(std::string name, int arity, std::vector<std::uint32_t> tuples, int max_arity = 8);

    static Relation from_predicate(std::string name, int arity,
                                   const std::function<bool(std::uint32_t)>& member);

    const std::string& name() const { return name_; }
    int arity() const { return arity_; }
    const std::vector<std::uint32_t>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool contains(std::uint32_t tuple) const { return tuple < members_.size() && members_[tuple]; }
    bool is_full() const { return tuples_.size() == members_.size(); }

    // Same arity and tuple set, names ignored.
    bool same_tuples(const Relation& other) const {
        return arity_ == other.arity_ && tuples_ == other.tuples_;
    }
    Relation renamed(std::string name) const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.name_ == b.name_ && a.same_tuples(b);
    }

private:
    std::string name_;
    int arity_;
    std::vector<std::uint32_t> tuples_;
    std::vector<bool> members_;
};

class ConstraintLanguage {
public:
    ConstraintLanguage() = default;
    explicit ConstraintLanguage(std::vector<Relation> relations);

    const std::vector<Relation>& relations() const { return relations_; }
    std::size_t size() const { return relations_.size(); }
    bool empty() const { return relations_.empty(); }
    const Relation& operator[](std::size_t i) const { return relations_[i]; }
    std::optional<int> find(std::string_view name) const;
    int index_of(std::string_view name) const;  // throws ModelError
    int max_arity() const;

    friend bool operator==(const ConstraintLanguage&, const ConstraintLanguage&) = default;

private:
    std::vector<Relation> relations_;
};

struct Clause {
    int relation = 0;         // index into the formula's language
    std::vector<int> vars;    // variable ids, repeats allowed

    friend auto operator<=>(const Clause&, const Clause&) = default;
};

class CnfFormula {
public:
    CnfFormula() = default;
    CnfFormula(ConstraintLanguage language, std::vector<std::string> variables, std::vector<Clause> clauses);

    const ConstraintLanguage& language() const { return language_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Clause>& clauses() const { return clauses_; }
    int num_vars() const { return static_cast<int>(variables_.size()); }
    int num_clauses() const { return static_cast<int>(clauses_.size()); }
    const Relation& relation_of(const Clause& c) const { return language_[c.relation]; }
    std::optional<int> find_variable(std::string_view name) const;

    // Same language and variables, different clause list.
    CnfFormula with_clauses(std::vector<Clause> clauses) const;
    // Clauses sorted and deduplicated by (relation name, vars).
    CnfFormula canonical() const;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
    ConstraintLanguage language_;
    std::vector<std::string> variables_;
    std::vector<Clause> clauses_;
};

class BoolFunction {
public:
    // table.get(i) is the value on the argument tuple encoded as i (first
    // argument most significant).
    BoolFunction(std::string name, int arity, TruthTable table);
    static BoolFunction from_bits(std::string name, int arity, std::string_view bits);
    static BoolFunction from_predicate(std::string name, int arity,
                                       const std::function<bool(std::uint32_t)>& f);

    const std::string& name() const { return name_; }
    int arity() const { return arity_; }
    const TruthTable& table() const { return table_; }
    bool operator()(std::uint32_t args) const { return table_.get(args); }
    std::string bits() const;

    friend bool operator==(const BoolFunction&, const BoolFunction&) = default;

private:
    std::string name_;
    int arity_;
    TruthTable table_;
};

class Basis {
public:
    Basis() = default;
    explicit Basis(std::vector<BoolFunction> functions);

    const std::vector<BoolFunction>& functions() const { return functions_; }
    std::size_t size() const { return functions_.size(); }
    bool empty() const { return functions_.empty(); }
    const BoolFunction& operator[](std::size_t i) const { return functions_[i]; }
    const BoolFunction* find(std::string_view name) const;
    const BoolFunction& at(std::string_view name) const;  // throws ModelError
    int max_arity() const;

    friend bool operator==(const Basis&, const Basis&) = default;

private:
    std::vector<BoolFunction> functions_;
};

// Formula tree over a basis: a variable leaf or a function applied to
// children. Function symbols are resolved against a Basis when evaluated.
class BFormula {
public:
    BFormula() = default;
    static BFormula var(std::string name);
    static BFormula apply(std::string function, std::vector<BFormula> args);

    bool is_variable() const { return is_var_; }
    const std::string& symbol() const { return symbol_; }
    const std::vector<BFormula>& args() const { return args_; }

    // Distinct variables in order of first appearance (left to right).
    std::vector<std::string> variables() const;
    int literal_count() const;  // variable leaf occurrences
    int gate_count() const;     // function-symbol nodes

    // Replace variable leaves by formulas; unmapped leaves are kept.
    BFormula substitute(const std::function<std::optional<BFormula>(const std::string&)>& f) const;
    BFormula rename_functions(const std::function<std::string(const std::string&)>& f) const;

    friend bool operator==(const BFormula&, const BFormula&) = default;

private:
    bool is_var_ = true;
    std::string symbol_;
    std::vector<BFormula> args_;
};

// A B-formula together with the basis its symbols refer to.
struct PostFormula {
    Basis basis;
    BFormula formula;

    friend bool operator==(const PostFormula&, const PostFormula&) = default;
};

enum class SizeMeasure { Literals, Gates, Clauses };

std::string to_string(SizeMeasure m);
SizeMeasure parse_size_measure(std::string_view text);

int size_of(const BFormula& f, SizeMeasure m);

struct MeeInstance {
    std::variant<CnfFormula, PostFormula> formula;
    int bound = 0;
    SizeMeasure measure = SizeMeasure::Clauses;
    // Canonical negative instance: a fixed reduction output that is never
    // positive, marked explicitly rather than encoded through the bound.
    bool fixed_negative = false;

    friend bool operator==(const MeeInstance&, const MeeInstance&) = default;
};

// Term of a DNF: a conjunction of literals.
struct Literal {
    std::string var;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};
using DnfTerm = std::vector<Literal>;
using Dnf = std::vector<DnfTerm>;

// ---- evaluation --------------------------------------------------------

bool eval(const CnfFormula& f, const Assignment& a);
// The assignment is indexed by f.variables() order.
bool eval(const BFormula& f, const Basis& basis, const Assignment& a);
bool eval(const PostFormula& f, const Assignment& a);

// Truth table over `order`; every variable of the formula must occur in it.
TruthTable truth_table(const CnfFormula& f, const std::vector<std::string>& order, const Limits& limits = {});
TruthTable truth_table(const BFormula& f, const Basis& basis, const std::vector<std::string>& order,
                       const Limits& limits = {});
TruthTable truth_table(const CnfFormula& f, const Limits& limits = {});

// Composition on tables: rows where the relation holds of / the function
// evaluates to 1 on the argument tables (all over num_vars variables).
TruthTable apply_relation(const Relation& r, const std::vector<const TruthTable*>& args, int num_vars);
TruthTable apply_function(const BoolFunction& f, const std::vector<const TruthTable*>& args, int num_vars);

// Per-clause solution set over the formula's full variable table.
TruthTable clause_table(const CnfFormula& f, const Clause& c);

bool equivalent(const CnfFormula& a, const CnfFormula& b, const Limits& limits = {});
bool equivalent(const PostFormula& a, const PostFormula& b, const Limits& limits = {});
bool equivalent(const CnfFormula& a, const PostFormula& b, const Limits& limits = {});

bool satisfiable(const CnfFormula& f, const Limits& limits = {});
bool satisfiable(const PostFormula& f, const Limits& limits = {});

// ---- duality -----------------------------------------------------------

// Involutive renaming used for dual objects: "f" <-> "dual_f".
std::string dual_name(std::string_view name);

BoolFunction dualize(const BoolFunction& f);
Relation dualize(const Relation& r);
ConstraintLanguage dualize(const ConstraintLanguage& l);
Basis dualize(const Basis& b);
CnfFormula dualize(const CnfFormula& f);
BFormula dualize(const BFormula& f);
PostFormula dualize(const PostFormula& f);

}  // namespace mee
