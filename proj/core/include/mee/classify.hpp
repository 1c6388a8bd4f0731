#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mee/model.hpp"

namespace mee {

// Coordinatewise closure operations.
enum class ClosureOp {
    Min2,      // a & b            Horn
    Max2,      // a | b            dual Horn
    Maj3,      // majority         bijunctive
    Xor3,      // a ^ b ^ c        affine
    OrAndMix,  // a | (b & c)      IHSB+
    AndOrMix,  // a & (b | c)      IHSB-
};

bool closed_under(const Relation& r, ClosureOp op);

// R is reducible when it equals the conjunction of its projections that
// each drop one coordinate.
bool is_irreducible(const Relation& r);

struct RelationFlags {
    bool affine = false;
    bool bijunctive = false;
    bool horn = false;
    bool dual_horn = false;
    bool ihsb_plus = false;
    bool ihsb_minus = false;
    bool irreducible = false;

    friend bool operator==(const RelationFlags&, const RelationFlags&) = default;
};

RelationFlags relation_flags(const Relation& r);

enum class LanguageVerdict {
    PAffine,
    PIhsbPlus,
    PIhsbMinus,
    PBijunctive,
    NpCompleteHorn,
    NpCompleteDualHorn,
    CoNpHardNonSchaefer,
};

std::string to_string(LanguageVerdict v);
bool is_polynomial(LanguageVerdict v);

struct HornWitness {
    int relation = 0;               // index into the language
    int k = 0;                      // body size
    std::vector<int> permutation;   // argument positions: body first, head last
    bool dual = false;              // match found in the dual relation
};

struct ClassificationReport {
    std::vector<RelationFlags> relations;
    RelationFlags language;         // conjunction over all relations
    bool schaefer = false;
    bool irreducible = false;
    LanguageVerdict verdict = LanguageVerdict::CoNpHardNonSchaefer;
    std::optional<HornWitness> witness;
};

ClassificationReport classify_language(const ConstraintLanguage& lang);
std::string format_report(const ClassificationReport& report, const ConstraintLanguage& lang);

std::optional<HornWitness> find_positive_horn_witness(const ConstraintLanguage& lang);

// Shape of a Boolean function: OR/AND/XOR of its relevant variables, with
// XOR carrying a constant offset. Constants have every shape.
struct FunctionShape {
    bool is_or = false;
    bool is_and = false;
    bool is_xor = false;
    std::vector<int> relevant;
    bool constant = false;  // value on the all-zero input
};

FunctionShape function_shape(const BoolFunction& f);

enum class BasisVerdict { POr, PAnd, PXor, CoNpHard };

std::string to_string(BasisVerdict v);

struct BasisReport {
    std::vector<FunctionShape> shapes;
    bool all_or = false;
    bool all_and = false;
    bool all_xor = false;
    BasisVerdict verdict = BasisVerdict::CoNpHard;
};

BasisReport classify_basis(const Basis& b);
std::string format_report(const BasisReport& report, const Basis& b);

}  // namespace mee
