#include "mee/classify.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "mee/errors.hpp"

namespace mee {

bool closed_under(const Relation& r, ClosureOp op) {
    const auto& ts = r.tuples();
    const std::uint32_t mask = (std::uint32_t{1} << r.arity()) - 1;
    switch (op) {
        case ClosureOp::Min2:
        case ClosureOp::Max2:
            for (auto a : ts)
                for (auto b : ts)
                    if (!r.contains(op == ClosureOp::Min2 ? (a & b) : (a | b))) return false;
            return true;
        default: break;
    }
    for (auto a : ts)
        for (auto b : ts)
            for (auto c : ts) {
                std::uint32_t v = 0;
                switch (op) {
                    case ClosureOp::Maj3: v = (a & b) | (a & c) | (b & c); break;
                    case ClosureOp::Xor3: v = a ^ b ^ c; break;
                    case ClosureOp::OrAndMix: v = a | (b & c); break;
                    case ClosureOp::AndOrMix: v = a & (b | c); break;
                    default: break;
                }
                if (!r.contains(v & mask)) return false;
            }
    return true;
}

bool is_irreducible(const Relation& r) {
    const int k = r.arity();
    const std::uint32_t rows = std::uint32_t{1} << k;
    // proj[i] holds R's tuples with coordinate i forced to 0, i.e. the
    // projection dropping position i, lifted back to arity k.
    std::vector<std::vector<bool>> proj(k, std::vector<bool>(rows, false));
    for (auto t : r.tuples())
        for (int i = 0; i < k; ++i) proj[i][t & ~(std::uint32_t{1} << (k - 1 - i))] = true;
    for (std::uint32_t t = 0; t < rows; ++t) {
        if (r.contains(t)) continue;
        bool in_all = true;
        for (int i = 0; i < k && in_all; ++i) in_all = proj[i][t & ~(std::uint32_t{1} << (k - 1 - i))];
        if (in_all) return true;
    }
    return false;
}

RelationFlags relation_flags(const Relation& r) {
    RelationFlags f;
    f.affine = closed_under(r, ClosureOp::Xor3);
    f.bijunctive = closed_under(r, ClosureOp::Maj3);
    f.horn = closed_under(r, ClosureOp::Min2);
    f.dual_horn = closed_under(r, ClosureOp::Max2);
    f.ihsb_plus = closed_under(r, ClosureOp::OrAndMix);
    f.ihsb_minus = closed_under(r, ClosureOp::AndOrMix);
    f.irreducible = is_irreducible(r);
    return f;
}

std::string to_string(LanguageVerdict v) {
    switch (v) {
        case LanguageVerdict::PAffine: return "P-affine";
        case LanguageVerdict::PIhsbPlus: return "P-ihsb+";
        case LanguageVerdict::PIhsbMinus: return "P-ihsb-";
        case LanguageVerdict::PBijunctive: return "P-bijunctive";
        case LanguageVerdict::NpCompleteHorn: return "NP-complete-horn";
        case LanguageVerdict::NpCompleteDualHorn: return "NP-complete-dualhorn";
        case LanguageVerdict::CoNpHardNonSchaefer: return "coNP-hard-nonschaefer";
    }
    return "?";
}

bool is_polynomial(LanguageVerdict v) {
    return v == LanguageVerdict::PAffine || v == LanguageVerdict::PIhsbPlus || v == LanguageVerdict::PIhsbMinus ||
           v == LanguageVerdict::PBijunctive;
}

namespace {

// True iff R is the implication from all other positions to `head`.
bool matches_horn_implication(const Relation& r, int head) {
    const int n = r.arity();
    const std::uint32_t body_mask = ((std::uint32_t{1} << n) - 1) & ~(std::uint32_t{1} << (n - 1 - head));
    const std::uint32_t head_bit = std::uint32_t{1} << (n - 1 - head);
    for (std::uint32_t t = 0; t < (std::uint32_t{1} << n); ++t) {
        bool member = (t & body_mask) != body_mask || (t & head_bit) != 0;
        if (member != r.contains(t)) return false;
    }
    return true;
}

std::optional<HornWitness> scan_horn_witness(const ConstraintLanguage& lang) {
    for (std::size_t i = 0; i < lang.size(); ++i) {
        const auto& r = lang[i];
        if (r.arity() < 3) continue;
        for (int h = 0; h < r.arity(); ++h) {
            if (!matches_horn_implication(r, h)) continue;
            HornWitness w;
            w.relation = static_cast<int>(i);
            w.k = r.arity() - 1;
            for (int j = 0; j < r.arity(); ++j)
                if (j != h) w.permutation.push_back(j);
            w.permutation.push_back(h);
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<HornWitness> find_positive_horn_witness(const ConstraintLanguage& lang) {
    auto report = classify_language(lang);
    if (report.witness && report.witness->dual) return std::nullopt;
    return report.witness;
}

ClassificationReport classify_language(const ConstraintLanguage& lang) {
    ClassificationReport rep;
    RelationFlags all{true, true, true, true, true, true, true};
    for (const auto& r : lang.relations()) {
        auto f = relation_flags(r);
        rep.relations.push_back(f);
        all.affine &= f.affine;
        all.bijunctive &= f.bijunctive;
        all.horn &= f.horn;
        all.dual_horn &= f.dual_horn;
        all.ihsb_plus &= f.ihsb_plus;
        all.ihsb_minus &= f.ihsb_minus;
        all.irreducible &= f.irreducible;
    }
    rep.language = all;
    rep.irreducible = all.irreducible;
    rep.schaefer = all.affine || all.bijunctive || all.horn || all.dual_horn;
    if (all.affine)
        rep.verdict = LanguageVerdict::PAffine;
    else if (all.ihsb_plus)
        rep.verdict = LanguageVerdict::PIhsbPlus;
    else if (all.ihsb_minus)
        rep.verdict = LanguageVerdict::PIhsbMinus;
    else if (all.bijunctive)
        rep.verdict = LanguageVerdict::PBijunctive;
    else if (all.horn)
        rep.verdict = LanguageVerdict::NpCompleteHorn;
    else if (all.dual_horn)
        rep.verdict = LanguageVerdict::NpCompleteDualHorn;
    else
        rep.verdict = LanguageVerdict::CoNpHardNonSchaefer;

    if (all.irreducible && all.horn && !all.ihsb_minus) {
        rep.witness = scan_horn_witness(lang);
    } else if (all.irreducible && all.dual_horn && !all.ihsb_plus) {
        rep.witness = scan_horn_witness(dualize(lang));
        if (rep.witness) rep.witness->dual = true;
    }
    return rep;
}

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_report(const ClassificationReport& rep, const ConstraintLanguage& lang) {
    std::ostringstream os;
    for (std::size_t i = 0; i < lang.size(); ++i) {
        const auto& f = rep.relations[i];
        const auto& n = lang[i].name();
        os << "relation." << n << ".affine=" << flag(f.affine) << '\n'
           << "relation." << n << ".bijunctive=" << flag(f.bijunctive) << '\n'
           << "relation." << n << ".horn=" << flag(f.horn) << '\n'
           << "relation." << n << ".dualHorn=" << flag(f.dual_horn) << '\n'
           << "relation." << n << ".ihsbPlus=" << flag(f.ihsb_plus) << '\n'
           << "relation." << n << ".ihsbMinus=" << flag(f.ihsb_minus) << '\n'
           << "relation." << n << ".irreducible=" << flag(f.irreducible) << '\n';
    }
    const auto& a = rep.language;
    os << "affine=" << flag(a.affine) << '\n'
       << "bijunctive=" << flag(a.bijunctive) << '\n'
       << "horn=" << flag(a.horn) << '\n'
       << "dualHorn=" << flag(a.dual_horn) << '\n'
       << "ihsbPlus=" << flag(a.ihsb_plus) << '\n'
       << "ihsbMinus=" << flag(a.ihsb_minus) << '\n'
       << "irreducible=" << flag(rep.irreducible) << '\n'
       << "schaefer=" << flag(rep.schaefer) << '\n'
       << "verdict=" << to_string(rep.verdict) << '\n';
    if (!rep.irreducible) os << "caveat=classification guaranteed only for irreducible languages\n";
    if (rep.verdict == LanguageVerdict::CoNpHardNonSchaefer)
        os << "note=coNP-hardness holds for the language extended with literals\n";
    if (rep.witness) {
        os << "witness=" << (rep.witness->dual ? "dual:" : "") << lang[rep.witness->relation].name() << " k=" << rep.witness->k << " permutation=";
        for (std::size_t j = 0; j < rep.witness->permutation.size(); ++j)
            os << (j ? "," : "") << rep.witness->permutation[j];
        os << '\n';
    }
    return os.str();
}

FunctionShape function_shape(const BoolFunction& f) {
    FunctionShape s;
    const int n = f.arity();
    const std::uint32_t all_ones = (std::uint32_t{1} << n) - 1;
    const bool at_zero = f(0);
    s.constant = at_zero;
    for (int i = 0; i < n; ++i)
        if (f(std::uint32_t{1} << (n - 1 - i)) != at_zero) s.relevant.push_back(i);
    std::uint32_t rel_mask = 0;
    for (int i : s.relevant) rel_mask |= std::uint32_t{1} << (n - 1 - i);
    bool is_or = true, is_xor = true;
    for (std::uint32_t t = 0; t <= all_ones; ++t) {
        const std::uint32_t r = t & rel_mask;
        bool or_value = at_zero || r != 0;
        bool xor_value = at_zero ^ (std::popcount(r) & 1);
        if (f(t) != or_value) is_or = false;
        if (f(t) != xor_value) is_xor = false;
    }
    // AND shape: relevant variables probed from the all-ones input.
    const bool at_ones = f(all_ones);
    std::uint32_t and_mask = 0;
    for (int i = 0; i < n; ++i)
        if (f(all_ones & ~(std::uint32_t{1} << (n - 1 - i))) != at_ones) and_mask |= std::uint32_t{1} << (n - 1 - i);
    bool is_and = true;
    for (std::uint32_t t = 0; t <= all_ones; ++t) {
        bool and_value = !at_ones ? false : (t & and_mask) == and_mask;
        if (f(t) != and_value) is_and = false;
    }
    s.is_or = is_or;
    s.is_xor = is_xor;
    s.is_and = is_and;
    if (is_and && !is_or && !is_xor) {
        s.relevant.clear();
        for (int i = 0; i < n; ++i)
            if (and_mask & (std::uint32_t{1} << (n - 1 - i))) s.relevant.push_back(i);
    }
    return s;
}

std::string to_string(BasisVerdict v) {
    switch (v) {
        case BasisVerdict::POr: return "P-or";
        case BasisVerdict::PAnd: return "P-and";
        case BasisVerdict::PXor: return "P-xor";
        case BasisVerdict::CoNpHard: return "coNP-hard";
    }
    return "?";
}

BasisReport classify_basis(const Basis& b) {
    if (b.empty()) throw ClassificationError("basis must not be empty");
    BasisReport rep;
    rep.all_or = rep.all_and = rep.all_xor = true;
    for (const auto& f : b.functions()) {
        auto s = function_shape(f);
        rep.all_or &= s.is_or;
        rep.all_and &= s.is_and;
        rep.all_xor &= s.is_xor;
        rep.shapes.push_back(std::move(s));
    }
    if (rep.all_or)
        rep.verdict = BasisVerdict::POr;
    else if (rep.all_and)
        rep.verdict = BasisVerdict::PAnd;
    else if (rep.all_xor)
        rep.verdict = BasisVerdict::PXor;
    else
        rep.verdict = BasisVerdict::CoNpHard;
    return rep;
}

std::string format_report(const BasisReport& rep, const Basis& b) {
    std::ostringstream os;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto& s = rep.shapes[i];
        const auto& n = b[i].name();
        os << "function." << n << ".or=" << flag(s.is_or) << '\n'
           << "function." << n << ".and=" << flag(s.is_and) << '\n'
           << "function." << n << ".xor=" << flag(s.is_xor) << '\n'
           << "function." << n << ".relevant=";
        for (std::size_t j = 0; j < s.relevant.size(); ++j) os << (j ? "," : "") << s.relevant[j];
        os << '\n';
    }
    os << "or=" << flag(rep.all_or) << '\n'
       << "and=" << flag(rep.all_and) << '\n'
       << "xor=" << flag(rep.all_xor) << '\n'
       << "verdict=" << to_string(rep.verdict) << '\n';
    return os.str();
}

}  // namespace mee
