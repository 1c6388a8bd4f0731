#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "mee/classify.hpp"
#include "mee/errors.hpp"
#include "mee/gadgets.hpp"
#include "mee/min_post.hpp"
#include "mee/minimize.hpp"
#include "mee/oracle.hpp"
#include "mee/text_io.hpp"

namespace mee::cli {

namespace {

Relation load_relation(const std::string& path) { return parse_relation(read_source(path).text); }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ResourceError("cannot write " + path);
    f << text;
}

SchaeferClass parse_class(const std::string& name) {
    for (auto c : {SchaeferClass::Affine, SchaeferClass::Bijunctive, SchaeferClass::Horn, SchaeferClass::DualHorn,
                   SchaeferClass::IhsbPlus, SchaeferClass::IhsbMinus})
        if (to_string(c) == name) return c;
    throw ParseError("unknown class " + name);
}

struct Options {
    std::string language, basis, formula, out, relation, a, b, measure = "literals", base, cls;
    std::string unsat, f_and, f_or, f_maj, h1, h2, dnf;
    bool stats = false;
    int max_clauses = 0, max_size = 0, max_vars = 8;
    int vars = 0, clauses = 0;
    std::uint64_t seed = 0;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int classify() {
        if (o.language.empty() == o.basis.empty()) throw ParseError("classify takes exactly one of --language, --basis");
        if (!o.language.empty()) {
            auto lang = load_language(o.language);
            out_ << format_report(classify_language(lang), lang);
        } else {
            auto basis = load_basis(o.basis);
            out_ << format_report(classify_basis(basis), basis);
        }
        return kOk;
    }

    int minimize() {
        auto phi = load_cnf(o.formula);
        MinimizeStats st;
        auto result = mee::minimize(phi, &st);
        write_text(o.out, serialize(result), out_);
        if (o.stats) out_ << st.format();
        return kOk;
    }

    int minimize_post() {
        auto basis = load_basis(o.basis);
        auto phi = load_bformula(o.formula);
        auto r = min_post(basis, phi, parse_size_measure(o.measure));
        out_ << "measure=" << o.measure << '\n';
        if (!r) {
            out_ << "result=no equivalent B-formula within bound\n";
            return kNegative;
        }
        out_ << "min_size=" << r->size << '\n'
             << "tuple=(" << r->tuple.c << ',' << r->tuple.l << ',' << r->tuple.n << ")\n"
             << "witness=" << serialize(r->witness) << '\n';
        return kOk;
    }

    int irreducible() {
        const bool irr = is_irreducible(load_relation(o.relation));
        out_ << "irreducible=" << (irr ? "true" : "false") << '\n';
        return irr ? kOk : kNegative;
    }

    int equiv() {
        bool same;
        if (!o.basis.empty()) {
            auto basis = load_basis(o.basis);
            same = equivalent(PostFormula{basis, load_bformula(o.a)}, PostFormula{basis, load_bformula(o.b)});
        } else {
            same = equivalent(load_cnf(o.a), load_cnf(o.b));
        }
        out_ << "equivalent=" << (same ? "true" : "false") << '\n';
        return same ? kOk : kNegative;
    }

    int dualize_cmd() {
        if (!o.basis.empty()) {
            out_ << serialize(dualize(PostFormula{load_basis(o.basis), load_bformula(o.formula)}));
        } else {
            out_ << serialize(dualize(load_cnf(o.formula)));
        }
        return kOk;
    }

    int gen_random() {
        if (o.vars < 1 || o.clauses < 0) throw ParseError("gen-random needs --vars >= 1 and --clauses >= 0");
        auto lang = load_language(o.language);
        if (lang.empty()) throw ParseError("empty language");
        std::mt19937_64 rng(o.seed);
        auto pick = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
        std::vector<std::string> names;
        for (int i = 1; i <= o.vars; ++i) names.push_back("x" + std::to_string(i));
        std::vector<Clause> cs;
        for (int i = 0; i < o.clauses; ++i) {
            Clause c;
            c.relation = pick(lang.size());
            for (int j = 0; j < lang[c.relation].arity(); ++j) c.vars.push_back(pick(o.vars));
            cs.push_back(std::move(c));
        }
        out_ << serialize(CnfFormula(lang, names, std::move(cs)));
        return kOk;
    }

    int oracle_min_cnf() {
        auto phi = load_cnf(o.formula);
        OracleLimits limits;
        limits.max_clauses = o.max_clauses;
        limits.max_vars = o.max_vars;
        auto r = brute_min_cnf(phi.language(), phi, o.max_clauses, limits);
        if (!r) {
            out_ << "count=none\n";
            return kNegative;
        }
        out_ << "count=" << r->count << '\n' << serialize(r->witness);
        return kOk;
    }

    int oracle_min_bf() {
        auto basis = load_basis(o.basis);
        auto phi = load_bformula(o.formula);
        OracleLimits limits;
        limits.max_bformula_size = o.max_size;
        limits.max_vars = o.max_vars;
        auto r = brute_min_bformula(basis, phi, parse_size_measure(o.measure), o.max_size, limits);
        if (!r) {
            out_ << "size=none\n";
            return kNegative;
        }
        out_ << "size=" << r->size << '\n' << "witness=" << serialize(r->witness) << '\n';
        return kOk;
    }

    int oracle_expressible() {
        auto r = load_relation(o.relation);
        if (o.base.empty() == o.cls.empty()) throw ParseError("expressible takes exactly one of --base, --class");
        auto base = o.base.empty() ? base_language(parse_class(o.cls), r.arity()) : load_language(o.base);
        OracleLimits limits;
        limits.max_expr_clauses = o.max_clauses;
        const bool yes = expressible(r, base, o.max_clauses, limits);
        out_ << "expressible=" << (yes ? "true" : "false") << '\n';
        return yes ? kOk : kNegative;
    }

    int oracle_min_unsat() {
        auto lang = load_language(o.language);
        OracleLimits limits;
        limits.max_unsat_clauses = o.max_clauses;
        auto r = min_unsat_formula(lang, o.max_clauses, limits);
        if (!r) {
            out_ << "count=none\n";
            return kNegative;
        }
        out_ << "count=" << r->num_clauses() << '\n' << serialize(*r);
        return kOk;
    }

    int gadget_unsat_post() {
        auto basis = load_basis(o.basis);
        out_ << serialize(reduce_unsat_to_mee_post(basis, load_bformula(o.unsat), load_bformula(o.formula),
                                                   parse_size_measure(o.measure)));
        return kOk;
    }

    int gadget_and_or() {
        auto basis = load_basis(o.basis);
        const auto m = parse_size_measure(o.measure);
        auto g = build_and_or_gadget(basis, load_bformula(o.f_and), load_bformula(o.f_or), load_bformula(o.h1),
                                     load_bformula(o.h2), m);
        out_ << serialize(MeeInstance{PostFormula{basis, g.formula}, g.l, m, false});
        return kOk;
    }

    int gadget_maj() {
        auto basis = load_basis(o.basis);
        const auto m = parse_size_measure(o.measure);
        auto g = build_maj_gadget(basis, load_bformula(o.f_maj), load_bformula(o.h1), load_bformula(o.h2), m);
        out_ << serialize(MeeInstance{PostFormula{basis, g.formula}, g.l, m, false});
        return kOk;
    }

    int gadget_unsat_cnf() {
        auto phi = load_cnf(o.formula);
        out_ << serialize(reduce_unsat_to_mee_cnf(phi.language(), phi));
        return kOk;
    }

    int gadget_horn_dnf() {
        out_ << serialize(pure_horn_dnf_to_cnf(load_dnf(o.dnf)));
        return kOk;
    }

    Options o;

private:
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner r(out, err);
    auto& o = r.o;
    std::function<int()> action;

    CLI::App app{"Minimum equivalent expression tool"};
    app.name("mee");
    app.require_subcommand(1);

    auto on = [&](CLI::App* sub, int (Runner::*fn)()) {
        sub->callback([&action, &r, fn] { action = [&r, fn] { return (r.*fn)(); }; });
    };

    auto* classify = app.add_subcommand("classify", "Report the complexity verdict of a language or basis");
    classify->add_option("--language", o.language, "Language file");
    classify->add_option("--basis", o.basis, "Basis file");
    on(classify, &Runner::classify);

    auto* minimize = app.add_subcommand("minimize", "Minimize a formula over a polynomial language");
    minimize->add_option("--formula", o.formula, "Formula file")->required();
    minimize->add_option("--out", o.out, "Write the result here instead of stdout");
    minimize->add_flag("--stats", o.stats, "Print key=value statistics");
    on(minimize, &Runner::minimize);

    auto* mpost = app.add_subcommand("minimize-post", "Minimize a B-formula over an OR, AND or XOR basis");
    mpost->add_option("--basis", o.basis)->required();
    mpost->add_option("--formula", o.formula)->required();
    mpost->add_option("--measure", o.measure)->required()->check(CLI::IsMember({"literals", "gates"}));
    on(mpost, &Runner::minimize_post);

    auto* irr = app.add_subcommand("irreducible", "Decide irreducibility of a relation");
    irr->add_option("--relation", o.relation)->required();
    on(irr, &Runner::irreducible);

    auto* eq = app.add_subcommand("equiv", "Decide equivalence of two formulas");
    eq->add_option("--a", o.a)->required();
    eq->add_option("--b", o.b)->required();
    eq->add_option("--basis", o.basis, "Compare B-formulas over this basis");
    on(eq, &Runner::equiv);

    auto* dual = app.add_subcommand("dualize", "Print the dual formula");
    dual->add_option("--formula", o.formula)->required();
    dual->add_option("--basis", o.basis, "Treat the formula as a B-formula over this basis");
    on(dual, &Runner::dualize_cmd);

    auto* gen = app.add_subcommand("gen-random", "Random formula over a language");
    gen->add_option("--language", o.language)->required();
    gen->add_option("--vars", o.vars)->required();
    gen->add_option("--clauses", o.clauses)->required();
    gen->add_option("--seed", o.seed)->required();
    on(gen, &Runner::gen_random);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive reference searches");
    oracle->require_subcommand(1);
    auto* omc = oracle->add_subcommand("min-cnf", "Minimum equivalent formula by exhaustion");
    omc->add_option("--formula", o.formula)->required();
    omc->add_option("--max-clauses", o.max_clauses)->required();
    omc->add_option("--max-vars", o.max_vars);
    on(omc, &Runner::oracle_min_cnf);
    auto* omb = oracle->add_subcommand("min-bf", "Minimum equivalent B-formula by exhaustion");
    omb->add_option("--basis", o.basis)->required();
    omb->add_option("--formula", o.formula)->required();
    omb->add_option("--measure", o.measure)->required()->check(CLI::IsMember({"literals", "gates"}));
    omb->add_option("--max-size", o.max_size)->required();
    omb->add_option("--max-vars", o.max_vars);
    on(omb, &Runner::oracle_min_bf);
    auto* oex = oracle->add_subcommand("expressible", "Plain expressibility over a base language");
    oex->add_option("--relation", o.relation)->required();
    oex->add_option("--base", o.base, "Base language file");
    oex->add_option("--class", o.cls, "affine, bijunctive, horn, dualHorn, ihsbPlus or ihsbMinus");
    oex->add_option("--max-clauses", o.max_clauses)->required();
    on(oex, &Runner::oracle_expressible);
    auto* omu = oracle->add_subcommand("min-unsat", "Minimum unsatisfiable formula of a language");
    omu->add_option("--language", o.language)->required();
    omu->add_option("--max-clauses", o.max_clauses)->required();
    on(omu, &Runner::oracle_min_unsat);

    auto* gadget = app.add_subcommand("gadget", "Instances from the hardness reductions");
    gadget->require_subcommand(1);
    auto* gup = gadget->add_subcommand("unsat-post", "Unsatisfiability to B-formula minimization");
    gup->add_option("--basis", o.basis)->required();
    gup->add_option("--unsat", o.unsat, "An unsatisfiable B-formula")->required();
    gup->add_option("--formula", o.formula)->required();
    gup->add_option("--measure", o.measure)->required()->check(CLI::IsMember({"literals", "gates"}));
    on(gup, &Runner::gadget_unsat_post);
    auto* gao = gadget->add_subcommand("and-or", "Equivalence gap gadget from AND and OR templates");
    gao->add_option("--basis", o.basis)->required();
    gao->add_option("--and", o.f_and, "Template over x, y")->required();
    gao->add_option("--or", o.f_or, "Template over x, y, t")->required();
    gao->add_option("--h1", o.h1)->required();
    gao->add_option("--h2", o.h2)->required();
    gao->add_option("--measure", o.measure)->required()->check(CLI::IsMember({"literals", "gates"}));
    on(gao, &Runner::gadget_and_or);
    auto* gmj = gadget->add_subcommand("maj", "Equivalence gap gadget from a majority template");
    gmj->add_option("--basis", o.basis)->required();
    gmj->add_option("--maj", o.f_maj, "Template over x, y, z")->required();
    gmj->add_option("--h1", o.h1)->required();
    gmj->add_option("--h2", o.h2)->required();
    gmj->add_option("--measure", o.measure)->required()->check(CLI::IsMember({"literals", "gates"}));
    on(gmj, &Runner::gadget_maj);
    auto* guc = gadget->add_subcommand("unsat-cnf", "Unsatisfiability to formula minimization");
    guc->add_option("--formula", o.formula)->required();
    on(guc, &Runner::gadget_unsat_cnf);
    auto* ghd = gadget->add_subcommand("horn-dnf", "Negate a pure Horn 3-DNF into horn3 clauses");
    ghd->add_option("--dnf", o.dnf)->required();
    on(ghd, &Runner::gadget_horn_dnf);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        return action ? action() : kMalformed;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformed;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformed;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    } catch (const ClassificationError& e) {
        err << "error: " << e.what() << '\n';
        return kClassification;
    } catch (const VocabularyError& e) {
        err << "error: " << e.what() << '\n';
        return kClassification;
    }
}

}  // namespace mee::cli
