#include "mee/text_io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "mee/errors.hpp"

namespace mee {

namespace {

struct Line {
    int number;
    std::vector<std::string> words;
};

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string strip_comment(std::string_view line) {
    auto pos = line.find('#');
    return std::string(line.substr(0, pos));
}

std::vector<Line> lines_of(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto words = split_words(strip_comment(text.substr(start, end - start)));
        if (!words.empty()) out.push_back({number, std::move(words)});
        start = end + 1;
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

bool valid_name(std::string_view s) {
    if (s.empty() || s[0] == '!') return false;
    for (char c : s)
        if (c == '(' || c == ')' || c == '#' || c == '=' || std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string checked_name(const std::string& s, int line, const char* what) {
    if (!valid_name(s)) fail(line, std::string("invalid ") + what + " name '" + s + "'");
    return s;
}

int parse_int(const std::string& s, int line, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 0 || v > 1'000'000'000) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        fail(line, std::string("invalid ") + what + " '" + s + "'");
    }
}

std::uint32_t parse_tuple(const std::string& s, int arity, int line) {
    if (static_cast<int>(s.size()) != arity)
        fail(line, "tuple '" + s + "' has length " + std::to_string(s.size()) + ", expected " + std::to_string(arity));
    std::uint32_t t = 0;
    for (char c : s) {
        if (c != '0' && c != '1') fail(line, "tuple '" + s + "' is not a bit string");
        t = (t << 1) | (c == '1' ? 1U : 0U);
    }
    return t;
}

std::string tuple_string(std::uint32_t t, int arity) {
    std::string s;
    for (int j = 0; j < arity; ++j) s += tuple_bit(t, arity, j) ? '1' : '0';
    return s;
}

struct LanguageBuilder {
    explicit LanguageBuilder(const Limits& l) : limits(l) {}

    const Limits& limits;
    std::vector<Relation> relations;
    std::set<std::string> names;
    int depth = 0;

    void add(Relation r, int line) {
        if (!names.insert(r.name()).second) fail(line, "duplicate relation name '" + r.name() + "'");
        relations.push_back(std::move(r));
    }

    // Consumes relation blocks and include lines; returns the first other line.
    std::size_t consume(const std::vector<Line>& lines, std::size_t i, const std::filesystem::path& dir,
                        bool allow_include) {
        while (i < lines.size()) {
            const auto& w = lines[i].words;
            if (w[0] == "relation") {
                i = relation_block(lines, i);
            } else if (w[0] == "include" && allow_include) {
                if (w.size() != 2) fail(lines[i].number, "expected 'include PATH'");
                include(dir / w[1], lines[i].number);
                ++i;
            } else {
                break;
            }
        }
        return i;
    }

    std::size_t relation_block(const std::vector<Line>& lines, std::size_t i) {
        const auto& head = lines[i];
        const auto& w = head.words;
        if (w.size() != 4 || w[2] != "arity") fail(head.number, "expected 'relation NAME arity K'");
        auto name = checked_name(w[1], head.number, "relation");
        int arity = parse_int(w[3], head.number, "arity");
        if (arity < 1) fail(head.number, "arity must be at least 1");
        if (arity > limits.max_arity)
            throw ResourceError("line " + std::to_string(head.number) + ": arity " + std::to_string(arity) +
                                " exceeds cap " + std::to_string(limits.max_arity));
        std::vector<std::uint32_t> tuples;
        ++i;
        while (i < lines.size() && !lines[i].words.empty() && std::isdigit(static_cast<unsigned char>(lines[i].words[0][0]))) {
            for (const auto& t : lines[i].words) tuples.push_back(parse_tuple(t, arity, lines[i].number));
            ++i;
        }
        if (tuples.empty()) fail(head.number, "relation '" + name + "' has no tuples");
        try {
            add(Relation(name, arity, std::move(tuples), limits.max_arity), head.number);
        } catch (const ModelError& e) {
            fail(head.number, e.what());
        }
        return i;
    }

    void include(const std::filesystem::path& path, int line) {
        if (depth > 16) fail(line, "include nesting too deep");
        std::ifstream in(path);
        if (!in) fail(line, "cannot open '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        auto text = ss.str();
        auto sub = lines_of(text);
        ++depth;
        std::size_t end = consume(sub, 0, path.parent_path(), true);
        --depth;
        if (end != sub.size())
            throw ParseError(path.string() + ": line " + std::to_string(sub[end].number) + ": unexpected '" +
                             sub[end].words[0] + "'");
    }
};

Source read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return Source{ss.str(), path.parent_path()};
}

// ---- B-formula s-expressions ----

struct SexprParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[pos]))) {
                ++pos;
            } else if (s[pos] == '#') {
                while (pos < s.size() && s[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::string atom() {
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
               s[pos] != ')' && s[pos] != '#')
            ++pos;
        if (pos == start) throw ParseError("expected a name at offset " + std::to_string(start));
        auto a = std::string(s.substr(start, pos - start));
        if (!valid_name(a)) throw ParseError("invalid name '" + a + "'");
        return a;
    }

    BFormula expr(int depth) {
        if (depth > 10000) throw ParseError("formula nesting too deep");
        skip();
        if (pos >= s.size()) throw ParseError("unexpected end of formula");
        if (s[pos] == ')') throw ParseError("unexpected ')' at offset " + std::to_string(pos));
        if (s[pos] != '(') return BFormula::var(atom());
        ++pos;
        skip();
        auto fn = atom();
        std::vector<BFormula> args;
        for (;;) {
            skip();
            if (pos >= s.size()) throw ParseError("unbalanced parentheses");
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            args.push_back(expr(depth + 1));
        }
        return BFormula::apply(std::move(fn), std::move(args));
    }
};

void write_bformula(std::ostream& os, const BFormula& f) {
    if (f.is_variable()) {
        os << f.symbol();
        return;
    }
    os << '(' << f.symbol();
    for (const auto& a : f.args()) {
        os << ' ';
        write_bformula(os, a);
    }
    os << ')';
}

BoolFunction function_line(const Line& line) {
    const auto& w = line.words;
    if (w.size() != 6 || w[0] != "function" || w[2] != "arity" || w[4] != "table")
        fail(line.number, "expected 'function NAME arity K table BITS'");
    auto name = checked_name(w[1], line.number, "function");
    int arity = parse_int(w[3], line.number, "arity");
    try {
        return BoolFunction::from_bits(name, arity, w[5]);
    } catch (const ModelError& e) {
        fail(line.number, e.what());
    }
}

// Consumes function lines and `basis PATH` lines.
std::size_t consume_functions(const std::vector<Line>& lines, std::size_t i, const std::filesystem::path& dir,
                              std::vector<BoolFunction>& out) {
    while (i < lines.size()) {
        const auto& w = lines[i].words;
        if (w[0] == "function") {
            out.push_back(function_line(lines[i]));
        } else if (w[0] == "basis" || w[0] == "include") {
            if (w.size() != 2) fail(lines[i].number, "expected '" + w[0] + " PATH'");
            auto b = load_basis((dir / w[1]).string());
            out.insert(out.end(), b.functions().begin(), b.functions().end());
        } else {
            break;
        }
        ++i;
    }
    return i;
}

Basis make_basis(std::vector<BoolFunction> fs) {
    try {
        return Basis(std::move(fs));
    } catch (const ModelError& e) {
        throw ParseError(e.what());
    }
}

CnfFormula cnf_from_lines(const std::vector<Line>& lines, const std::filesystem::path& dir, const Limits& limits) {
    LanguageBuilder lb{limits};
    std::vector<std::string> vars;
    std::map<std::string, int> var_ids;
    bool vars_seen = false;
    std::vector<std::pair<int, const Line*>> clause_lines;
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto& line = lines[i];
        const auto& w = line.words;
        if (w[0] == "relation") {
            i = lb.relation_block(lines, i);
            continue;
        }
        if (w[0] == "language") {
            if (w.size() != 2) fail(line.number, "expected 'language PATH'");
            lb.include(dir / w[1], line.number);
        } else if (w[0] == "vars") {
            vars_seen = true;
            for (std::size_t j = 1; j < w.size(); ++j) {
                auto v = checked_name(w[j], line.number, "variable");
                if (!var_ids.emplace(v, static_cast<int>(vars.size())).second)
                    fail(line.number, "duplicate variable '" + v + "'");
                vars.push_back(v);
            }
        } else if (w[0] == "clause") {
            if (w.size() < 2) fail(line.number, "expected 'clause RELATION var...'");
            clause_lines.push_back({line.number, &line});
        } else {
            fail(line.number, "unexpected '" + w[0] + "'");
        }
        ++i;
    }
    if (!vars_seen && !clause_lines.empty()) fail(clause_lines.front().first, "clause before any 'vars' line");
    ConstraintLanguage lang;
    try {
        lang = ConstraintLanguage(lb.relations);
    } catch (const ModelError& e) {
        throw ParseError(e.what());
    }
    std::vector<Clause> clauses;
    for (const auto& [number, line] : clause_lines) {
        const auto& w = line->words;
        auto r = lang.find(w[1]);
        if (!r) fail(number, "unknown relation '" + w[1] + "'");
        Clause c;
        c.relation = *r;
        for (std::size_t j = 2; j < w.size(); ++j) {
            auto it = var_ids.find(w[j]);
            if (it == var_ids.end()) fail(number, "undeclared variable '" + w[j] + "'");
            c.vars.push_back(it->second);
        }
        if (static_cast<int>(c.vars.size()) != lang[*r].arity())
            fail(number, "relation '" + w[1] + "' expects " + std::to_string(lang[*r].arity()) + " arguments, got " +
                             std::to_string(c.vars.size()));
        clauses.push_back(std::move(c));
    }
    return CnfFormula(std::move(lang), std::move(vars), std::move(clauses));
}

std::vector<Line> tail(const std::vector<Line>& lines, std::size_t from) {
    return std::vector<Line>(lines.begin() + static_cast<std::ptrdiff_t>(from), lines.end());
}

}  // namespace

Source read_source(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return Source{ss.str(), std::filesystem::current_path()};
    }
    return read_file(path);
}

Relation parse_relation(std::string_view text, const Limits& limits) {
    auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty relation file");
    if (lines[0].words[0] != "relation") fail(lines[0].number, "expected 'relation NAME arity K'");
    LanguageBuilder lb{limits};
    auto end = lb.relation_block(lines, 0);
    if (end != lines.size()) fail(lines[end].number, "unexpected '" + lines[end].words[0] + "'");
    return lb.relations.front();
}

ConstraintLanguage parse_language(std::string_view text, const std::filesystem::path& dir, const Limits& limits) {
    auto lines = lines_of(text);
    LanguageBuilder lb{limits};
    auto end = lb.consume(lines, 0, dir, true);
    if (end != lines.size()) fail(lines[end].number, "unexpected '" + lines[end].words[0] + "'");
    if (lb.relations.empty()) throw ParseError("language has no relations");
    return ConstraintLanguage(std::move(lb.relations));
}

CnfFormula parse_cnf(std::string_view text, const std::filesystem::path& dir, const Limits& limits) {
    return cnf_from_lines(lines_of(text), dir, limits);
}

BoolFunction parse_function(std::string_view text) {
    auto lines = lines_of(text);
    if (lines.size() != 1) throw ParseError("expected exactly one function line");
    return function_line(lines[0]);
}

Basis parse_basis(std::string_view text, const std::filesystem::path& dir) {
    auto lines = lines_of(text);
    std::vector<BoolFunction> fs;
    auto end = consume_functions(lines, 0, dir, fs);
    if (end != lines.size()) fail(lines[end].number, "unexpected '" + lines[end].words[0] + "'");
    if (fs.empty()) throw ParseError("basis has no functions");
    return make_basis(std::move(fs));
}

BFormula parse_bformula(std::string_view text) {
    SexprParser p{text};
    auto f = p.expr(0);
    p.skip();
    if (p.pos != text.size()) throw ParseError("trailing text after formula at offset " + std::to_string(p.pos));
    return f;
}

MeeInstance parse_instance(std::string_view text, const std::filesystem::path& dir, const Limits& limits) {
    auto lines = lines_of(text);
    if (lines.empty() || lines[0].words[0] != "mee") throw ParseError("expected 'mee bound=K measure=M' header");
    MeeInstance inst;
    bool have_bound = false, have_measure = false;
    for (std::size_t j = 1; j < lines[0].words.size(); ++j) {
        const auto& kv = lines[0].words[j];
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail(lines[0].number, "expected key=value, got '" + kv + "'");
        auto key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "bound") {
            inst.bound = parse_int(value, lines[0].number, "bound");
            have_bound = true;
        } else if (key == "measure") {
            inst.measure = parse_size_measure(value);
            have_measure = true;
        } else if (key == "fixed-negative") {
            if (value != "true" && value != "false") fail(lines[0].number, "fixed-negative must be true or false");
            inst.fixed_negative = value == "true";
        } else {
            fail(lines[0].number, "unknown key '" + key + "'");
        }
    }
    if (!have_bound || !have_measure) fail(lines[0].number, "header needs bound= and measure=");
    auto body = tail(lines, 1);
    bool post = false;
    for (const auto& l : body)
        if (l.words[0] == "formula" || l.words[0] == "function" || l.words[0] == "basis") post = true;
    if (!post) {
        if (inst.measure != SizeMeasure::Clauses) throw ParseError("CNF instances use measure=clauses");
        inst.formula = cnf_from_lines(body, dir, limits);
        return inst;
    }
    if (inst.measure == SizeMeasure::Clauses) throw ParseError("B-formula instances use literals or gates");
    std::vector<BoolFunction> fs;
    auto end = consume_functions(body, 0, dir, fs);
    if (end + 1 != body.size() || body[end].words[0] != "formula")
        throw ParseError("B-formula instance body must be function lines followed by one 'formula EXPR' line");
    const auto& fl = body[end].words;
    std::string expr;
    for (std::size_t j = 1; j < fl.size(); ++j) expr += fl[j] + ' ';
    inst.formula = PostFormula{make_basis(std::move(fs)), parse_bformula(expr)};
    return inst;
}

Dnf parse_dnf(std::string_view text) {
    Dnf dnf;
    for (const auto& line : lines_of(text)) {
        if (line.words[0] != "term") fail(line.number, "expected 'term literal...'");
        DnfTerm term;
        for (std::size_t j = 1; j < line.words.size(); ++j) {
            const auto& w = line.words[j];
            bool neg = !w.empty() && w[0] == '!';
            auto name = neg ? w.substr(1) : w;
            term.push_back(Literal{checked_name(name, line.number, "variable"), !neg});
        }
        if (term.empty()) fail(line.number, "empty term");
        dnf.push_back(std::move(term));
    }
    return dnf;
}

ConstraintLanguage load_language(const std::string& path, const Limits& limits) {
    auto src = read_source(path);
    return parse_language(src.text, src.dir, limits);
}

CnfFormula load_cnf(const std::string& path, const Limits& limits) {
    auto src = read_source(path);
    return parse_cnf(src.text, src.dir, limits);
}

Basis load_basis(const std::string& path) {
    auto src = read_source(path);
    return parse_basis(src.text, src.dir);
}

BFormula load_bformula(const std::string& path) { return parse_bformula(read_source(path).text); }

MeeInstance load_instance(const std::string& path, const Limits& limits) {
    auto src = read_source(path);
    return parse_instance(src.text, src.dir, limits);
}

Dnf load_dnf(const std::string& path) { return parse_dnf(read_source(path).text); }

std::string serialize(const Relation& r) {
    std::ostringstream os;
    os << "relation " << r.name() << " arity " << r.arity() << '\n';
    for (std::size_t i = 0; i < r.tuples().size(); ++i)
        os << tuple_string(r.tuples()[i], r.arity()) << (i + 1 == r.tuples().size() ? '\n' : ' ');
    return os.str();
}

std::string serialize(const ConstraintLanguage& l) {
    std::string s;
    for (const auto& r : l.relations()) s += serialize(r);
    return s;
}

std::string serialize(const CnfFormula& f) {
    std::ostringstream os;
    os << serialize(f.language());
    os << "vars";
    for (const auto& v : f.variables()) os << ' ' << v;
    os << '\n';
    for (const auto& c : f.clauses()) {
        os << "clause " << f.relation_of(c).name();
        for (int v : c.vars) os << ' ' << f.variables()[v];
        os << '\n';
    }
    return os.str();
}

std::string serialize(const BoolFunction& f) {
    return "function " + f.name() + " arity " + std::to_string(f.arity()) + " table " + f.bits() + "\n";
}

std::string serialize(const Basis& b) {
    std::string s;
    for (const auto& f : b.functions()) s += serialize(f);
    return s;
}

std::string serialize(const BFormula& f) {
    std::ostringstream os;
    write_bformula(os, f);
    return os.str();
}

std::string serialize(const PostFormula& f) { return serialize(f.basis) + "formula " + serialize(f.formula) + "\n"; }

std::string serialize(const MeeInstance& inst) {
    std::string s = "mee bound=" + std::to_string(inst.bound) + " measure=" + to_string(inst.measure);
    if (inst.fixed_negative) s += " fixed-negative=true";
    s += '\n';
    if (const auto* cnf = std::get_if<CnfFormula>(&inst.formula)) return s + serialize(*cnf);
    return s + serialize(std::get<PostFormula>(inst.formula));
}

std::string serialize(const Dnf& dnf) {
    std::string s;
    for (const auto& term : dnf) {
        s += "term";
        for (const auto& lit : term) s += (lit.positive ? " " : " !") + lit.var;
        s += '\n';
    }
    return s;
}

std::string describe(const CnfFormula& f) {
    std::string s;
    for (const auto& c : f.clauses()) {
        if (!s.empty()) s += ' ';
        s += f.relation_of(c).name() + '(';
        for (std::size_t j = 0; j < c.vars.size(); ++j) s += (j ? "," : "") + f.variables()[c.vars[j]];
        s += ')';
    }
    return s.empty() ? "true" : s;
}

}  // namespace mee
