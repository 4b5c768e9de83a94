#include "las/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "las/error.hpp"

namespace las {

namespace {

enum class Tok : std::uint8_t { ident, var, integer, directive, punct, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::integer: return "integer '" + t.text + "'";
    case Tok::ident:
    case Tok::var: return "'" + t.text + "'";
    case Tok::directive: return "directive '" + t.text + "'";
    case Tok::punct: return "'" + t.text + "'";
    }
    return t.text;
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        std::size_t start = i, l = line, cl = col;
        if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && word_char(src[j])) ++j;
            Tok kind = std::islower(static_cast<unsigned char>(c)) ? Tok::ident : Tok::var;
            out.push_back({kind, std::string(src.substr(start, j - start)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::integer, std::string(src.substr(start, j - start)), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '#') {
            std::size_t j = i + 1;
            while (j < src.size() && word_char(src[j])) ++j;
            out.push_back({Tok::directive, std::string(src.substr(start, j - start)), l, cl});
            advance(j - i);
            continue;
        }
        static constexpr std::string_view two[] = {":-", "<=", ">=", "!="};
        bool matched = false;
        for (std::string_view p : two) {
            if (src.substr(i, 2) == p) {
                out.push_back({Tok::punct, std::string(p), l, cl});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static constexpr std::string_view one = "(),.{};@<=>-";
        if (one.find(c) != std::string_view::npos) {
            out.push_back({Tok::punct, std::string(1, c), l, cl});
            advance(1);
            continue;
        }
        throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

std::optional<Comparator> comparator_of(const Token& t) {
    if (t.kind != Tok::punct) return std::nullopt;
    if (t.text == "<") return Comparator::lt;
    if (t.text == "<=") return Comparator::le;
    if (t.text == "=") return Comparator::eq;
    if (t.text == "!=") return Comparator::ne;
    if (t.text == ">") return Comparator::gt;
    if (t.text == ">=") return Comparator::ge;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Program program() {
        Program p;
        while (!at_end()) statement(p);
        check_program(p, "");
        return p;
    }

    LasTask task() {
        LasTask t;
        std::set<std::string> ids;
        while (!at_end()) {
            if (peek().kind == Tok::directive) {
                directive(t, ids);
            } else {
                statement(t.background);
            }
        }
        check_program(t.background, "");
        finish_task(t);
        return t;
    }

    Atom single_atom() {
        Atom a = atom();
        if (!at_end()) fail("end of input");
        return a;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::end; }
    Token next() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is_punct(std::string_view p, std::size_t k = 0) const {
        return peek(k).kind == Tok::punct && peek(k).text == p;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, "expected " + expected + ", got " + describe(t));
    }
    void expect(std::string_view p) {
        if (!is_punct(p)) fail("'" + std::string(p) + "'");
        next();
    }
    bool accept(std::string_view p) {
        if (!is_punct(p)) return false;
        next();
        return true;
    }

    std::int32_t integer_literal() {
        bool negative = accept("-");
        if (peek().kind != Tok::integer) fail("integer");
        Token t = next();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) v = std::numeric_limits<std::int64_t>::max();
        if (negative) v = -v;
        if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max())
            throw ParseError(t.line, t.column, "integer out of 32-bit range");
        return static_cast<std::int32_t>(v);
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::ident) {
            if (t.text == "not") fail("term");
            return Term::constant(next().text);
        }
        if (t.kind == Tok::var) return Term::variable(next().text);
        if (t.kind == Tok::integer || is_punct("-")) return Term::integer(integer_literal());
        fail("term");
    }

    Atom atom() {
        if (peek().kind != Tok::ident || peek().text == "not") fail("atom");
        Atom a(next().text);
        if (accept("(")) {
            a.args.push_back(term());
            while (accept(",")) a.args.push_back(term());
            expect(")");
        }
        return a;
    }

    Literal literal() {
        if (peek().kind == Tok::ident && peek().text == "not" && peek(1).kind == Tok::ident) {
            next();
            return Literal::naf(atom());
        }
        if (peek().kind == Tok::ident && !comparator_of(peek(1))) return Literal::pos(atom());
        Term lhs = term();
        auto op = comparator_of(peek());
        if (!op) fail("comparison operator");
        next();
        Term rhs = term();
        return Literal::builtin(lhs, *op, rhs);
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        out.push_back(literal());
        while (accept(",")) out.push_back(literal());
        return out;
    }

    void statement(Program& p) {
        Rule r;
        const Token start = peek();
        if (is_punct(":-")) {
            next();
            r = Rule::constraint(body());
            expect(".");
            p.rules.push_back(std::move(r));
            return;
        }
        if (peek().kind == Tok::integer || is_punct("{") || (is_punct("-") && peek(1).kind == Tok::integer)) {
            std::optional<int> lower, upper;
            if (!is_punct("{")) lower = integer_literal();
            expect("{");
            std::vector<Atom> atoms;
            atoms.push_back(atom());
            while (accept(";")) atoms.push_back(atom());
            expect("}");
            if (peek().kind == Tok::integer || is_punct("-")) upper = integer_literal();
            std::vector<Atom> unique;
            for (Atom& a : atoms)
                if (std::find(unique.begin(), unique.end(), a) == unique.end()) unique.push_back(std::move(a));
            int n = static_cast<int>(unique.size());
            int lo = lower.value_or(0), hi = upper.value_or(n);
            if (lo < 0 || lo > hi || hi > n)
                throw ParseError(start.line, start.column,
                                 "choice bounds must satisfy 0 <= lower <= upper <= " + std::to_string(n));
            r = Rule::choice_rule(lo, std::move(unique), hi, {});
        } else {
            r = Rule::fact(atom());
        }
        if (accept(":-")) r.body = body();
        expect(".");
        p.rules.push_back(std::move(r));
    }

    void check_program(const Program& p, const std::string& where) {
        for (std::size_t i = 0; i < p.rules.size(); ++i)
            if (auto v = first_unsafe_variable(p.rules[i]))
                throw SafetyError(i, std::string(v->name()), where);
        arities_.add(p);
    }

    ModeArg mode_arg() {
        if (peek().kind == Tok::ident && (peek().text == "var" || peek().text == "const") && is_punct("(", 1)) {
            bool var = next().text == "var";
            expect("(");
            if (peek().kind != Tok::ident) fail("type name");
            std::string type = next().text;
            expect(")");
            return var ? ModeArg::var(type) : ModeArg::of_type(type);
        }
        Term t = term();
        if (t.is_variable()) fail("var(type), const(type) or a constant");
        return ModeArg::literal(t);
    }

    ModeDeclaration schema(ModePolarity polarity) {
        ModeDeclaration m;
        m.polarity = polarity;
        const Token start = peek();
        if (peek().kind == Tok::ident && !is_punct("(", 1) && !comparator_of(peek(1))) {
            m.predicate = Symbol(next().text);
        } else if (peek().kind == Tok::ident && (peek().text != "var" && peek().text != "const")) {
            m.predicate = Symbol(next().text);
            expect("(");
            m.args.push_back(mode_arg());
            while (accept(",")) m.args.push_back(mode_arg());
            expect(")");
        } else {
            ModeArg lhs = mode_arg();
            auto op = comparator_of(peek());
            if (!op) fail("comparison operator");
            next();
            ModeArg rhs = mode_arg();
            if (lhs.kind != ModeArg::Kind::var || rhs.kind != ModeArg::Kind::var || lhs.type != rhs.type)
                throw ParseError(start.line, start.column, "comparison modes must compare two var(t) of one type");
            if (polarity == ModePolarity::head)
                throw ParseError(start.line, start.column, "comparison modes are body-only");
            m.comparison = true;
            m.op = *op;
            m.args = {lhs, rhs};
        }
        return m;
    }

    std::size_t bound_value() {
        expect("(");
        std::int32_t v = integer_literal();
        if (v < 0) throw TaskError("search bounds must be nonnegative");
        expect(")");
        expect(".");
        return static_cast<std::size_t>(v);
    }

    std::vector<Atom> ground_atom_set() {
        std::vector<Atom> out;
        expect("{");
        if (!is_punct("}")) {
            do {
                const Token at = peek();
                Atom a = atom();
                if (!a.is_ground()) throw ParseError(at.line, at.column, "example atoms must be ground");
                arities_.add(a);
                if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
            } while (accept(","));
        }
        expect("}");
        return out;
    }

    void directive(LasTask& t, std::set<std::string>& ids) {
        const Token d = next();
        if (d.text == "#modeh" || d.text == "#modeb") {
            bool head = d.text == "#modeh";
            expect("(");
            ModeDeclaration m = schema(head ? ModePolarity::head : ModePolarity::body);
            m.naf_allowed = !head && !m.comparison;
            if (!head && accept(",")) {
                if (peek().kind != Tok::ident || peek().text != "positive") fail("'positive'");
                next();
                m.naf_allowed = false;
            }
            expect(")");
            expect(".");
            if (!m.comparison) arities_.add(Atom(m.predicate, std::vector<Term>(m.args.size())));
            (head ? t.bias.heads : t.bias.bodies).push_back(std::move(m));
        } else if (d.text == "#constant") {
            expect("(");
            if (peek().kind != Tok::ident) fail("type name");
            Symbol type(next().text);
            expect(",");
            Term v = term();
            if (v.is_variable()) fail("constant or integer");
            expect(")");
            expect(".");
            t.bias.constants.add(type, v);
        } else if (d.text == "#pos" || d.text == "#neg") {
            Example e;
            e.polarity = d.text == "#pos" ? ExamplePolarity::positive : ExamplePolarity::negative;
            expect("(");
            const Token id = peek();
            if (id.kind != Tok::ident && id.kind != Tok::integer && id.kind != Tok::var) fail("example identifier");
            e.id = next().text;
            expect("@");
            e.penalty = integer_literal();
            if (e.penalty <= 0)
                throw TaskError("example " + e.id + ": penalty must be a positive integer");
            if (!ids.insert(e.id).second) throw TaskError("duplicate example identifier " + e.id);
            expect(",");
            e.pi.inclusions = ground_atom_set();
            expect(",");
            e.pi.exclusions = ground_atom_set();
            for (const Atom& a : e.pi.inclusions)
                if (std::find(e.pi.exclusions.begin(), e.pi.exclusions.end(), a) != e.pi.exclusions.end())
                    throw TaskError("example " + e.id + ": " + a.text() + " is both included and excluded");
            if (accept(",")) {
                expect("{");
                while (!is_punct("}")) {
                    if (at_end()) fail("'}'");
                    statement(e.context);
                }
                expect("}");
            }
            expect(")");
            expect(".");
            check_program(e.context, " of the context of example " + e.id);
            t.examples.push_back(std::move(e));
        } else if (d.text == "#maxv") {
            t.bias.bounds.max_variables = bound_value();
        } else if (d.text == "#maxb") {
            t.bias.bounds.max_body_literals = bound_value();
        } else if (d.text == "#maxrules") {
            t.bias.bounds.max_rules = bound_value();
        } else {
            throw ParseError(d.line, d.column, "unknown directive " + d.text);
        }
    }

    void finish_task(const LasTask& t) {
        auto check = [&](const ModeDeclaration& m) {
            for (const ModeArg& a : m.args)
                if (a.kind == ModeArg::Kind::constant_of_type && t.bias.constants.of(a.type).empty())
                    throw TaskError("mode " + m.text() + " uses const(" + std::string(a.type.name()) +
                                    ") but no constant of that type is declared");
        };
        for (const auto& m : t.bias.heads) check(m);
        for (const auto& m : t.bias.bodies) check(m);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ArityTable arities_;
};

} // namespace

Program parse_program(std::string_view text) {
    Parser p(text);
    return p.program();
}

LasTask parse_task(std::string_view text) {
    Parser p(text);
    return p.task();
}

Atom parse_atom(std::string_view text) {
    Parser p(text);
    return p.single_atom();
}

} // namespace las
