#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace las {

// Interned symbol. Equality is by id; ordering is by name so that sorted
// containers are independent of interning order.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string_view name);

    std::string_view name() const;
    std::uint32_t id() const { return id_; }
    bool empty() const { return id_ == 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator<(Symbol a, Symbol b) { return a.id_ != b.id_ && a.name() < b.name(); }

private:
    std::uint32_t id_ = 0;
};

enum class TermKind : std::uint8_t { integer, constant, variable };

class Term {
public:
    Term() = default;
    static Term integer(std::int32_t value);
    static Term constant(std::string_view name);
    static Term variable(std::string_view name);
    static Term constant(Symbol s) { return Term(TermKind::constant, 0, s); }
    static Term variable(Symbol s) { return Term(TermKind::variable, 0, s); }

    TermKind kind() const { return kind_; }
    bool is_integer() const { return kind_ == TermKind::integer; }
    bool is_constant() const { return kind_ == TermKind::constant; }
    bool is_variable() const { return kind_ == TermKind::variable; }
    bool is_ground() const { return kind_ != TermKind::variable; }
    std::int32_t value() const { return value_; }
    Symbol symbol() const { return symbol_; }

    std::string text() const;

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.value_ == b.value_ && a.symbol_ == b.symbol_;
    }
    // Integers ascending, then constants by name, then variables by name.
    friend bool operator<(const Term& a, const Term& b);

    std::size_t hash() const {
        return (static_cast<std::size_t>(kind_) << 60) ^
               (static_cast<std::size_t>(static_cast<std::uint32_t>(value_)) << 24) ^ symbol_.id();
    }

private:
    Term(TermKind k, std::int32_t v, Symbol s) : kind_(k), value_(v), symbol_(s) {}

    TermKind kind_ = TermKind::integer;
    std::int32_t value_ = 0;
    Symbol symbol_;
};

struct Atom {
    Symbol predicate;
    std::vector<Term> args;

    Atom() = default;
    Atom(Symbol p, std::vector<Term> a) : predicate(p), args(std::move(a)) {}
    Atom(std::string_view p, std::vector<Term> a = {}) : predicate(p), args(std::move(a)) {}

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;
    std::string text() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b);
};

struct AtomHash {
    std::size_t operator()(const Atom& a) const {
        std::size_t h = a.predicate.id() * 0x9e3779b97f4a7c15ULL;
        for (const Term& t : a.args) h = (h ^ t.hash()) * 0x100000001b3ULL;
        return h;
    }
};

enum class Comparator : std::uint8_t { lt, le, eq, ne, gt, ge };

std::string_view comparator_text(Comparator op);

enum class LiteralKind : std::uint8_t { positive, naf, builtin };

struct Literal {
    LiteralKind kind = LiteralKind::positive;
    Atom atom;
    Term lhs;
    Comparator op = Comparator::eq;
    Term rhs;

    static Literal pos(Atom a) { return Literal{LiteralKind::positive, std::move(a), {}, Comparator::eq, {}}; }
    static Literal naf(Atom a) { return Literal{LiteralKind::naf, std::move(a), {}, Comparator::eq, {}}; }
    static Literal builtin(Term l, Comparator op, Term r) {
        return Literal{LiteralKind::builtin, {}, l, op, r};
    }

    bool is_positive() const { return kind == LiteralKind::positive; }
    bool is_naf() const { return kind == LiteralKind::naf; }
    bool is_builtin() const { return kind == LiteralKind::builtin; }
    std::string text() const;

    friend bool operator==(const Literal& a, const Literal& b) {
        if (a.kind != b.kind) return false;
        if (a.is_builtin()) return a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs;
        return a.atom == b.atom;
    }
};

enum class HeadKind : std::uint8_t { atom, choice, none };

struct Rule {
    HeadKind head_kind = HeadKind::none;
    Atom head;                  // head_kind == atom
    std::vector<Atom> choice;   // head_kind == choice
    int lower = 0;
    int upper = 0;
    std::vector<Literal> body;
    // Variables introduced from var(t) placeholders carry their type; the
    // grounder ranges them over constants of that type only.
    std::map<Symbol, Symbol> var_types;

    static Rule fact(Atom head);
    static Rule normal(Atom head, std::vector<Literal> body);
    static Rule constraint(std::vector<Literal> body);
    static Rule choice_rule(int lower, std::vector<Atom> atoms, int upper, std::vector<Literal> body);

    bool is_constraint() const { return head_kind == HeadKind::none; }
    bool is_choice() const { return head_kind == HeadKind::choice; }
    bool is_fact() const { return head_kind == HeadKind::atom && body.empty(); }
    bool is_ground() const;

    // Atoms appearing in the head (one for normal rules, all elements for choices).
    std::vector<const Atom*> head_atoms() const;

    std::string text() const;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head_kind == b.head_kind && a.head == b.head && a.choice == b.choice &&
               a.lower == b.lower && a.upper == b.upper && a.body == b.body &&
               a.var_types == b.var_types;
    }
};

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(const Program&, const Program&) = default;
};

// Deterministic serialization; parse_program(canonical_text(p)) == p.
std::string canonical_text(const Program& program);

// Variables of a rule in first-occurrence order (head, then body).
std::vector<Symbol> variables_of(const Rule& rule);

// The first variable that occurs in the head, a naf-literal or a builtin but
// in no positive body literal.
std::optional<Symbol> first_unsafe_variable(const Rule& rule);

// Records predicate arities and reports the first clash.
class ArityTable {
public:
    void add(const Atom& atom);
    void add(const Rule& rule);
    void add(const Program& program);
    std::optional<std::size_t> arity(Symbol predicate) const;

private:
    std::map<Symbol, std::size_t> arities_;
};

} // namespace las

template <>
struct std::hash<las::Atom> {
    std::size_t operator()(const las::Atom& a) const { return las::AtomHash{}(a); }
};
