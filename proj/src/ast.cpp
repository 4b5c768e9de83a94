#include "las/ast.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "las/error.hpp"

namespace las {

namespace {

class SymbolTable {
public:
    SymbolTable() { names_.emplace_back(); }

    std::uint32_t intern(std::string_view name) {
        {
            std::shared_lock lock(mutex_);
            auto it = index_.find(name);
            if (it != index_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        names_.emplace_back(name);
        auto id = static_cast<std::uint32_t>(names_.size() - 1);
        index_.emplace(std::string_view(names_.back()), id);
        return id;
    }

    std::string_view name(std::uint32_t id) {
        std::shared_lock lock(mutex_);
        return names_[id];
    }

private:
    std::shared_mutex mutex_;
    std::deque<std::string> names_;
    std::unordered_map<std::string_view, std::uint32_t> index_;
};

SymbolTable& symbols() {
    static SymbolTable table;
    return table;
}

void append_terms(std::string& out, const std::vector<Term>& args) {
    if (args.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].text();
    }
    out += ')';
}

void collect(const Term& t, std::vector<Symbol>& out) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.symbol()) == out.end())
        out.push_back(t.symbol());
}

void collect(const Atom& a, std::vector<Symbol>& out) {
    for (const Term& t : a.args) collect(t, out);
}

void collect(const Literal& l, std::vector<Symbol>& out) {
    if (l.is_builtin()) {
        collect(l.lhs, out);
        collect(l.rhs, out);
    } else {
        collect(l.atom, out);
    }
}

} // namespace

Symbol::Symbol(std::string_view name) : id_(name.empty() ? 0 : symbols().intern(name)) {}

std::string_view Symbol::name() const { return symbols().name(id_); }

Term Term::integer(std::int32_t value) { return Term(TermKind::integer, value, Symbol()); }
Term Term::constant(std::string_view name) { return Term(TermKind::constant, 0, Symbol(name)); }
Term Term::variable(std::string_view name) { return Term(TermKind::variable, 0, Symbol(name)); }

std::string Term::text() const {
    if (is_integer()) return std::to_string(value_);
    return std::string(symbol_.name());
}

bool operator<(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.is_integer()) return a.value_ < b.value_;
    return a.symbol_ < b.symbol_;
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::string Atom::text() const {
    std::string out(predicate.name());
    append_terms(out, args);
    return out;
}

bool operator<(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

std::string_view comparator_text(Comparator op) {
    switch (op) {
    case Comparator::lt: return "<";
    case Comparator::le: return "<=";
    case Comparator::eq: return "=";
    case Comparator::ne: return "!=";
    case Comparator::gt: return ">";
    case Comparator::ge: return ">=";
    }
    return "?";
}

std::string Literal::text() const {
    switch (kind) {
    case LiteralKind::positive: return atom.text();
    case LiteralKind::naf: return "not " + atom.text();
    case LiteralKind::builtin:
        return lhs.text() + " " + std::string(comparator_text(op)) + " " + rhs.text();
    }
    return {};
}

Rule Rule::fact(Atom head) { return normal(std::move(head), {}); }

Rule Rule::normal(Atom head, std::vector<Literal> body) {
    Rule r;
    r.head_kind = HeadKind::atom;
    r.head = std::move(head);
    r.body = std::move(body);
    return r;
}

Rule Rule::constraint(std::vector<Literal> body) {
    Rule r;
    r.body = std::move(body);
    return r;
}

Rule Rule::choice_rule(int lower, std::vector<Atom> atoms, int upper, std::vector<Literal> body) {
    Rule r;
    r.head_kind = HeadKind::choice;
    r.choice = std::move(atoms);
    r.lower = lower;
    r.upper = upper;
    r.body = std::move(body);
    return r;
}

bool Rule::is_ground() const {
    for (const Atom* a : head_atoms())
        if (!a->is_ground()) return false;
    return std::all_of(body.begin(), body.end(), [](const Literal& l) {
        return l.is_builtin() ? l.lhs.is_ground() && l.rhs.is_ground() : l.atom.is_ground();
    });
}

std::vector<const Atom*> Rule::head_atoms() const {
    std::vector<const Atom*> out;
    if (head_kind == HeadKind::atom) out.push_back(&head);
    if (head_kind == HeadKind::choice)
        for (const Atom& a : choice) out.push_back(&a);
    return out;
}

std::string Rule::text() const {
    std::string out;
    switch (head_kind) {
    case HeadKind::atom: out = head.text(); break;
    case HeadKind::choice:
        out = std::to_string(lower) + " { ";
        for (std::size_t i = 0; i < choice.size(); ++i) {
            if (i) out += " ; ";
            out += choice[i].text();
        }
        out += " } " + std::to_string(upper);
        break;
    case HeadKind::none: break;
    }
    if (!body.empty()) {
        out += head_kind == HeadKind::none ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i].text();
        }
    }
    out += '.';
    return out;
}

std::string canonical_text(const Program& program) {
    std::string out;
    for (const Rule& r : program.rules) {
        out += r.text();
        out += '\n';
    }
    return out;
}

std::vector<Symbol> variables_of(const Rule& rule) {
    std::vector<Symbol> out;
    for (const Atom* a : rule.head_atoms()) collect(*a, out);
    for (const Literal& l : rule.body) collect(l, out);
    return out;
}

std::optional<Symbol> first_unsafe_variable(const Rule& rule) {
    std::vector<Symbol> bound;
    for (const Literal& l : rule.body)
        if (l.is_positive()) collect(l.atom, bound);
    for (Symbol v : variables_of(rule))
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) return v;
    return std::nullopt;
}

void ArityTable::add(const Atom& atom) {
    auto [it, inserted] = arities_.emplace(atom.predicate, atom.arity());
    if (!inserted && it->second != atom.arity())
        throw ArityError(std::string(atom.predicate.name()), it->second, atom.arity());
}

void ArityTable::add(const Rule& rule) {
    for (const Atom* a : rule.head_atoms()) add(*a);
    for (const Literal& l : rule.body)
        if (!l.is_builtin()) add(l.atom);
}

void ArityTable::add(const Program& program) {
    for (const Rule& r : program.rules) add(r);
}

std::optional<std::size_t> ArityTable::arity(Symbol predicate) const {
    auto it = arities_.find(predicate);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
}

} // namespace las
