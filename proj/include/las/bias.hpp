#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "las/ast.hpp"

namespace las {

// One argument slot of a mode schema.
struct ModeArg {
    enum class Kind : std::uint8_t { var, constant_of_type, fixed };
    Kind kind = Kind::fixed;
    Symbol type;  // var / constant_of_type
    Term fixed;   // fixed

    static ModeArg var(std::string_view type) { return {Kind::var, Symbol(type), {}}; }
    static ModeArg of_type(std::string_view type) { return {Kind::constant_of_type, Symbol(type), {}}; }
    static ModeArg literal(Term t) { return {Kind::fixed, {}, t}; }

    std::string text() const;
    friend bool operator==(const ModeArg&, const ModeArg&) = default;
};

enum class ModePolarity : std::uint8_t { head, body };

// A head or body mode declaration. Comparison modes admit `Vi op Vj` for two
// variables of one type; atom modes describe a predicate literal.
struct ModeDeclaration {
    ModePolarity polarity = ModePolarity::head;
    bool comparison = false;
    Symbol predicate;
    std::vector<ModeArg> args;  // atom modes; comparison modes keep the two sides
    Comparator op = Comparator::lt;
    bool naf_allowed = false;

    std::string text() const;
    friend bool operator==(const ModeDeclaration&, const ModeDeclaration&) = default;
};

// Declared constants per type, each list sorted in universe order.
class TypedConstants {
public:
    void add(Symbol type, Term value);
    const std::vector<Term>& of(Symbol type) const;
    bool has(Symbol type, const Term& value) const;
    bool empty() const { return table_.empty(); }
    const std::map<Symbol, std::vector<Term>>& table() const { return table_; }

    friend bool operator==(const TypedConstants&, const TypedConstants&) = default;

private:
    std::map<Symbol, std::vector<Term>> table_;
};

struct SpaceBounds {
    std::size_t max_body_literals = 3;
    std::size_t max_variables = 3;
    std::size_t max_rules = 3;
    friend bool operator==(const SpaceBounds&, const SpaceBounds&) = default;
};

struct ModeBias {
    std::vector<ModeDeclaration> heads;
    std::vector<ModeDeclaration> bodies;
    TypedConstants constants;
    SpaceBounds bounds;
};

} // namespace las
