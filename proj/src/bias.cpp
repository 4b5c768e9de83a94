#include "las/bias.hpp"

#include <algorithm>

namespace las {

std::string ModeArg::text() const {
    switch (kind) {
    case Kind::var: return "var(" + std::string(type.name()) + ")";
    case Kind::constant_of_type: return "const(" + std::string(type.name()) + ")";
    case Kind::fixed: return fixed.text();
    }
    return {};
}

std::string ModeDeclaration::text() const {
    if (comparison)
        return args[0].text() + " " + std::string(comparator_text(op)) + " " + args[1].text();
    std::string out(predicate.name());
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            out += args[i].text();
        }
        out += ')';
    }
    return out;
}

void TypedConstants::add(Symbol type, Term value) {
    auto& values = table_[type];
    auto it = std::lower_bound(values.begin(), values.end(), value);
    if (it == values.end() || !(*it == value)) values.insert(it, value);
}

const std::vector<Term>& TypedConstants::of(Symbol type) const {
    static const std::vector<Term> none;
    auto it = table_.find(type);
    return it == table_.end() ? none : it->second;
}

bool TypedConstants::has(Symbol type, const Term& value) const {
    const auto& values = of(type);
    return std::binary_search(values.begin(), values.end(), value);
}

} // namespace las
