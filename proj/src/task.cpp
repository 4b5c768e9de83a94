#include "las/task.hpp"

namespace las {

namespace {

std::string atom_set(const std::vector<Atom>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += atoms[i].text();
    }
    return out + "}";
}

} // namespace

std::string task_text(const LasTask& task) {
    std::string out = canonical_text(task.background);
    for (const auto& [type, values] : task.bias.constants.table())
        for (const Term& v : values) out += "#constant(" + std::string(type.name()) + ", " + v.text() + ").\n";
    for (const auto& m : task.bias.heads) out += "#modeh(" + m.text() + ").\n";
    for (const auto& m : task.bias.bodies)
        out += "#modeb(" + m.text() + (m.naf_allowed || m.comparison ? "" : ", positive") + ").\n";
    const auto& b = task.bias.bounds;
    out += "#maxv(" + std::to_string(b.max_variables) + ").\n";
    out += "#maxb(" + std::to_string(b.max_body_literals) + ").\n";
    out += "#maxrules(" + std::to_string(b.max_rules) + ").\n";
    for (const Example& e : task.examples) {
        out += e.positive() ? "#pos(" : "#neg(";
        out += e.id + "@" + std::to_string(e.penalty) + ", " + atom_set(e.pi.inclusions) + ", " +
               atom_set(e.pi.exclusions) + ", {";
        for (std::size_t i = 0; i < e.context.rules.size(); ++i) {
            if (i) out += ' ';
            out += e.context.rules[i].text();
        }
        out += "}).\n";
    }
    return out;
}

} // namespace las
