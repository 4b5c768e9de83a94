#include "las/explain.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "las/error.hpp"

namespace las {

namespace {

const char* const assumed_false = "assumed false (not in answer set)";

class Builder {
public:
    Builder(const GroundProgram& ground, const Interpretation& model, const ExplainOptions& options)
        : ground_(ground), t_(translate_choice_traced(ground)), options_(options) {
        full_ = with_complements(t_, model);
        stages();
    }

    ExplanationDag build(AtomId target) {
        atom_node(target);
        dag_.root = 0;
        return std::move(dag_);
    }

private:
    bool enabled(const GroundRule& r) const {
        if (r.is_constraint()) return false;
        return std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return full_.contains(a); });
    }

    // Least fixpoint of the reduct, one stage per iteration.
    void stages() {
        const std::size_t n = t_.program.atoms.size();
        stage_.assign(n, 0);
        just_.assign(n, 0);
        for (int k = 1;; ++k) {
            std::vector<AtomId> fresh;
            for (std::size_t i = 0; i < t_.program.rules.size(); ++i) {
                const GroundRule& r = t_.program.rules[i];
                if (!enabled(r)) continue;
                AtomId h = r.head.front();
                if (stage_[h] != 0) continue;
                bool ready = std::all_of(r.pos.begin(), r.pos.end(),
                                         [&](AtomId a) { return stage_[a] != 0 && stage_[a] < k; });
                if (!ready) continue;
                stage_[h] = k;
                just_[h] = i;
                fresh.push_back(h);
            }
            if (fresh.empty()) break;
        }
    }

    bool visible(AtomId a) const { return a < t_.original_atoms; }

    std::size_t add(ExplanationNode node) {
        dag_.nodes.push_back(std::move(node));
        return dag_.nodes.size() - 1;
    }

    std::size_t atom_node(AtomId a) {
        if (auto it = atoms_.find(a); it != atoms_.end()) return it->second;
        const std::size_t ti = just_[a];
        const std::size_t src = t_.source[ti];
        const GroundRule& original = ground_.rules[src];
        const Atom& atom = ground_.atoms.atom(a);

        ExplanationNode node;
        node.atom = atom;
        node.label = atom.text();
        node.stage = stage_[a];
        bool is_fact = original.head_kind == HeadKind::atom && original.pos.empty() && original.neg.empty();
        node.kind = is_fact ? NodeKind::fact : NodeKind::atom;
        if (options_.all_supports) node.notes = alternates(a, ti);
        std::size_t id = add(std::move(node));
        atoms_[a] = id;
        if (is_fact) return id;

        const GroundRule& r = t_.program.rules[ti];
        ExplanationNode rule;
        rule.kind = NodeKind::rule;
        rule.rule = src;
        rule.label = ground_.rule(src).text();
        std::size_t rid = add(std::move(rule));
        dag_.edges.push_back({rid, id});
        for (AtomId b : r.pos) {
            if (!visible(b)) continue;
            dag_.edges.push_back({atom_node(b), rid});
        }
        for (AtomId b : r.neg) {
            if (!visible(b)) continue;
            dag_.edges.push_back({naf_node(b), rid});
        }
        return id;
    }

    std::size_t naf_node(AtomId a) {
        if (auto it = nafs_.find(a); it != nafs_.end()) return it->second;
        ExplanationNode node;
        node.kind = NodeKind::naf;
        node.atom = ground_.atoms.atom(a);
        node.label = "not " + node.atom.text();
        node.notes.push_back(assumed_false);
        std::size_t id = add(std::move(node));
        nafs_[a] = id;
        return id;
    }

    std::vector<std::string> alternates(AtomId a, std::size_t chosen) const {
        std::set<std::string> seen{ground_.rule(t_.source[chosen]).text()};
        std::vector<std::string> out;
        for (std::size_t i = 0; i < t_.program.rules.size(); ++i) {
            const GroundRule& r = t_.program.rules[i];
            if (i == chosen || r.is_constraint() || r.head.front() != a || !enabled(r)) continue;
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId b) { return full_.contains(b); })) continue;
            std::string text = ground_.rule(t_.source[i]).text();
            if (seen.insert(text).second) out.push_back("also supported by: " + text);
        }
        return out;
    }

    const GroundProgram& ground_;
    ChoiceTranslation t_;
    ExplainOptions options_;
    Interpretation full_;
    std::vector<int> stage_;
    std::vector<std::size_t> just_;
    std::map<AtomId, std::size_t> atoms_;
    std::map<AtomId, std::size_t> nafs_;
    ExplanationDag dag_;
};

std::string escaped(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

ExplanationDag explain_atom(const GroundProgram& ground, const Interpretation& model, const Atom& target,
                            const ExplainOptions& options) {
    auto id = ground.atoms.find(target);
    if (!id || !model.contains(*id))
        throw InputError("atom " + target.text() + " is not in the answer set; explain its absence instead");
    if (!is_stable(ground, model)) throw InputError("the given interpretation is not an answer set");
    return Builder(ground, model, options).build(*id);
}

ExplanationDag explain_absence(const GroundProgram& ground, const Interpretation& model, const Atom& target) {
    auto id = ground.atoms.find(target);
    if (!id) throw InputError("atom " + target.text() + " is not in the Herbrand base");
    if (model.contains(*id)) throw InputError("atom " + target.text() + " is in the answer set");

    ExplanationDag dag;
    ExplanationNode root;
    root.kind = NodeKind::absent;
    root.atom = target;
    root.label = "not " + target.text();
    dag.nodes.push_back(root);
    for (std::size_t i = 0; i < ground.rules.size(); ++i) {
        const GroundRule& r = ground.rules[i];
        if (std::find(r.head.begin(), r.head.end(), *id) == r.head.end()) continue;
        ExplanationNode rule;
        rule.kind = NodeKind::rule;
        rule.rule = i;
        rule.label = ground.rule(i).text();
        dag.nodes.push_back(rule);
        std::size_t rid = dag.nodes.size() - 1;
        dag.edges.push_back({rid, dag.root});

        // body literals in canonical text order; the first failing one blocks the rule
        std::vector<std::pair<std::string, ExplanationNode>> candidates;
        for (AtomId b : r.pos) {
            if (model.contains(b)) continue;
            ExplanationNode n;
            n.kind = NodeKind::blocker;
            n.atom = ground.atoms.atom(b);
            n.label = n.atom.text() + " false";
            candidates.emplace_back(n.atom.text(), n);
        }
        for (AtomId b : r.neg) {
            if (!model.contains(b)) continue;
            ExplanationNode n;
            n.kind = NodeKind::blocker;
            n.atom = ground.atoms.atom(b);
            n.label = "not " + n.atom.text() + " fails (" + n.atom.text() + " true)";
            candidates.emplace_back("not " + n.atom.text(), n);
        }
        ExplanationNode blocker;
        if (candidates.empty()) {
            blocker.kind = NodeKind::blocker;
            blocker.atom = target;
            blocker.label = r.is_choice() ? target.text() + " not chosen" : "body holds";
        } else {
            std::sort(candidates.begin(), candidates.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            blocker = candidates.front().second;
        }
        dag.nodes.push_back(blocker);
        dag.edges.push_back({dag.nodes.size() - 1, rid});
    }
    if (dag.nodes.size() == 1) dag.nodes[0].notes.push_back("no rule has " + target.text() + " in its head");
    return dag;
}

std::string to_graph_text(const ExplanationDag& dag) {
    std::string out = "digraph explanation {\n";
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        const ExplanationNode& n = dag.nodes[i];
        std::string label = n.label;
        for (const std::string& note : n.notes) label += "\n" + note;
        std::string attrs;
        switch (n.kind) {
        case NodeKind::rule: attrs = "shape=diamond"; break;
        case NodeKind::naf: attrs = "shape=box, style=dashed"; break;
        case NodeKind::blocker: attrs = "shape=box, style=dotted"; break;
        case NodeKind::fact: attrs = "shape=box, style=bold"; break;
        case NodeKind::atom:
        case NodeKind::absent: attrs = "shape=box"; break;
        }
        // newline escapes are part of the label syntax, so escape the rest first
        std::string text;
        for (char c : escaped(label)) text += c == '\n' ? std::string("\\n") : std::string(1, c);
        out += "  n" + std::to_string(i) + " [label=\"" + text + "\", " + attrs + "];\n";
    }
    for (const ExplanationEdge& e : dag.edges)
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + ";\n";
    out += "}\n";
    return out;
}

} // namespace las
