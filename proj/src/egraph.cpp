#include "carpentry/egraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace carpentry {

namespace {

std::string atomic_key(const PackedStock& s)
{
    std::ostringstream os;
    os << "A|" << s.stock_id << '|';
    for (const auto& p : s.placements) {
        os << p.part_id << ':' << p.extent.x.ticks << 'x' << p.extent.y.ticks << '@' << p.x.ticks << ',' << p.y.ticks
           << ';';
    }
    return os.str();
}

std::string compose_key(const std::vector<ClassId>& children)
{
    std::ostringstream os;
    os << "C|";
    for (auto c : children) os << c << ',';
    return os.str();
}

} // namespace

std::string Term::key() const
{
    std::ostringstream os;
    os << root << ':';
    for (const auto& [c, n] : chosen) os << c << '=' << n << ',';
    return os.str();
}

PartSet part_set_of(const std::vector<PlacedPart>& placements)
{
    PartSet out;
    for (const auto& p : placements) out.push_back(PartToken{p.part_id, p.extent});
    std::sort(out.begin(), out.end());
    return out;
}

PartSet part_set_of(const Design& design)
{
    PartSet out;
    for (const auto& p : design.parts) out.push_back(PartToken{p.id, p.shape});
    std::sort(out.begin(), out.end());
    return out;
}

ClassId BopEGraph::ensure_class(const PartSet& parts)
{
    if (auto it = class_by_parts_.find(parts); it != class_by_parts_.end()) return it->second;
    const auto id = static_cast<ClassId>(classes_.size());
    classes_.push_back(EClass{id, parts, {}});
    class_by_parts_.emplace(parts, id);
    return id;
}

std::optional<NodeId> BopEGraph::insert_node(ClassId cls, ENode::Kind kind)
{
    const std::string key = std::holds_alternative<AtomicNode>(kind) ? atomic_key(std::get<AtomicNode>(kind).stock)
                                                                     : compose_key(std::get<ComposeNode>(kind).children);
    if (node_by_key_.count(key)) return std::nullopt;
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(ENode{id, cls, std::move(kind)});
    node_by_key_.emplace(key, id);
    classes_[cls]->nodes.push_back(id);
    return id;
}

std::vector<NodeId> BopEGraph::add_arrangement(const Design& design, const Arrangement& arrangement)
{
    const auto stocks = arrangement.packed_stocks();
    std::vector<PlacedPart> all;
    for (const auto& s : stocks) all.insert(all.end(), s.placements.begin(), s.placements.end());
    const PartSet design_parts = part_set_of(design);
    const PartSet covered = part_set_of(all);
    if (covered != design_parts) {
        throw EGraphError("arrangement for '" + arrangement.design_id + "' does not cover exactly the parts of design '" +
                          design.id + "'");
    }
    if (stocks.empty()) throw EGraphError("empty arrangement");

    std::vector<NodeId> added;
    const auto record = [&](std::optional<NodeId> id) {
        if (id) added.push_back(*id);
    };

    const ClassId root = ensure_class(design_parts);
    roots_[design.id] = root;

    std::map<FamilyKey, std::vector<const PackedStock*>> families;
    for (const auto& s : stocks) {
        const Part* part = design.find_part(s.placements.front().part_id);
        families[FamilyKey{part->family, part->material}].push_back(&s);
    }

    std::vector<ClassId> family_classes;
    for (const auto& [fam, members] : families) {
        std::vector<ClassId> stock_classes;
        std::vector<PlacedPart> fam_parts;
        for (const PackedStock* s : members) {
            const ClassId c = ensure_class(part_set_of(s->placements));
            record(insert_node(c, AtomicNode{*s}));
            stock_classes.push_back(c);
            fam_parts.insert(fam_parts.end(), s->placements.begin(), s->placements.end());
        }
        if (stock_classes.size() == 1) {
            family_classes.push_back(stock_classes.front());
            continue;
        }
        std::sort(stock_classes.begin(), stock_classes.end());
        const ClassId fc = ensure_class(part_set_of(fam_parts));
        record(insert_node(fc, ComposeNode{stock_classes}));
        family_classes.push_back(fc);
    }
    if (family_classes.size() > 1) {
        std::sort(family_classes.begin(), family_classes.end());
        record(insert_node(root, ComposeNode{family_classes}));
    }
    return added;
}

std::optional<ClassId> BopEGraph::root_of(const std::string& design_id) const
{
    auto it = roots_.find(design_id);
    if (it == roots_.end()) return std::nullopt;
    return it->second;
}

const EClass& BopEGraph::eclass(ClassId id) const
{
    if (!has_class(id)) throw EGraphError("no e-class " + std::to_string(id));
    return *classes_[id];
}

const ENode& BopEGraph::node(NodeId id) const
{
    if (!has_node(id)) throw EGraphError("no e-node " + std::to_string(id));
    return *nodes_[id];
}

std::vector<ClassId> BopEGraph::class_ids() const
{
    std::vector<ClassId> out;
    for (const auto& c : classes_) {
        if (c) out.push_back(c->id);
    }
    return out;
}

std::vector<NodeId> BopEGraph::node_ids() const
{
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n) out.push_back(n->id);
    }
    return out;
}

std::size_t BopEGraph::class_count() const
{
    return class_ids().size();
}

std::size_t BopEGraph::node_count() const
{
    return node_ids().size();
}

std::optional<ClassId> BopEGraph::find_class(const PartSet& parts) const
{
    auto it = class_by_parts_.find(parts);
    if (it == class_by_parts_.end()) return std::nullopt;
    return it->second;
}

std::vector<ClassId> BopEGraph::topological_order() const
{
    enum class Mark { None, Active, Done };
    std::vector<Mark> mark(classes_.size(), Mark::None);
    std::vector<ClassId> out;
    std::function<void(ClassId)> visit = [&](ClassId c) {
        if (mark[c] == Mark::Done) return;
        if (mark[c] == Mark::Active) throw EGraphError("cycle through e-class " + std::to_string(c));
        mark[c] = Mark::Active;
        for (auto n : classes_[c]->nodes) {
            if (nodes_[n]->is_atomic()) continue;
            for (auto child : nodes_[n]->compose().children) visit(child);
        }
        mark[c] = Mark::Done;
        out.push_back(c);
    };
    for (const auto& c : classes_) {
        if (c) visit(c->id);
    }
    return out;
}

void BopEGraph::remove_unreachable()
{
    std::vector<bool> reachable(classes_.size(), false);
    std::vector<ClassId> stack;
    for (const auto& [id, root] : roots_) stack.push_back(root);
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (reachable[c]) continue;
        reachable[c] = true;
        for (auto n : classes_[c]->nodes) {
            if (nodes_[n]->is_atomic()) continue;
            for (auto child : nodes_[n]->compose().children) stack.push_back(child);
        }
    }
    for (auto& c : classes_) {
        if (!c || reachable[c->id]) continue;
        for (auto n : c->nodes) nodes_[n].reset();
        class_by_parts_.erase(c->parts);
        c.reset();
    }
    for (auto it = node_by_key_.begin(); it != node_by_key_.end();) {
        it = has_node(it->second) ? std::next(it) : node_by_key_.erase(it);
    }
}

BopEGraph BopEGraph::contract(const std::vector<Term>& pareto_terms, std::size_t n,
                              const std::function<double(NodeId)>& score) const
{
    if (n == 0) throw std::invalid_argument("contraction keeps at least one node per class");
    std::map<NodeId, std::size_t> appearances;
    for (const auto& t : pareto_terms) {
        for (const auto& [c, node] : t.chosen) ++appearances[node];
    }

    BopEGraph out = *this;
    for (auto& c : out.classes_) {
        if (!c || c->nodes.size() <= n) continue;
        auto ranked = c->nodes;
        std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
            const auto ca = appearances.count(a) ? appearances.at(a) : 0;
            const auto cb = appearances.count(b) ? appearances.at(b) : 0;
            if (ca != cb) return ca > cb;
            if (score) {
                const double sa = score(a);
                const double sb = score(b);
                if (sa != sb) return sa < sb;
            }
            return a < b;
        });
        for (std::size_t i = n; i < ranked.size(); ++i) out.nodes_[ranked[i]].reset();
        ranked.resize(n);
        std::sort(ranked.begin(), ranked.end());
        c->nodes = std::move(ranked);
    }
    out.remove_unreachable();
    return out;
}

std::string BopEGraph::to_dot() const
{
    std::ostringstream os;
    os << "digraph egraph {\n  compound=true;\n";
    for (const auto& c : classes_) {
        if (!c) continue;
        os << "  subgraph cluster_" << c->id << " {\n    label=\"class " << c->id << " (" << c->parts.size()
           << " parts)\";\n";
        for (auto n : c->nodes) {
            const auto& node = *nodes_[n];
            os << "    n" << n << " [label=\"";
            if (node.is_atomic()) {
                os << node.atomic().stock.stock_id;
            } else {
                os << "compose";
            }
            os << "\"];\n";
        }
        os << "  }\n";
    }
    for (const auto& node : nodes_) {
        if (!node || node->is_atomic()) continue;
        for (auto child : node->compose().children) {
            const auto& cc = *classes_[child];
            os << "  n" << node->id << " -> n" << cc.nodes.front() << " [lhead=cluster_" << child << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

Term sample_term(const BopEGraph& g, ClassId root, Rng& rng)
{
    Term t;
    t.root = root;
    std::vector<ClassId> stack{root};
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (t.chosen.count(c)) continue;
        const auto& cls = g.eclass(c);
        const NodeId n = cls.nodes[uniform_index(rng, cls.nodes.size())];
        t.chosen[c] = n;
        const auto& node = g.node(n);
        if (!node.is_atomic()) {
            const auto& ch = node.compose().children;
            // Reverse push keeps visitation (and RNG draws) in child order.
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
        }
    }
    return t;
}

BigCount count_terms(const BopEGraph& g, ClassId root)
{
    std::map<ClassId, BigCount> memo;
    std::function<BigCount(ClassId)> count = [&](ClassId c) -> BigCount {
        if (auto it = memo.find(c); it != memo.end()) return it->second;
        BigCount total = 0;
        for (auto n : g.eclass(c).nodes) {
            const auto& node = g.node(n);
            if (node.is_atomic()) {
                total += 1;
                continue;
            }
            BigCount prod = 1;
            for (auto child : node.compose().children) prod *= count(child);
            total += prod;
        }
        memo.emplace(c, total);
        return total;
    };
    return count(root);
}

namespace {

using Choice = std::map<ClassId, NodeId>;

std::vector<Choice> enumerate_class(const BopEGraph& g, ClassId c, std::size_t limit)
{
    std::vector<Choice> out;
    for (auto n : g.eclass(c).nodes) {
        if (out.size() >= limit) break;
        const auto& node = g.node(n);
        std::vector<Choice> partial{Choice{{c, n}}};
        if (!node.is_atomic()) {
            for (auto child : node.compose().children) {
                const auto options = enumerate_class(g, child, limit);
                std::vector<Choice> next;
                for (const auto& p : partial) {
                    for (const auto& o : options) {
                        if (next.size() >= limit) break;
                        Choice merged = p;
                        merged.insert(o.begin(), o.end());
                        next.push_back(std::move(merged));
                    }
                }
                partial = std::move(next);
            }
        }
        for (auto& p : partial) {
            if (out.size() >= limit) break;
            out.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace

std::vector<Term> enumerate_terms(const BopEGraph& g, ClassId root, std::size_t limit)
{
    std::vector<Term> out;
    for (auto& choice : enumerate_class(g, root, limit)) out.push_back(Term{root, std::move(choice)});
    return out;
}

std::vector<NodeId> term_atoms(const BopEGraph& g, const Term& term)
{
    std::vector<NodeId> atoms;
    std::vector<ClassId> stack{term.root};
    std::set<ClassId> seen;
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (!seen.insert(c).second) continue;
        const auto it = term.chosen.find(c);
        if (it == term.chosen.end()) throw EGraphError("term has no choice for class " + std::to_string(c));
        const auto& node = g.node(it->second);
        if (node.is_atomic()) {
            atoms.push_back(node.id);
        } else {
            for (auto child : node.compose().children) stack.push_back(child);
        }
    }
    std::sort(atoms.begin(), atoms.end(), [&](NodeId a, NodeId b) {
        return g.node(a).atomic().stock < g.node(b).atomic().stock;
    });
    return atoms;
}

bool is_valid_term(const BopEGraph& g, const Term& term)
{
    if (!g.has_class(term.root)) return false;
    std::set<ClassId> reached;
    std::vector<ClassId> stack{term.root};
    PartSet covered;
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (!reached.insert(c).second) return false; // shared class would double-cover parts
        const auto it = term.chosen.find(c);
        if (it == term.chosen.end() || !g.has_node(it->second)) return false;
        const auto& node = g.node(it->second);
        if (node.eclass != c) return false;
        if (node.is_atomic()) {
            const auto parts = part_set_of(node.atomic().stock.placements);
            covered.insert(covered.end(), parts.begin(), parts.end());
        } else {
            for (auto child : node.compose().children) stack.push_back(child);
        }
    }
    if (reached.size() != term.chosen.size()) return false;
    std::sort(covered.begin(), covered.end());
    return covered == g.eclass(term.root).parts;
}

} // namespace carpentry
