#ifndef CARPENTRY_EGRAPH_HPP
#define CARPENTRY_EGRAPH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "carpentry/design_space.hpp"
#include "carpentry/packing.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

using ClassId = std::uint32_t;
using NodeId = std::uint32_t;

/// Part identity inside the e-graph: id plus post-adjustment shape, so that
/// design variants with different dimensions never share classes by accident.
struct PartToken {
    std::string part_id;
    Extent shape;
    friend auto operator<=>(const PartToken&, const PartToken&) = default;
};

using PartSet = std::vector<PartToken>; ///< sorted, unique

/// Cuts on a single stock: the unit of cut-order optimization.
struct AtomicNode {
    PackedStock stock;
};

/// Disjoint union of child classes.
struct ComposeNode {
    std::vector<ClassId> children; ///< sorted
};

struct ENode {
    using Kind = std::variant<AtomicNode, ComposeNode>;

    NodeId id{0};
    ClassId eclass{0};
    Kind kind;

    [[nodiscard]] bool is_atomic() const { return std::holds_alternative<AtomicNode>(kind); }
    [[nodiscard]] const AtomicNode& atomic() const { return std::get<AtomicNode>(kind); }
    [[nodiscard]] const ComposeNode& compose() const { return std::get<ComposeNode>(kind); }
};

struct EClass {
    ClassId id{0};
    PartSet parts;
    std::vector<NodeId> nodes;
};

/// A choice of e-node for every class reachable from `root`.
struct Term {
    ClassId root{0};
    std::map<ClassId, NodeId> chosen;

    /// Canonical text form; equal keys mean identical selections.
    [[nodiscard]] std::string key() const;
    friend bool operator==(const Term&, const Term&) = default;
};

class EGraphError : public InputError {
public:
    using InputError::InputError;
};

/// Space-sharing DAG of alternative fabrication arrangements. Classes are
/// keyed by the part set they produce; nodes are hash-consed. Ids are never
/// reused, so removed entries leave gaps.
class BopEGraph {
public:
    /// Inserts one arrangement of `design`; returns the ids of newly created
    /// nodes (empty if everything was already present). Throws EGraphError if
    /// the arrangement does not cover exactly the design's parts.
    std::vector<NodeId> add_arrangement(const Design& design, const Arrangement& arrangement);

    /// Root class of a design already added.
    [[nodiscard]] std::optional<ClassId> root_of(const std::string& design_id) const;
    [[nodiscard]] const std::map<std::string, ClassId>& roots() const { return roots_; }

    [[nodiscard]] bool has_class(ClassId id) const { return id < classes_.size() && classes_[id].has_value(); }
    [[nodiscard]] bool has_node(NodeId id) const { return id < nodes_.size() && nodes_[id].has_value(); }
    [[nodiscard]] const EClass& eclass(ClassId id) const;
    [[nodiscard]] const ENode& node(NodeId id) const;
    [[nodiscard]] std::vector<ClassId> class_ids() const;
    [[nodiscard]] std::vector<NodeId> node_ids() const;
    [[nodiscard]] std::size_t class_count() const;
    [[nodiscard]] std::size_t node_count() const;
    [[nodiscard]] std::optional<ClassId> find_class(const PartSet& parts) const;

    /// Classes in an order where every class comes after all of its
    /// descendants. Throws EGraphError on a cycle.
    [[nodiscard]] std::vector<ClassId> topological_order() const;

    /// Per class, keeps the `n` best nodes ranked by (appearances in
    /// `pareto_terms` desc, `score` asc, id asc), then drops classes that are
    /// no longer reachable from any root. Roots are never removed.
    [[nodiscard]] BopEGraph contract(const std::vector<Term>& pareto_terms, std::size_t n,
                                     const std::function<double(NodeId)>& score = {}) const;

    /// Graphviz rendering for inspection.
    [[nodiscard]] std::string to_dot() const;

private:
    ClassId ensure_class(const PartSet& parts);
    std::optional<NodeId> insert_node(ClassId cls, ENode::Kind kind);
    void remove_unreachable();

    std::vector<std::optional<EClass>> classes_;
    std::vector<std::optional<ENode>> nodes_;
    std::map<PartSet, ClassId> class_by_parts_;
    std::map<std::string, NodeId> node_by_key_;
    std::map<std::string, ClassId> roots_;
};

/// Uniform independent choice of node per visited class.
[[nodiscard]] Term sample_term(const BopEGraph& g, ClassId root, Rng& rng);

/// Number of distinct terms rooted at `root`.
[[nodiscard]] BigCount count_terms(const BopEGraph& g, ClassId root);

/// All terms rooted at `root`, at most `limit` of them, in node-id order.
[[nodiscard]] std::vector<Term> enumerate_terms(const BopEGraph& g, ClassId root, std::size_t limit);

/// Atomic nodes selected by a term, in canonical order.
[[nodiscard]] std::vector<NodeId> term_atoms(const BopEGraph& g, const Term& term);

/// Checks totality over reachable classes and exact part coverage.
[[nodiscard]] bool is_valid_term(const BopEGraph& g, const Term& term);

[[nodiscard]] PartSet part_set_of(const std::vector<PlacedPart>& placements);
[[nodiscard]] PartSet part_set_of(const Design& design);

} // namespace carpentry

#endif // CARPENTRY_EGRAPH_HPP
