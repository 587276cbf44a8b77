#ifndef CARPENTRY_CUT_ORDERING_HPP
#define CARPENTRY_CUT_ORDERING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "carpentry/cost_model.hpp"
#include "carpentry/fabrication.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

struct OrderEval {
    CutOrder order;
    Length precision; ///< ticks
    double seconds{0.0};
};

/// Best orders found for one stock layout, costed as a single-stock plan.
struct OrderCacheEntry {
    OrderEval best_precision;
    OrderEval best_time;
    std::size_t evaluations{0};
};

/// Keyed by geometry_key(), so stocks with identical layouts share entries.
class OrderCache {
public:
    [[nodiscard]] const OrderCacheEntry* find(const std::string& key) const;
    [[nodiscard]] bool contains(const std::string& key) const { return entries_.count(key) > 0; }
    /// Keeps an existing entry.
    void insert(const std::string& key, OrderCacheEntry entry);
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, OrderCacheEntry> entries_;
};

/// Seed for a node's order search, independent of visiting order.
[[nodiscard]] std::uint64_t enode_seed(std::uint64_t master, const std::string& geometry_key);

/// Evaluates at most P distinct orders: every feasible order when there are
/// no more than P, otherwise the two sweeps followed by random feasible
/// orders. Throws std::invalid_argument if P == 0.
[[nodiscard]] OrderCacheEntry optimize_enode(const PackedStock& stock, const Libraries& libs, std::size_t P,
                                             Rng& rng);

/// A term's stocks grouped into processing units, in canonical order.
struct TermLayout {
    std::string design_id;
    std::vector<Unit> units;
};

[[nodiscard]] TermLayout term_layout(const std::string& design_id, std::vector<PackedStock> stocks,
                                     const Libraries& libs);

struct Bounds {
    CostVector lower;
    CostVector upper;
    std::vector<CutOrder> precision_orders; ///< per unit, attains upper f_p
    std::vector<CutOrder> time_orders;      ///< per unit, attains upper f_t
};

/// Throws std::out_of_range if a unit's layout is not cached.
[[nodiscard]] Bounds term_bounds(const TermLayout& layout, const OrderCache& cache, const Libraries& libs,
                                 ObjectiveMode mode);

struct RefineParams {
    std::size_t t{20};
    /// Order spaces up to this size are enumerated instead of flip-searched.
    std::size_t exhaustive_limit{720};
};

struct RefinedPlan {
    FabPlan plan;
    CostVector cost;
};

struct RefineResult {
    bool pruned{false};
    std::vector<RefinedPlan> plans; ///< mutually non-dominated, sorted by cost
    std::size_t evaluations{0};
};

/// Prunes when some archive point weakly dominates the lower bound.
/// Otherwise returns the non-dominated plans among those visited: the
/// upper-bound plans when t == 0, every order combination when the order
/// space is at most `exhaustive_limit`, else t passes of feasible swaps from
/// both upper-bound starting points.
[[nodiscard]] RefineResult refine_term(const TermLayout& layout, const Bounds& bounds,
                                       std::span<const CostVector> archive_front, const RefineParams& params,
                                       const Libraries& libs, ObjectiveMode mode, Rng& rng);

/// Product of per-unit feasible order counts, saturating at `cap + 1`.
[[nodiscard]] std::size_t order_combinations(const TermLayout& layout, std::size_t cap);

/// Every combination of per-unit feasible orders, costed. For oracles and
/// tests; throws std::length_error above `cap` combinations.
[[nodiscard]] std::vector<RefinedPlan> all_order_plans(const TermLayout& layout, const Libraries& libs,
                                                       ObjectiveMode mode, std::size_t cap);

} // namespace carpentry

#endif // CARPENTRY_CUT_ORDERING_HPP
