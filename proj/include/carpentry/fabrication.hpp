#ifndef CARPENTRY_FABRICATION_HPP
#define CARPENTRY_FABRICATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "carpentry/cost_model.hpp"
#include "carpentry/packing.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

/// Permutation of a unit's cut indices.
using CutOrder = std::vector<std::size_t>;

/// Stocks processed together: one stock, or up to four stocks with identical
/// geometry stacked on a stackable tool. Cuts come from the guillotine tree of
/// the (shared) layout.
struct Unit {
    std::vector<PackedStock> members;
    std::vector<CutLine> cuts;
    ToolId tool{ToolId::Chopsaw};
    Length kerf;
    Extent stock_dims;

    [[nodiscard]] std::size_t size() const { return cuts.size(); }
};

/// Layout identity ignoring part ids: stock id plus placement rectangles.
[[nodiscard]] std::string geometry_key(const PackedStock& stock);

/// Single-stock unit.
[[nodiscard]] Unit make_unit(const PackedStock& stock, const Libraries& libs);

/// Groups identical-geometry stocks into stacks (when the cutting tool is
/// stackable) of at most four, in canonical order.
[[nodiscard]] std::vector<Unit> make_units(std::vector<PackedStock> stocks, const Libraries& libs);

/// Concatenates units, each cut in its given order. Stacked members share a
/// stack group per physical cut.
[[nodiscard]] FabPlan build_plan(const std::string& design_id, const std::vector<Unit>& units,
                                 const std::vector<CutOrder>& orders);

[[nodiscard]] bool is_feasible_order(const Unit& unit, const CutOrder& order);

/// All feasible orders in lexicographic order, at most `cap`.
[[nodiscard]] std::vector<CutOrder> feasible_orders(const Unit& unit, std::size_t cap);

/// Uniformly picks among applicable cuts at each step.
[[nodiscard]] CutOrder random_feasible_order(const Unit& unit, Rng& rng);

/// Repeatedly takes the applicable cut with the smallest position along its
/// axis (or largest, when `descending`).
[[nodiscard]] CutOrder sweep_order(const Unit& unit, bool descending);

[[nodiscard]] CutOrder identity_order(const Unit& unit);

} // namespace carpentry

#endif // CARPENTRY_FABRICATION_HPP
