#ifndef CARPENTRY_PACKING_HPP
#define CARPENTRY_PACKING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carpentry/geometry.hpp"
#include "carpentry/model.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

class InfeasiblePartError : public InputError {
public:
    using InputError::InputError;
};

/// Parts sharing a cross-section family and material pack onto the same stocks.
struct FamilyKey {
    std::string family;
    Material material{Material::Wood};
    friend auto operator<=>(const FamilyKey&, const FamilyKey&) = default;
};

/// One stock with the parts cut from it. Placements are sorted by (y, x).
struct PackedStock {
    std::string stock_id;
    std::vector<PlacedPart> placements;

    friend auto operator<=>(const PackedStock&, const PackedStock&) = default;
};

struct StockInstance {
    std::string stock_id;
    std::size_t index{0};
};

struct Placement {
    std::string part_id;
    std::size_t stock_instance{0};
    Length x;
    Length y;
    Extent extent;
};

struct Arrangement {
    std::string design_id;
    std::vector<StockInstance> stock_instances;
    std::vector<Placement> placements;

    [[nodiscard]] std::vector<PackedStock> packed_stocks() const;
    /// Canonical text form; equal keys mean identical placement multisets.
    [[nodiscard]] std::string key() const;
};

/// Parts of one family in visiting order.
using Traversal = std::vector<std::string>;

/// Tool used for the straight cuts of a stock: chopsaw for lumber, tracksaw for sheets.
[[nodiscard]] ToolId cutting_tool(const StockSpec& stock);

[[nodiscard]] std::map<FamilyKey, std::vector<Part>> group_parts(const Design& design, const Libraries& libs);

/// Greedy traversal packing onto repeated instances of one designated stock
/// (by default the largest). When the next part does not fit the open stock,
/// that stock is closed and a fresh instance is opened. Lumber uses interval
/// packing; sheets use first-fit shelves keyed by part height.
///
/// Returns nullopt if some part is larger than the designated stock; throws
/// InfeasiblePartError if a part fits no stock of the family at all.
[[nodiscard]] std::optional<std::vector<PackedStock>> pack_traversal(std::span<const Part> group,
                                                                     const Traversal& traversal,
                                                                     std::span<const StockSpec> family_stocks,
                                                                     Length kerf,
                                                                     std::optional<std::size_t> designated = {});

/// Replaces each stock with the cheapest stock of the family that still
/// contains its placements.
[[nodiscard]] std::vector<PackedStock> shrink_to_fit(std::vector<PackedStock> stocks,
                                                     std::span<const StockSpec> family_stocks);

[[nodiscard]] Arrangement make_arrangement(const std::string& design_id, std::vector<PackedStock> stocks);

/// Distinct packings of one family group: each traversal packed once per
/// designated stock size, as-is and shrunk to fit.
[[nodiscard]] std::vector<std::vector<PackedStock>> pack_fragments(std::span<const Part> group,
                                                                   std::span<const Traversal> orders,
                                                                   std::span<const StockSpec> family_stocks,
                                                                   Length kerf);

/// Traversal orders: length-descending, identity, then random permutations up
/// to `traversals` total. Each order is packed once per stock size of the
/// family, both as-is and shrunk to fit. Result is deduplicated and sorted.
[[nodiscard]] std::vector<Arrangement> generate_arrangements(const Design& design, const Libraries& libs,
                                                             std::size_t traversals, Rng& rng);

} // namespace carpentry

#endif // CARPENTRY_PACKING_HPP
