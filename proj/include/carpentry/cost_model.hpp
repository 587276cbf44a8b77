#ifndef CARPENTRY_COST_MODEL_HPP
#define CARPENTRY_COST_MODEL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carpentry/geometry.hpp"
#include "carpentry/model.hpp"

namespace carpentry {

/// One stock in a plan's bill, with the parts it is expected to yield.
/// `placements` may be empty for hand-written plans that only need costing.
struct PlanStock {
    std::string stock_id;
    std::vector<PlacedPart> placements;
};

struct Cut {
    ToolId tool{ToolId::Chopsaw};
    std::size_t stock{0}; ///< index into FabPlan::stocks
    CutLine line;
    std::optional<Length> depth;    ///< drill only; defaults to stock thickness
    std::optional<Length> measured; ///< m'; derived from the piece state when absent
    int angle{0};
    /// Consecutive cuts sharing a token are one physical cut through stacked stocks.
    std::optional<std::string> stack_group;
};

struct FabPlan {
    std::string design_id;
    std::vector<PlanStock> stocks;
    std::vector<Cut> cuts;
};

/// Plan that cannot be executed or costed; `cut` locates the first offending cut.
class PlanError : public InputError {
public:
    PlanError(const std::string& what, std::optional<std::size_t> cut = {})
        : InputError(what), cut_(cut) {}
    [[nodiscard]] std::optional<std::size_t> cut() const { return cut_; }

private:
    std::optional<std::size_t> cut_;
};

struct CutTimeBreakdown {
    double setup{0.0};
    double load{0.0};
    double operation{0.0};

    [[nodiscard]] double total() const { return setup + load + operation; }
};

/// Parameters that must match for a partial setup: chopsaw stop (m', angle),
/// tracksaw guide line (axis, m').
struct SetupParams {
    ToolId tool{ToolId::Chopsaw};
    Axis axis{Axis::X};
    Length measured;
    int angle{0};
    friend bool operator==(const SetupParams&, const SetupParams&) = default;
};

/// A single blade pass, possibly through a stack of identical stocks.
struct PhysicalCut {
    ToolId tool{ToolId::Chopsaw};
    std::vector<std::size_t> stocks; ///< stack members, first is the reference stock
    CutLine line;
    Length measured;
    std::optional<Length> depth;
    int angle{0};

    [[nodiscard]] SetupParams setup() const;
};

/// Time of one physical cut. `starts_run` is true when the previous cut was
/// on a different stock (or stack), which forces a load/unload.
[[nodiscard]] CutTimeBreakdown cut_time(const PhysicalCut& cut, const PhysicalCut* prev, bool starts_run,
                                        std::span<const StockSpec* const> stack, const Libraries& libs);

/// epsilon = min(m' mod m, m - m' mod m) on the 1/16" grid, in ticks.
[[nodiscard]] Length measurement_error(Length measured);

/// Operation error of a tool on a material, in ticks.
[[nodiscard]] Length operation_error(const ToolSpec& tool, Material material);

struct CutCost {
    std::size_t first_cut{0}; ///< index of the first plan cut of this pass
    PhysicalCut cut;
    CutTimeBreakdown time;
    Length epsilon;
    Length op_error;
};

struct PlanEvaluation {
    std::vector<CutCost> cuts;
    double material{0.0};
    Length precision; ///< sum of epsilon + op error, ticks
    double seconds{0.0};

    [[nodiscard]] double precision_inches() const { return precision.inches(); }
    [[nodiscard]] double minutes() const { return seconds / 60.0; }
    [[nodiscard]] CostVector cost(ObjectiveMode mode) const;
};

/// Simulates the plan on its stocks, validates stacking and part yield, and
/// costs every physical cut. Throws PlanError.
[[nodiscard]] PlanEvaluation evaluate_plan(const FabPlan& plan, const Libraries& libs);

[[nodiscard]] double material_cost(const FabPlan& plan, const Libraries& libs);
/// Minutes.
[[nodiscard]] double time_cost(const FabPlan& plan, const Libraries& libs);
/// Inches.
[[nodiscard]] double precision_cost(const FabPlan& plan, const Libraries& libs);
[[nodiscard]] CostVector cost_vector(const FabPlan& plan, const Libraries& libs, ObjectiveMode mode);

inline constexpr std::size_t kMaxStackHeight = 4;

} // namespace carpentry

#endif // CARPENTRY_COST_MODEL_HPP
