#include "carpentry/cost_model.hpp"

#include <algorithm>
#include <set>
#include <variant>

#include "carpentry/libraries.hpp"

namespace carpentry {

SetupParams PhysicalCut::setup() const
{
    switch (tool) {
    case ToolId::Chopsaw: return SetupParams{tool, Axis::X, measured, angle};
    case ToolId::Tracksaw: return SetupParams{tool, line.axis, measured, 0};
    default: return SetupParams{tool, line.axis, measured, angle};
    }
}

Length measurement_error(Length measured)
{
    const auto m = kMeasurementGrid.ticks;
    const auto r = ((measured.ticks % m) + m) % m;
    return Length{std::min(r, m - r)};
}

Length operation_error(const ToolSpec& tool, Material material)
{
    if (tool.id == ToolId::Jigsaw && material == Material::Metal) return tool.op_error * kMetalJigsawErrorFactor;
    return tool.op_error;
}

namespace {

double operation_seconds(const ToolSpec& tool, const PhysicalCut& cut, const StockSpec& stock)
{
    return std::visit(
        [&](const auto& rate) -> double {
            using R = std::decay_t<decltype(rate)>;
            if constexpr (std::is_same_v<R, PerCut>) {
                return rate.seconds;
            } else if constexpr (std::is_same_v<R, PerInch>) {
                const Length travel = stock.is_sheet() ? cut.line.span_length() : family_cut_width(stock.family);
                return travel.inches() / rate.inches_per_second;
            } else {
                const Length depth = cut.depth.value_or(family_thickness(stock.family));
                return depth.inches() / rate.inches_per_second;
            }
        },
        tool.op_rate);
}

} // namespace

CutTimeBreakdown cut_time(const PhysicalCut& cut, const PhysicalCut* prev, bool starts_run,
                          std::span<const StockSpec* const> stack, const Libraries& libs)
{
    if (stack.empty()) throw PlanError("cut has no stock");
    const ToolSpec& tool = libs.tool(cut.tool);
    const StockSpec& ref = *stack.front();
    const bool metal = ref.material == Material::Metal;

    CutTimeBreakdown t;
    const bool partial = tool.setup_partial && prev && prev->setup() == cut.setup();
    t.setup = partial ? *tool.setup_partial : (ref.is_sheet() ? tool.setup_full_sheet : tool.setup_full_lumber);

    if (starts_run) {
        double w = ref.load_full + ref.unload_full;
        for (std::size_t i = 1; i < stack.size(); ++i) w += stack[i]->load_partial + stack[i]->unload_partial;
        t.load = metal ? w * kMetalLoadFactor : w;
    }

    const double op = operation_seconds(tool, cut, ref);
    t.operation = metal ? op * kMetalOperationFactor : op;
    return t;
}

CostVector PlanEvaluation::cost(ObjectiveMode mode) const
{
    CostVector c;
    c.material = material;
    c.time = minutes();
    if (mode == ObjectiveMode::Three) c.precision = precision_inches();
    return c;
}

double material_cost(const FabPlan& plan, const Libraries& libs)
{
    double total = 0.0;
    for (const auto& s : plan.stocks) {
        const auto& spec = libs.stock(s.stock_id);
        total += spec.material == Material::Metal ? spec.price * kMetalPriceFactor : spec.price;
    }
    return total;
}

PlanEvaluation evaluate_plan(const FabPlan& plan, const Libraries& libs)
{
    PlanEvaluation ev;
    std::vector<const StockSpec*> specs;
    std::vector<PieceState> states;
    for (const auto& s : plan.stocks) {
        const StockSpec* spec = libs.find_stock(s.stock_id);
        if (!spec) throw PlanError("unknown stock '" + s.stock_id + "'");
        specs.push_back(spec);
        states.emplace_back(spec->dims);
    }
    ev.material = material_cost(plan, libs);

    ev.cuts.reserve(plan.cuts.size());
    std::set<std::string> finished_groups;
    const PhysicalCut* prev = nullptr;
    std::size_t i = 0;
    while (i < plan.cuts.size()) {
        const Cut& head = plan.cuts[i];
        if (head.stock >= plan.stocks.size()) throw PlanError("cut references unknown stock", i);

        std::size_t end = i + 1;
        if (head.stack_group) {
            if (finished_groups.count(*head.stack_group)) {
                throw PlanError("stack group '" + *head.stack_group + "' is not contiguous", i);
            }
            while (end < plan.cuts.size() && plan.cuts[end].stack_group == head.stack_group) ++end;
            finished_groups.insert(*head.stack_group);
        }

        PhysicalCut pc;
        pc.tool = head.tool;
        pc.line = head.line;
        pc.depth = head.depth;
        pc.angle = head.angle;
        std::vector<const StockSpec*> stack;
        for (std::size_t j = i; j < end; ++j) {
            const Cut& c = plan.cuts[j];
            if (c.stock >= plan.stocks.size()) throw PlanError("cut references unknown stock", j);
            if (c.tool != head.tool || c.line != head.line || c.depth != head.depth || c.angle != head.angle) {
                throw PlanError("stacked cuts must share tool and geometry", j);
            }
            if (std::find(pc.stocks.begin(), pc.stocks.end(), c.stock) != pc.stocks.end()) {
                throw PlanError("stock appears twice in one stack", j);
            }
            if (j > i && (specs[c.stock]->family != specs[head.stock]->family ||
                          specs[c.stock]->material != specs[head.stock]->material)) {
                throw PlanError("stacked stocks must share family and material", j);
            }
            if (j > i && (specs[c.stock]->dims != specs[head.stock]->dims ||
                          states[c.stock].pieces() != states[head.stock].pieces())) {
                throw PlanError("stacked stocks must have identical geometry", j);
            }
            pc.stocks.push_back(c.stock);
            stack.push_back(specs[c.stock]);
        }
        const ToolSpec& tool = libs.tool(head.tool);
        if (stack.size() > 1 && !tool.stackable) throw PlanError(to_string(head.tool) + " cannot cut stacked stock", i);
        if (stack.size() > kMaxStackHeight) throw PlanError("stack exceeds maximum height", i);

        std::optional<Length> measured;
        for (std::size_t j = i; j < end; ++j) {
            const Cut& c = plan.cuts[j];
            auto& state = states[c.stock];
            const auto m = head.tool == ToolId::Drill ? state.measure(c.line) : state.apply(c.line, tool.kerf);
            if (!m) throw PlanError("cut does not apply to any current piece", j);
            if (!measured) measured = *m;
        }
        if (head.measured) {
            if (head.measured->ticks <= 0) throw PlanError("measured length must be positive", i);
            measured = head.measured;
        }
        pc.measured = *measured;

        const bool starts_run = !prev || prev->stocks != pc.stocks;
        CutCost cc;
        cc.first_cut = i;
        cc.time = cut_time(pc, prev, starts_run, stack, libs);
        cc.epsilon = measurement_error(pc.measured);
        cc.op_error = operation_error(tool, stack.front()->material);
        cc.cut = std::move(pc);
        ev.precision += cc.epsilon + cc.op_error;
        ev.seconds += cc.time.total();
        ev.cuts.push_back(std::move(cc));
        prev = &ev.cuts.back().cut;
        i = end;
    }

    for (std::size_t s = 0; s < plan.stocks.size(); ++s) {
        if (!yields_all(states[s], plan.stocks[s].placements)) {
            throw PlanError("stock " + std::to_string(s) + " does not yield all of its parts");
        }
    }
    return ev;
}

double time_cost(const FabPlan& plan, const Libraries& libs)
{
    return evaluate_plan(plan, libs).minutes();
}

double precision_cost(const FabPlan& plan, const Libraries& libs)
{
    return evaluate_plan(plan, libs).precision_inches();
}

CostVector cost_vector(const FabPlan& plan, const Libraries& libs, ObjectiveMode mode)
{
    return evaluate_plan(plan, libs).cost(mode);
}

} // namespace carpentry
