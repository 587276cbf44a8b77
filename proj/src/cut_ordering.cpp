#include "carpentry/cut_ordering.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "carpentry/analysis.hpp"
#include "carpentry/libraries.hpp"

namespace carpentry {

const OrderCacheEntry* OrderCache::find(const std::string& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void OrderCache::insert(const std::string& key, OrderCacheEntry entry)
{
    entries_.emplace(key, std::move(entry));
}

std::uint64_t enode_seed(std::uint64_t master, const std::string& geometry_key)
{
    return derive_seed(master, stable_hash(geometry_key));
}

namespace {

OrderEval evaluate_order(const Unit& unit, const CutOrder& order, const Libraries& libs)
{
    Unit single = unit;
    single.members.resize(1);
    const auto ev = evaluate_plan(build_plan("", {single}, {order}), libs);
    return OrderEval{order, ev.precision, ev.seconds};
}

bool better_precision(const OrderEval& a, const OrderEval& b)
{
    return std::tie(a.precision, a.seconds) < std::tie(b.precision, b.seconds);
}

bool better_time(const OrderEval& a, const OrderEval& b)
{
    return std::tie(a.seconds, a.precision) < std::tie(b.seconds, b.precision);
}

CostVector make_cost(const PlanEvaluation& ev, ObjectiveMode mode)
{
    return ev.cost(mode);
}

} // namespace

OrderCacheEntry optimize_enode(const PackedStock& stock, const Libraries& libs, std::size_t P, Rng& rng)
{
    if (P == 0) throw std::invalid_argument("P must be at least 1");
    const Unit unit = make_unit(stock, libs);

    std::vector<CutOrder> candidates = feasible_orders(unit, P + 1);
    if (candidates.size() > P) {
        candidates.clear();
        std::set<CutOrder> seen;
        const auto offer = [&](CutOrder o) {
            if (candidates.size() < P && seen.insert(o).second) candidates.push_back(std::move(o));
        };
        offer(sweep_order(unit, false));
        offer(sweep_order(unit, true));
        for (std::size_t attempt = 0; candidates.size() < P && attempt < 50 * P; ++attempt) {
            offer(random_feasible_order(unit, rng));
        }
    }

    OrderCacheEntry entry;
    for (const auto& order : candidates) {
        const OrderEval e = evaluate_order(unit, order, libs);
        if (entry.evaluations == 0 || better_precision(e, entry.best_precision)) entry.best_precision = e;
        if (entry.evaluations == 0 || better_time(e, entry.best_time)) entry.best_time = e;
        ++entry.evaluations;
    }
    return entry;
}

TermLayout term_layout(const std::string& design_id, std::vector<PackedStock> stocks, const Libraries& libs)
{
    return TermLayout{design_id, make_units(std::move(stocks), libs)};
}

Bounds term_bounds(const TermLayout& layout, const OrderCache& cache, const Libraries& libs, ObjectiveMode mode)
{
    Bounds b;
    for (const auto& unit : layout.units) {
        const auto* entry = cache.find(geometry_key(unit.members.front()));
        if (!entry) throw std::out_of_range("cut orders not cached for stock " + unit.members.front().stock_id);
        b.precision_orders.push_back(entry->best_precision.order);
        b.time_orders.push_back(entry->best_time.order);
    }
    const auto ev_p = evaluate_plan(build_plan(layout.design_id, layout.units, b.precision_orders), libs);
    const auto ev_t = evaluate_plan(build_plan(layout.design_id, layout.units, b.time_orders), libs);
    b.upper.material = ev_p.material;
    b.upper.time = ev_t.minutes();
    if (mode == ObjectiveMode::Three) b.upper.precision = ev_p.precision_inches();

    Length precision;
    double seconds = 0.0;
    double first_extra = std::numeric_limits<double>::infinity();
    for (const auto& unit : layout.units) {
        const ToolSpec& tool = libs.tool(unit.tool);
        std::vector<const StockSpec*> stack;
        for (const auto& m : unit.members) stack.push_back(&libs.stock(m.stock_id));
        const Length p = operation_error(tool, stack.front()->material);
        for (std::size_t i = 0; i < unit.cuts.size(); ++i) {
            const CutLine& c = unit.cuts[i];
            const Length extent = c.axis == Axis::X ? unit.stock_dims.x : unit.stock_dims.y;
            // every edge pair the cut's piece could have, in any order
            std::vector<Length> lows{Length{}};
            std::vector<Length> highs{extent};
            for (const auto& o : unit.cuts) {
                if (o.axis != c.axis) continue;
                if (o.at + unit.kerf < c.at) lows.push_back(o.at + unit.kerf);
                if (o.at > c.at) highs.push_back(o.at);
            }
            Length eps = kMeasurementGrid;
            for (const Length lo : lows) {
                for (const Length hi : highs) {
                    Rect piece;
                    if (c.axis == Axis::X) {
                        piece = Rect{lo, Length{}, hi, Length{}};
                    } else {
                        piece = Rect{Length{}, lo, Length{}, hi};
                    }
                    eps = std::min(eps, measurement_error(governing_measurement(piece, c.axis, c.at, unit.stock_dims)));
                }
            }
            precision += p + eps;

            PhysicalCut pc;
            pc.tool = unit.tool;
            pc.line = c;
            const auto t = cut_time(pc, nullptr, i == 0, stack, libs);
            const double min_setup = tool.setup_partial ? std::min(*tool.setup_partial, t.setup) : t.setup;
            seconds += t.load + t.operation + min_setup;
            first_extra = std::min(first_extra, t.setup - min_setup);
        }
    }
    if (first_extra != std::numeric_limits<double>::infinity()) seconds += first_extra;

    b.lower.material = ev_p.material;
    b.lower.time = seconds / 60.0;
    if (mode == ObjectiveMode::Three) b.lower.precision = precision.inches();
    return b;
}

std::size_t order_combinations(const TermLayout& layout, std::size_t cap)
{
    std::size_t total = 1;
    for (const auto& unit : layout.units) {
        const std::size_t n = feasible_orders(unit, cap + 1).size();
        if (n == 0) return 0;
        if (total > (cap + 1) / n) return cap + 1;
        total = std::min(total * n, cap + 1);
    }
    return total;
}

std::vector<RefinedPlan> all_order_plans(const TermLayout& layout, const Libraries& libs, ObjectiveMode mode,
                                         std::size_t cap)
{
    if (order_combinations(layout, cap) > cap) throw std::length_error("order space too large to enumerate");
    std::vector<std::vector<CutOrder>> per_unit;
    for (const auto& unit : layout.units) per_unit.push_back(feasible_orders(unit, cap));

    std::vector<RefinedPlan> out;
    std::vector<std::size_t> idx(per_unit.size(), 0);
    while (true) {
        std::vector<CutOrder> orders;
        for (std::size_t u = 0; u < per_unit.size(); ++u) orders.push_back(per_unit[u][idx[u]]);
        FabPlan plan = build_plan(layout.design_id, layout.units, orders);
        const auto ev = evaluate_plan(plan, libs);
        out.push_back(RefinedPlan{std::move(plan), make_cost(ev, mode)});

        std::size_t u = per_unit.size();
        while (u > 0) {
            --u;
            if (++idx[u] < per_unit[u].size()) break;
            idx[u] = 0;
            if (u == 0) return out;
        }
        if (per_unit.empty()) return out;
    }
}

namespace {

std::vector<RefinedPlan> nondominated(std::vector<RefinedPlan> plans)
{
    std::vector<CostVector> costs;
    for (const auto& p : plans) costs.push_back(p.cost);
    std::vector<RefinedPlan> out;
    for (auto i : pareto_indices(costs)) out.push_back(std::move(plans[i]));
    return out;
}

bool try_swap(const Unit& unit, CutOrder& order, Rng& rng)
{
    const std::size_t k = order.size();
    if (k < 2) return false;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const std::size_t i = uniform_index(rng, k);
        std::size_t j = uniform_index(rng, k - 1);
        if (j >= i) ++j;
        std::swap(order[i], order[j]);
        if (is_feasible_order(unit, order)) return true;
        std::swap(order[i], order[j]);
    }
    return false;
}

} // namespace

RefineResult refine_term(const TermLayout& layout, const Bounds& bounds, std::span<const CostVector> archive_front,
                         const RefineParams& params, const Libraries& libs, ObjectiveMode mode, Rng& rng)
{
    RefineResult result;
    for (const auto& a : archive_front) {
        if (weakly_dominates(a, bounds.lower)) {
            result.pruned = true;
            return result;
        }
    }

    std::vector<RefinedPlan> visited;
    const auto visit = [&](const std::vector<CutOrder>& orders) -> CostVector {
        FabPlan plan = build_plan(layout.design_id, layout.units, orders);
        const auto cost = make_cost(evaluate_plan(plan, libs), mode);
        visited.push_back(RefinedPlan{std::move(plan), cost});
        ++result.evaluations;
        return cost;
    };

    if (params.t > 0 && order_combinations(layout, params.exhaustive_limit) <= params.exhaustive_limit) {
        visited = all_order_plans(layout, libs, mode, params.exhaustive_limit);
        result.evaluations = visited.size();
        result.plans = nondominated(std::move(visited));
        return result;
    }

    struct Walker {
        std::vector<CutOrder> orders;
        CostVector cost;
    };
    std::vector<Walker> walkers;
    walkers.push_back(Walker{bounds.precision_orders, visit(bounds.precision_orders)});
    if (bounds.time_orders != bounds.precision_orders) {
        walkers.push_back(Walker{bounds.time_orders, visit(bounds.time_orders)});
    }

    for (std::size_t pass = 0; pass < params.t; ++pass) {
        for (auto& w : walkers) {
            auto next = w.orders;
            bool moved = false;
            for (std::size_t u = 0; u < layout.units.size(); ++u) moved |= try_swap(layout.units[u], next[u], rng);
            if (!moved) continue;
            const CostVector cost = visit(next);
            if (!dominates(w.cost, cost)) w = Walker{std::move(next), cost};
        }
    }
    result.plans = nondominated(std::move(visited));
    return result;
}

} // namespace carpentry
