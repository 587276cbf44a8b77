#include "carpentry/fabrication.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace carpentry {

std::string geometry_key(const PackedStock& stock)
{
    std::vector<Rect> rects;
    for (const auto& p : stock.placements) rects.push_back(p.rect());
    std::sort(rects.begin(), rects.end());
    std::ostringstream os;
    os << stock.stock_id << '|';
    for (const auto& r : rects) os << r.x0.ticks << ',' << r.y0.ticks << ',' << r.x1.ticks << ',' << r.y1.ticks << ';';
    return os.str();
}

Unit make_unit(const PackedStock& stock, const Libraries& libs)
{
    const auto& spec = libs.stock(stock.stock_id);
    Unit u;
    u.members = {stock};
    u.tool = cutting_tool(spec);
    u.kerf = libs.tool(u.tool).kerf;
    u.stock_dims = spec.dims;
    u.cuts = guillotine_cuts(spec.dims, stock.placements, u.kerf);
    return u;
}

std::vector<Unit> make_units(std::vector<PackedStock> stocks, const Libraries& libs)
{
    std::sort(stocks.begin(), stocks.end());
    std::map<std::string, std::vector<PackedStock>> groups;
    std::vector<std::string> order;
    for (auto& s : stocks) {
        auto key = geometry_key(s);
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(std::move(s));
    }
    std::vector<Unit> units;
    for (const auto& key : order) {
        auto& members = groups[key];
        Unit proto = make_unit(members.front(), libs);
        const std::size_t height = libs.tool(proto.tool).stackable ? kMaxStackHeight : 1;
        for (std::size_t i = 0; i < members.size(); i += height) {
            Unit u = proto;
            u.members.assign(members.begin() + static_cast<std::ptrdiff_t>(i),
                             members.begin() + static_cast<std::ptrdiff_t>(std::min(members.size(), i + height)));
            units.push_back(std::move(u));
        }
    }
    return units;
}

FabPlan build_plan(const std::string& design_id, const std::vector<Unit>& units, const std::vector<CutOrder>& orders)
{
    FabPlan plan;
    plan.design_id = design_id;
    for (std::size_t u = 0; u < units.size(); ++u) {
        const auto& unit = units[u];
        const std::size_t first_stock = plan.stocks.size();
        for (const auto& m : unit.members) plan.stocks.push_back(PlanStock{m.stock_id, m.placements});
        const auto& order = orders.at(u);
        for (std::size_t k = 0; k < order.size(); ++k) {
            for (std::size_t m = 0; m < unit.members.size(); ++m) {
                Cut c;
                c.tool = unit.tool;
                c.stock = first_stock + m;
                c.line = unit.cuts.at(order[k]);
                if (unit.members.size() > 1) c.stack_group = "u" + std::to_string(u) + "c" + std::to_string(k);
                plan.cuts.push_back(std::move(c));
            }
        }
    }
    return plan;
}

bool is_feasible_order(const Unit& unit, const CutOrder& order)
{
    if (order.size() != unit.cuts.size()) return false;
    std::vector<bool> seen(order.size(), false);
    PieceState state(unit.stock_dims);
    for (auto idx : order) {
        if (idx >= unit.cuts.size() || seen[idx]) return false;
        seen[idx] = true;
        if (!state.apply(unit.cuts[idx], unit.kerf)) return false;
    }
    return true;
}

namespace {

void enumerate(const Unit& unit, PieceState& state, CutOrder& prefix, std::vector<bool>& used,
               std::vector<CutOrder>& out, std::size_t cap)
{
    if (out.size() >= cap) return;
    if (prefix.size() == unit.cuts.size()) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t i = 0; i < unit.cuts.size() && out.size() < cap; ++i) {
        if (used[i] || !state.find(unit.cuts[i])) continue;
        PieceState next = state;
        next.apply(unit.cuts[i], unit.kerf);
        used[i] = true;
        prefix.push_back(i);
        enumerate(unit, next, prefix, used, out, cap);
        prefix.pop_back();
        used[i] = false;
    }
}

} // namespace

std::vector<CutOrder> feasible_orders(const Unit& unit, std::size_t cap)
{
    std::vector<CutOrder> out;
    PieceState state(unit.stock_dims);
    CutOrder prefix;
    std::vector<bool> used(unit.cuts.size(), false);
    enumerate(unit, state, prefix, used, out, cap);
    return out;
}

CutOrder random_feasible_order(const Unit& unit, Rng& rng)
{
    PieceState state(unit.stock_dims);
    std::vector<std::size_t> remaining(unit.cuts.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    CutOrder order;
    while (!remaining.empty()) {
        std::vector<std::size_t> applicable;
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            if (state.find(unit.cuts[remaining[r]])) applicable.push_back(r);
        }
        if (applicable.empty()) break;
        const std::size_t r = applicable[uniform_index(rng, applicable.size())];
        state.apply(unit.cuts[remaining[r]], unit.kerf);
        order.push_back(remaining[r]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(r));
    }
    return order;
}

CutOrder sweep_order(const Unit& unit, bool descending)
{
    PieceState state(unit.stock_dims);
    std::vector<bool> used(unit.cuts.size(), false);
    CutOrder order;
    while (order.size() < unit.cuts.size()) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < unit.cuts.size(); ++i) {
            if (used[i] || !state.find(unit.cuts[i])) continue;
            if (!best) {
                best = i;
                continue;
            }
            const auto& a = unit.cuts[i];
            const auto& b = unit.cuts[*best];
            if (descending ? a.at > b.at : a.at < b.at) best = i;
        }
        if (!best) break;
        used[*best] = true;
        state.apply(unit.cuts[*best], unit.kerf);
        order.push_back(*best);
    }
    return order;
}

CutOrder identity_order(const Unit& unit)
{
    CutOrder order(unit.cuts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return order;
}

} // namespace carpentry
