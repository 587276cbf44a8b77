#include "carpentry/packing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace carpentry {

namespace {

std::int64_t size_key(const Extent& e)
{
    return e.x.ticks * std::max<std::int64_t>(e.y.ticks, 1);
}

void sort_placements(PackedStock& s)
{
    std::sort(s.placements.begin(), s.placements.end(), [](const PlacedPart& a, const PlacedPart& b) {
        return std::tie(a.y, a.x, a.part_id) < std::tie(b.y, b.x, b.part_id);
    });
}

struct Shelf {
    Length y;
    Length height;
    Length x_end;
};

// Open stock during packing.
struct OpenStock {
    PackedStock packed;
    Length cursor;              // lumber: end of last placement
    std::vector<Shelf> shelves; // sheets
};

bool place_lumber(OpenStock& s, const Part& part, const Extent& dims, Length kerf)
{
    const Length start = s.packed.placements.empty() ? Length{} : s.cursor + kerf;
    if (start + part.shape.x > dims.x) return false;
    s.packed.placements.push_back(PlacedPart{part.id, start, Length{}, part.shape});
    s.cursor = start + part.shape.x;
    return true;
}

bool place_sheet(OpenStock& s, const Part& part, const Extent& dims, Length kerf)
{
    const auto w = part.shape.x;
    const auto h = part.shape.y;
    for (auto& shelf : s.shelves) {
        if (h <= shelf.height && shelf.x_end + kerf + w <= dims.x) {
            const Length x = shelf.x_end + kerf;
            s.packed.placements.push_back(PlacedPart{part.id, x, shelf.y, part.shape});
            shelf.x_end = x + w;
            return true;
        }
    }
    const Length y = s.shelves.empty() ? Length{} : s.shelves.back().y + s.shelves.back().height + kerf;
    if (w > dims.x || y + h > dims.y) return false;
    s.shelves.push_back(Shelf{y, h, w});
    s.packed.placements.push_back(PlacedPart{part.id, Length{}, y, part.shape});
    return true;
}

std::string fragment_key(const std::vector<PackedStock>& stocks)
{
    std::ostringstream os;
    for (const auto& s : stocks) {
        os << s.stock_id << '{';
        for (const auto& p : s.placements) {
            os << p.part_id << '@' << p.x.ticks << ',' << p.y.ticks << ';';
        }
        os << '}';
    }
    return os.str();
}

std::vector<PackedStock> canonical(std::vector<PackedStock> stocks)
{
    for (auto& s : stocks) sort_placements(s);
    std::sort(stocks.begin(), stocks.end());
    return stocks;
}

std::vector<Traversal> traversal_orders(const std::vector<Part>& group, std::size_t budget, Rng& rng)
{
    std::vector<Traversal> out;
    std::set<Traversal> seen;
    const auto push = [&](Traversal t) {
        if (out.size() < budget && seen.insert(t).second) out.push_back(std::move(t));
    };

    std::vector<std::size_t> idx(group.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return size_key(group[a].shape) > size_key(group[b].shape);
    });
    Traversal desc;
    for (auto i : idx) desc.push_back(group[i].id);
    push(desc);

    Traversal identity;
    for (const auto& p : group) identity.push_back(p.id);
    push(identity);

    // Bound the number of distinct permutations for small groups.
    std::size_t permutations = 1;
    for (std::size_t k = 2; k <= group.size() && permutations < budget; ++k) permutations *= k;
    const std::size_t target = std::min(budget, permutations);
    std::size_t attempts = 0;
    while (out.size() < target && attempts < 16 * budget) {
        ++attempts;
        Traversal t = identity;
        shuffle(std::span<std::string>(t), rng);
        push(std::move(t));
    }
    return out;
}

} // namespace

std::vector<PackedStock> Arrangement::packed_stocks() const
{
    std::vector<PackedStock> out;
    for (const auto& inst : stock_instances) out.push_back(PackedStock{inst.stock_id, {}});
    for (const auto& p : placements) {
        out.at(p.stock_instance).placements.push_back(PlacedPart{p.part_id, p.x, p.y, p.extent});
    }
    for (auto& s : out) sort_placements(s);
    return out;
}

std::string Arrangement::key() const
{
    return fragment_key(canonical(packed_stocks()));
}

ToolId cutting_tool(const StockSpec& stock)
{
    return stock.is_sheet() ? ToolId::Tracksaw : ToolId::Chopsaw;
}

std::map<FamilyKey, std::vector<Part>> group_parts(const Design& design, const Libraries& /*libs*/)
{
    std::map<FamilyKey, std::vector<Part>> groups;
    for (const auto& p : design.parts) groups[FamilyKey{p.family, p.material}].push_back(p);
    return groups;
}

std::optional<std::vector<PackedStock>> pack_traversal(std::span<const Part> group, const Traversal& traversal,
                                                       std::span<const StockSpec> family_stocks, Length kerf,
                                                       std::optional<std::size_t> designated)
{
    if (family_stocks.empty()) throw InfeasiblePartError("no stock available for part group");
    if (traversal.size() != group.size()) throw std::invalid_argument("traversal must permute the group");

    const std::size_t which = designated.value_or(family_stocks.size() - 1);
    const StockSpec& stock = family_stocks[which];

    std::vector<const Part*> ordered;
    std::set<std::string> used;
    for (const auto& id : traversal) {
        auto it = std::find_if(group.begin(), group.end(), [&](const Part& p) { return p.id == id; });
        if (it == group.end() || !used.insert(id).second) {
            throw std::invalid_argument("traversal must permute the group");
        }
        ordered.push_back(&*it);
    }

    bool too_big = false;
    for (const Part* part : ordered) {
        const bool any = std::any_of(family_stocks.begin(), family_stocks.end(),
                                     [&](const StockSpec& s) { return fits(part->shape, s.dims); });
        if (!any) throw InfeasiblePartError("part '" + part->id + "' fits no stock of family '" + part->family + "'");
        if (!fits(part->shape, stock.dims)) too_big = true;
    }
    if (too_big) return std::nullopt;

    std::vector<PackedStock> closed;
    std::optional<OpenStock> open;
    for (const Part* part : ordered) {
        const auto place = [&](OpenStock& s) {
            return stock.is_sheet() ? place_sheet(s, *part, stock.dims, kerf) : place_lumber(s, *part, stock.dims, kerf);
        };
        if (open && place(*open)) continue;
        if (open) closed.push_back(std::move(open->packed));
        open.emplace(OpenStock{PackedStock{stock.id, {}}, Length{}, {}});
        place(*open);
    }
    if (open) closed.push_back(std::move(open->packed));
    for (auto& s : closed) sort_placements(s);
    return closed;
}

std::vector<PackedStock> shrink_to_fit(std::vector<PackedStock> stocks, std::span<const StockSpec> family_stocks)
{
    for (auto& s : stocks) {
        Extent used{};
        for (const auto& p : s.placements) {
            used.x = std::max(used.x, p.x + p.extent.x);
            used.y = std::max(used.y, p.y + p.extent.y);
        }
        const StockSpec* best = nullptr;
        for (const auto& candidate : family_stocks) {
            if (!fits(used, candidate.dims)) continue;
            if (!best || candidate.price < best->price) best = &candidate;
        }
        if (best) s.stock_id = best->id;
    }
    return stocks;
}

Arrangement make_arrangement(const std::string& design_id, std::vector<PackedStock> stocks)
{
    stocks = canonical(std::move(stocks));
    Arrangement a;
    a.design_id = design_id;
    for (std::size_t i = 0; i < stocks.size(); ++i) {
        a.stock_instances.push_back(StockInstance{stocks[i].stock_id, i});
        for (const auto& p : stocks[i].placements) {
            a.placements.push_back(Placement{p.part_id, i, p.x, p.y, p.extent});
        }
    }
    return a;
}

std::vector<std::vector<PackedStock>> pack_fragments(std::span<const Part> group, std::span<const Traversal> orders,
                                                     std::span<const StockSpec> family_stocks, Length kerf)
{
    std::vector<std::vector<PackedStock>> fragments;
    std::set<std::string> seen;
    const auto push = [&](std::vector<PackedStock> f) {
        f = canonical(std::move(f));
        if (seen.insert(fragment_key(f)).second) fragments.push_back(std::move(f));
    };
    for (const auto& order : orders) {
        for (std::size_t size = family_stocks.size(); size-- > 0;) {
            auto packed = pack_traversal(group, order, family_stocks, kerf, size);
            if (!packed) continue;
            push(*packed);
            push(shrink_to_fit(std::move(*packed), family_stocks));
        }
    }
    return fragments;
}

std::vector<Arrangement> generate_arrangements(const Design& design, const Libraries& libs, std::size_t traversals,
                                               Rng& rng)
{
    if (traversals == 0) throw std::invalid_argument("traversal budget must be >= 1");
    const auto groups = group_parts(design, libs);

    std::vector<std::vector<std::vector<PackedStock>>> per_family;
    for (const auto& [key, parts] : groups) {
        const auto stocks = libs.family_stocks(key.family, key.material);
        if (stocks.empty()) {
            throw InfeasiblePartError("no " + to_string(key.material) + " stock of family '" + key.family + "'");
        }
        const Length kerf = libs.tool(cutting_tool(stocks.front())).kerf;
        per_family.push_back(pack_fragments(parts, traversal_orders(parts, traversals, rng), stocks, kerf));
    }

    std::size_t count = 0;
    for (const auto& f : per_family) count = std::max(count, f.size());

    std::vector<Arrangement> out;
    std::set<std::string> seen;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<PackedStock> stocks;
        for (const auto& fragments : per_family) {
            const auto& chosen = fragments[k % fragments.size()];
            stocks.insert(stocks.end(), chosen.begin(), chosen.end());
        }
        auto a = make_arrangement(design.id, std::move(stocks));
        if (seen.insert(a.key()).second) out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const Arrangement& a, const Arrangement& b) { return a.key() < b.key(); });
    return out;
}

} // namespace carpentry
