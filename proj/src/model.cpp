#include "carpentry/model.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace carpentry {

std::string to_string(Material m)
{
    return m == Material::Wood ? "wood" : "metal";
}

Material material_from_string(const std::string& s)
{
    if (s == "wood") return Material::Wood;
    if (s == "metal") return Material::Metal;
    throw InputError("unknown material '" + s + "'");
}

std::string to_string(ToolId t)
{
    switch (t) {
    case ToolId::Chopsaw: return "chopsaw";
    case ToolId::Bandsaw: return "bandsaw";
    case ToolId::Jigsaw: return "jigsaw";
    case ToolId::Tracksaw: return "tracksaw";
    case ToolId::Drill: return "drill";
    }
    return "?";
}

ToolId tool_from_string(const std::string& s)
{
    for (auto t : {ToolId::Chopsaw, ToolId::Bandsaw, ToolId::Jigsaw, ToolId::Tracksaw, ToolId::Drill}) {
        if (to_string(t) == s) return t;
    }
    throw InputError("unknown tool '" + s + "'");
}

const Part* Design::find_part(const std::string& part_id) const
{
    auto it = std::find_if(parts.begin(), parts.end(), [&](const Part& p) { return p.id == part_id; });
    return it == parts.end() ? nullptr : &*it;
}

std::vector<double> CostVector::values() const
{
    if (precision) return {material, *precision, time};
    return {material, time};
}

const StockSpec* Libraries::find_stock(const std::string& id) const
{
    auto it = std::find_if(stocks.begin(), stocks.end(), [&](const StockSpec& s) { return s.id == id; });
    return it == stocks.end() ? nullptr : &*it;
}

const StockSpec& Libraries::stock(const std::string& id) const
{
    if (const auto* s = find_stock(id)) return *s;
    throw InputError("unknown stock '" + id + "'");
}

const ToolSpec& Libraries::tool(ToolId id) const
{
    auto it = std::find_if(tools.begin(), tools.end(), [&](const ToolSpec& t) { return t.id == id; });
    if (it == tools.end()) throw InputError("tool '" + to_string(id) + "' missing from library");
    return *it;
}

std::vector<StockSpec> Libraries::family_stocks(const std::string& family, Material material) const
{
    std::vector<StockSpec> out;
    for (const auto& s : stocks) {
        if (s.family == family && s.material == material) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const StockSpec& a, const StockSpec& b) {
        const auto area = [](const StockSpec& s) {
            return s.dims.x.ticks * std::max<std::int64_t>(s.dims.y.ticks, 1);
        };
        if (area(a) != area(b)) return area(a) < area(b);
        if (a.price != b.price) return a.price < b.price;
        return a.id < b.id;
    });
    return out;
}

bool fits(const Extent& shape, const Extent& dims)
{
    if (shape.is_sheet() != dims.is_sheet()) return false;
    return shape.x <= dims.x && shape.y <= dims.y;
}

std::vector<Violation> validate_design(const Design& design, const Libraries& libs)
{
    std::vector<Violation> out;
    std::set<std::string> seen;
    for (const auto& part : design.parts) {
        if (!seen.insert(part.id).second) {
            out.push_back({part.id, "duplicate part id"});
            continue;
        }
        if (part.shape.x.ticks <= 0 || (part.shape.is_sheet() && part.shape.y.ticks <= 0)) {
            out.push_back({part.id, "non-positive dimension"});
            continue;
        }
        const auto candidates = libs.family_stocks(part.family, part.material);
        if (candidates.empty()) {
            out.push_back({part.id, "no " + to_string(part.material) + " stock of family '" + part.family + "'"});
            continue;
        }
        const bool any = std::any_of(candidates.begin(), candidates.end(),
                                     [&](const StockSpec& s) { return fits(part.shape, s.dims); });
        if (!any) {
            out.push_back({part.id, "fits no stock of family '" + part.family + "'"});
        }
    }
    return out;
}

namespace {

// Parses a leading decimal or "a/b" fraction; returns ticks.
std::int64_t parse_inches_token(std::string_view s)
{
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        int num = 0, den = 1;
        std::from_chars(s.data(), s.data() + slash, num);
        std::from_chars(s.data() + slash + 1, s.data() + s.size(), den);
        return den == 0 ? 0 : num * kTicksPerInch / den;
    }
    int whole = 0;
    std::from_chars(s.data(), s.data() + s.size(), whole);
    return whole * kTicksPerInch;
}

} // namespace

Length family_thickness(const std::string& family)
{
    constexpr std::string_view sheet = "sheet-";
    if (family.rfind(sheet, 0) == 0) {
        return Length{parse_inches_token(std::string_view(family).substr(sheet.size()))};
    }
    auto x = family.find('x');
    return Length{parse_inches_token(std::string_view(family).substr(0, x))};
}

Length family_cut_width(const std::string& family)
{
    auto x = family.find('x');
    if (family.rfind("sheet-", 0) == 0 || x == std::string::npos) return family_thickness(family);
    const auto a = parse_inches_token(std::string_view(family).substr(0, x));
    const auto b = parse_inches_token(std::string_view(family).substr(x + 1));
    return Length{std::max(a, b)};
}

} // namespace carpentry
