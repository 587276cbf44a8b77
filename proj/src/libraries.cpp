#include "carpentry/libraries.hpp"

namespace carpentry {

namespace {

struct StockRow {
    const char* family;
    int x_in;
    int y_in; // 0 for lumber
    double price;
    double f_load, p_load, f_unload, p_unload;
};

// clang-format off
constexpr StockRow kStockRows[] = {
    {"2x2",        24,  0,  3.0,  10,  1,  5, 1},
    {"2x2",        48,  0,  5.5,  20,  2,  8, 2},
    {"2x2",        96,  0, 10.0,  40,  3, 15, 2},
    {"2x4",        24,  0,  3.0,  10,  1,  5, 1},
    {"2x4",        48,  0,  5.5,  20,  2,  8, 2},
    {"2x4",        96,  0, 10.0,  40,  4, 15, 2},
    {"4x4",        24,  0,  7.5,  15,  2,  5, 1},
    {"4x4",        48,  0, 13.75, 30,  4, 10, 2},
    {"4x4",        96,  0, 25.0,  60,  6, 20, 3},
    {"2x8",        24,  0,  7.5,  15,  2,  5, 1},
    {"2x8",        48,  0, 13.75, 30,  4, 10, 2},
    {"2x8",        96,  0, 25.0,  60,  6, 20, 3},
    {"sheet-1/2",  12, 20,  5.5,  30,  3, 10, 2},
    {"sheet-1/2",  24, 20, 10.0,  50,  5, 15, 2},
    {"sheet-1/2",  48, 36, 30.0, 100, 10, 20, 2},
    {"sheet-3/4",  12, 20,  7.0,  30,  3, 10, 2},
    {"sheet-3/4",  24, 20, 12.0,  50,  5, 15, 2},
    {"sheet-3/4",  48, 36, 32.0, 100, 10, 20, 2},
};
// clang-format on

StockSpec make_stock(const StockRow& row, Material material)
{
    StockSpec s;
    s.family = row.family;
    s.dims = Extent{Length::whole_inches(row.x_in), Length::whole_inches(row.y_in)};
    s.id = s.family + "-" + std::to_string(row.x_in);
    if (row.y_in > 0) {
        s.id += "x" + std::to_string(row.y_in);
    }
    if (material == Material::Metal) {
        s.id += "-metal";
    }
    s.price = row.price;
    s.load_full = row.f_load;
    s.load_partial = row.p_load;
    s.unload_full = row.f_unload;
    s.unload_partial = row.p_unload;
    s.material = material;
    return s;
}

} // namespace

std::vector<StockSpec> default_stock_library()
{
    std::vector<StockSpec> out;
    for (auto material : {Material::Wood, Material::Metal}) {
        for (const auto& row : kStockRows) {
            out.push_back(make_stock(row, material));
        }
    }
    return out;
}

std::vector<ToolSpec> default_tool_library()
{
    const Length kerf = Length::from_ticks(8);
    return {
        {ToolId::Chopsaw, 60, 60, 15.0, PerCut{1.0}, Length::from_ticks(1), kerf, true},
        {ToolId::Bandsaw, 20, 90, std::nullopt, PerInch{1.0}, Length::from_ticks(4), kerf, false},
        {ToolId::Jigsaw, 30, 60, std::nullopt, PerInch{1.0}, Length::from_ticks(12), kerf, false},
        {ToolId::Tracksaw, 180, 180, 75.0, PerInch{4.5}, Length::from_ticks(2), kerf, true},
        {ToolId::Drill, 20, 20, std::nullopt, PerDepthInch{0.1}, Length::from_ticks(2), Length{}, false},
    };
}

Libraries default_libraries()
{
    return Libraries{default_stock_library(), default_tool_library()};
}

} // namespace carpentry
