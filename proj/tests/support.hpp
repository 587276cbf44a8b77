#ifndef CARPENTRY_TESTS_SUPPORT_HPP
#define CARPENTRY_TESTS_SUPPORT_HPP

#include <filesystem>
#include <string>

#include "carpentry/cost_model.hpp"
#include "carpentry/design_space.hpp"
#include "carpentry/io.hpp"
#include "carpentry/libraries.hpp"

namespace carpentry::test {

inline std::filesystem::path data_dir()
{
    return CARPENTRY_DATA_DIR;
}

inline DesignSpace corpus(const std::string& name)
{
    return design_space_from_json(read_json(data_dir() / "corpus" / (name + ".json")));
}

inline Length in(double inches)
{
    return Length::from_inches(inches);
}

inline Part lumber(const std::string& id, const std::string& family, double length,
                   Material material = Material::Wood)
{
    return Part{id, family, Extent{in(length), Length{}}, material};
}

inline Part sheet(const std::string& id, const std::string& family, double length, double width)
{
    return Part{id, family, Extent{in(length), in(width)}, Material::Wood};
}

/// Crosscut through a whole lumber stock.
inline Cut chop(std::size_t stock, double at, const Libraries& libs, const FabPlan& plan,
                ToolId tool = ToolId::Chopsaw)
{
    Cut c;
    c.tool = tool;
    c.stock = stock;
    c.line = CutLine{Axis::X, in(at), Length{}, libs.stock(plan.stocks[stock].stock_id).dims.y};
    return c;
}

} // namespace carpentry::test

#endif
