#ifndef CARPENTRY_MODEL_HPP
#define CARPENTRY_MODEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "carpentry/length.hpp"

namespace carpentry {

/// Malformed or inconsistent user input (design, library, plan files).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Material { Wood, Metal };

std::string to_string(Material m);
Material material_from_string(const std::string& s);

/// Rectangular extent. Lumber has `y == 0`; sheets carry both dimensions.
struct Extent {
    Length x;
    Length y;

    [[nodiscard]] constexpr bool is_sheet() const { return y.ticks > 0; }
    friend constexpr auto operator<=>(const Extent&, const Extent&) = default;
};

struct StockSpec {
    std::string id;
    std::string family;
    Extent dims;
    double price{0.0};
    double load_full{0.0};
    double load_partial{0.0};
    double unload_full{0.0};
    double unload_partial{0.0};
    Material material{Material::Wood};

    [[nodiscard]] bool is_sheet() const { return dims.is_sheet(); }
};

enum class ToolId { Chopsaw, Bandsaw, Jigsaw, Tracksaw, Drill };

std::string to_string(ToolId t);
ToolId tool_from_string(const std::string& s);

struct PerCut { double seconds; };
struct PerInch { double inches_per_second; };
struct PerDepthInch { double inches_per_second; };
using OpRate = std::variant<PerCut, PerInch, PerDepthInch>;

struct ToolSpec {
    ToolId id{ToolId::Chopsaw};
    double setup_full_lumber{0.0};
    double setup_full_sheet{0.0};
    std::optional<double> setup_partial;
    OpRate op_rate{PerCut{1.0}};
    Length op_error;
    Length kerf;
    bool stackable{false};
};

struct Part {
    std::string id;
    std::string family;
    Extent shape;
    Material material{Material::Wood};
};

/// Which dimension of a sheet part a connector delta applies to. Lumber parts
/// always adjust their length.
enum class Axis { X, Y };

struct ConnectorVariant {
    std::string id;
    Length delta_a;
    Length delta_b;
    Axis axis_a{Axis::X};
    Axis axis_b{Axis::X};
};

struct Joint {
    std::string id;
    std::string part_a;
    std::string part_b;
    std::vector<ConnectorVariant> variants;
};

struct Design {
    std::string id;
    std::vector<Part> parts;
    /// joint id -> selected variant id
    std::map<std::string, std::string> provenance;

    [[nodiscard]] const Part* find_part(const std::string& part_id) const;
};

enum class ObjectiveMode { Two = 2, Three = 3 };

/// (f_c dollars, f_p inches, f_t minutes). f_p is absent in two-objective mode.
struct CostVector {
    double material{0.0};
    std::optional<double> precision;
    double time{0.0};

    [[nodiscard]] ObjectiveMode mode() const { return precision ? ObjectiveMode::Three : ObjectiveMode::Two; }
    /// Objective values in canonical order: (f_c, f_t) or (f_c, f_p, f_t).
    [[nodiscard]] std::vector<double> values() const;
    friend bool operator==(const CostVector&, const CostVector&) = default;
};

struct Libraries {
    std::vector<StockSpec> stocks;
    std::vector<ToolSpec> tools;

    [[nodiscard]] const StockSpec& stock(const std::string& id) const;
    [[nodiscard]] const StockSpec* find_stock(const std::string& id) const;
    [[nodiscard]] const ToolSpec& tool(ToolId id) const;
    /// Stocks of one family and material, ascending by size.
    [[nodiscard]] std::vector<StockSpec> family_stocks(const std::string& family, Material material) const;
};

/// True if a part of `shape` fits inside stock `dims` (no rotation).
[[nodiscard]] bool fits(const Extent& shape, const Extent& dims);

struct Violation {
    std::string part_id;
    std::string message;
};

[[nodiscard]] std::vector<Violation> validate_design(const Design& design, const Libraries& libs);

/// Nominal thickness used for drill depth defaults: "2x4" -> 2", "sheet-1/2" -> 0.5".
[[nodiscard]] Length family_thickness(const std::string& family);
/// Blade travel for a crosscut through lumber of this family: the wider nominal face.
[[nodiscard]] Length family_cut_width(const std::string& family);

} // namespace carpentry

#endif // CARPENTRY_MODEL_HPP
