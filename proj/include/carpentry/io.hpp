#ifndef CARPENTRY_IO_HPP
#define CARPENTRY_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "carpentry/cost_model.hpp"
#include "carpentry/design_space.hpp"
#include "carpentry/extraction.hpp"

namespace carpentry {

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form.
[[nodiscard]] std::string format_number(double v);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Throws IoError if unreadable, InputError if not JSON.
[[nodiscard]] Json read_json(const std::filesystem::path& path);

[[nodiscard]] DesignSpace design_space_from_json(const Json& j);
[[nodiscard]] Json design_space_to_json(const DesignSpace& space);
[[nodiscard]] Json design_to_json(const Design& design);

/// Missing "stocks" or "tools" sections fall back to the defaults.
[[nodiscard]] Libraries libraries_from_json(const Json& j);
[[nodiscard]] Json libraries_to_json(const Libraries& libs);

/// Stock ids are resolved against `libs` to default cut spans.
[[nodiscard]] FabPlan plan_from_json(const Json& j, const Libraries& libs);
[[nodiscard]] Json plan_to_json(const FabPlan& plan);

struct FrontRow {
    std::string design_id;
    std::string plan_id;
    CostVector cost;
};

[[nodiscard]] std::vector<FrontRow> front_rows(const std::vector<Solution>& front);
/// Header `design_id,plan_id,f_c,f_p,f_t`; f_p is empty in two-objective mode.
[[nodiscard]] std::string front_to_csv(const std::vector<FrontRow>& rows);
/// Throws InputError with the offending line; mixed objective modes are rejected.
[[nodiscard]] std::vector<FrontRow> front_from_csv(const std::string& text);

[[nodiscard]] Json front_to_json(const std::vector<Solution>& front);
[[nodiscard]] Json report_to_json(const RunReport& report);
/// Scatter of f_t against f_c, one colour per design.
[[nodiscard]] std::string front_to_svg(const std::vector<FrontRow>& rows);

/// Per-cut breakdown, totals row, then the objective block.
[[nodiscard]] std::string evaluation_to_csv(const PlanEvaluation& ev);

} // namespace carpentry

#endif // CARPENTRY_IO_HPP
