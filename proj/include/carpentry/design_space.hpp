#ifndef CARPENTRY_DESIGN_SPACE_HPP
#define CARPENTRY_DESIGN_SPACE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "carpentry/model.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

using BigCount = boost::multiprecision::cpp_int;

/// Declared neighbour pair plus the connector variants available for it.
struct Adjacency {
    std::string joint_id;
    std::string part_a;
    std::string part_b;
    std::vector<ConnectorVariant> variants;
};

/// Builds one joint per adjacency pair. Throws InputError on unknown parts,
/// self-joints, empty or duplicate variant lists.
std::vector<Joint> detect_joints(const std::vector<Part>& parts, const std::vector<Adjacency>& adjacency);

/// One variant index per joint, in joint order.
using Selection = std::vector<std::size_t>;

/// Parametric design: base parts (pre-adjustment) and the joints whose
/// connector variants generate design variants.
class DesignSpace {
public:
    DesignSpace(std::string base_id, std::vector<Part> parts, std::vector<Joint> joints);

    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const std::vector<Part>& base_parts() const { return parts_; }
    [[nodiscard]] const std::vector<Joint>& joints() const { return joints_; }
    /// Product of per-joint variant counts.
    [[nodiscard]] BigCount cardinality() const;

    /// Applies the selected deltas. Returns nullopt (and sets `why`) when a
    /// dimension would become non-positive.
    [[nodiscard]] std::optional<Design> instantiate(const Selection& selection, std::string* why = nullptr) const;
    /// The all-first-variant design: the input as declared.
    [[nodiscard]] Design base_design() const;
    [[nodiscard]] std::string design_id(const Selection& selection) const;

private:
    std::string id_;
    std::vector<Part> parts_;
    std::vector<Joint> joints_;
};

struct SkippedDesign {
    std::string design_id;
    std::string reason;
};

struct Enumeration {
    std::vector<Design> designs;
    std::vector<SkippedDesign> skipped;
};

/// Lexicographic over selections (last joint varies fastest); stops after
/// `limit` valid designs. Throws std::invalid_argument if limit == 0.
Enumeration enumerate_variants(const DesignSpace& space, std::size_t limit);

/// Uniform over variant selections. Invalid selections are redrawn.
Design sample_design(const DesignSpace& space, Rng& rng);

} // namespace carpentry

#endif // CARPENTRY_DESIGN_SPACE_HPP
