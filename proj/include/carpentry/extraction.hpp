#ifndef CARPENTRY_EXTRACTION_HPP
#define CARPENTRY_EXTRACTION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carpentry/analysis.hpp"
#include "carpentry/cut_ordering.hpp"
#include "carpentry/design_space.hpp"
#include "carpentry/egraph.hpp"

namespace carpentry {

struct IceeParams {
    std::size_t T{50};
    std::size_t n{10};
    std::size_t P{25};
    std::size_t population{120};
    double p_c{0.95};
    double p_m{0.1};
    std::size_t t{20};
    double alpha{0.75};
    std::size_t iterations{10};
    std::size_t generations{10};
    std::size_t designs_per_iteration{4};
    std::size_t exhaustive_limit{720};
    /// Stop once hypervolume gains stay below `stall_ratio` this many times in a row.
    std::size_t stall_iterations{3};
    double stall_ratio{0.01};
    ObjectiveMode mode{ObjectiveMode::Three};
    std::uint64_t seed{1};
    std::size_t workers{1};
    std::optional<ReferencePoint> reference;

    /// Throws std::invalid_argument.
    void validate() const;
    [[nodiscard]] ReferencePoint reference_point() const;
};

struct Solution {
    Design design;
    FabPlan plan;
    CostVector cost;
    std::string plan_id;
    Term term;
};

/// Stable FNV-1a hash of the plan's content, 16 hex digits.
[[nodiscard]] std::string plan_fingerprint(const FabPlan& plan);

/// Mutually non-dominated solutions. An offer equal in cost to a kept
/// solution is rejected.
class Archive {
public:
    bool offer(Solution s);
    [[nodiscard]] const std::vector<Solution>& solutions() const { return front_; }
    [[nodiscard]] std::vector<CostVector> costs() const;
    /// Sorted by (cost values, design id, plan id).
    [[nodiscard]] std::vector<Solution> sorted() const;

private:
    std::vector<Solution> front_;
};

/// Shared state that outlives an iteration.
struct SearchState {
    BopEGraph graph;
    OrderCache orders;
    std::map<std::string, Design> designs;
    Archive archive;
    std::size_t evaluations{0};
    std::size_t pruned{0};

    struct TermResult {
        bool pruned{false};
        Point fitness;
        std::vector<RefinedPlan> plans;
    };
    std::map<std::string, TermResult> term_results; ///< keyed by design id + term key
};

/// Computes cut orders for atomic nodes whose layout is not cached yet.
void optimize_new_nodes(SearchState& state, const std::vector<NodeId>& nodes, const Libraries& libs,
                        const IceeParams& params);

/// NSGA-II over terms rooted at the given designs. Every individual is
/// bounded, pruned against the archive snapshot of its generation, or
/// refined; surviving plans are returned as solutions (not yet merged).
[[nodiscard]] std::vector<Solution> ga_extract(SearchState& state, const std::vector<std::string>& design_ids,
                                               const Libraries& libs, const IceeParams& params, Rng& rng);

struct IterationRecord {
    std::size_t iteration{0};
    std::vector<std::string> designs;
    std::size_t arrangements{0};
    std::size_t new_nodes{0};
    std::size_t classes{0};
    std::size_t nodes{0};
    std::string terms; ///< decimal count of terms over explored designs, before contraction
    std::size_t evaluations{0};
    std::size_t pruned{0};
    std::size_t front_size{0};
    double hypervolume{0.0};
};

struct RunReport {
    bool baseline{false};
    IceeParams params;
    std::string design_space_size;
    std::vector<std::string> explored_designs;
    std::vector<IterationRecord> iterations;
    std::vector<Solution> front;
    double hypervolume{0.0};
    std::vector<std::string> warnings;
};

/// Throws InputError (with the violations) if the base design is infeasible.
[[nodiscard]] RunReport icee_run(const DesignSpace& space, const Libraries& libs, const IceeParams& params,
                                 std::ostream* log = nullptr);

/// Same loop restricted to the base design.
[[nodiscard]] RunReport baseline_run(const DesignSpace& space, const Libraries& libs, const IceeParams& params,
                                     std::ostream* log = nullptr);

} // namespace carpentry

#endif // CARPENTRY_EXTRACTION_HPP
