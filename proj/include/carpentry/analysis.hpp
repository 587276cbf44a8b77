#ifndef CARPENTRY_ANALYSIS_HPP
#define CARPENTRY_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carpentry/model.hpp"
#include "carpentry/rng.hpp"

namespace carpentry {

using Point = std::vector<double>;

/// Minimization: a <= b everywhere and a < b somewhere. Throws
/// std::invalid_argument on dimension mismatch.
[[nodiscard]] bool dominates(const Point& a, const Point& b);
[[nodiscard]] bool dominates(const CostVector& a, const CostVector& b);
/// a <= b everywhere.
[[nodiscard]] bool weakly_dominates(const Point& a, const Point& b);
[[nodiscard]] bool weakly_dominates(const CostVector& a, const CostVector& b);

/// Non-dominated subset, deduplicated, sorted lexicographically.
[[nodiscard]] std::vector<Point> pareto_filter(std::vector<Point> points);

/// Indices of the non-dominated entries; among equal vectors only the first
/// is kept. Result is sorted by (values, index).
[[nodiscard]] std::vector<std::size_t> pareto_indices(std::span<const CostVector> costs);

/// True if no point in `front` weakly dominates `p`.
[[nodiscard]] bool is_nondominated_by(const CostVector& p, std::span<const CostVector> front);

struct ReferencePoint {
    Point coords;

    /// (100,100) or (300,300,300).
    [[nodiscard]] static ReferencePoint default_for(ObjectiveMode mode);
};

/// Exact hypervolume. Points with a coordinate beyond the reference are
/// clipped to it and a warning is appended. Dominated points are ignored.
[[nodiscard]] double hypervolume(std::span<const Point> front, const ReferencePoint& ref,
                                 std::vector<std::string>* warnings = nullptr);
[[nodiscard]] double hypervolume(std::span<const CostVector> front, const ReferencePoint& ref,
                                 std::vector<std::string>* warnings = nullptr);

/// Inclusion-exclusion over all subsets; exponential, for small fronts only
/// (throws std::invalid_argument above 24 points). No clipping.
[[nodiscard]] double hypervolume_inclusion_exclusion(std::span<const Point> front, const ReferencePoint& ref);

struct MonteCarloEstimate {
    double volume{0.0};
    double std_error{0.0};
};

/// Uniform sampling in the box [lower, ref].
[[nodiscard]] MonteCarloEstimate hypervolume_monte_carlo(std::span<const Point> front, const ReferencePoint& ref,
                                                         const Point& lower, std::size_t samples, Rng& rng);

struct Scalarized {
    std::size_t index{0};
    double cost{0.0};
};

/// f_c + hourly_price * f_t / 60; ties go to lower f_c, then lower f_t.
/// Throws std::invalid_argument on an empty front.
[[nodiscard]] Scalarized scalarize(std::span<const CostVector> front, double hourly_price);

inline const std::vector<double> kDefaultPrices{0, 10, 20, 40, 80, 160, 240, 400};

struct ImprovementCell {
    double price{0.0};
    double scalar_a{0.0};
    double scalar_b{0.0};
    /// Rounded 100 * (a - b) / a; absent when a == 0.
    std::optional<long> percent;
};

/// `a` is the reference (baseline) front.
[[nodiscard]] std::vector<ImprovementCell> improvement_table(std::span<const CostVector> a,
                                                             std::span<const CostVector> b,
                                                             std::span<const double> prices);

} // namespace carpentry

#endif // CARPENTRY_ANALYSIS_HPP
