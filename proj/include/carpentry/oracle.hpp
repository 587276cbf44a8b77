#ifndef CARPENTRY_ORACLE_HPP
#define CARPENTRY_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "carpentry/extraction.hpp"

namespace carpentry {

struct OracleLimits {
    std::size_t designs{256};
    /// Parts per family above which traversal enumeration is refused.
    std::size_t max_family_parts{7};
    std::size_t order_combinations{20000};
};

struct OracleResult {
    std::vector<Solution> front; ///< sorted like Archive::sorted()
    std::size_t designs{0};
    std::size_t arrangements{0};
    std::size_t plans{0};
};

/// Exhaustive front: every design variant, every traversal permutation packed
/// on every designated stock size (raw and shrunk), every combination of
/// per-stock feasible cut orders. Throws std::length_error when an input
/// exceeds the limits.
[[nodiscard]] OracleResult oracle_front(const DesignSpace& space, const Libraries& libs, ObjectiveMode mode,
                                        const OracleLimits& limits = {});

} // namespace carpentry

#endif // CARPENTRY_ORACLE_HPP
