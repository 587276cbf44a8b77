#ifndef CARPENTRY_LIBRARIES_HPP
#define CARPENTRY_LIBRARIES_HPP

#include <vector>

#include "carpentry/model.hpp"

namespace carpentry {

// Metal stock relative to wood of the same geometry.
inline constexpr double kMetalPriceFactor = 20.0;
inline constexpr double kMetalOperationFactor = 10.0;
inline constexpr double kMetalLoadFactor = 5.0;
inline constexpr std::int64_t kMetalJigsawErrorFactor = 2;

/// Smallest measurable increment, 1/16".
inline constexpr Length kMeasurementGrid = Length::from_ticks(4);

/// Priced lumber and plywood stocks with load/unload times. Wood entries come
/// first; every wood stock has a metal twin with id suffix "-metal" whose
/// listed price is the wood-equivalent price (the cost model applies the
/// metal factors).
std::vector<StockSpec> default_stock_library();

/// The five supported tools with setup/operation times, per-cut error and kerf.
std::vector<ToolSpec> default_tool_library();

Libraries default_libraries();

} // namespace carpentry

#endif // CARPENTRY_LIBRARIES_HPP
