#include "carpentry/length.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace carpentry {

Length Length::from_inches(double inches)
{
    const double scaled = inches * static_cast<double>(kTicksPerInch);
    const double rounded = std::round(scaled);
    if (!std::isfinite(scaled) || std::abs(scaled - rounded) > 1e-6) {
        throw std::invalid_argument("length " + std::to_string(inches) + " is not a multiple of 1/64 inch");
    }
    return Length{static_cast<std::int64_t>(rounded)};
}

std::string to_string(Length l)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l.inches());
    return std::string(buf, end);
}

} // namespace carpentry
