#ifndef CARPENTRY_LENGTH_HPP
#define CARPENTRY_LENGTH_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace carpentry {

inline constexpr std::int64_t kTicksPerInch = 64;

/// Exact length in 1/64-inch ticks. All geometry in the library is integral;
/// conversion to floating-point inches happens only at reporting boundaries.
///
/// Dimensions are non-negative. Connector adjustments reuse the type as a
/// signed delta.
struct Length {
    std::int64_t ticks{0};

    constexpr Length() = default;
    constexpr explicit Length(std::int64_t t) : ticks(t) {}

    static constexpr Length from_ticks(std::int64_t t) { return Length{t}; }
    static constexpr Length whole_inches(std::int64_t in) { return Length{in * kTicksPerInch}; }
    /// Throws std::invalid_argument unless `inches` is an exact multiple of 1/64".
    static Length from_inches(double inches);

    [[nodiscard]] constexpr double inches() const { return static_cast<double>(ticks) / kTicksPerInch; }

    constexpr Length& operator+=(Length o) { ticks += o.ticks; return *this; }
    constexpr Length& operator-=(Length o) { ticks -= o.ticks; return *this; }
    friend constexpr Length operator+(Length a, Length b) { return Length{a.ticks + b.ticks}; }
    friend constexpr Length operator-(Length a, Length b) { return Length{a.ticks - b.ticks}; }
    friend constexpr Length operator*(Length a, std::int64_t k) { return Length{a.ticks * k}; }
    friend constexpr auto operator<=>(Length, Length) = default;
};

/// Formats as inches, e.g. "20.375".
std::string to_string(Length l);

} // namespace carpentry

#endif // CARPENTRY_LENGTH_HPP
