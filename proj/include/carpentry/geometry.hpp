#ifndef CARPENTRY_GEOMETRY_HPP
#define CARPENTRY_GEOMETRY_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "carpentry/model.hpp"

namespace carpentry {

/// Axis-aligned rectangle [x0,x1) x [y0,y1) in stock coordinates.
/// Lumber pieces have y0 == y1 == 0.
struct Rect {
    Length x0, y0, x1, y1;

    [[nodiscard]] Length low(Axis a) const { return a == Axis::X ? x0 : y0; }
    [[nodiscard]] Length high(Axis a) const { return a == Axis::X ? x1 : y1; }
    friend constexpr auto operator<=>(const Rect&, const Rect&) = default;
};

/// A part positioned on a stock, stock-relative.
struct PlacedPart {
    std::string part_id;
    Length x;
    Length y;
    Extent extent;

    [[nodiscard]] Rect rect() const { return Rect{x, y, x + extent.x, y + extent.y}; }
    friend auto operator<=>(const PlacedPart&, const PlacedPart&) = default;
};

[[nodiscard]] constexpr Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

/// Straight edge-to-edge cut: the line `axis = at`, spanning [span_begin,
/// span_end) along the other axis. The kerf removes [at, at + kerf). A cut
/// applies only to the piece whose extent along the other axis equals the
/// span, which encodes guillotine dependencies between cuts.
struct CutLine {
    Axis axis{Axis::X};
    Length at;
    Length span_begin;
    Length span_end;

    [[nodiscard]] Length span_length() const { return span_end - span_begin; }
    friend constexpr auto operator<=>(const CutLine&, const CutLine&) = default;
};

class NotGuillotineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Recovers the guillotine cut tree of a packed stock and returns its cuts in
/// pre-order. Throws NotGuillotineError if the layout cannot be separated by
/// edge-to-edge cuts.
[[nodiscard]] std::vector<CutLine> guillotine_cuts(const Extent& stock, std::span<const PlacedPart> placements,
                                                   Length kerf);

/// Distance from the governing reference edge of `piece` to the cut line:
/// the nearest surviving original stock edge along the cut axis, or the
/// nearest cut edge when the piece has none.
[[nodiscard]] Length governing_measurement(const Rect& piece, Axis axis, Length at, const Extent& stock);

/// Pieces of one stock as cuts are executed.
class PieceState {
public:
    explicit PieceState(const Extent& stock);

    /// Index of the piece the cut applies to, if any.
    [[nodiscard]] std::optional<std::size_t> find(const CutLine& cut) const;
    /// Executes a splitting cut; returns the measured length m', or nullopt
    /// if no current piece admits the cut.
    std::optional<Length> apply(const CutLine& cut, Length kerf);
    /// Measurement for a non-splitting operation (drill) at the cut line.
    [[nodiscard]] std::optional<Length> measure(const CutLine& cut) const;

    [[nodiscard]] const std::vector<Rect>& pieces() const { return pieces_; }
    [[nodiscard]] const Extent& stock() const { return stock_; }

private:
    Extent stock_;
    std::vector<Rect> pieces_;
};

/// True if every placement's rectangle is among the pieces.
[[nodiscard]] bool yields_all(const PieceState& state, std::span<const PlacedPart> placements);

} // namespace carpentry

#endif // CARPENTRY_GEOMETRY_HPP
