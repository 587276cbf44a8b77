#include "carpentry/geometry.hpp"

#include <algorithm>

namespace carpentry {

namespace {

Rect full_rect(const Extent& stock)
{
    return Rect{Length{}, Length{}, stock.x, stock.y};
}

Length dim(const Extent& e, Axis a)
{
    return a == Axis::X ? e.x : e.y;
}

struct Decomposer {
    Length kerf;
    bool sheet;
    std::vector<CutLine> cuts;

    // True if no placement straddles the kerf band [at, at + kerf).
    bool separates(std::span<const Rect> items, Axis axis, Length at) const
    {
        return std::all_of(items.begin(), items.end(), [&](const Rect& r) {
            return r.high(axis) <= at || r.low(axis) >= at + kerf;
        });
    }

    void run(const Rect& region, std::vector<Rect> items)
    {
        if (items.empty()) return;
        if (items.size() == 1 && items.front() == region) return;

        std::vector<std::pair<Axis, Length>> candidates;
        const std::vector<Axis> axes = sheet ? std::vector<Axis>{Axis::Y, Axis::X} : std::vector<Axis>{Axis::X};
        for (auto axis : axes) {
            std::vector<Length> ends;
            std::vector<Length> starts;
            for (const auto& r : items) {
                if (r.high(axis) < region.high(axis)) ends.push_back(r.high(axis));
                if (r.low(axis) - kerf > region.low(axis)) starts.push_back(r.low(axis) - kerf);
            }
            std::sort(ends.begin(), ends.end());
            std::sort(starts.begin(), starts.end());
            for (auto at : ends) candidates.emplace_back(axis, at);
            for (auto at : starts) candidates.emplace_back(axis, at);
        }

        for (const auto& [axis, at] : candidates) {
            if (at <= region.low(axis) || at >= region.high(axis)) continue;
            if (!separates(items, axis, at)) continue;

            const auto span_axis = other(axis);
            cuts.push_back(CutLine{axis, at, region.low(span_axis), region.high(span_axis)});

            Rect lo = region;
            Rect hi = region;
            if (axis == Axis::X) {
                lo.x1 = at;
                hi.x0 = std::min(at + kerf, region.x1);
            } else {
                lo.y1 = at;
                hi.y0 = std::min(at + kerf, region.y1);
            }
            std::vector<Rect> lo_items, hi_items;
            for (const auto& r : items) {
                (r.high(axis) <= at ? lo_items : hi_items).push_back(r);
            }
            run(lo, std::move(lo_items));
            if (hi.low(axis) < hi.high(axis)) run(hi, std::move(hi_items));
            return;
        }
        throw NotGuillotineError("placements cannot be separated by edge-to-edge cuts");
    }
};

} // namespace

std::vector<CutLine> guillotine_cuts(const Extent& stock, std::span<const PlacedPart> placements, Length kerf)
{
    Decomposer d{kerf, stock.is_sheet(), {}};
    std::vector<Rect> items;
    items.reserve(placements.size());
    const Rect whole = full_rect(stock);
    for (const auto& p : placements) {
        const Rect r = p.rect();
        if (r.x0 < whole.x0 || r.x1 > whole.x1 || r.y0 < whole.y0 || r.y1 > whole.y1) {
            throw NotGuillotineError("placement '" + p.part_id + "' exceeds stock bounds");
        }
        items.push_back(r);
    }
    d.run(whole, std::move(items));
    return d.cuts;
}

Length governing_measurement(const Rect& piece, Axis axis, Length at, const Extent& stock)
{
    const Length lo = piece.low(axis);
    const Length hi = piece.high(axis);
    const bool lo_original = lo.ticks == 0;
    const bool hi_original = hi == dim(stock, axis);
    const Length from_lo = at - lo;
    const Length from_hi = hi - at;
    if (lo_original && !hi_original) return from_lo;
    if (hi_original && !lo_original) return from_hi;
    return std::min(from_lo, from_hi);
}

PieceState::PieceState(const Extent& stock) : stock_(stock), pieces_{full_rect(stock)} {}

std::optional<std::size_t> PieceState::find(const CutLine& cut) const
{
    const auto span_axis = other(cut.axis);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (p.low(span_axis) != cut.span_begin || p.high(span_axis) != cut.span_end) continue;
        if (p.low(cut.axis) < cut.at && cut.at < p.high(cut.axis)) return i;
    }
    return std::nullopt;
}

std::optional<Length> PieceState::apply(const CutLine& cut, Length kerf)
{
    const auto idx = find(cut);
    if (!idx) return std::nullopt;
    const Rect piece = pieces_[*idx];
    const Length measured = governing_measurement(piece, cut.axis, cut.at, stock_);

    Rect lo = piece;
    Rect hi = piece;
    if (cut.axis == Axis::X) {
        lo.x1 = cut.at;
        hi.x0 = std::min(cut.at + kerf, piece.x1);
    } else {
        lo.y1 = cut.at;
        hi.y0 = std::min(cut.at + kerf, piece.y1);
    }
    pieces_[*idx] = lo;
    if (hi.low(cut.axis) < hi.high(cut.axis)) pieces_.insert(pieces_.begin() + static_cast<std::ptrdiff_t>(*idx) + 1, hi);
    return measured;
}

std::optional<Length> PieceState::measure(const CutLine& cut) const
{
    const auto span_axis = other(cut.axis);
    for (const auto& p : pieces_) {
        if (cut.span_begin < p.low(span_axis) || cut.span_begin > p.high(span_axis)) continue;
        if (p.low(cut.axis) < cut.at && cut.at < p.high(cut.axis)) {
            return governing_measurement(p, cut.axis, cut.at, stock_);
        }
    }
    return std::nullopt;
}

bool yields_all(const PieceState& state, std::span<const PlacedPart> placements)
{
    const auto& pieces = state.pieces();
    return std::all_of(placements.begin(), placements.end(), [&](const PlacedPart& p) {
        return std::find(pieces.begin(), pieces.end(), p.rect()) != pieces.end();
    });
}

} // namespace carpentry
