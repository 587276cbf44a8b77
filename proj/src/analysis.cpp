#include "carpentry/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace carpentry {

namespace {

void require_same_dims(const Point& a, const Point& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("objective vectors have different dimensions");
}

std::string format_point(const Point& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
    return os.str();
}

double hv2(std::vector<Point> pts, double rx, double ry)
{
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double best_y = ry;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i][1] >= best_y) continue;
        const double next_x = [&] {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (pts[j][1] < pts[i][1]) return pts[j][0];
            }
            return rx;
        }();
        area += (next_x - pts[i][0]) * (ry - pts[i][1]);
        best_y = pts[i][1];
    }
    return area;
}

void inclusion_exclusion(std::span<const Point> front, const Point& ref, std::size_t start, const Point& cur,
                         double sign, double& total)
{
    for (std::size_t j = start; j < front.size(); ++j) {
        Point m(cur.size());
        double vol = 1.0;
        for (std::size_t d = 0; d < cur.size(); ++d) {
            m[d] = std::max(cur[d], front[j][d]);
            vol *= ref[d] - m[d];
            if (vol <= 0.0) break;
        }
        if (vol <= 0.0) continue;
        total += sign * vol;
        inclusion_exclusion(front, ref, j + 1, m, -sign, total);
    }
}

} // namespace

bool dominates(const Point& a, const Point& b)
{
    require_same_dims(a, b);
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

bool dominates(const CostVector& a, const CostVector& b)
{
    if (a.mode() != b.mode()) throw std::invalid_argument("objective mode mismatch");
    return dominates(a.values(), b.values());
}

bool weakly_dominates(const Point& a, const Point& b)
{
    require_same_dims(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

bool weakly_dominates(const CostVector& a, const CostVector& b)
{
    if (a.mode() != b.mode()) throw std::invalid_argument("objective mode mismatch");
    return weakly_dominates(a.values(), b.values());
}

std::vector<Point> pareto_filter(std::vector<Point> points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Point> front;
    for (auto& p : points) {
        // Only lexicographically earlier points can dominate p.
        const bool dominated =
            std::any_of(front.begin(), front.end(), [&](const Point& q) { return weakly_dominates(q, p); });
        if (!dominated) front.push_back(std::move(p));
    }
    return front;
}

std::vector<std::size_t> pareto_indices(std::span<const CostVector> costs)
{
    std::vector<std::pair<Point, std::size_t>> items;
    for (std::size_t i = 0; i < costs.size(); ++i) items.emplace_back(costs[i].values(), i);
    std::sort(items.begin(), items.end());
    std::vector<std::size_t> out;
    std::vector<const Point*> kept;
    for (const auto& [p, i] : items) {
        const bool dominated =
            std::any_of(kept.begin(), kept.end(), [&](const Point* q) { return weakly_dominates(*q, p); });
        if (dominated) continue;
        kept.push_back(&p);
        out.push_back(i);
    }
    return out;
}

bool is_nondominated_by(const CostVector& p, std::span<const CostVector> front)
{
    return std::none_of(front.begin(), front.end(), [&](const CostVector& q) { return weakly_dominates(q, p); });
}

ReferencePoint ReferencePoint::default_for(ObjectiveMode mode)
{
    if (mode == ObjectiveMode::Two) return ReferencePoint{{100.0, 100.0}};
    return ReferencePoint{{300.0, 300.0, 300.0}};
}

double hypervolume(std::span<const Point> front, const ReferencePoint& ref, std::vector<std::string>* warnings)
{
    const std::size_t dims = ref.coords.size();
    if (dims < 1 || dims > 3) throw std::invalid_argument("hypervolume supports 1 to 3 objectives");
    std::vector<Point> pts;
    for (const auto& p : front) {
        require_same_dims(p, ref.coords);
        Point q = p;
        bool clipped = false;
        for (std::size_t d = 0; d < dims; ++d) {
            if (q[d] > ref.coords[d]) {
                q[d] = ref.coords[d];
                clipped = true;
            }
        }
        if (clipped && warnings) {
            warnings->push_back("point " + format_point(p) + " exceeds reference point " + format_point(ref.coords) +
                                "; clipped");
        }
        pts.push_back(std::move(q));
    }
    if (pts.empty()) return 0.0;
    pts = pareto_filter(std::move(pts));

    if (dims == 1) return ref.coords[0] - pts.front()[0];
    if (dims == 2) return hv2(pts, ref.coords[0], ref.coords[1]);

    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<Point> slice;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        slice.push_back(Point{pts[i][0], pts[i][1]});
        const double z_next = i + 1 < pts.size() ? pts[i + 1][2] : ref.coords[2];
        if (z_next > pts[i][2]) volume += hv2(slice, ref.coords[0], ref.coords[1]) * (z_next - pts[i][2]);
    }
    return volume;
}

double hypervolume(std::span<const CostVector> front, const ReferencePoint& ref, std::vector<std::string>* warnings)
{
    std::vector<Point> pts;
    for (const auto& c : front) pts.push_back(c.values());
    return hypervolume(pts, ref, warnings);
}

double hypervolume_inclusion_exclusion(std::span<const Point> front, const ReferencePoint& ref)
{
    if (front.size() > 24) throw std::invalid_argument("inclusion-exclusion is limited to 24 points");
    for (const auto& p : front) require_same_dims(p, ref.coords);
    Point lowest(ref.coords.size(), -std::numeric_limits<double>::infinity());
    double total = 0.0;
    inclusion_exclusion(front, ref.coords, 0, lowest, 1.0, total);
    return total;
}

MonteCarloEstimate hypervolume_monte_carlo(std::span<const Point> front, const ReferencePoint& ref,
                                           const Point& lower, std::size_t samples, Rng& rng)
{
    require_same_dims(lower, ref.coords);
    if (samples == 0) throw std::invalid_argument("at least one sample is required");
    double box = 1.0;
    for (std::size_t d = 0; d < lower.size(); ++d) box *= ref.coords[d] - lower[d];
    std::size_t hits = 0;
    Point s(lower.size());
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t d = 0; d < s.size(); ++d) s[d] = lower[d] + uniform_unit(rng) * (ref.coords[d] - lower[d]);
        if (std::any_of(front.begin(), front.end(), [&](const Point& p) { return weakly_dominates(p, s); })) ++hits;
    }
    const double f = static_cast<double>(hits) / static_cast<double>(samples);
    return MonteCarloEstimate{box * f, box * std::sqrt(f * (1.0 - f) / static_cast<double>(samples))};
}

Scalarized scalarize(std::span<const CostVector> front, double hourly_price)
{
    if (front.empty()) throw std::invalid_argument("cannot scalarize an empty front");
    Scalarized best{0, front[0].material + hourly_price * front[0].time / 60.0};
    for (std::size_t i = 1; i < front.size(); ++i) {
        const double s = front[i].material + hourly_price * front[i].time / 60.0;
        const auto& b = front[best.index];
        if (std::tie(s, front[i].material, front[i].time) < std::tie(best.cost, b.material, b.time)) {
            best = Scalarized{i, s};
        }
    }
    return best;
}

std::vector<ImprovementCell> improvement_table(std::span<const CostVector> a, std::span<const CostVector> b,
                                               std::span<const double> prices)
{
    std::vector<ImprovementCell> out;
    for (double price : prices) {
        ImprovementCell cell;
        cell.price = price;
        cell.scalar_a = scalarize(a, price).cost;
        cell.scalar_b = scalarize(b, price).cost;
        if (cell.scalar_a != 0.0) cell.percent = std::lround(100.0 * (cell.scalar_a - cell.scalar_b) / cell.scalar_a);
        out.push_back(cell);
    }
    return out;
}

} // namespace carpentry
