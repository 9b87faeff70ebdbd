#include "ivt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace ivt::analysis {

namespace {

constexpr double kSpreadThreshold = 1e-3;
constexpr double kLimitTolerance = 1e-2;

struct Normalizer {
    double x0, x_span, y0, y_span;

    std::pair<double, double> operator()(const std::pair<Value, Value>& pt) const {
        double u = x_span > 0 ? (static_cast<double>(pt.first) - x0) / x_span : 0.0;
        double v = y_span > 0 ? (static_cast<double>(pt.second) - y0) / y_span : 0.0;
        return {u, v};
    }
};

std::uint64_t cell_key(std::uint64_t ix, std::uint64_t iy, std::uint64_t side) {
    return ix * side + iy;
}

std::uint64_t cell_index(double u, std::uint64_t side) {
    auto idx = static_cast<std::int64_t>(u * static_cast<double>(side));
    idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(side) - 1);
    return static_cast<std::uint64_t>(idx);
}

// Grid cells crossed by one segment (grid traversal over boundary
// crossings; endpoints included).
void add_segment_cells(std::unordered_set<std::uint64_t>& occupied, double u0, double v0,
                       double u1, double v1, std::uint64_t side) {
    std::int64_t cx = static_cast<std::int64_t>(cell_index(u0, side));
    std::int64_t cy = static_cast<std::int64_t>(cell_index(v0, side));
    std::int64_t ex = static_cast<std::int64_t>(cell_index(u1, side));
    std::int64_t ey = static_cast<std::int64_t>(cell_index(v1, side));
    occupied.insert(cell_key(cx, cy, side));

    double dx = u1 - u0;
    double dy = v1 - v0;
    int sx = dx > 0 ? 1 : -1;
    int sy = dy > 0 ? 1 : -1;

    std::vector<std::pair<double, char>> events;
    if (dx != 0) {
        for (std::int64_t k = cx + (sx > 0 ? 1 : 0);; k += sx) {
            double t = (static_cast<double>(k) / static_cast<double>(side) - u0) / dx;
            if (t >= 1) break;
            if (t > 0) events.emplace_back(t, 'x');
            if ((sx > 0 && k > ex) || (sx < 0 && k <= ex)) break;
        }
    }
    if (dy != 0) {
        for (std::int64_t k = cy + (sy > 0 ? 1 : 0);; k += sy) {
            double t = (static_cast<double>(k) / static_cast<double>(side) - v0) / dy;
            if (t >= 1) break;
            if (t > 0) events.emplace_back(t, 'y');
            if ((sy > 0 && k > ey) || (sy < 0 && k <= ey)) break;
        }
    }
    std::sort(events.begin(), events.end());

    std::int64_t x = cx, y = cy;
    const std::int64_t limit = static_cast<std::int64_t>(side);
    for (const auto& [t, axis] : events) {
        (void)t;
        if (axis == 'x')
            x += sx;
        else
            y += sy;
        if (x >= 0 && x < limit && y >= 0 && y < limit)
            occupied.insert(cell_key(x, y, side));
    }
    occupied.insert(cell_key(ex, ey, side));
}

}  // namespace

GraphSample graph_points(const adds::AddsSpec& spec, Value n_points) {
    const Value p = spec.rule.base();
    if (n_points < checked_pow(p, 3))
        throw std::invalid_argument("graph_points: n_points must be >= p^3");
    GraphSample sample{spec, {}, 0, 0, 0, 0};
    sample.points.reserve(static_cast<std::size_t>(n_points));
    for (Value y0 = 0; y0 < n_points; ++y0)
        sample.points.emplace_back(y0, adds::step(spec, y0));
    sample.x_min = 0;
    sample.x_max = n_points - 1;
    auto [lo, hi] = std::minmax_element(sample.points.begin(), sample.points.end(),
                                        [](const auto& a, const auto& b) {
                                            return a.second < b.second;
                                        });
    sample.y_min = lo->second;
    sample.y_max = hi->second;
    return sample;
}

const char* to_string(GraphGeometry geometry) {
    return geometry == GraphGeometry::kPoints ? "points" : "curve";
}

std::vector<unsigned> default_levels() { return {1, 2, 3, 4, 5, 6}; }

BoxCountFit box_dimension(const GraphSample& sample, std::span<const unsigned> levels,
                          GraphGeometry geometry) {
    if (levels.size() < 4)
        throw std::invalid_argument("box_dimension: need at least 4 scale levels");
    if (sample.points.size() < 2)
        throw std::invalid_argument("box_dimension: need at least 2 sample points");
    if (sample.x_min == sample.x_max && sample.y_min == sample.y_max)
        throw std::domain_error("box_dimension: degenerate sample (all points identical)");

    const double p = static_cast<double>(sample.spec.rule.base());
    Normalizer norm{static_cast<double>(sample.x_min),
                    static_cast<double>(sample.x_max - sample.x_min),
                    static_cast<double>(sample.y_min),
                    static_cast<double>(sample.y_max - sample.y_min)};

    BoxCountFit fit;
    for (unsigned level : levels) {
        auto side = static_cast<std::uint64_t>(std::llround(std::pow(p, level)));
        std::unordered_set<std::uint64_t> occupied;
        if (geometry == GraphGeometry::kPoints) {
            for (const auto& pt : sample.points) {
                auto [u, v] = norm(pt);
                occupied.insert(cell_key(cell_index(u, side), cell_index(v, side), side));
            }
        } else {
            for (std::size_t i = 0; i + 1 < sample.points.size(); ++i) {
                auto [u0, v0] = norm(sample.points[i]);
                auto [u1, v1] = norm(sample.points[i + 1]);
                add_segment_cells(occupied, u0, v0, u1, v1, side);
            }
        }
        fit.scales.push_back(1.0 / static_cast<double>(side));
        fit.counts.push_back(occupied.size());
    }

    const std::size_t n = fit.scales.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(fit.scales[i]);
        ys[i] = std::log(static_cast<double>(fit.counts[i]));
    }
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    fit.dimension = -slope;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - (my + slope * (xs[i] - mx));
        ss += r * r;
    }
    fit.fit_residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

const char* to_string(SeriesVerdict verdict) {
    switch (verdict) {
        case SeriesVerdict::kRadiusOne: return "radius-one";
        case SeriesVerdict::kNonConvergent: return "non-convergent";
        case SeriesVerdict::kDegenerateZeroTerms: return "degenerate-zero-terms";
    }
    return "unknown";
}

RatioSeries ratio_sequence(const adds::AddsSpec& spec, std::size_t n_max) {
    if (n_max < 100) throw std::invalid_argument("ratio_sequence: n_max must be >= 100");
    RatioSeries series{spec, {}, {}, {}, 0, 0.0, {}, SeriesVerdict::kNonConvergent};
    series.terms.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        Value term = spec.variant == adds::Variant::kTypeI
                         ? checked_mul_add(spec.mul, apply(spec.rule, n), spec.add)
                         : apply(spec.rule, checked_mul_add(spec.mul, n, spec.add));
        series.terms.push_back(term);
        if (term == 0) series.zero_terms.push_back(n);
    }
    series.ratios.resize(n_max);
    for (std::size_t n = 0; n < n_max; ++n) {
        if (series.terms[n + 1] != 0)
            series.ratios[n] = static_cast<double>(series.terms[n]) /
                               static_cast<double>(series.terms[n + 1]);
    }

    series.window_size = std::max<std::size_t>(10, n_max / 10);
    std::size_t first = n_max > series.window_size ? n_max - series.window_size : 0;
    double lo = 0, hi = 0, sum = 0;
    std::size_t defined = 0;
    for (std::size_t n = first; n < n_max; ++n) {
        if (!series.ratios[n]) continue;
        double r = *series.ratios[n];
        if (defined == 0) {
            lo = hi = r;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        sum += r;
        ++defined;
    }
    if (defined == 0) {
        series.verdict = SeriesVerdict::kDegenerateZeroTerms;
        return series;
    }
    series.window_spread = hi - lo;
    if (series.window_spread < kSpreadThreshold) {
        series.limit_estimate = sum / static_cast<double>(defined);
        series.verdict = std::abs(*series.limit_estimate - 1.0) <= kLimitTolerance
                             ? SeriesVerdict::kRadiusOne
                             : SeriesVerdict::kNonConvergent;
    } else {
        series.verdict = SeriesVerdict::kNonConvergent;
    }
    return series;
}

}  // namespace ivt::analysis
