#pragma once

// Graph-of-map sampling, box-counting dimension estimation, and
// power-series ratio tests.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ivt/adds.hpp"

namespace ivt::analysis {

/// (Y0, Y1) pairs of one affine step map, Y1 = step(Y0), for
/// Y0 in [0, n_points), with the sample's bounding box.
struct GraphSample {
    adds::AddsSpec spec;
    std::vector<std::pair<Value, Value>> points;
    Value x_min = 0, x_max = 0, y_min = 0, y_max = 0;
};

/// Exact map evaluation, no sampling noise. Requires n_points >= p^3.
GraphSample graph_points(const adds::AddsSpec& spec, Value n_points);

/// What to lay the boxes over: the bare sample points, or the polyline
/// connecting consecutive points (the graph as a plotting tool draws it).
enum class GraphGeometry { kPoints, kCurve };

const char* to_string(GraphGeometry geometry);

struct BoxCountFit {
    std::vector<double> scales;        // box side lengths 1/p^level
    std::vector<std::uint64_t> counts; // occupied boxes per scale
    double dimension = 0.0;            // -slope of log count vs log scale
    double fit_residual = 0.0;         // RMS residual of the fit
};

/// Boxes of side 1/p^level are laid on the sample normalized per axis into
/// the unit square by its own bounding box; a degenerate axis collapses to
/// coordinate 0. Requires >= 4 levels and >= 2 sample points; throws
/// std::domain_error when every point is identical.
BoxCountFit box_dimension(const GraphSample& sample, std::span<const unsigned> levels,
                          GraphGeometry geometry = GraphGeometry::kPoints);

std::vector<unsigned> default_levels();  // 1..6

enum class SeriesVerdict { kRadiusOne, kNonConvergent, kDegenerateZeroTerms };

const char* to_string(SeriesVerdict verdict);

/// Power-series coefficients a_n = step-variant formula (type-I:
/// A*rule(n)+B, type-II: rule(a*n+b)) and the ratios |a_n / a_{n+1}|.
struct RatioSeries {
    adds::AddsSpec spec;
    std::vector<Value> terms;                 // a_0 .. a_n_max
    std::vector<std::optional<double>> ratios;// ratio n defined iff a_{n+1} != 0
    std::vector<std::size_t> zero_terms;      // indices with a_n == 0
    std::size_t window_size = 0;              // trailing ratios examined
    double window_spread = 0.0;               // max - min over the window
    std::optional<double> limit_estimate;     // window mean when spread < 1e-3
    SeriesVerdict verdict = SeriesVerdict::kNonConvergent;
};

/// Requires n_max >= 100. The verdict examines the trailing
/// max(10, n_max/10) defined ratios: no defined ratio -> degenerate;
/// spread < 1e-3 with mean within 1e-2 of 1 -> radius-one; otherwise
/// non-convergent.
RatioSeries ratio_sequence(const adds::AddsSpec& spec, std::size_t n_max);

}  // namespace ivt::analysis
