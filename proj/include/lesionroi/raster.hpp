#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "lesionroi/error.hpp"
#include "lesionroi/geometry.hpp"

namespace lesionroi {

/// Row-major 2-D raster: rows are image rows (y), columns are x.
template <typename Scalar>
using Raster = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Derived>
using RasterOf = Raster<typename Derived::Scalar>;

/// Exact pixel permutation; width and height swap for 90 and 270.
template <typename Derived>
RasterOf<Derived> rotate(const Eigen::ArrayBase<Derived>& src, QuarterTurn t) {
    switch (t) {
        case QuarterTurn::R0: return src;
        case QuarterTurn::R90: return src.transpose().rowwise().reverse();
        case QuarterTurn::R180: return src.reverse();
        case QuarterTurn::R270: return src.transpose().colwise().reverse();
    }
    return src;
}

template <typename Derived>
RasterOf<Derived> crop(const Eigen::ArrayBase<Derived>& src, const Box& window) {
    if (!window.inside_frame(static_cast<int>(src.cols()), static_cast<int>(src.rows()))) {
        throw Error(ErrorCode::OutOfFrame, "crop window " + to_string(window) + " outside " +
                                               std::to_string(src.cols()) + "x" + std::to_string(src.rows()));
    }
    return src.block(window.y_min, window.x_min, window.height(), window.width());
}

namespace detail {

inline void require_positive_size(Eigen::Index new_w, Eigen::Index new_h) {
    if (new_w < 1 || new_h < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "resize target must be positive, got " + std::to_string(new_w) + "x" + std::to_string(new_h));
    }
}

// Source index whose pixel centre is nearest the centre of output pixel i:
// floor((i + 0.5) * src / dst), computed in integers.
inline Eigen::Index nearest_source(Eigen::Index i, Eigen::Index src, Eigen::Index dst) {
    return ((2 * i + 1) * src) / (2 * dst);
}

struct LinearTap {
    Eigen::Index lo;
    Eigen::Index hi;
    double frac;
};

// Half-pixel centre alignment: output centre i + 0.5 sits at source (i + 0.5) * src / dst.
inline std::vector<LinearTap> linear_taps(Eigen::Index src, Eigen::Index dst) {
    std::vector<LinearTap> taps(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / static_cast<double>(dst);
    for (Eigen::Index i = 0; i < dst; ++i) {
        double pos = (static_cast<double>(i) + 0.5) * scale - 0.5;
        pos = std::clamp(pos, 0.0, static_cast<double>(src - 1));
        const auto lo = static_cast<Eigen::Index>(std::floor(pos));
        const Eigen::Index hi = std::min(lo + 1, src - 1);
        taps[static_cast<std::size_t>(i)] = {lo, hi, pos - static_cast<double>(lo)};
    }
    return taps;
}

template <typename Scalar>
Scalar cast_sample(double v) {
    if constexpr (std::is_integral_v<Scalar>) {
        const double lo = static_cast<double>(std::numeric_limits<Scalar>::lowest());
        const double hi = static_cast<double>(std::numeric_limits<Scalar>::max());
        return static_cast<Scalar>(std::clamp(std::round(v), lo, hi));
    } else {
        return static_cast<Scalar>(v);
    }
}

}  // namespace detail

/// Nearest-neighbour resampling at output pixel centres.
template <typename Derived>
RasterOf<Derived> resize_nearest(const Eigen::ArrayBase<Derived>& src, Eigen::Index new_w, Eigen::Index new_h) {
    detail::require_positive_size(new_w, new_h);
    RasterOf<Derived> out(new_h, new_w);
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(new_w));
    for (Eigen::Index x = 0; x < new_w; ++x) cols[static_cast<std::size_t>(x)] = detail::nearest_source(x, src.cols(), new_w);
    for (Eigen::Index y = 0; y < new_h; ++y) {
        const Eigen::Index sy = detail::nearest_source(y, src.rows(), new_h);
        for (Eigen::Index x = 0; x < new_w; ++x) out(y, x) = src(sy, cols[static_cast<std::size_t>(x)]);
    }
    return out;
}

/// Separable bilinear resampling (horizontal pass, then vertical), half-pixel
/// aligned, edge-clamped. Integral scalars are rounded to nearest.
template <typename Derived>
RasterOf<Derived> resize_bilinear(const Eigen::ArrayBase<Derived>& src, Eigen::Index new_w, Eigen::Index new_h) {
    using Scalar = typename Derived::Scalar;
    detail::require_positive_size(new_w, new_h);
    const auto xtaps = detail::linear_taps(src.cols(), new_w);
    const auto ytaps = detail::linear_taps(src.rows(), new_h);

    Raster<double> horizontal(src.rows(), new_w);
    for (Eigen::Index y = 0; y < src.rows(); ++y) {
        for (Eigen::Index x = 0; x < new_w; ++x) {
            const auto& t = xtaps[static_cast<std::size_t>(x)];
            const double a = static_cast<double>(src(y, t.lo));
            const double b = static_cast<double>(src(y, t.hi));
            horizontal(y, x) = a + (b - a) * t.frac;
        }
    }
    RasterOf<Derived> out(new_h, new_w);
    for (Eigen::Index y = 0; y < new_h; ++y) {
        const auto& t = ytaps[static_cast<std::size_t>(y)];
        for (Eigen::Index x = 0; x < new_w; ++x) {
            const double a = horizontal(t.lo, x);
            const double b = horizontal(t.hi, x);
            out(y, x) = detail::cast_sample<Scalar>(a + (b - a) * t.frac);
        }
    }
    return out;
}

}  // namespace lesionroi
