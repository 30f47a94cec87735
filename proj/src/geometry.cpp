#include "lesionroi/geometry.hpp"

#include <algorithm>

#include "lesionroi/error.hpp"

namespace lesionroi {

Box make_box(int x_min, int y_min, int x_max, int y_max) {
    Box b{x_min, y_min, x_max, y_max};
    if (!b.valid()) {
        throw Error(ErrorCode::ValidationError, "invalid box " + to_string(b));
    }
    return b;
}

std::string to_string(const Box& b) {
    return "(" + std::to_string(b.x_min) + "," + std::to_string(b.y_min) + "," + std::to_string(b.x_max) + "," +
           std::to_string(b.y_max) + ")";
}

QuarterTurn quarter_turn_from_degrees(int deg) {
    switch (deg) {
        case 0: return QuarterTurn::R0;
        case 90: return QuarterTurn::R90;
        case 180: return QuarterTurn::R180;
        case 270: return QuarterTurn::R270;
        default: throw Error(ErrorCode::InvalidArgument, "rotation must be 0, 90, 180 or 270, got " + std::to_string(deg));
    }
}

std::int64_t intersection_area(const Box& a, const Box& b) noexcept {
    const std::int64_t w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const std::int64_t h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    return (w > 0 && h > 0) ? w * h : 0;
}

double iou(const Box& a, const Box& b) noexcept {
    const std::int64_t inter = intersection_area(a, b);
    const std::int64_t uni = a.area() + b.area() - inter;
    if (inter == 0 || uni <= 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<Box> intersect(const Box& a, const Box& b) noexcept {
    Box r{std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min), std::min(a.x_max, b.x_max),
          std::min(a.y_max, b.y_max)};
    if (r.x_min >= r.x_max || r.y_min >= r.y_max) return std::nullopt;
    return r;
}

Box rotate_box(const Box& b, QuarterTurn t, int width, int height) {
    if (!b.inside_frame(width, height)) {
        throw Error(ErrorCode::OutOfFrame,
                    to_string(b) + " outside " + std::to_string(width) + "x" + std::to_string(height) + " frame");
    }
    switch (t) {
        case QuarterTurn::R0: return b;
        case QuarterTurn::R90: return Box{height - b.y_max, b.x_min, height - b.y_min, b.x_max};
        case QuarterTurn::R180: return Box{width - b.x_max, height - b.y_max, width - b.x_min, height - b.y_min};
        case QuarterTurn::R270: return Box{b.y_min, width - b.x_max, b.y_max, width - b.x_min};
    }
    return b;
}

namespace {

// floor((2c - side) / 2), then slid into [0, extent - side].
int place_axis(int center, int side, int extent) {
    const std::int64_t twice = 2 * static_cast<std::int64_t>(center) - side;
    std::int64_t lo = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
    lo = std::clamp<std::int64_t>(lo, 0, extent - side);
    return static_cast<int>(lo);
}

}  // namespace

Box clamp_window(int cx, int cy, int side, int width, int height) {
    if (side < 1 || side > width || side > height) {
        throw Error(ErrorCode::InvalidArgument, "window side " + std::to_string(side) + " does not fit " +
                                                    std::to_string(width) + "x" + std::to_string(height));
    }
    const int x = place_axis(cx, side, width);
    const int y = place_axis(cy, side, height);
    return Box{x, y, x + side, y + side};
}

}  // namespace lesionroi
