#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace lesionroi {

/// Axis-aligned pixel rectangle, half-open: [x_min, x_max) x [y_min, y_max).
/// Origin is the top-left pixel, x grows rightward and y downward.
struct Box {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;

    int width() const noexcept { return x_max - x_min; }
    int height() const noexcept { return y_max - y_min; }
    std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
    }
    bool valid() const noexcept { return x_min >= 0 && y_min >= 0 && x_max > x_min && y_max > y_min; }
    bool contains(const Box& other) const noexcept {
        return other.x_min >= x_min && other.y_min >= y_min && other.x_max <= x_max && other.y_max <= y_max;
    }
    bool contains_pixel(int x, int y) const noexcept { return x >= x_min && x < x_max && y >= y_min && y < y_max; }
    bool inside_frame(int frame_width, int frame_height) const noexcept {
        return valid() && x_max <= frame_width && y_max <= frame_height;
    }
    std::array<int, 4> coords() const noexcept { return {x_min, y_min, x_max, y_max}; }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Throws ValidationError unless the coordinates describe a Box with positive area.
Box make_box(int x_min, int y_min, int x_max, int y_max);

std::string to_string(const Box& b);

/// Clockwise rotation by a multiple of 90 degrees.
enum class QuarterTurn : int { R0 = 0, R90 = 90, R180 = 180, R270 = 270 };

inline constexpr std::array<QuarterTurn, 4> kAllQuarterTurns{QuarterTurn::R0, QuarterTurn::R90,
                                                            QuarterTurn::R180, QuarterTurn::R270};

constexpr int degrees(QuarterTurn t) noexcept { return static_cast<int>(t); }

/// Throws InvalidArgument for anything other than 0, 90, 180 or 270.
QuarterTurn quarter_turn_from_degrees(int deg);

/// Composition of two clockwise turns.
constexpr QuarterTurn compose(QuarterTurn a, QuarterTurn b) noexcept {
    return static_cast<QuarterTurn>((degrees(a) + degrees(b)) % 360);
}

/// True when the turn swaps the frame's width and height.
constexpr bool swaps_axes(QuarterTurn t) noexcept { return t == QuarterTurn::R90 || t == QuarterTurn::R270; }

/// Exact |a ∩ b| / |a ∪ b|; integer areas, one division.
double iou(const Box& a, const Box& b) noexcept;

/// Overlap area in pixels (0 when disjoint).
std::int64_t intersection_area(const Box& a, const Box& b) noexcept;

/// Largest box inside both, or nullopt when they share no pixel.
std::optional<Box> intersect(const Box& a, const Box& b) noexcept;

/// Box occupied by b's pixels after rotating the enclosing width x height frame
/// clockwise by t. For 90 degrees pixel centers map (x, y) -> (height-1-y, x).
Box rotate_box(const Box& b, QuarterTurn t, int width, int height);

/// side x side window centred as close as possible to (cx, cy), translated
/// (never shrunk) to lie inside the width x height frame.
Box clamp_window(int cx, int cy, int side, int width, int height);

}  // namespace lesionroi
