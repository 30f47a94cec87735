#include "lesionroi/augment.hpp"

#include <algorithm>
#include <cmath>

#include "lesionroi/error.hpp"

namespace lesionroi {

void AugmentParams::validate() const {
    if (target_side < 1) throw Error(ErrorCode::InvalidArgument, "target side must be >= 1");
    if (!(step > 1.0)) throw Error(ErrorCode::InvalidArgument, "magnification step must be > 1");
    if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be >= 0");
    if (!(terminal_slack >= 0.0)) throw Error(ErrorCode::InvalidArgument, "terminal slack must be >= 0");
    if (rotations.empty()) throw Error(ErrorCode::InvalidArgument, "at least one rotation is required");
}

std::vector<int> magnification_ladder(int width, int height, const Box& roi, const AugmentParams& p) {
    p.validate();
    if (!roi.inside_frame(width, height)) {
        throw Error(ErrorCode::OutOfFrame, "ROI " + to_string(roi) + " outside " + std::to_string(width) + "x" +
                                               std::to_string(height));
    }
    const int limit = std::min(width, height);
    if (limit < p.target_side) return {};

    // The epsilon keeps products such as 120 * 1.1 from rounding up past an exact integer.
    const double padded = std::max(roi.width(), roi.height()) * (1.0 + p.margin);
    const auto tight = static_cast<long long>(std::ceil(padded - 1e-9));
    const int c0 = static_cast<int>(std::min<long long>(std::max<long long>(tight, p.target_side), limit));

    std::vector<int> sides{c0};
    for (int k = 1;; ++k) {
        const double next = std::round(static_cast<double>(c0) * std::pow(p.step, k));
        if (next > limit) break;
        const int side = static_cast<int>(next);
        if (side > sides.back()) sides.push_back(side);
    }
    if (static_cast<double>(limit) > static_cast<double>(sides.back()) * (1.0 + p.terminal_slack)) {
        sides.push_back(limit);
    }
    return sides;
}

std::string augment_out_id(const std::string& image_id, int level, QuarterTurn turn) {
    return image_id + "_m" + std::to_string(level) + "_r" + std::to_string(degrees(turn));
}

AugmentationPlan plan(const std::string& image_id, int width, int height, const Box& roi, const AugmentParams& p) {
    const auto sides = magnification_ladder(width, height, roi, p);
    AugmentationPlan out{image_id, width, height, roi, {}};
    const int cx = (roi.x_min + roi.x_max) / 2;
    const int cy = (roi.y_min + roi.y_max) / 2;
    for (std::size_t level = 0; level < sides.size(); ++level) {
        const Box window = clamp_window(cx, cy, sides[level], width, height);
        for (QuarterTurn t : kAllQuarterTurns) {
            if (std::find(p.rotations.begin(), p.rotations.end(), t) == p.rotations.end()) continue;
            out.records.push_back(
                AugmentRecord{window, t, static_cast<int>(level), augment_out_id(image_id, static_cast<int>(level), t)});
        }
    }
    return out;
}

Image resize_image(const Image& image, int new_w, int new_h) {
    return map_channels(image, [new_w, new_h](const auto& c) { return resize_bilinear(c, new_w, new_h); });
}

std::vector<AugmentedSample> apply_plan(const Image& image, const BinaryMask* mask, const AugmentationPlan& plan,
                                        const AugmentParams& p) {
    p.validate();
    if (image.width() != plan.width || image.height() != plan.height) {
        throw Error(ErrorCode::DimensionMismatch, "image is " + std::to_string(image.width()) + "x" +
                                                      std::to_string(image.height()) + ", plan expects " +
                                                      std::to_string(plan.width) + "x" + std::to_string(plan.height));
    }
    if (mask && (mask->width() != plan.width || mask->height() != plan.height)) {
        throw Error(ErrorCode::DimensionMismatch, "mask does not match the plan's frame");
    }
    const int side = p.target_side;
    std::vector<AugmentedSample> out;
    out.reserve(plan.records.size());
    for (const auto& rec : plan.records) {
        if (rec.window.width() != rec.window.height() || rec.window.width() < side) {
            throw Error(ErrorCode::InvalidArgument, "window " + to_string(rec.window) + " would be upsampled to " +
                                                        std::to_string(side));
        }
        AugmentedSample s;
        s.record = rec;
        s.image = rotate_image(crop_image(image, rec.window), rec.turn);
        if (rec.window.width() != side) s.image = resize_image(s.image, side, side);
        if (mask) s.mask = resize_mask(rotate_mask(crop_mask(*mask, rec.window), rec.turn), side, side);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::optional<Box> map_box_through(const Box& box, const AugmentRecord& record, int target_side) {
    const auto clipped = intersect(box, record.window);
    if (!clipped) return std::nullopt;
    const int side = record.window.width();
    const Box local{clipped->x_min - record.window.x_min, clipped->y_min - record.window.y_min,
                    clipped->x_max - record.window.x_min, clipped->y_max - record.window.y_min};
    const Box turned = rotate_box(local, record.turn, side, side);
    const auto lo = [&](int v) { return static_cast<int>(floor_div(std::int64_t{v} * target_side, side)); };
    const auto hi = [&](int v) { return static_cast<int>(ceil_div(std::int64_t{v} * target_side, side)); };
    return Box{lo(turned.x_min), lo(turned.y_min), hi(turned.x_max), hi(turned.y_max)};
}

}  // namespace lesionroi
