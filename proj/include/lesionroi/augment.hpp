#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lesionroi/geometry.hpp"
#include "lesionroi/image.hpp"
#include "lesionroi/mask_ops.hpp"

namespace lesionroi {

/// Knobs of the ROI-centred magnification ladder.
struct AugmentParams {
    int target_side = 224;
    /// Fraction added around the ROI's longer side for the tightest window.
    double margin = 0.10;
    /// Geometric growth between consecutive window sides.
    double step = 1.5;
    /// A full-frame level is appended only if it exceeds the last level by more than this fraction.
    double terminal_slack = 0.10;
    std::vector<QuarterTurn> rotations{kAllQuarterTurns.begin(), kAllQuarterTurns.end()};

    /// Throws InvalidArgument on target_side < 1, step <= 1, negative margin or slack, or no rotations.
    void validate() const;
};

struct AugmentRecord {
    Box window;
    QuarterTurn turn = QuarterTurn::R0;
    int level = 0;
    std::string out_id;

    friend bool operator==(const AugmentRecord&, const AugmentRecord&) = default;
};

struct AugmentationPlan {
    std::string image_id;
    int width = 0;
    int height = 0;
    Box roi;
    std::vector<AugmentRecord> records;

    friend bool operator==(const AugmentationPlan&, const AugmentationPlan&) = default;
};

/// Strictly increasing square window sides, from the tight ROI window up to the
/// shorter frame side. Empty when the frame is smaller than target_side, since
/// every level would need upsampling.
std::vector<int> magnification_ladder(int width, int height, const Box& roi, const AugmentParams& p);

/// Ladder x rotations, ascending side then 0/90/180/270. Windows are centred on
/// the ROI centre and clamped into the frame. Throws OutOfFrame for an ROI
/// outside the frame.
AugmentationPlan plan(const std::string& image_id, int width, int height, const Box& roi, const AugmentParams& p);

/// "{image_id}_m{level}_r{degrees}"
std::string augment_out_id(const std::string& image_id, int level, QuarterTurn turn);

struct AugmentedSample {
    Image image;
    std::optional<BinaryMask> mask;
    AugmentRecord record;
};

/// Crop, rotate, then resize each record to target_side x target_side
/// (bilinear for the image, nearest neighbour for the mask). Throws
/// DimensionMismatch if the inputs differ from the plan's frame and
/// InvalidArgument if a window would be upsampled.
std::vector<AugmentedSample> apply_plan(const Image& image, const BinaryMask* mask, const AugmentationPlan& plan,
                                        const AugmentParams& p);

/// Direct (aspect-distorting) bilinear resize of every channel.
Image resize_image(const Image& image, int new_w, int new_h);

/// Where `box` lands in the output of `record`: clipped to the window,
/// shifted, rotated, and scaled outward to whole pixels. nullopt when the box
/// misses the window.
std::optional<Box> map_box_through(const Box& box, const AugmentRecord& record, int target_side);

}  // namespace lesionroi
