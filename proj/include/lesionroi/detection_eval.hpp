#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lesionroi/geometry.hpp"

namespace lesionroi {

struct Detection {
    Box box;
    double score = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Throws ValidationError for an invalid box or a score outside [0, 1].
Detection make_detection(const Box& box, double score);

/// How unmatched ground truth is counted.
enum class FnMode {
    /// FN only when the detector produced nothing for the image.
    PaperLiteral,
    /// FN whenever no detection matched the ground truth.
    Standard,
};

FnMode fn_mode_from_string(const std::string& s);
const char* to_string(FnMode mode) noexcept;

struct ImageOutcome {
    std::string image_id;
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::optional<double> matched_iou;
};

/// One image: a single ground-truth box and whatever the detector returned.
struct ImageCase {
    std::string image_id;
    Box gt;
    std::vector<Detection> detections;
};

struct EvalReport {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double mean_iou = 0.0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t n_images = 0;
    // Set when the corresponding denominator was zero and the metric was reported as 0.
    bool precision_undefined = false;
    bool recall_undefined = false;
    bool mean_iou_undefined = false;
};

using Curve = std::vector<EvalReport>;

/// Score descending; equal scores put the larger box first, then the
/// lexicographically smaller (x_min, y_min, x_max, y_max).
bool ranks_before(const Detection& a, const Detection& b) noexcept;

/// Single-GT matching: the highest-ranked detection with IoU strictly above
/// the threshold is the one TP, every other detection is an FP.
ImageOutcome match_image(const Box& gt, std::span<const Detection> dets, double threshold,
                         FnMode mode = FnMode::PaperLiteral);

/// Aggregates per-image outcomes. Duplicate image ids throw DuplicateId.
/// The result does not depend on input order or on `workers`.
EvalReport evaluate(std::span<const ImageCase> cases, double threshold, FnMode mode = FnMode::PaperLiteral,
                    unsigned workers = 1);

/// Per-image outcomes, sorted by image id.
std::vector<ImageOutcome> match_all(std::span<const ImageCase> cases, double threshold,
                                    FnMode mode = FnMode::PaperLiteral, unsigned workers = 1);

/// Reduces outcomes already sorted by image id.
EvalReport summarize(std::span<const ImageOutcome> outcomes, double threshold);

/// One report per threshold; thresholds must be strictly increasing in (0, 1).
Curve threshold_sweep(std::span<const ImageCase> cases, std::span<const double> thresholds,
                      FnMode mode = FnMode::PaperLiteral, unsigned workers = 1);

/// Highest score, then largest area, then smallest coordinates.
/// Throws NoDetections on an empty list.
Detection select_primary(std::span<const Detection> dets);

/// Throws InvalidArgument unless 0 < threshold < 1.
void require_threshold(double threshold);

}  // namespace lesionroi
