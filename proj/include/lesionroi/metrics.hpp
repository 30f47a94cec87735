#pragma once

#include <cstdint>
#include <span>

#include "lesionroi/mask_ops.hpp"

namespace lesionroi {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Exact non-negative fraction. A zero denominator marks a 0/0 degeneracy.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 0;

    bool degenerate() const noexcept { return den == 0; }
    /// 0/0 evaluates to 1.
    double value() const noexcept {
        return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
    }
};

Ratio accuracy_ratio(const ConfusionCounts& c) noexcept;
Ratio dice_ratio(const ConfusionCounts& c) noexcept;
Ratio jaccard_ratio(const ConfusionCounts& c) noexcept;
Ratio sensitivity_ratio(const ConfusionCounts& c) noexcept;
Ratio specificity_ratio(const ConfusionCounts& c) noexcept;
Ratio precision_ratio(const ConfusionCounts& c) noexcept;

/// A metric value plus whether it came from a 0/0 (then value == 1).
struct Metric {
    double value = 0.0;
    bool degenerate = false;
};

struct SegMetrics {
    Metric accuracy;
    Metric dice;
    Metric jaccard;
    Metric sensitivity;
    Metric specificity;
};

struct ClsMetrics {
    Metric accuracy;
    Metric precision;
    Metric sensitivity;
    Metric specificity;
    Metric f1;
    Metric mcc;
};

/// Per-pixel counts; throws DimensionMismatch for differently sized masks.
ConfusionCounts seg_confusion(const BinaryMask& pred, const BinaryMask& gt);

/// Throws InvalidArgument when every count is zero.
SegMetrics seg_metrics(const ConfusionCounts& c);
ClsMetrics cls_metrics(const ConfusionCounts& c);

/// Matthews correlation; 0 when any marginal product factor is 0.
double mcc(const ConfusionCounts& c) noexcept;

/// Mean of each metric over images. Degeneracy flags are OR-ed.
SegMetrics mean_seg_metrics(std::span<const SegMetrics> per_image);

}  // namespace lesionroi
