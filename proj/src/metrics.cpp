#include "lesionroi/metrics.hpp"

#include <cmath>
#include <string>

#include "lesionroi/error.hpp"

namespace lesionroi {

namespace {

Metric metric(const Ratio& r) noexcept { return Metric{r.value(), r.degenerate()}; }

void require_counts(const ConfusionCounts& c) {
    if (c.total() == 0) throw Error(ErrorCode::InvalidArgument, "confusion counts are all zero");
}

}  // namespace

Ratio accuracy_ratio(const ConfusionCounts& c) noexcept { return {c.tp + c.tn, c.total()}; }
Ratio dice_ratio(const ConfusionCounts& c) noexcept { return {2 * c.tp, 2 * c.tp + c.fp + c.fn}; }
Ratio jaccard_ratio(const ConfusionCounts& c) noexcept { return {c.tp, c.tp + c.fp + c.fn}; }
Ratio sensitivity_ratio(const ConfusionCounts& c) noexcept { return {c.tp, c.tp + c.fn}; }
Ratio specificity_ratio(const ConfusionCounts& c) noexcept { return {c.tn, c.tn + c.fp}; }
Ratio precision_ratio(const ConfusionCounts& c) noexcept { return {c.tp, c.tp + c.fp}; }

ConfusionCounts seg_confusion(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
        throw Error(ErrorCode::DimensionMismatch, "prediction " + std::to_string(pred.width()) + "x" +
                                                      std::to_string(pred.height()) + " vs ground truth " +
                                                      std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    }
    const auto p = pred.data().cast<bool>();
    const auto g = gt.data().cast<bool>();
    ConfusionCounts c;
    c.tp = static_cast<std::uint64_t>((p && g).count());
    c.fp = static_cast<std::uint64_t>((p && !g).count());
    c.fn = static_cast<std::uint64_t>((!p && g).count());
    c.tn = static_cast<std::uint64_t>(pred.data().size()) - c.tp - c.fp - c.fn;
    return c;
}

SegMetrics seg_metrics(const ConfusionCounts& c) {
    require_counts(c);
    return SegMetrics{metric(accuracy_ratio(c)), metric(dice_ratio(c)), metric(jaccard_ratio(c)),
                      metric(sensitivity_ratio(c)), metric(specificity_ratio(c))};
}

double mcc(const ConfusionCounts& c) noexcept {
    const double tp = static_cast<double>(c.tp);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    const double tn = static_cast<double>(c.tn);
    const double a = tp + fp, b = tp + fn, d = tn + fp, e = tn + fn;
    if (a == 0.0 || b == 0.0 || d == 0.0 || e == 0.0) return 0.0;
    // Square roots taken pairwise keep the product in range for pixel-scale counts.
    return (tp * tn - fp * fn) / (std::sqrt(a * b) * std::sqrt(d * e));
}

ClsMetrics cls_metrics(const ConfusionCounts& c) {
    require_counts(c);
    ClsMetrics m;
    m.accuracy = metric(accuracy_ratio(c));
    m.precision = metric(precision_ratio(c));
    m.sensitivity = metric(sensitivity_ratio(c));
    m.specificity = metric(specificity_ratio(c));
    // F1 = 2TP / (2TP + FP + FN), same fraction as Dice.
    m.f1 = metric(dice_ratio(c));
    const bool flat = c.tp + c.fp == 0 || c.tp + c.fn == 0 || c.tn + c.fp == 0 || c.tn + c.fn == 0;
    m.mcc = Metric{mcc(c), flat};
    return m;
}

SegMetrics mean_seg_metrics(std::span<const SegMetrics> per_image) {
    SegMetrics out;
    if (per_image.empty()) return out;
    auto accumulate = [&](Metric SegMetrics::*field) {
        Metric m;
        for (const auto& s : per_image) {
            m.value += (s.*field).value;
            m.degenerate = m.degenerate || (s.*field).degenerate;
        }
        m.value /= static_cast<double>(per_image.size());
        return m;
    };
    out.accuracy = accumulate(&SegMetrics::accuracy);
    out.dice = accumulate(&SegMetrics::dice);
    out.jaccard = accumulate(&SegMetrics::jaccard);
    out.sensitivity = accumulate(&SegMetrics::sensitivity);
    out.specificity = accumulate(&SegMetrics::specificity);
    return out;
}

}  // namespace lesionroi
