#include "lesionroi/detection_eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lesionroi/error.hpp"
#include "lesionroi/parallel.hpp"

namespace lesionroi {

Detection make_detection(const Box& box, double score) {
    if (!box.valid()) throw Error(ErrorCode::ValidationError, "invalid detection box " + to_string(box));
    if (!(score >= 0.0 && score <= 1.0)) {
        throw Error(ErrorCode::ValidationError, "detection score " + std::to_string(score) + " outside [0, 1]");
    }
    return Detection{box, score};
}

FnMode fn_mode_from_string(const std::string& s) {
    if (s == "paper" || s == "paper-literal") return FnMode::PaperLiteral;
    if (s == "standard") return FnMode::Standard;
    throw Error(ErrorCode::InvalidArgument, "unknown fn mode '" + s + "'");
}

const char* to_string(FnMode mode) noexcept {
    return mode == FnMode::PaperLiteral ? "paper-literal" : "standard";
}

void require_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "IoU threshold " + std::to_string(threshold) + " outside (0, 1)");
    }
}

bool ranks_before(const Detection& a, const Detection& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.area() != b.box.area()) return a.box.area() > b.box.area();
    return a.box.coords() < b.box.coords();
}

ImageOutcome match_image(const Box& gt, std::span<const Detection> dets, double threshold, FnMode mode) {
    require_threshold(threshold);
    std::vector<Detection> ranked(dets.begin(), dets.end());
    std::stable_sort(ranked.begin(), ranked.end(), ranks_before);

    ImageOutcome out;
    for (const auto& d : ranked) {
        const double overlap = iou(gt, d.box);
        if (out.tp == 0 && overlap > threshold) {
            out.tp = 1;
            out.matched_iou = overlap;
        } else {
            ++out.fp;
        }
    }
    if (mode == FnMode::PaperLiteral) {
        out.fn = ranked.empty() ? 1 : 0;
    } else {
        out.fn = out.tp == 0 ? 1 : 0;
    }
    return out;
}

std::vector<ImageOutcome> match_all(std::span<const ImageCase> cases, double threshold, FnMode mode,
                                    unsigned workers) {
    require_threshold(threshold);
    std::vector<const ImageCase*> order;
    order.reserve(cases.size());
    std::unordered_set<std::string> seen;
    for (const auto& c : cases) {
        if (!seen.insert(c.image_id).second) throw Error(ErrorCode::DuplicateId, "image id '" + c.image_id + "'");
        order.push_back(&c);
    }
    std::sort(order.begin(), order.end(), [](const ImageCase* a, const ImageCase* b) { return a->image_id < b->image_id; });

    std::vector<ImageOutcome> outcomes(order.size());
    parallel_for(order.size(), workers, [&](std::size_t i) {
        outcomes[i] = match_image(order[i]->gt, order[i]->detections, threshold, mode);
        outcomes[i].image_id = order[i]->image_id;
    });
    return outcomes;
}

EvalReport summarize(std::span<const ImageOutcome> outcomes, double threshold) {
    EvalReport r;
    r.threshold = threshold;
    r.n_images = static_cast<std::int64_t>(outcomes.size());
    double iou_sum = 0.0;
    for (const auto& o : outcomes) {
        r.tp += o.tp;
        r.fp += o.fp;
        r.fn += o.fn;
        if (o.matched_iou) iou_sum += *o.matched_iou;
    }
    if (r.tp + r.fp > 0) {
        r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
    } else {
        r.precision_undefined = true;
    }
    if (r.tp + r.fn > 0) {
        r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
    } else {
        r.recall_undefined = true;
    }
    if (r.tp > 0) {
        r.mean_iou = iou_sum / static_cast<double>(r.tp);
    } else {
        r.mean_iou_undefined = true;
    }
    return r;
}

EvalReport evaluate(std::span<const ImageCase> cases, double threshold, FnMode mode, unsigned workers) {
    const auto outcomes = match_all(cases, threshold, mode, workers);
    return summarize(outcomes, threshold);
}

Curve threshold_sweep(std::span<const ImageCase> cases, std::span<const double> thresholds, FnMode mode,
                      unsigned workers) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        require_threshold(thresholds[i]);
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "sweep thresholds must be strictly increasing");
        }
    }
    Curve curve;
    curve.reserve(thresholds.size());
    for (double t : thresholds) curve.push_back(evaluate(cases, t, mode, workers));
    return curve;
}

Detection select_primary(std::span<const Detection> dets) {
    if (dets.empty()) throw Error(ErrorCode::NoDetections, "cannot select a primary detection from an empty list");
    return *std::min_element(dets.begin(), dets.end(), ranks_before);
}

}  // namespace lesionroi
