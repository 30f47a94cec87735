#include "lesionroi/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>

#include "lesionroi/augment.hpp"
#include "lesionroi/dataset_io.hpp"
#include "lesionroi/detection_eval.hpp"
#include "lesionroi/error.hpp"
#include "lesionroi/image_codec.hpp"
#include "lesionroi/metrics.hpp"
#include "lesionroi/parallel.hpp"

namespace lesionroi::cli {

namespace {

constexpr const char* kWorkersEnv = "LESIONROI_WORKERS";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    int workers = 0;
};

unsigned resolve_workers(const Common& c) {
    if (c.workers > 0) return static_cast<unsigned>(c.workers);
    if (c.workers < 0) throw ConfigError("--workers must be positive");
    if (const char* env = std::getenv(kWorkersEnv); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024) throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return 1;
}

void report_rejects(const std::vector<Reject>& rejects, const std::string& rejects_path, std::ostream& err) {
    for (const auto& r : rejects) err << "reject " << r.image_id << ": " << r.reason << "\n";
    if (!rejects_path.empty()) write_rejects(rejects, rejects_path);
}

void check_thresholds(const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw ConfigError("at least one IoU threshold is required");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0 && thresholds[i] < 1.0)) throw ConfigError("IoU thresholds must lie in (0, 1)");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) throw ConfigError("IoU thresholds must be strictly increasing");
    }
}

// "start:stop:step", inclusive of stop; values are snapped to 1e-9 to avoid drift.
std::vector<double> parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) throw ConfigError("--grid expects start:stop:step");
    double start = 0, stop = 0, step = 0;
    try {
        start = std::stod(text.substr(0, a));
        stop = std::stod(text.substr(a + 1, b - a - 1));
        step = std::stod(text.substr(b + 1));
    } catch (const std::exception&) {
        throw ConfigError("--grid expects numeric start:stop:step");
    }
    if (!(step > 0.0) || stop < start) throw ConfigError("--grid needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (long k = 0; k < n; ++k) grid.push_back(std::round((start + static_cast<double>(k) * step) * 1e9) / 1e9);
    return grid;
}

struct EvalInputs {
    std::vector<ImageCase> cases;
    std::vector<Reject> rejects;
};

EvalInputs load_eval_inputs(const std::string& manifest, const std::string& gt_path, const std::string& dets_path,
                            std::ostream& err) {
    const DatasetIndex index = load_manifest(manifest, {.check_paths = false});
    const GtTable gt = read_gt_table(gt_path);
    const DetectionsFile dets = read_detections(dets_path);
    require_resolvable(dets, index);

    std::map<std::string, Box> gt_by_id;
    for (const auto& row : gt) {
        if (!index.find(row.image_id)) {
            err << "warning: ground truth for '" << row.image_id << "' is not in the manifest; ignored\n";
            continue;
        }
        gt_by_id.emplace(row.image_id, row.box);
    }
    EvalInputs in;
    for (const auto& e : index.entries) {
        auto it = gt_by_id.find(e.image_id);
        if (it == gt_by_id.end()) {
            in.rejects.push_back({e.image_id, "no ground-truth box", true});
            continue;
        }
        ImageCase c{e.image_id, it->second, {}};
        if (auto d = dets.find(e.image_id); d != dets.end()) c.detections = d->second;
        in.cases.push_back(std::move(c));
    }
    return in;
}

std::string metric_flags(std::initializer_list<std::pair<const char*, Metric>> metrics) {
    std::string flags;
    for (const auto& [name, m] : metrics) {
        if (m.degenerate) flags += (flags.empty() ? "" : ";") + std::string(name) + "_degenerate";
    }
    return flags.empty() ? "none" : flags;
}

std::string seg_row(const std::string& id, const SegMetrics& s) {
    return id + "," + format_fixed(s.accuracy.value) + "," + format_fixed(s.dice.value) + "," +
           format_fixed(s.jaccard.value) + "," + format_fixed(s.sensitivity.value) + "," +
           format_fixed(s.specificity.value) + "," +
           metric_flags({{"accuracy", s.accuracy},
                         {"dice", s.dice},
                         {"jaccard", s.jaccard},
                         {"sensitivity", s.sensitivity},
                         {"specificity", s.specificity}}) +
           "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ROI ground-truth conversion, detection evaluation and natural augmentation for lesion images",
                 "lesionroi"};
    app.require_subcommand(1);
    Common common;

    auto add_workers = [&common](CLI::App* sub) {
        sub->add_option("--workers", common.workers, std::string("Worker threads (fallback: ") + kWorkersEnv + ", else 1)");
    };

    // convert-gt
    std::string cg_manifest, cg_out, cg_rejects;
    bool cg_largest = false;
    auto* convert = app.add_subcommand("convert-gt", "Circumscribe segmentation masks into ROI boxes");
    convert->add_option("--manifest", cg_manifest, "Dataset manifest CSV")->required();
    convert->add_option("--out", cg_out, "Ground-truth box CSV to write")->required();
    convert->add_option("--rejects", cg_rejects, "Rejects CSV to write");
    convert->add_flag("--largest-component", cg_largest, "Keep only the largest 4-connected component");
    add_workers(convert);

    // eval-det / sweep
    std::string ed_manifest, ed_gt, ed_dets, ed_out, ed_per_image, ed_rejects, ed_fn_mode = "paper-literal";
    std::vector<double> ed_iou{0.5, 0.75};
    auto* eval_det = app.add_subcommand("eval-det", "Precision, recall and mean IoU of external detections");
    eval_det->add_option("--manifest", ed_manifest, "Dataset manifest CSV")->required();
    eval_det->add_option("--gt", ed_gt, "Ground-truth box CSV")->required();
    eval_det->add_option("--dets", ed_dets, "Detections JSONL")->required();
    eval_det->add_option("--iou", ed_iou, "IoU thresholds, strictly increasing")->expected(1, -1)->capture_default_str();
    eval_det->add_option("--out", ed_out, "Report CSV to write")->required();
    eval_det->add_option("--per-image", ed_per_image, "Per-image outcome CSV (first threshold)");
    eval_det->add_option("--rejects", ed_rejects, "Rejects CSV to write");
    eval_det->add_option("--fn-mode", ed_fn_mode, "paper-literal | standard")
        ->check(CLI::IsMember({"paper-literal", "standard"}))
        ->capture_default_str();
    add_workers(eval_det);

    std::string sw_manifest, sw_gt, sw_dets, sw_out, sw_grid = "0.50:0.95:0.05", sw_fn_mode = "paper-literal";
    auto* sweep = app.add_subcommand("sweep", "IoU-threshold sweep curve");
    sweep->add_option("--manifest", sw_manifest, "Dataset manifest CSV")->required();
    sweep->add_option("--gt", sw_gt, "Ground-truth box CSV")->required();
    sweep->add_option("--dets", sw_dets, "Detections JSONL")->required();
    sweep->add_option("--grid", sw_grid, "start:stop:step")->capture_default_str();
    sweep->add_option("--out", sw_out, "Curve CSV to write")->required();
    sweep->add_option("--fn-mode", sw_fn_mode, "paper-literal | standard")
        ->check(CLI::IsMember({"paper-literal", "standard"}))
        ->capture_default_str();
    add_workers(sweep);

    // eval-seg
    std::string es_manifest, es_pred_dir, es_out, es_rejects, es_average = "per-image";
    auto* eval_seg = app.add_subcommand("eval-seg", "Pixel-wise segmentation metrics");
    eval_seg->add_option("--manifest", es_manifest, "Manifest whose mask_path is the ground truth")->required();
    eval_seg->add_option("--pred-dir", es_pred_dir, "Directory of predicted masks named <image_id>.png")->required();
    eval_seg->add_option("--out", es_out, "Metrics CSV to write")->required();
    eval_seg->add_option("--average", es_average, "per-image | pooled")
        ->check(CLI::IsMember({"per-image", "pooled"}))
        ->capture_default_str();
    eval_seg->add_option("--rejects", es_rejects, "Rejects CSV to write");
    add_workers(eval_seg);

    // eval-cls
    std::string ec_manifest, ec_pred, ec_out, ec_positive = "malignant";
    auto* eval_cls = app.add_subcommand("eval-cls", "Binary classification metrics");
    eval_cls->add_option("--manifest", ec_manifest, "Manifest with labels")->required();
    eval_cls->add_option("--pred", ec_pred, "Prediction CSV image_id,label")->required();
    eval_cls->add_option("--out", ec_out, "Metrics CSV to write")->required();
    eval_cls->add_option("--positive", ec_positive, "Positive class")
        ->check(CLI::IsMember({"benign", "malignant"}))
        ->capture_default_str();

    // augment
    std::string au_manifest, au_out, au_dets, au_rejects, au_roi_source = "mask";
    AugmentParams au_params;
    std::vector<int> au_rotations{0, 90, 180, 270};
    bool au_largest = false;
    auto* augment = app.add_subcommand("augment", "ROI-centred multi-magnification crops x quarter turns");
    augment->add_option("--manifest", au_manifest, "Dataset manifest CSV")->required();
    augment->add_option("--out", au_out, "Output directory")->required();
    augment->add_option("--roi-source", au_roi_source, "mask | dets")
        ->check(CLI::IsMember({"mask", "dets"}))
        ->capture_default_str();
    augment->add_option("--dets", au_dets, "Detections JSONL (for --roi-source dets)");
    augment->add_option("--target", au_params.target_side, "Output side in pixels")->capture_default_str();
    augment->add_option("--margin", au_params.margin, "ROI margin ratio")->capture_default_str();
    augment->add_option("--step", au_params.step, "Magnification step")->capture_default_str();
    augment->add_option("--terminal-slack", au_params.terminal_slack, "Full-frame level slack")->capture_default_str();
    augment->add_option("--rotations", au_rotations, "Quarter turns in degrees")->expected(1, -1)->capture_default_str();
    augment->add_flag("--largest-component", au_largest, "Mask ROI from the largest 4-connected component");
    augment->add_option("--rejects", au_rejects, "Rejects CSV to write");
    add_workers(augment);

    // resize
    std::string rs_manifest, rs_out;
    int rs_width = 500, rs_height = 375;
    auto* resize = app.add_subcommand("resize", "Resize images (bilinear) and masks (nearest) to a fixed size");
    resize->add_option("--manifest", rs_manifest, "Dataset manifest CSV")->required();
    resize->add_option("--out", rs_out, "Output directory")->required();
    resize->add_option("--width", rs_width, "Target width")->capture_default_str();
    resize->add_option("--height", rs_height, "Target height")->capture_default_str();
    add_workers(resize);

    std::vector<std::string> storage{"lesionroi"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        if (app.get_subcommands().empty()) {
            err << app.help();
        } else {
            err << app.get_subcommands().front()->help();
        }
        return kConfigError;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        const unsigned workers = resolve_workers(common);

        if (active == convert) {
            const DatasetIndex index = load_manifest(cg_manifest);
            const GtConversion result = convert_gt(index, {.largest_component = cg_largest, .workers = workers});
            write_gt_table(result.table, cg_out);
            report_rejects(result.rejects, cg_rejects, err);
            out << "convert-gt images=" << index.size() << " boxes=" << result.table.size()
                << " rejects=" << result.rejects.size() << "\n";
            return result.rejects.empty() ? kOk : kItemFailure;
        }

        if (active == eval_det) {
            check_thresholds(ed_iou);
            const FnMode mode = fn_mode_from_string(ed_fn_mode);
            const EvalInputs in = load_eval_inputs(ed_manifest, ed_gt, ed_dets, err);
            std::vector<EvalReport> reports;
            for (double t : ed_iou) {
                const auto outcomes = match_all(in.cases, t, mode, workers);
                if (!ed_per_image.empty() && reports.empty()) write_outcomes(outcomes, t, ed_per_image);
                reports.push_back(summarize(outcomes, t));
            }
            write_eval_report(reports, ed_out);
            report_rejects(in.rejects, ed_rejects, err);
            out << "eval-det images=" << in.cases.size();
            for (const auto& r : reports) {
                out << " precision@" << format_fixed(r.threshold) << "=" << format_fixed(r.precision) << " recall@"
                    << format_fixed(r.threshold) << "=" << format_fixed(r.recall) << " mean_iou@"
                    << format_fixed(r.threshold) << "=" << format_fixed(r.mean_iou);
            }
            out << " rejects=" << in.rejects.size() << "\n";
            return in.rejects.empty() ? kOk : kItemFailure;
        }

        if (active == sweep) {
            const auto grid = parse_grid(sw_grid);
            check_thresholds(grid);
            const FnMode mode = fn_mode_from_string(sw_fn_mode);
            const EvalInputs in = load_eval_inputs(sw_manifest, sw_gt, sw_dets, err);
            const Curve curve = threshold_sweep(in.cases, grid, mode, workers);
            write_curve(curve, sw_out);
            report_rejects(in.rejects, "", err);
            out << "sweep images=" << in.cases.size() << " thresholds=" << curve.size()
                << " rejects=" << in.rejects.size() << "\n";
            return in.rejects.empty() ? kOk : kItemFailure;
        }

        if (active == eval_seg) {
            const DatasetIndex index = load_manifest(es_manifest, {.check_paths = false});
            struct Slot {
                std::optional<ConfusionCounts> counts;
                std::optional<Reject> reject;
            };
            std::vector<Slot> slots(index.size());
            parallel_for(index.size(), workers, [&](std::size_t i) {
                const auto& e = index.entries[i];
                try {
                    if (!e.mask_path) throw Error(ErrorCode::ValidationError, "no ground-truth mask_path");
                    const BinaryMask gt = read_mask(*e.mask_path);
                    const BinaryMask pred = read_mask(fs::path(es_pred_dir) / (e.image_id + ".png"));
                    slots[i].counts = seg_confusion(pred, gt);
                } catch (const Error& ex) {
                    slots[i].reject = Reject{e.image_id, ex.what(), true};
                }
            });
            std::string csv = "image_id,accuracy,dice,jaccard,sensitivity,specificity,flags\n";
            std::vector<SegMetrics> per_image;
            std::vector<Reject> rejects;
            ConfusionCounts pooled;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (slots[i].reject) {
                    rejects.push_back(*slots[i].reject);
                    continue;
                }
                per_image.push_back(seg_metrics(*slots[i].counts));
                pooled += *slots[i].counts;
                csv += seg_row(index.entries[i].image_id, per_image.back());
            }
            SegMetrics summary;
            if (!per_image.empty()) {
                summary = es_average == "pooled" ? seg_metrics(pooled) : mean_seg_metrics(per_image);
                csv += seg_row(es_average == "pooled" ? "__pooled__" : "__mean__", summary);
            }
            write_text_atomic(es_out, csv);
            report_rejects(rejects, es_rejects, err);
            out << "eval-seg images=" << per_image.size() << " average=" << es_average
                << " jaccard=" << format_fixed(summary.jaccard.value) << " dice=" << format_fixed(summary.dice.value)
                << " rejects=" << rejects.size() << "\n";
            return rejects.empty() ? kOk : kItemFailure;
        }

        if (active == eval_cls) {
            const DatasetIndex index = load_manifest(ec_manifest, {.check_paths = false});
            std::map<std::string, std::string> predicted;
            {
                std::ifstream in(ec_pred, std::ios::binary);
                if (!in) throw Error(ErrorCode::FileNotFound, ec_pred);
                std::string line;
                std::size_t line_no = 0;
                while (std::getline(in, line)) {
                    ++line_no;
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (line.empty()) continue;
                    const auto comma = line.find(',');
                    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
                        throw Error(ErrorCode::ParseError, ec_pred + ":" + std::to_string(line_no) + ": expected image_id,label");
                    }
                    const std::string id = line.substr(0, comma);
                    const std::string label = line.substr(comma + 1);
                    if (line_no == 1 && id == "image_id" && label == "label") continue;
                    if (label != "benign" && label != "malignant") {
                        throw Error(ErrorCode::ParseError, ec_pred + ":" + std::to_string(line_no) + ": bad label '" + label + "'");
                    }
                    if (!index.find(id)) throw Error(ErrorCode::ValidationError, "prediction for unknown image id '" + id + "'");
                    if (!predicted.emplace(id, label).second) throw Error(ErrorCode::DuplicateId, "image id '" + id + "'");
                }
            }
            ConfusionCounts c;
            std::vector<Reject> rejects;
            for (const auto& e : index.entries) {
                if (!e.label) {
                    rejects.push_back({e.image_id, "no ground-truth label", true});
                    continue;
                }
                auto it = predicted.find(e.image_id);
                if (it == predicted.end()) {
                    rejects.push_back({e.image_id, "no prediction", true});
                    continue;
                }
                const bool truth = *e.label == ec_positive;
                const bool pred = it->second == ec_positive;
                if (truth && pred) ++c.tp;
                else if (!truth && pred) ++c.fp;
                else if (truth && !pred) ++c.fn;
                else ++c.tn;
            }
            if (c.total() == 0) throw Error(ErrorCode::ValidationError, "no labelled image has a prediction");
            const ClsMetrics m = cls_metrics(c);
            std::string csv = "accuracy,precision,sensitivity,specificity,f1,mcc,tp,fp,fn,tn,flags\n";
            csv += format_fixed(m.accuracy.value) + "," + format_fixed(m.precision.value) + "," +
                   format_fixed(m.sensitivity.value) + "," + format_fixed(m.specificity.value) + "," +
                   format_fixed(m.f1.value) + "," + format_fixed(m.mcc.value) + "," + std::to_string(c.tp) + "," +
                   std::to_string(c.fp) + "," + std::to_string(c.fn) + "," + std::to_string(c.tn) + "," +
                   metric_flags({{"accuracy", m.accuracy},
                                 {"precision", m.precision},
                                 {"sensitivity", m.sensitivity},
                                 {"specificity", m.specificity},
                                 {"f1", m.f1},
                                 {"mcc", m.mcc}}) +
                   "\n";
            write_text_atomic(ec_out, csv);
            report_rejects(rejects, "", err);
            out << "eval-cls images=" << c.total() << " f1=" << format_fixed(m.f1.value)
                << " mcc=" << format_fixed(m.mcc.value) << " rejects=" << rejects.size() << "\n";
            return rejects.empty() ? kOk : kItemFailure;
        }

        if (active == augment) {
            au_params.rotations.clear();
            for (int deg : au_rotations) {
                try {
                    const QuarterTurn t = quarter_turn_from_degrees(deg);
                    if (std::find(au_params.rotations.begin(), au_params.rotations.end(), t) == au_params.rotations.end()) {
                        au_params.rotations.push_back(t);
                    }
                } catch (const Error& e) {
                    throw ConfigError(e.what());
                }
            }
            try {
                au_params.validate();
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
            if (au_roi_source == "dets" && au_dets.empty()) throw ConfigError("--roi-source dets requires --dets");

            const DatasetIndex index = load_manifest(au_manifest);
            std::optional<DetectionsFile> dets;
            if (au_roi_source == "dets") {
                dets = read_detections(au_dets);
                require_resolvable(*dets, index);
            }
            struct Slot {
                std::vector<AugmentedRow> rows;
                std::optional<Reject> reject;
            };
            std::vector<Slot> slots(index.size());
            parallel_for(index.size(), workers, [&](std::size_t i) {
                const auto& e = index.entries[i];
                try {
                    const Image image = read_image(e.image_path);
                    std::optional<BinaryMask> mask;
                    if (e.mask_path) mask = read_mask(*e.mask_path);
                    Box roi;
                    if (dets) {
                        auto it = dets->find(e.image_id);
                        if (it == dets->end() || it->second.empty()) {
                            throw Error(ErrorCode::NoDetections, "no detection to drive augmentation");
                        }
                        roi = select_primary(it->second).box;
                        roi = intersect(roi, image.frame()).value_or(Box{});
                        if (!roi.valid()) throw Error(ErrorCode::OutOfFrame, "primary detection outside the image");
                    } else {
                        if (!mask) throw Error(ErrorCode::ValidationError, "no mask_path for --roi-source mask");
                        roi = circumscribe(au_largest ? largest_component(*mask) : *mask);
                    }
                    const AugmentationPlan p = plan(e.image_id, image.width(), image.height(), roi, au_params);
                    if (p.records.empty()) {
                        throw Error(ErrorCode::InvalidArgument, "image smaller than the target side; would need upsampling");
                    }
                    const auto samples = apply_plan(image, mask ? &*mask : nullptr, p, au_params);
                    slots[i].rows = write_augmented_files(AugmentedGroup{e.label, samples}, au_out);
                } catch (const Error& ex) {
                    slots[i].reject = Reject{e.image_id, ex.what(), ex.code() != ErrorCode::NoForeground};
                }
            });
            std::vector<AugmentedRow> rows;
            std::vector<Reject> rejects;
            for (auto& s : slots) {
                if (s.reject) rejects.push_back(*s.reject);
                rows.insert(rows.end(), std::make_move_iterator(s.rows.begin()), std::make_move_iterator(s.rows.end()));
            }
            const std::size_t n_outputs = rows.size();
            write_augmented_manifest(std::move(rows), au_out);
            report_rejects(rejects, au_rejects, err);
            out << "augment images=" << index.size() - rejects.size() << " outputs=" << n_outputs
                << " rejects=" << rejects.size() << "\n";
            return rejects.empty() ? kOk : kItemFailure;
        }

        if (active == resize) {
            if (rs_width < 1 || rs_height < 1) throw ConfigError("--width and --height must be positive");
            const DatasetIndex index = load_manifest(rs_manifest);
            const fs::path out_dir(rs_out);
            fs::create_directories(out_dir / "images");
            std::vector<std::optional<ManifestEntry>> written(index.size());
            std::vector<std::optional<Reject>> failed(index.size());
            parallel_for(index.size(), workers, [&](std::size_t i) {
                const auto& e = index.entries[i];
                try {
                    ManifestEntry r{e.image_id, (out_dir / "images" / (e.image_id + ".png")).lexically_normal(),
                                    std::nullopt, e.label};
                    write_png(r.image_path, resize_image(read_image(e.image_path), rs_width, rs_height));
                    if (e.mask_path) {
                        fs::create_directories(out_dir / "masks");
                        r.mask_path = (out_dir / "masks" / (e.image_id + ".png")).lexically_normal();
                        write_mask_png(*r.mask_path, resize_mask(read_mask(*e.mask_path), rs_width, rs_height));
                    }
                    written[i] = std::move(r);
                } catch (const Error& ex) {
                    failed[i] = Reject{e.image_id, ex.what(), true};
                }
            });
            DatasetIndex resized;
            std::vector<Reject> rejects;
            for (std::size_t i = 0; i < index.size(); ++i) {
                if (written[i]) resized.entries.push_back(std::move(*written[i]));
                if (failed[i]) rejects.push_back(*failed[i]);
            }
            write_manifest(resized, out_dir / "manifest.csv");
            report_rejects(rejects, "", err);
            out << "resize images=" << resized.size() << " width=" << rs_width << " height=" << rs_height
                << " rejects=" << rejects.size() << "\n";
            return rejects.empty() ? kOk : kItemFailure;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n" << active->help();
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kItemFailure;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kItemFailure;
    }
    return kConfigError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace lesionroi::cli
