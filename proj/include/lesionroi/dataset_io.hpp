#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lesionroi/augment.hpp"
#include "lesionroi/detection_eval.hpp"
#include "lesionroi/geometry.hpp"
#include "lesionroi/metrics.hpp"

namespace lesionroi {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Manifest: CSV with header image_id,image_path,mask_path,label. Relative
// paths are resolved against the manifest's directory. label is empty,
// "benign" or "malignant".

struct ManifestEntry {
    std::string image_id;
    fs::path image_path;
    std::optional<fs::path> mask_path;
    std::optional<std::string> label;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetIndex {
    /// Sorted by image_id, ids unique.
    std::vector<ManifestEntry> entries;

    const ManifestEntry* find(const std::string& image_id) const;
    std::size_t size() const noexcept { return entries.size(); }
};

struct ManifestOptions {
    /// Reject entries whose image or mask file does not exist.
    bool check_paths = true;
};

/// Errors: FileNotFound, ParseError (bad header/row/label), DuplicateId, DanglingPath.
DatasetIndex load_manifest(const fs::path& path, const ManifestOptions& options = {});

/// Paths under the manifest's directory are written relative to it.
void write_manifest(const DatasetIndex& index, const fs::path& path);

// ---------------------------------------------------------------------------
// Detections: one JSON object per line,
//   {"image_id": "...", "boxes": [[x_min, y_min, x_max, y_max, score], ...]}
// Fractional coordinates are widened to the covering pixel box.

using DetectionsFile = std::map<std::string, std::vector<Detection>>;

/// Errors: FileNotFound, ParseError (with line number), ValidationError, DuplicateId.
DetectionsFile read_detections(const fs::path& path);
void write_detections(const DetectionsFile& dets, const fs::path& path);

/// Throws ValidationError naming the first id that is not in the index.
void require_resolvable(const DetectionsFile& dets, const DatasetIndex& index);

// ---------------------------------------------------------------------------
// Ground-truth box table: CSV image_id,x_min,y_min,x_max,y_max.

struct GtRow {
    std::string image_id;
    Box box;

    friend bool operator==(const GtRow&, const GtRow&) = default;
};
using GtTable = std::vector<GtRow>;

void write_gt_table(const GtTable& table, const fs::path& path);
GtTable read_gt_table(const fs::path& path);

struct Reject {
    std::string image_id;
    std::string reason;
    /// Hard failures (undecodable input) as opposed to expected rejects.
    bool error = false;
};

/// CSV image_id,reason.
void write_rejects(std::span<const Reject> rejects, const fs::path& path);

struct ConvertOptions {
    bool largest_component = false;
    unsigned workers = 1;
};

struct GtConversion {
    GtTable table;
    std::vector<Reject> rejects;
};

/// Decode, binarize and circumscribe every entry's mask. Entries without a mask
/// path, undecodable masks and all-background masks go to rejects.
GtConversion convert_gt(const DatasetIndex& index, const ConvertOptions& options = {});

// ---------------------------------------------------------------------------
// Reports. Floating-point fields are printed with 6 decimals.

void write_eval_report(std::span<const EvalReport> reports, const fs::path& path);
void write_curve(const Curve& curve, const fs::path& path);
void write_outcomes(std::span<const ImageOutcome> outcomes, double threshold, const fs::path& path);

std::string format_fixed(double v);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_text_atomic(const fs::path& path, const std::string& content);

// ---------------------------------------------------------------------------
// Augmented dataset layout:
//   out/images/<out_id>.png  out/masks/<out_id>.png  out/manifest.csv  out/gt.csv

struct AugmentedGroup {
    std::optional<std::string> label;
    std::vector<AugmentedSample> samples;
};

struct AugmentedRow {
    ManifestEntry entry;
    std::optional<Box> gt;
};

/// Writes one source image's samples. Files written by a failing call are removed.
std::vector<AugmentedRow> write_augmented_files(const AugmentedGroup& group, const fs::path& out_dir);

/// Writes manifest.csv (and gt.csv, GT boxes circumscribed from the augmented
/// masks) for the given rows; returns the index as load_manifest would see it.
DatasetIndex write_augmented_manifest(std::vector<AugmentedRow> rows, const fs::path& out_dir);

/// Files plus manifest in one call.
DatasetIndex write_augmented(std::span<const AugmentedGroup> groups, const fs::path& out_dir);

}  // namespace lesionroi
