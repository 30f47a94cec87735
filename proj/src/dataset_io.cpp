#include "lesionroi/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lesionroi/error.hpp"
#include "lesionroi/image_codec.hpp"
#include "lesionroi/parallel.hpp"

namespace lesionroi {

namespace {

// Minimal RFC 4180 reader: quoted fields with doubled quotes, no embedded newlines.
std::vector<std::string> split_csv(const std::string& line, const fs::path& path, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

struct CsvLine {
    std::size_t number;
    std::vector<std::string> fields;
};

// Reads all non-blank lines after checking the header. An empty file yields no rows.
std::vector<CsvLine> read_csv(const fs::path& path, const std::vector<std::string>& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::vector<CsvLine> rows;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto fields = split_csv(line, path, line_no);
        if (!saw_header) {
            if (fields != header) {
                std::string expected;
                for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
                throw Error(ErrorCode::ParseError,
                            path.string() + ":" + std::to_string(line_no) + ": expected header '" + expected + "'");
            }
            saw_header = true;
            continue;
        }
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                                   std::to_string(header.size()) + " fields, got " +
                                                   std::to_string(fields.size()));
        }
        rows.push_back({line_no, std::move(fields)});
    }
    return rows;
}

int parse_int(const std::string& s, const fs::path& path, std::size_t line_no) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
    return static_cast<int>(v);
}

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path raw(p);
    if (raw.is_absolute() || base.empty()) return raw.lexically_normal();
    return (base / raw).lexically_normal();
}

std::string relativize(const fs::path& base, const fs::path& p) {
    if (base.empty()) return p.generic_string();
    const fs::path rel = p.lexically_normal().lexically_relative(base.lexically_normal());
    if (rel.empty() || *rel.begin() == "..") return p.generic_string();
    return rel.generic_string();
}

const std::vector<std::string> kManifestHeader{"image_id", "image_path", "mask_path", "label"};
const std::vector<std::string> kGtHeader{"image_id", "x_min", "y_min", "x_max", "y_max"};

}  // namespace

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::WriteError, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(ErrorCode::WriteError, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::WriteError, "cannot move " + tmp.string() + " to " + path.string());
    }
}

// ---------------------------------------------------------------------------

const ManifestEntry* DatasetIndex::find(const std::string& image_id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), image_id,
                               [](const ManifestEntry& e, const std::string& id) { return e.image_id < id; });
    return (it != entries.end() && it->image_id == image_id) ? &*it : nullptr;
}

DatasetIndex load_manifest(const fs::path& path, const ManifestOptions& options) {
    const auto rows = read_csv(path, kManifestHeader);
    const fs::path base = path.parent_path();
    DatasetIndex index;
    std::set<std::string> seen;
    for (const auto& row : rows) {
        const auto& f = row.fields;
        const std::string where = path.string() + ":" + std::to_string(row.number);
        if (f[0].empty()) throw Error(ErrorCode::ParseError, where + ": empty image_id");
        if (f[1].empty()) throw Error(ErrorCode::ParseError, where + ": empty image_path");
        if (!seen.insert(f[0]).second) throw Error(ErrorCode::DuplicateId, "image id '" + f[0] + "' at " + where);
        ManifestEntry e;
        e.image_id = f[0];
        e.image_path = resolve(base, f[1]);
        if (!f[2].empty()) e.mask_path = resolve(base, f[2]);
        if (!f[3].empty()) {
            if (f[3] != "benign" && f[3] != "malignant") {
                throw Error(ErrorCode::ParseError, where + ": label must be benign or malignant, got '" + f[3] + "'");
            }
            e.label = f[3];
        }
        if (options.check_paths) {
            if (!fs::exists(e.image_path)) {
                throw Error(ErrorCode::DanglingPath, "image '" + e.image_path.string() + "' for id '" + e.image_id + "'");
            }
            if (e.mask_path && !fs::exists(*e.mask_path)) {
                throw Error(ErrorCode::DanglingPath, "mask '" + e.mask_path->string() + "' for id '" + e.image_id + "'");
            }
        }
        index.entries.push_back(std::move(e));
    }
    std::sort(index.entries.begin(), index.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.image_id < b.image_id; });
    return index;
}

void write_manifest(const DatasetIndex& index, const fs::path& path) {
    const fs::path base = path.parent_path();
    std::string out = "image_id,image_path,mask_path,label\n";
    for (const auto& e : index.entries) {
        out += csv_field(e.image_id) + "," + csv_field(relativize(base, e.image_path)) + "," +
               (e.mask_path ? csv_field(relativize(base, *e.mask_path)) : "") + "," + e.label.value_or("") + "\n";
    }
    write_text_atomic(path, out);
}

// ---------------------------------------------------------------------------

DetectionsFile read_detections(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    DetectionsFile out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::ParseError, where + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("image_id") || !obj["image_id"].is_string() || !obj.contains("boxes") ||
            !obj["boxes"].is_array()) {
            throw Error(ErrorCode::ParseError, where + ": expected {\"image_id\": string, \"boxes\": array}");
        }
        const std::string id = obj["image_id"].get<std::string>();
        std::vector<Detection> dets;
        for (const auto& b : obj["boxes"]) {
            if (!b.is_array() || b.size() != 5 ||
                !std::all_of(b.begin(), b.end(), [](const nlohmann::json& v) { return v.is_number(); })) {
                throw Error(ErrorCode::ParseError, where + ": each box must be [x_min, y_min, x_max, y_max, score]");
            }
            const double x0 = std::floor(b[0].get<double>());
            const double y0 = std::floor(b[1].get<double>());
            const double x1 = std::ceil(b[2].get<double>());
            const double y1 = std::ceil(b[3].get<double>());
            constexpr double kMax = std::numeric_limits<int>::max();
            if (!(x0 >= 0 && y0 >= 0 && x1 <= kMax && y1 <= kMax)) {
                throw Error(ErrorCode::ValidationError, where + ": box coordinates out of range");
            }
            try {
                dets.push_back(make_detection(
                    make_box(static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1), static_cast<int>(y1)),
                    b[4].get<double>()));
            } catch (const Error& e) {
                throw Error(ErrorCode::ValidationError, where + ": " + e.what());
            }
        }
        if (!out.emplace(id, std::move(dets)).second) {
            throw Error(ErrorCode::DuplicateId, "image id '" + id + "' repeated at " + where);
        }
    }
    return out;
}

void write_detections(const DetectionsFile& dets, const fs::path& path) {
    std::string out;
    for (const auto& [id, list] : dets) {
        nlohmann::ordered_json obj;
        obj["image_id"] = id;
        obj["boxes"] = nlohmann::ordered_json::array();
        for (const auto& d : list) {
            obj["boxes"].push_back({d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max, d.score});
        }
        out += obj.dump() + "\n";
    }
    write_text_atomic(path, out);
}

void require_resolvable(const DetectionsFile& dets, const DatasetIndex& index) {
    for (const auto& [id, list] : dets) {
        if (!index.find(id)) throw Error(ErrorCode::ValidationError, "detections for unknown image id '" + id + "'");
    }
}

// ---------------------------------------------------------------------------

void write_gt_table(const GtTable& table, const fs::path& path) {
    std::string out = "image_id,x_min,y_min,x_max,y_max\n";
    for (const auto& r : table) {
        out += csv_field(r.image_id) + "," + std::to_string(r.box.x_min) + "," + std::to_string(r.box.y_min) + "," +
               std::to_string(r.box.x_max) + "," + std::to_string(r.box.y_max) + "\n";
    }
    write_text_atomic(path, out);
}

GtTable read_gt_table(const fs::path& path) {
    GtTable table;
    std::set<std::string> seen;
    for (const auto& row : read_csv(path, kGtHeader)) {
        const auto& f = row.fields;
        if (!seen.insert(f[0]).second) {
            throw Error(ErrorCode::DuplicateId, "image id '" + f[0] + "' at " + path.string() + ":" + std::to_string(row.number));
        }
        Box b{parse_int(f[1], path, row.number), parse_int(f[2], path, row.number), parse_int(f[3], path, row.number),
              parse_int(f[4], path, row.number)};
        if (!b.valid()) {
            throw Error(ErrorCode::ValidationError,
                        path.string() + ":" + std::to_string(row.number) + ": invalid box " + to_string(b));
        }
        table.push_back({f[0], b});
    }
    std::sort(table.begin(), table.end(), [](const GtRow& a, const GtRow& b) { return a.image_id < b.image_id; });
    return table;
}

void write_rejects(std::span<const Reject> rejects, const fs::path& path) {
    std::string out = "image_id,reason\n";
    for (const auto& r : rejects) out += csv_field(r.image_id) + "," + csv_field(r.reason) + "\n";
    write_text_atomic(path, out);
}

GtConversion convert_gt(const DatasetIndex& index, const ConvertOptions& options) {
    struct Slot {
        std::optional<Box> box;
        std::optional<Reject> reject;
    };
    std::vector<Slot> slots(index.entries.size());
    parallel_for(index.entries.size(), options.workers, [&](std::size_t i) {
        const auto& e = index.entries[i];
        if (!e.mask_path) {
            slots[i].reject = Reject{e.image_id, "no mask_path", true};
            return;
        }
        try {
            BinaryMask m = read_mask(*e.mask_path);
            if (options.largest_component) m = largest_component(m);
            slots[i].box = circumscribe(m);
        } catch (const Error& err) {
            slots[i].reject = Reject{e.image_id, err.what(), err.code() != ErrorCode::NoForeground};
        }
    });
    GtConversion out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].box) out.table.push_back({index.entries[i].image_id, *slots[i].box});
        if (slots[i].reject) out.rejects.push_back(*slots[i].reject);
    }
    return out;
}

// ---------------------------------------------------------------------------

void write_eval_report(std::span<const EvalReport> reports, const fs::path& path) {
    std::string out = "threshold,precision,recall,mean_iou,tp,fp,fn,n_images,flags\n";
    for (const auto& r : reports) {
        std::string flags;
        auto add = [&flags](bool on, const char* name) {
            if (on) flags += (flags.empty() ? "" : ";") + std::string(name);
        };
        add(r.precision_undefined, "precision_undefined");
        add(r.recall_undefined, "recall_undefined");
        add(r.mean_iou_undefined, "mean_iou_undefined");
        out += format_fixed(r.threshold) + "," + format_fixed(r.precision) + "," + format_fixed(r.recall) + "," +
               format_fixed(r.mean_iou) + "," + std::to_string(r.tp) + "," + std::to_string(r.fp) + "," +
               std::to_string(r.fn) + "," + std::to_string(r.n_images) + "," + (flags.empty() ? "none" : flags) + "\n";
    }
    write_text_atomic(path, out);
}

void write_curve(const Curve& curve, const fs::path& path) {
    std::string out = "threshold,precision,recall,mean_iou\n";
    for (const auto& r : curve) {
        out += format_fixed(r.threshold) + "," + format_fixed(r.precision) + "," + format_fixed(r.recall) + "," +
               format_fixed(r.mean_iou) + "\n";
    }
    write_text_atomic(path, out);
}

void write_outcomes(std::span<const ImageOutcome> outcomes, double threshold, const fs::path& path) {
    std::string out = "image_id,threshold,tp,fp,fn,matched_iou\n";
    for (const auto& o : outcomes) {
        out += csv_field(o.image_id) + "," + format_fixed(threshold) + "," + std::to_string(o.tp) + "," +
               std::to_string(o.fp) + "," + std::to_string(o.fn) + "," +
               (o.matched_iou ? format_fixed(*o.matched_iou) : "") + "\n";
    }
    write_text_atomic(path, out);
}

// ---------------------------------------------------------------------------

std::vector<AugmentedRow> write_augmented_files(const AugmentedGroup& group, const fs::path& out_dir) {
    const fs::path images = out_dir / "images";
    const fs::path masks = out_dir / "masks";
    std::vector<fs::path> written;
    std::vector<AugmentedRow> rows;
    try {
        fs::create_directories(images);
        for (const auto& s : group.samples) {
            AugmentedRow row;
            row.entry.image_id = s.record.out_id;
            row.entry.image_path = (images / (s.record.out_id + ".png")).lexically_normal();
            row.entry.label = group.label;
            write_png(row.entry.image_path, s.image);
            written.push_back(row.entry.image_path);
            if (s.mask) {
                fs::create_directories(masks);
                row.entry.mask_path = (masks / (s.record.out_id + ".png")).lexically_normal();
                write_mask_png(*row.entry.mask_path, *s.mask);
                written.push_back(*row.entry.mask_path);
                if (s.mask->foreground_count() > 0) row.gt = circumscribe(*s.mask);
            }
            rows.push_back(std::move(row));
        }
    } catch (const fs::filesystem_error& e) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw Error(ErrorCode::WriteError, e.what());
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return rows;
}

DatasetIndex write_augmented_manifest(std::vector<AugmentedRow> rows, const fs::path& out_dir) {
    std::sort(rows.begin(), rows.end(),
              [](const AugmentedRow& a, const AugmentedRow& b) { return a.entry.image_id < b.entry.image_id; });
    DatasetIndex index;
    GtTable gt;
    std::set<std::string> seen;
    for (auto& r : rows) {
        if (!seen.insert(r.entry.image_id).second) {
            throw Error(ErrorCode::DuplicateId, "augmented output id '" + r.entry.image_id + "'");
        }
        if (r.gt) gt.push_back({r.entry.image_id, *r.gt});
        index.entries.push_back(std::move(r.entry));
    }
    try {
        fs::create_directories(out_dir);
    } catch (const fs::filesystem_error& e) {
        throw Error(ErrorCode::WriteError, e.what());
    }
    write_manifest(index, out_dir / "manifest.csv");
    write_gt_table(gt, out_dir / "gt.csv");
    return index;
}

DatasetIndex write_augmented(std::span<const AugmentedGroup> groups, const fs::path& out_dir) {
    std::vector<AugmentedRow> rows;
    for (const auto& g : groups) {
        auto part = write_augmented_files(g, out_dir);
        rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return write_augmented_manifest(std::move(rows), out_dir);
}

}  // namespace lesionroi
