#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lesionroi/dataset_io.hpp"
#include "lesionroi/image_codec.hpp"
#include "support/oracles.hpp"

namespace synthetic {

namespace fs = std::filesystem;
using lesionroi::BinaryMask;
using lesionroi::Box;
using lesionroi::Image;

struct Sample {
    std::string id;
    Box roi;
};

/// Writes n lesion-like images (textured background, darker rectangular
/// lesion with ragged interior) plus masks and a manifest under dir.
inline std::vector<Sample> write_dataset(const fs::path& dir, int n, int width, int height, std::uint64_t seed) {
    fs::create_directories(dir / "img");
    fs::create_directories(dir / "mask");
    std::mt19937_64 rng(seed);
    std::vector<Sample> samples;
    std::string manifest = "image_id,image_path,mask_path,label\n";
    const int limit = std::min(width, height);
    for (int i = 0; i < n; ++i) {
        const int rw = std::uniform_int_distribution<int>(limit * 15 / 100, limit * 60 / 100)(rng);
        const int rh = std::uniform_int_distribution<int>(limit * 15 / 100, limit * 60 / 100)(rng);
        const int x0 = std::uniform_int_distribution<int>(0, width - rw)(rng);
        const int y0 = std::uniform_int_distribution<int>(0, height - rh)(rng);
        const Box roi{x0, y0, x0 + rw, y0 + rh};
        BinaryMask mask(width, height);
        Image img(width, height, 3);
        std::uniform_int_distribution<int> noise(0, 20);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const bool inside = roi.contains_pixel(x, y);
                const bool edge = x == roi.x_min || x == roi.x_max - 1 || y == roi.y_min || y == roi.y_max - 1;
                const bool fg = inside && (edge || noise(rng) > 1);
                mask.set(x, y, fg);
                const int base = fg ? 90 : 200;
                img.channels[0](y, x) = static_cast<std::uint8_t>(base + noise(rng));
                img.channels[1](y, x) = static_cast<std::uint8_t>(base - 40 + noise(rng));
                img.channels[2](y, x) = static_cast<std::uint8_t>(base - 60 + noise(rng));
            }
        }
        char id[32];
        std::snprintf(id, sizeof id, "ISIC_%04d", i);
        lesionroi::write_png(dir / "img" / (std::string(id) + ".png"), img);
        lesionroi::write_mask_png(dir / "mask" / (std::string(id) + "_segmentation.png"), mask);
        manifest += std::string(id) + ",img/" + id + ".png,mask/" + id + "_segmentation.png," +
                    (i % 3 == 0 ? "malignant" : "benign") + "\n";
        samples.push_back({id, roi});
    }
    oracle::spit(dir / "manifest.csv", manifest);
    return samples;
}

/// GT boxes replayed as detections with score 1.
inline void write_self_detections(const std::vector<Sample>& samples, const fs::path& path) {
    lesionroi::DetectionsFile d;
    for (const auto& s : samples) d[s.id] = {{s.roi, 1.0}};
    lesionroi::write_detections(d, path);
}

}  // namespace synthetic
