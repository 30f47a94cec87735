#pragma once

#include <cstdint>
#include <vector>

#include "lesionroi/raster.hpp"

namespace lesionroi {

/// 8-bit image stored as one Raster per channel (1 = gray, 3 = RGB).
struct Image {
    std::vector<Raster<std::uint8_t>> channels;

    Image() = default;
    Image(int width, int height, int num_channels, std::uint8_t fill = 0)
        : channels(static_cast<std::size_t>(num_channels), Raster<std::uint8_t>::Constant(height, width, fill)) {}

    int width() const noexcept { return channels.empty() ? 0 : static_cast<int>(channels.front().cols()); }
    int height() const noexcept { return channels.empty() ? 0 : static_cast<int>(channels.front().rows()); }
    int num_channels() const noexcept { return static_cast<int>(channels.size()); }
    Box frame() const noexcept { return Box{0, 0, width(), height()}; }

    friend bool operator==(const Image& a, const Image& b) {
        if (a.channels.size() != b.channels.size()) return false;
        for (std::size_t c = 0; c < a.channels.size(); ++c) {
            const auto& x = a.channels[c];
            const auto& y = b.channels[c];
            if (x.rows() != y.rows() || x.cols() != y.cols() || !(x == y).all()) return false;
        }
        return true;
    }
};

/// Applies a per-channel raster operation.
template <typename Op>
Image map_channels(const Image& src, Op&& op) {
    Image out;
    out.channels.reserve(src.channels.size());
    for (const auto& c : src.channels) out.channels.push_back(op(c));
    return out;
}

inline Image rotate_image(const Image& img, QuarterTurn t) {
    return map_channels(img, [t](const auto& c) { return rotate(c, t); });
}

inline Image crop_image(const Image& img, const Box& window) {
    return map_channels(img, [&window](const auto& c) { return crop(c, window); });
}

}  // namespace lesionroi
