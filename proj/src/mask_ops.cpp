#include "lesionroi/mask_ops.hpp"

#include <vector>

namespace lesionroi {

BinaryMask::BinaryMask(int width, int height) : data_(Data::Zero(height, width)) {
    if (width < 0 || height < 0) throw Error(ErrorCode::InvalidArgument, "negative mask dimensions");
}

BinaryMask::BinaryMask(Data data) : data_(std::move(data)) {
    if ((data_ > 1).any()) throw Error(ErrorCode::ValidationError, "binary mask values must be 0 or 1");
}

BinaryMask BinaryMask::from_gray(const Raster<std::uint8_t>& gray, std::uint8_t threshold) {
    return BinaryMask((gray >= threshold).cast<std::uint8_t>(), Unchecked{});
}

std::int64_t BinaryMask::foreground_count() const { return data_.cast<std::int64_t>().sum(); }

Raster<std::uint8_t> BinaryMask::to_gray() const { return data_ * std::uint8_t{255}; }

Box circumscribe(const BinaryMask& m) {
    const auto& d = m.data();
    const Eigen::Array<bool, Eigen::Dynamic, 1> rows = (d != 0).rowwise().any();
    const Eigen::Array<bool, 1, Eigen::Dynamic> cols = (d != 0).colwise().any();
    int y0 = -1, y1 = -1, x0 = -1, x1 = -1;
    for (Eigen::Index y = 0; y < rows.size(); ++y) {
        if (!rows(y)) continue;
        if (y0 < 0) y0 = static_cast<int>(y);
        y1 = static_cast<int>(y) + 1;
    }
    if (y0 < 0) throw Error(ErrorCode::NoForeground, "mask has no foreground pixel");
    for (Eigen::Index x = 0; x < cols.size(); ++x) {
        if (!cols(x)) continue;
        if (x0 < 0) x0 = static_cast<int>(x);
        x1 = static_cast<int>(x) + 1;
    }
    return Box{x0, y0, x1, y1};
}

BinaryMask rotate_mask(const BinaryMask& m, QuarterTurn t) { return BinaryMask(rotate(m.data_, t), BinaryMask::Unchecked{}); }

BinaryMask crop_mask(const BinaryMask& m, const Box& window) {
    return BinaryMask(crop(m.data_, window), BinaryMask::Unchecked{});
}

BinaryMask resize_mask(const BinaryMask& m, int new_w, int new_h) {
    return BinaryMask(resize_nearest(m.data_, new_w, new_h), BinaryMask::Unchecked{});
}

BinaryMask largest_component(const BinaryMask& m) {
    const int w = m.width();
    const int h = m.height();
    Raster<int> label = Raster<int>::Zero(h, w);
    std::vector<std::pair<int, int>> stack;
    int best_label = 0;
    std::int64_t best_size = 0;
    int next = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.at(x, y) || label(y, x) != 0) continue;
            ++next;
            std::int64_t size = 0;
            label(y, x) = next;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                const auto [px, py] = stack.back();
                stack.pop_back();
                ++size;
                constexpr int dx[4] = {1, -1, 0, 0};
                constexpr int dy[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = px + dx[k];
                    const int ny = py + dy[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    if (!m.at(nx, ny) || label(ny, nx) != 0) continue;
                    label(ny, nx) = next;
                    stack.emplace_back(nx, ny);
                }
            }
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
        }
    }
    return BinaryMask((label == best_label && label != 0).cast<std::uint8_t>().eval());
}

}  // namespace lesionroi
