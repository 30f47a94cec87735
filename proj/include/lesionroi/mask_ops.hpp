#pragma once

#include <cstdint>

#include "lesionroi/geometry.hpp"
#include "lesionroi/raster.hpp"

namespace lesionroi {

/// Foreground/background raster; every stored value is 0 or 1.
class BinaryMask {
public:
    using Data = Raster<std::uint8_t>;

    BinaryMask() = default;
    /// All-background mask.
    BinaryMask(int width, int height);
    /// Throws ValidationError if any value is not 0 or 1.
    explicit BinaryMask(Data data);

    /// Pixels with value >= threshold become foreground.
    static BinaryMask from_gray(const Raster<std::uint8_t>& gray, std::uint8_t threshold = 128);

    int width() const noexcept { return static_cast<int>(data_.cols()); }
    int height() const noexcept { return static_cast<int>(data_.rows()); }
    Box frame() const noexcept { return Box{0, 0, width(), height()}; }

    bool at(int x, int y) const { return data_(y, x) != 0; }
    void set(int x, int y, bool value) { data_(y, x) = value ? 1 : 0; }

    const Data& data() const noexcept { return data_; }
    std::int64_t foreground_count() const;

    /// 0 / 255 grayscale for lossless storage.
    Raster<std::uint8_t> to_gray() const;

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
        return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() && (a.data_ == b.data_).all();
    }

private:
    struct Unchecked {};
    BinaryMask(Data data, Unchecked) : data_(std::move(data)) {}

    friend BinaryMask rotate_mask(const BinaryMask&, QuarterTurn);
    friend BinaryMask crop_mask(const BinaryMask&, const Box&);
    friend BinaryMask resize_mask(const BinaryMask&, int, int);

    Data data_;
};

/// Minimal box holding every foreground pixel, across all components.
/// Throws NoForeground for an all-background mask.
Box circumscribe(const BinaryMask& m);

BinaryMask rotate_mask(const BinaryMask& m, QuarterTurn t);

/// Throws OutOfFrame unless the window lies inside the mask.
BinaryMask crop_mask(const BinaryMask& m, const Box& window);

/// Nearest-neighbour sampling at target pixel centres.
BinaryMask resize_mask(const BinaryMask& m, int new_w, int new_h);

/// Keeps only the largest 4-connected foreground component. Equal sizes are
/// resolved in favour of the component met first in raster order.
BinaryMask largest_component(const BinaryMask& m);

}  // namespace lesionroi
