#pragma once

#include <filesystem>

#include "lesionroi/image.hpp"
#include "lesionroi/mask_ops.hpp"

namespace lesionroi {

enum class ColorMode { Rgb, Gray };

/// Decodes 8-bit PNG or baseline JPEG (sniffed from the file signature).
/// Alpha is dropped, 16-bit samples are reduced, palettes are expanded.
/// Throws FileNotFound or DecodeError.
Image read_image(const std::filesystem::path& path, ColorMode mode = ColorMode::Rgb);

/// Grayscale decode followed by binarization at >= 128.
BinaryMask read_mask(const std::filesystem::path& path);

/// Lossless 8-bit PNG, gray or RGB. Written to a temporary sibling and renamed
/// into place; nothing is left behind on failure. Throws WriteError.
void write_png(const std::filesystem::path& path, const Image& image);
void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace lesionroi
