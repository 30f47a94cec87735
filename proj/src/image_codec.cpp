#include "lesionroi/image_codec.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

// jpeglib.h expects FILE and size_t to be declared first.
#include <jpeglib.h>

#include "lesionroi/error.hpp"

namespace lesionroi {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_read(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw Error(ErrorCode::FileNotFound, path.string());
    return f;
}

Image from_interleaved(const std::vector<std::uint8_t>& buf, int width, int height, int channels) {
    Image img(width, height, channels);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = buf.data() + static_cast<std::size_t>(y) * width * channels;
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < channels; ++c) img.channels[c](y, x) = row[x * channels + c];
        }
    }
    return img;
}

void png_error_fn(png_structp png, png_const_charp msg) {
    auto* message = static_cast<std::string*>(png_get_error_ptr(png));
    if (message) *message = msg;
    png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

Image decode_png(std::FILE* f, const std::filesystem::path& path, ColorMode mode) {
    std::string message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
    if (!png) throw Error(ErrorCode::DecodeError, path.string() + ": out of memory");
    png_infop info = png_create_info_struct(png);
    std::vector<std::uint8_t> buf;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0, height = 0;
    int channels = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::DecodeError, path.string() + ": " + message);
    }
    png_init_io(png, f);
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_set_strip_alpha(png);
    const bool is_gray = (color & PNG_COLOR_MASK_COLOR) == 0;
    if (mode == ColorMode::Rgb && is_gray) png_set_gray_to_rgb(png);
    if (mode == ColorMode::Gray && !is_gray) png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);
    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    channels = png_get_channels(png, info);
    buf.resize(static_cast<std::size_t>(width) * height * channels);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = buf.data() + static_cast<std::size_t>(y) * width * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return from_interleaved(buf, static_cast<int>(width), static_cast<int>(height), channels);
}

struct JpegError {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegError*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

Image decode_jpeg(std::FILE* f, const std::filesystem::path& path, ColorMode mode) {
    jpeg_decompress_struct cinfo;
    JpegError err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_error_exit;
    std::vector<std::uint8_t> buf;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(ErrorCode::DecodeError, path.string() + ": " + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = mode == ColorMode::Gray ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    const int width = static_cast<int>(cinfo.output_width);
    const int height = static_cast<int>(cinfo.output_height);
    const int channels = cinfo.output_components;
    buf.resize(static_cast<std::size_t>(width) * height * channels);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = buf.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * channels;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return from_interleaved(buf, width, height, channels);
}

}  // namespace

Image read_image(const std::filesystem::path& path, ColorMode mode) {
    FilePtr f = open_for_read(path);
    unsigned char sig[8] = {};
    const std::size_t n = std::fread(sig, 1, sizeof sig, f.get());
    std::rewind(f.get());
    if (n == 8 && png_sig_cmp(sig, 0, 8) == 0) return decode_png(f.get(), path, mode);
    if (n >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return decode_jpeg(f.get(), path, mode);
    throw Error(ErrorCode::DecodeError, path.string() + ": not a PNG or JPEG file");
}

BinaryMask read_mask(const std::filesystem::path& path) {
    const Image gray = read_image(path, ColorMode::Gray);
    return BinaryMask::from_gray(gray.channels.front());
}

namespace {

void encode_png(std::FILE* f, const Image& image, const std::filesystem::path& path) {
    const int channels = image.num_channels();
    if (channels != 1 && channels != 3) {
        throw Error(ErrorCode::WriteError, path.string() + ": only gray or RGB images can be written");
    }
    const int width = image.width();
    const int height = image.height();
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(width) * height * channels);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < channels; ++c) {
                buf[(static_cast<std::size_t>(y) * width + x) * channels + c] = image.channels[c](y, x);
            }
        }
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) rows[y] = buf.data() + static_cast<std::size_t>(y) * width * channels;

    std::string message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
    if (!png) throw Error(ErrorCode::WriteError, path.string() + ": out of memory");
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::WriteError, path.string() + ": " + message);
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png(const std::filesystem::path& path, const Image& image) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        FilePtr f(std::fopen(tmp.c_str(), "wb"));
        if (!f) throw Error(ErrorCode::WriteError, "cannot open " + tmp.string() + " for writing");
        try {
            encode_png(f.get(), image, path);
        } catch (...) {
            f.reset();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw;
        }
        if (std::fflush(f.get()) != 0) {
            f.reset();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorCode::WriteError, "flush failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::WriteError, "cannot move " + tmp.string() + " into place");
    }
}

void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask) {
    Image gray;
    gray.channels.push_back(mask.to_gray());
    write_png(path, gray);
}

}  // namespace lesionroi
