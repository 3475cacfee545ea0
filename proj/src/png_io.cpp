#include "png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstdlib>

#include "types.hpp"

namespace salrank {

// libpng reports failures through longjmp, so the decode loop below only
// touches plain C buffers; C++ objects are created once reading is done.
GrayImage read_gray_png(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        std::fclose(fp);
        fail(ErrorKind::Internal, "libpng initialization failed");
    }

    png_byte* volatile raw = nullptr;
    png_bytep* volatile rows = nullptr;
    if (setjmp(png_jmpbuf(png))) {
        std::free(const_cast<png_byte*>(raw));
        std::free(const_cast<png_bytep*>(rows));
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(ErrorKind::Format, "cannot decode '" + path + "' as PNG");
    }

    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 width = png_get_image_width(png, info);
    png_uint_32 height = png_get_image_height(png, info);
    int color_type = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(ErrorKind::Format,
             "'" + path + "' is not single-channel grayscale");
    }
    if (width == 0 || height == 0 || width > 1u << 20 || height > 1u << 20) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(ErrorKind::Format, "'" + path + "' has unreasonable dimensions");
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        depth = 8;
    }
    png_read_update_info(png, info);

    std::size_t rowbytes = png_get_rowbytes(png, info);
    raw = static_cast<png_byte*>(std::malloc(rowbytes * height));
    rows = static_cast<png_bytep*>(std::malloc(height * sizeof(png_bytep)));
    if (!raw || !rows) {
        std::free(const_cast<png_byte*>(raw));
        std::free(const_cast<png_bytep*>(rows));
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(ErrorKind::Internal, "out of memory reading '" + path + "'");
    }
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = const_cast<png_byte*>(raw) + y * rowbytes;
    png_read_image(png, const_cast<png_bytep*>(rows));
    png_read_end(png, nullptr);

    GrayImage img;
    img.width = int(width);
    img.height = int(height);
    img.bit_depth = depth;
    img.pixels.resize(std::size_t(width) * height);
    const png_byte* data = const_cast<png_byte*>(raw);
    if (depth == 8) {
        for (png_uint_32 y = 0; y < height; ++y)
            for (png_uint_32 x = 0; x < width; ++x)
                img.pixels[std::size_t(y) * width + x] = data[y * rowbytes + x];
    } else {
        // Network byte order: high byte first.
        for (png_uint_32 y = 0; y < height; ++y)
            for (png_uint_32 x = 0; x < width; ++x) {
                const png_byte* b = data + y * rowbytes + 2 * x;
                img.pixels[std::size_t(y) * width + x] =
                    std::uint16_t((b[0] << 8) | b[1]);
            }
    }
    std::free(const_cast<png_byte*>(raw));
    std::free(const_cast<png_bytep*>(rows));
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

void write_gray_png(const std::string& path,
                    const std::vector<std::uint16_t>& pixels, int width,
                    int height, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        fail(ErrorKind::InvalidArgument, "bit depth must be 8 or 16");
    if (width < 1 || height < 1 ||
        pixels.size() != std::size_t(width) * height)
        fail(ErrorKind::InvalidArgument, "pixel buffer does not match dimensions");
    unsigned max_value = bit_depth == 8 ? 255u : 65535u;
    for (std::uint16_t v : pixels)
        if (v > max_value)
            fail(ErrorKind::InvalidArgument,
                 "pixel value " + std::to_string(v) + " exceeds " +
                     std::to_string(max_value));

    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        fail(ErrorKind::Internal, "libpng initialization failed");
    }

    std::size_t rowbytes = std::size_t(width) * (bit_depth / 8);
    png_byte* volatile row = nullptr;
    if (setjmp(png_jmpbuf(png))) {
        std::free(const_cast<png_byte*>(row));
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(ErrorKind::Io, "cannot encode '" + path + "'");
    }

    png_init_io(png, fp);
    png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), bit_depth,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    // Fixed settings keep the emitted bytes reproducible.
    png_set_compression_level(png, 6);
    png_set_filter(png, 0, PNG_FILTER_NONE);
    png_write_info(png, info);

    row = static_cast<png_byte*>(std::malloc(rowbytes));
    if (!row) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(ErrorKind::Internal, "out of memory writing '" + path + "'");
    }
    for (int y = 0; y < height; ++y) {
        png_byte* out = const_cast<png_byte*>(row);
        if (bit_depth == 8) {
            for (int x = 0; x < width; ++x)
                out[x] = png_byte(pixels[std::size_t(y) * width + x]);
        } else {
            for (int x = 0; x < width; ++x) {
                std::uint16_t v = pixels[std::size_t(y) * width + x];
                out[2 * x] = png_byte(v >> 8);
                out[2 * x + 1] = png_byte(v & 0xff);
            }
        }
        png_write_row(png, const_cast<png_byte*>(row));
    }
    png_write_end(png, info);

    std::free(const_cast<png_byte*>(row));
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0)
        fail(ErrorKind::Io, "cannot finish writing '" + path + "'");
}

}  // namespace salrank
