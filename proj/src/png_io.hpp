// Single-channel PNG decode/encode. Output bytes are deterministic: fixed
// compression level, no filtering, no ancillary chunks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace salrank {

struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 0;  // 8 or 16 after decode
    std::vector<std::uint16_t> pixels;  // row-major
};

// Rejects anything that is not single-channel grayscale. Depths below 8
// are expanded to 8; 16-bit values are preserved exactly.
GrayImage read_gray_png(const std::string& path);

// bit_depth must be 8 or 16 and every pixel must fit the depth.
void write_gray_png(const std::string& path,
                    const std::vector<std::uint16_t>& pixels, int width,
                    int height, int bit_depth);

}  // namespace salrank
