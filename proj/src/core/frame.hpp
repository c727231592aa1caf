// This file is part of the bgs project, a texture-based background
// subtraction library.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bgs {

/// Single-channel 8-bit image, row-major, no padding. All pipeline stages
/// operate on grayscale; color inputs are reduced to luminance at load time.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Frame() = default;
    Frame(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }

    /// Clamp-to-edge sample: coordinates outside the frame read the nearest
    /// border pixel. This is the border policy of every neighborhood operator
    /// in the library.
    std::uint8_t at_clamped(int x, int y) const {
        if (x < 0) x = 0;
        else if (x >= width) x = width - 1;
        if (y < 0) y = 0;
        else if (y >= height) y = height - 1;
        return data[static_cast<std::size_t>(y) * width + x];
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    bool empty() const { return width <= 0 || height <= 0; }
};

/// Integer ITU-R BT.601 luminance with round-half-up, matching the classic
/// (299 R + 587 G + 114 B + 500) / 1000 formula. Pure red (255,0,0) maps
/// to 76.
inline std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

/// Loads a binary PGM (P5) or PPM (P6) file. PPM pixels are converted to
/// grayscale with `luminance`. Header comments (`#` to end of line) are
/// allowed anywhere whitespace is; maxval must be in [1, 255].
/// Throws IoError when the file is missing or truncated and DataError when
/// the header is malformed or the format is unsupported.
Frame load_image(const std::string& path);

/// Writes `frame` as a binary PGM (P5) with maxval 255.
void save_pgm(const Frame& frame, const std::string& path);

/// Decodes an in-memory PGM/PPM byte stream; same rules as `load_image`.
/// `origin` is used only to label error messages.
Frame decode_image(const std::uint8_t* bytes, std::size_t size,
                   const std::string& origin);

} // namespace bgs
