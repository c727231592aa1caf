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

#include "frame.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>

#include "error.hpp"

namespace bgs {

namespace {

/// Cursor over an in-memory netpbm header. Tokens are runs of
/// non-whitespace; `#` starts a comment that runs to the end of the line
/// and counts as whitespace.
struct HeaderCursor {
    const std::uint8_t* p;
    const std::uint8_t* end;
    const std::string& origin;

    void skip_space_and_comments() {
        while (p < end) {
            if (std::isspace(*p)) {
                ++p;
            } else if (*p == '#') {
                while (p < end && *p != '\n')
                    ++p;
            } else {
                break;
            }
        }
    }

    /// Reads a nonnegative decimal integer token, bounded to keep absurd
    /// headers from overflowing.
    long read_int(const char* what) {
        skip_space_and_comments();
        if (p >= end || !std::isdigit(*p))
            throw DataError(origin + ": expected " + std::string(what) +
                            " in image header");
        long v = 0;
        while (p < end && std::isdigit(*p)) {
            v = v * 10 + (*p - '0');
            if (v > 1000000000L)
                throw DataError(origin + ": " + std::string(what) +
                                " out of range");
            ++p;
        }
        return v;
    }
};

} // namespace

Frame decode_image(const std::uint8_t* bytes, std::size_t size,
                   const std::string& origin) {
    if (size < 2)
        throw DataError(origin + ": not a PGM/PPM file (too short)");
    bool color;
    if (bytes[0] == 'P' && bytes[1] == '5')
        color = false;
    else if (bytes[0] == 'P' && bytes[1] == '6')
        color = true;
    else
        throw DataError(origin + ": unsupported image format (expected binary "
                                 "PGM \"P5\" or PPM \"P6\" magic)");

    HeaderCursor cur{bytes + 2, bytes + size, origin};
    long w = cur.read_int("width");
    long h = cur.read_int("height");
    long maxval = cur.read_int("maxval");
    if (w <= 0 || h <= 0)
        throw DataError(origin + ": image dimensions must be positive");
    if (maxval < 1 || maxval > 255)
        throw DataError(origin + ": maxval " + std::to_string(maxval) +
                        " unsupported (must be 1..255)");
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.p >= cur.end || !std::isspace(*cur.p))
        throw DataError(origin + ": missing raster separator after maxval");
    ++cur.p;

    std::size_t npix = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::size_t need = color ? npix * 3 : npix;
    if (static_cast<std::size_t>(cur.end - cur.p) < need)
        throw IoError(origin + ": truncated raster (need " +
                      std::to_string(need) + " bytes, have " +
                      std::to_string(cur.end - cur.p) + ")");

    Frame frame(static_cast<int>(w), static_cast<int>(h));
    const std::uint8_t* src = cur.p;
    if (color) {
        for (std::size_t i = 0; i < npix; ++i, src += 3)
            frame.data[i] = luminance(src[0], src[1], src[2]);
    } else {
        std::copy(src, src + npix, frame.data.begin());
    }
    return frame;
}

Frame load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path + ": cannot open for reading");
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError(path + ": read failure");
    return decode_image(bytes.data(), bytes.size(), path);
}

void save_pgm(const Frame& frame, const std::string& path) {
    if (frame.empty())
        throw DataError(path + ": refusing to write empty frame");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path + ": cannot open for writing");
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data.data()),
              static_cast<std::streamsize>(frame.data.size()));
    if (!out)
        throw IoError(path + ": write failure");
}

} // namespace bgs
