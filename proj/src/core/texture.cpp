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

#include "texture.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "error.hpp"

namespace bgs {

namespace {

inline int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

/// Subregion pixel sum with clamp-to-edge reads; used for border pixels
/// where part of the 7x7 support leaves the frame.
inline std::int64_t subregion_sum_clamped(const Frame& f, int x, int y,
                                          const Subregion& g) {
    std::int64_t sum = 0;
    for (int j = 0; j < g.h; ++j) {
        int sy = clampi(y - kPatchRadius + g.y0 + j, 0, f.height - 1);
        const std::uint8_t* row = &f.data[static_cast<std::size_t>(sy) * f.width];
        for (int i = 0; i < g.w; ++i) {
            int sx = clampi(x - kPatchRadius + g.x0 + i, 0, f.width - 1);
            sum += row[sx];
        }
    }
    return sum;
}

/// Subregion pixel sum for interior pixels: direct reads, no clamping.
inline std::int64_t subregion_sum_fast(const std::uint8_t* topleft,
                                       int stride, const Subregion& g) {
    std::int64_t sum = 0;
    const std::uint8_t* row = topleft + static_cast<std::ptrdiff_t>(g.y0) * stride + g.x0;
    for (int j = 0; j < g.h; ++j, row += stride)
        for (int i = 0; i < g.w; ++i)
            sum += row[i];
    return sum;
}

inline bool interior(const Frame& f, int x, int y) {
    return x >= kPatchRadius && y >= kPatchRadius &&
           x + kPatchRadius < f.width && y + kPatchRadius < f.height;
}

/// LBP/SILTP neighbor ring, clockwise from the top-left diagonal.
constexpr int kRing[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                             {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};

/// lbsp16 sampling pattern over the 5x5 support, bit 15 first.
constexpr int kLbspOffsets[16][2] = {
    {-2, -2}, {0, -2}, {2, -2}, {-1, -1}, {0, -1}, {1, -1},
    {-2, 0},  {-1, 0}, {1, 0},  {2, 0},   {-1, 1}, {0, 1},
    {1, 1},   {-2, 2}, {0, 2},  {2, 2}};

void require_support(const Frame& f, const char* op) {
    if (f.width < kPatchSize || f.height < kPatchSize)
        throw DataError(std::string(op) + ": frame must be at least 7x7, got " +
                        std::to_string(f.width) + "x" + std::to_string(f.height));
}

} // namespace

RelativeThreshold RelativeThreshold::from_value(double value) {
    if (!(value >= 0.0) || !(value < 1.0))
        throw DataError("relative threshold must satisfy 0 <= tau < 1, got " +
                        std::to_string(value));
    std::int32_t num = static_cast<std::int32_t>(std::llround(value * 10000.0));
    std::int32_t den = 10000;
    std::int32_t g = std::gcd(num, den);
    if (g == 0)
        return {0, 1};
    return {num / g, den / g};
}

TextureOp parse_operator(const std::string& name) {
    if (name == "rlbsp") return TextureOp::rlbsp;
    if (name == "lbsp") return TextureOp::lbsp;
    if (name == "siltp") return TextureOp::siltp;
    if (name == "lbp") return TextureOp::lbp;
    throw DataError("unknown operator \"" + name +
                    "\" (expected rlbsp|lbsp|siltp|lbp)");
}

const char* operator_name(TextureOp op) {
    switch (op) {
        case TextureOp::rlbsp: return "rlbsp";
        case TextureOp::lbsp: return "lbsp";
        case TextureOp::siltp: return "siltp";
        case TextureOp::lbp: return "lbp";
    }
    return "?";
}

RelativeThreshold default_threshold(TextureOp op) {
    switch (op) {
        case TextureOp::rlbsp: return {7, 50};  // 0.14
        case TextureOp::lbsp: return {3, 10};   // 0.30
        case TextureOp::siltp: return {1, 20};  // 0.05
        case TextureOp::lbp: return {0, 1};     // unused
    }
    return {0, 1};
}

std::array<double, 16> subregion_means(const std::uint8_t patch[49]) {
    std::array<double, 16> means{};
    for (int i = 0; i < 16; ++i) {
        const Subregion& g = kSubregions[i];
        int sum = 0;
        for (int j = 0; j < g.h; ++j)
            for (int k = 0; k < g.w; ++k)
                sum += patch[(g.y0 + j) * kPatchSize + (g.x0 + k)];
        means[i] = static_cast<double>(sum) / g.pixel_count();
    }
    return means;
}

Descriptor16 rlbsp(const Frame& frame, int x, int y, RelativeThreshold tau) {
    const std::int64_t ip = frame.at_clamped(x, y);
    Descriptor16 bits = 0;
    if (interior(frame, x, y)) {
        const std::uint8_t* topleft =
            &frame.data[static_cast<std::size_t>(y - kPatchRadius) * frame.width +
                        (x - kPatchRadius)];
        for (const Subregion& g : kSubregions) {
            std::int64_t sum = subregion_sum_fast(topleft, frame.width, g);
            std::int64_t k = g.pixel_count();
            bool hit = tau.den * std::llabs(sum - k * ip) <= tau.num * k * ip;
            bits = static_cast<Descriptor16>((bits << 1) | (hit ? 1u : 0u));
        }
    } else {
        for (const Subregion& g : kSubregions) {
            std::int64_t sum = subregion_sum_clamped(frame, x, y, g);
            std::int64_t k = g.pixel_count();
            bool hit = tau.den * std::llabs(sum - k * ip) <= tau.num * k * ip;
            bits = static_cast<Descriptor16>((bits << 1) | (hit ? 1u : 0u));
        }
    }
    return bits;
}

std::vector<Descriptor16> rlbsp_frame(const Frame& frame,
                                      RelativeThreshold tau) {
    require_support(frame, "rlbsp_frame");
    std::vector<Descriptor16> out(frame.pixel_count());
    Descriptor16* dst = out.data();
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            *dst++ = rlbsp(frame, x, y, tau);
    return out;
}

Descriptor16 lbp8(const Frame& frame, int x, int y) {
    const std::uint8_t center = frame.at_clamped(x, y);
    Descriptor16 bits = 0;
    for (int k = 0; k < 8; ++k) {
        std::uint8_t v = frame.at_clamped(x + kRing[k][0], y + kRing[k][1]);
        if (v >= center)
            bits |= static_cast<Descriptor16>(1u << k);
    }
    return bits;
}

Descriptor16 siltp8(const Frame& frame, int x, int y, RelativeThreshold tau) {
    const std::int64_t center = frame.at_clamped(x, y);
    Descriptor16 bits = 0;
    for (int k = 0; k < 8; ++k) {
        std::int64_t v = frame.at_clamped(x + kRing[k][0], y + kRing[k][1]);
        // v > (1+tau)*c  <=>  den*v > (den+num)*c; likewise for the lower band.
        std::uint32_t code = 0;
        if (tau.den * v > (tau.den + tau.num) * center)
            code = 1; // 01
        else if (tau.den * v < (tau.den - tau.num) * center)
            code = 2; // 10
        bits |= static_cast<Descriptor16>(code << (2 * k));
    }
    return bits;
}

Descriptor16 lbsp16(const Frame& frame, int x, int y, RelativeThreshold tau) {
    const std::int64_t center = frame.at_clamped(x, y);
    Descriptor16 bits = 0;
    for (int k = 0; k < 16; ++k) {
        std::int64_t v =
            frame.at_clamped(x + kLbspOffsets[k][0], y + kLbspOffsets[k][1]);
        bool hit = tau.den * std::llabs(v - center) <= tau.num * center;
        bits = static_cast<Descriptor16>((bits << 1) | (hit ? 1u : 0u));
    }
    return bits;
}

int hamming(Descriptor16 a, Descriptor16 b) {
    return std::popcount(static_cast<std::uint16_t>(a ^ b));
}

std::vector<Descriptor16> descriptor_frame(const Frame& frame, TextureOp op,
                                           RelativeThreshold tau) {
    if (op == TextureOp::rlbsp)
        return rlbsp_frame(frame, tau);
    require_support(frame, "descriptor_frame");
    std::vector<Descriptor16> out(frame.pixel_count());
    Descriptor16* dst = out.data();
    switch (op) {
        case TextureOp::lbsp:
            for (int y = 0; y < frame.height; ++y)
                for (int x = 0; x < frame.width; ++x)
                    *dst++ = lbsp16(frame, x, y, tau);
            break;
        case TextureOp::siltp:
            for (int y = 0; y < frame.height; ++y)
                for (int x = 0; x < frame.width; ++x)
                    *dst++ = siltp8(frame, x, y, tau);
            break;
        case TextureOp::lbp:
            for (int y = 0; y < frame.height; ++y)
                for (int x = 0; x < frame.width; ++x)
                    *dst++ = lbp8(frame, x, y);
            break;
        case TextureOp::rlbsp:
            break; // handled above
    }
    return out;
}

} // namespace bgs
