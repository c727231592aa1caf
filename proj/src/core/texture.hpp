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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "frame.hpp"

namespace bgs {

/// 16-bit binary texture descriptor. For rlbsp and lbsp16, bit 15 carries
/// the first comparison (subregion g0 / offset 0) and bit 0 the last:
/// MSB-first in comparison order. lbp8 and siltp8 use the narrower layouts
/// documented on their declarations; all descriptors travel in a uint16_t
/// so one Hamming routine serves every operator.
using Descriptor16 = std::uint16_t;

/// Relative threshold as an exact fraction num/den. Comparisons are done in
/// integers, e.g. |mean - center| <= (num/den)*center becomes
/// den*|sum - k*center| <= num*k*center for a k-pixel subregion, which makes
/// descriptors exactly invariant under integer intensity scaling.
struct RelativeThreshold {
    std::int32_t num = 7;
    std::int32_t den = 50;

    /// Converts a decimal threshold to the reduced fraction
    /// round(value*10000)/10000. Throws DataError unless 0 <= value < 1.
    static RelativeThreshold from_value(double value);

    double value() const { return static_cast<double>(num) / den; }
};

/// One of the 16 rectangular subregions of the 7x7 support, in patch
/// coordinates (0..6, x right, y down; the patch center is (3,3)).
struct Subregion {
    std::uint8_t x0, y0, w, h;
    constexpr int pixel_count() const { return w * h; }
};

/// The rlbsp subregion geometry: eight 2x2 corner-adjacent blocks and eight
/// 2x3 / 3x2 edge blocks, every one fully inside the 7x7 patch and none
/// containing the center pixel. Adjacent entries overlap (g0 and g2 share
/// two pixels, g8 and g9 share three), which is what smooths the operator
/// against single-pixel noise.
inline constexpr std::array<Subregion, 16> kSubregions = {{
    {0, 0, 2, 2}, // g0  top-left outer
    {5, 0, 2, 2}, // g1  top-right outer
    {0, 1, 2, 2}, // g2  top-left inner
    {5, 1, 2, 2}, // g3  top-right inner
    {0, 4, 2, 2}, // g4  bottom-left inner
    {5, 4, 2, 2}, // g5  bottom-right inner
    {0, 5, 2, 2}, // g6  bottom-left outer
    {5, 5, 2, 2}, // g7  bottom-right outer
    {2, 0, 3, 2}, // g8  top outer band
    {2, 1, 3, 2}, // g9  top inner band
    {0, 2, 2, 3}, // g10 left outer band
    {1, 2, 2, 3}, // g11 left inner band
    {4, 2, 2, 3}, // g12 right inner band
    {5, 2, 2, 3}, // g13 right outer band
    {2, 4, 3, 2}, // g14 bottom inner band
    {2, 5, 3, 2}, // g15 bottom outer band
}};

inline constexpr int kPatchSize = 7;
inline constexpr int kPatchRadius = 3;

/// Baseline texture operators selectable by name in the CLI.
enum class TextureOp { rlbsp, lbsp, siltp, lbp };

TextureOp parse_operator(const std::string& name); // throws DataError
const char* operator_name(TextureOp op);

/// Per-operator default relative threshold: rlbsp 0.14, lbsp 0.30,
/// siltp 0.05, lbp none (rank comparisons take no threshold).
RelativeThreshold default_threshold(TextureOp op);

/// Means of the 16 subregions of a raw 7x7 patch (49 values, row-major).
/// Exact: each mean is sum/divisor evaluated in double, where the divisor
/// (4 or 6) divides into at most 4 binary digits of error-free headroom;
/// tests that need exactness compare sums against divisor-scaled values.
std::array<double, 16> subregion_means(const std::uint8_t patch[49]);

/// The rlbsp descriptor at (x,y): bit i (from MSB) is 1 iff
/// |mean(g_i) - I(x,y)| <= tau * I(x,y), evaluated exactly in integers.
/// Coordinates outside the frame clamp to the nearest edge pixel, so the
/// operator is total over any frame position.
Descriptor16 rlbsp(const Frame& frame, int x, int y,
                   RelativeThreshold tau = {});

/// Whole-frame rlbsp, row-major, bit-identical to calling rlbsp per pixel
/// (including every border pixel). Throws DataError when the frame is
/// smaller than the 7x7 support.
std::vector<Descriptor16> rlbsp_frame(const Frame& frame,
                                      RelativeThreshold tau = {});

/// Classic 8-neighbor LBP at radius 1: bit k is 1 iff neighbor k >= center
/// (ties count as 1). Neighbors are enumerated clockwise starting at the
/// top-left diagonal, and neighbor k lands in bit k (bit 0 = top-left).
Descriptor16 lbp8(const Frame& frame, int x, int y);

/// Scale-invariant local ternary pattern over the same 8 neighbors: each
/// neighbor contributes two bits, 01 if it exceeds (1+tau)*center, 10 if it
/// falls below (1-tau)*center, 00 otherwise. Neighbor k occupies bits
/// [2k+1, 2k] (neighbor 0 in the least-significant pair).
Descriptor16 siltp8(const Frame& frame, int x, int y,
                    RelativeThreshold tau);

/// 16-point local binary similarity pattern on a 5x5 support: bit for
/// offset k is 1 iff |I_k - center| <= tau * center, offset 0 in bit 15
/// (MSB-first, same convention as rlbsp).
Descriptor16 lbsp16(const Frame& frame, int x, int y,
                    RelativeThreshold tau);

/// Differing-bit count between two descriptors (0..16).
int hamming(Descriptor16 a, Descriptor16 b);

/// Whole-frame descriptor pass for any operator, row-major. 8-bit lbp
/// codes are zero-extended so the Hamming distance is unchanged. Throws
/// DataError when the frame is smaller than 7x7 (uniform floor across
/// operators so they are interchangeable in the model).
std::vector<Descriptor16> descriptor_frame(const Frame& frame, TextureOp op,
                                           RelativeThreshold tau);

} // namespace bgs
