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

#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "core/error.hpp"
#include "core/texture.hpp"
#include "support.hpp"

using namespace bgs;
using test::frame_from_patch;
using test::random_patch;

namespace {

// Reference transcription of the subregion definition, kept deliberately
// different from the production table: the production code stores hand
// derived rectangles, while this oracle works from the raw index lists,
// where r0..r47 enumerate the 48 non-center cells of the 7x7 patch in
// row-major order. Agreement between the two derivations is what the
// whole-suite equivalence checks below establish.
namespace oracle {

constexpr int kQuad[8][4] = {
    {0, 1, 7, 8},     // g0
    {5, 6, 12, 13},   // g1
    {7, 8, 14, 15},   // g2
    {12, 13, 19, 20}, // g3
    {27, 28, 34, 35}, // g4
    {32, 33, 39, 40}, // g5
    {34, 35, 41, 42}, // g6
    {39, 40, 46, 47}, // g7
};

constexpr int kHex[8][6] = {
    {2, 3, 4, 9, 10, 11},     // g8
    {9, 10, 11, 16, 17, 18},  // g9
    {14, 15, 21, 22, 27, 28}, // g10
    {15, 16, 22, 23, 28, 29}, // g11
    {18, 19, 24, 25, 31, 32}, // g12
    {19, 20, 25, 26, 32, 33}, // g13
    {29, 30, 31, 36, 37, 38}, // g14
    {36, 37, 38, 43, 44, 45}, // g15
};

// r index -> raw patch index (0..48), skipping the center cell.
inline int cell_of(int r) { return r < 24 ? r : r + 1; }

inline long long subregion_sum(const std::uint8_t patch[49], int i) {
    long long sum = 0;
    if (i < 8)
        for (int j = 0; j < 4; ++j)
            sum += patch[cell_of(kQuad[i][j])];
    else
        for (int j = 0; j < 6; ++j)
            sum += patch[cell_of(kHex[i - 8][j])];
    return sum;
}

inline int divisor(int i) { return i < 8 ? 4 : 6; }

std::uint16_t rlbsp(const std::uint8_t patch[49], int num, int den) {
    const long long ip = patch[24];
    std::uint16_t bits = 0;
    for (int i = 0; i < 16; ++i) {
        long long sum = subregion_sum(patch, i);
        long long k = divisor(i);
        if (den * std::llabs(sum - k * ip) <= static_cast<long long>(num) * k * ip)
            bits |= static_cast<std::uint16_t>(1u << (15 - i));
    }
    return bits;
}

} // namespace oracle

} // namespace

TEST_CASE("relative threshold: exact fraction conversion") {
    CHECK(RelativeThreshold::from_value(0.14).num == 7);
    CHECK(RelativeThreshold::from_value(0.14).den == 50);
    CHECK(RelativeThreshold::from_value(0.30).num == 3);
    CHECK(RelativeThreshold::from_value(0.30).den == 10);
    CHECK(RelativeThreshold::from_value(0.05).num == 1);
    CHECK(RelativeThreshold::from_value(0.05).den == 20);
    CHECK(RelativeThreshold::from_value(0.0).num == 0);
    CHECK(RelativeThreshold::from_value(0.1234).num == 617);
    CHECK(RelativeThreshold::from_value(0.1234).den == 5000);
    CHECK(RelativeThreshold{7, 50}.value() == doctest::Approx(0.14));
    CHECK_THROWS_AS(RelativeThreshold::from_value(-0.01), DataError);
    CHECK_THROWS_AS(RelativeThreshold::from_value(1.0), DataError);
}

TEST_CASE("subregion table shape: counts, bounds, center exclusion") {
    for (int i = 0; i < 16; ++i) {
        const Subregion& g = kSubregions[i];
        CHECK(g.pixel_count() == (i < 8 ? 4 : 6));
        CHECK(g.x0 + g.w <= 7);
        CHECK(g.y0 + g.h <= 7);
        bool holds_center = g.x0 <= 3 && 3 < g.x0 + g.w && g.y0 <= 3 &&
                            3 < g.y0 + g.h;
        CHECK_FALSE(holds_center);
    }
}

TEST_CASE("subregion means: frozen examples") {
    std::uint8_t patch[49];

    // Constant patch: every mean equals the constant.
    std::fill(patch, patch + 49, 10);
    auto means = subregion_means(patch);
    for (double m : means)
        CHECK(m == doctest::Approx(10.0));

    // Only the four top-left corner cells (r0, r1, r7, r8) hold 4: the first
    // subregion averages to 4, the one a row below shares two of those cells
    // (mean 2), and the top band sees only zeros.
    std::fill(patch, patch + 49, 0);
    patch[0] = patch[1] = patch[7] = patch[8] = 4;
    means = subregion_means(patch);
    CHECK(means[0] == doctest::Approx(4.0));
    CHECK(means[2] == doctest::Approx(2.0));
    CHECK(means[8] == doctest::Approx(0.0));
}

TEST_CASE("subregion means match the index-list oracle on random patches") {
    Pcg32 rng(101);
    std::uint8_t patch[49];
    for (int trial = 0; trial < 300; ++trial) {
        random_patch(patch, rng);
        auto means = subregion_means(patch);
        for (int i = 0; i < 16; ++i) {
            long long sum = oracle::subregion_sum(patch, i);
            // Bit-exact: both sides are the same integer-sum division.
            CHECK(means[i] ==
                  static_cast<double>(sum) / oracle::divisor(i));
        }
    }
}

TEST_CASE("rlbsp: frozen trivial descriptors") {
    // Constant frame: all differences are zero, every bit set, any value.
    for (int v : {0, 1, 77, 255}) {
        Frame f(9, 9, static_cast<std::uint8_t>(v));
        CHECK(rlbsp(f, 4, 4) == 0xFFFF);
    }

    // Zero center with bright surroundings: the threshold collapses to zero
    // and no mean can match.
    std::uint8_t patch[49];
    std::fill(patch, patch + 49, 255);
    patch[24] = 0;
    Frame f = frame_from_patch(patch);
    CHECK(rlbsp(f, 3, 3) == 0x0000);
}

TEST_CASE("rlbsp: bit order is subregion 0 first (MSB)") {
    // Patch whose only matching subregion is the top-left corner block.
    std::uint8_t patch[49];
    std::fill(patch, patch + 49, 255);
    patch[0] = patch[1] = patch[7] = patch[8] = 100;
    patch[24] = 100;
    CHECK(rlbsp(frame_from_patch(patch), 3, 3) == 0x8000);

    // ... and its mirror: only the bottom band matches, which must land in
    // the least significant bit.
    std::fill(patch, patch + 49, 255);
    patch[37] = patch[38] = patch[39] = patch[44] = patch[45] = patch[46] = 100;
    patch[24] = 100;
    CHECK(rlbsp(frame_from_patch(patch), 3, 3) == 0x0001);
}

TEST_CASE("rlbsp equals the index-list oracle on 1000 seeded patches") {
    Pcg32 rng(2024);
    std::uint8_t patch[49];
    RelativeThreshold tau; // 7/50
    for (int trial = 0; trial < 1000; ++trial) {
        random_patch(patch, rng);
        Frame f = frame_from_patch(patch);
        CHECK(rlbsp(f, 3, 3, tau) == oracle::rlbsp(patch, tau.num, tau.den));
    }
}

TEST_CASE("rlbsp: exact scale invariance for integer scales") {
    Pcg32 rng(7);
    std::uint8_t patch[49], scaled[49];
    for (int trial = 0; trial < 200; ++trial) {
        random_patch(patch, rng, 63);
        Descriptor16 base = rlbsp(frame_from_patch(patch), 3, 3);
        for (int s : {2, 3, 4}) {
            for (int i = 0; i < 49; ++i)
                scaled[i] = static_cast<std::uint8_t>(patch[i] * s);
            CHECK(rlbsp(frame_from_patch(scaled), 3, 3) == base);
        }
    }
}

TEST_CASE("rlbsp: monotone in tau (bit-set inclusion)") {
    Pcg32 rng(55);
    std::uint8_t patch[49];
    const RelativeThreshold taus[] = {{0, 1},  {1, 20}, {7, 50},
                                      {3, 10}, {1, 2},  {9, 10}};
    for (int trial = 0; trial < 200; ++trial) {
        random_patch(patch, rng);
        Frame f = frame_from_patch(patch);
        for (std::size_t a = 0; a + 1 < std::size(taus); ++a) {
            Descriptor16 lo = rlbsp(f, 3, 3, taus[a]);
            Descriptor16 hi = rlbsp(f, 3, 3, taus[a + 1]);
            CHECK((lo & ~hi) == 0); // every bit set at the smaller tau persists
        }
    }
}

TEST_CASE("subregion means ignore the center pixel") {
    Pcg32 rng(31);
    std::uint8_t patch[49];
    random_patch(patch, rng);
    auto reference = subregion_means(patch);
    for (int v : {0, 50, 129, 255}) {
        patch[24] = static_cast<std::uint8_t>(v);
        CHECK(subregion_means(patch) == reference);
    }
}

TEST_CASE("rlbsp_frame equals pointwise rlbsp everywhere, borders included") {
    Pcg32 rng(88);
    Frame f = test::random_frame(20, 15, rng);
    std::vector<Descriptor16> img = rlbsp_frame(f);
    REQUIRE(img.size() == f.pixel_count());
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            CHECK(img[static_cast<std::size_t>(y) * f.width + x] ==
                  rlbsp(f, x, y));
}

TEST_CASE("rlbsp_frame: constant frame is all-ones") {
    Frame f(7, 7, 42);
    for (Descriptor16 d : rlbsp_frame(f))
        CHECK(d == 0xFFFF);
}

TEST_CASE("descriptor_frame rejects frames below the 7x7 support") {
    Frame f(6, 9, 0);
    CHECK_THROWS_AS(descriptor_frame(f, TextureOp::rlbsp, {7, 50}), DataError);
    CHECK_THROWS_AS(descriptor_frame(f, TextureOp::lbp, {0, 1}), DataError);
}

TEST_CASE("hamming: identity, complement, frozen example, metric axioms") {
    CHECK(hamming(0xFFFF, 0xFFFF) == 0);
    CHECK(hamming(0xFFFF, 0x0000) == 16);
    // XOR of these operands is 0b1000_0000_0000_0001: two differing bits.
    CHECK(hamming(0b1010000000000001, 0b0010000000000000) == 2);

    Pcg32 rng(13);
    std::vector<Descriptor16> pool(24);
    for (Descriptor16& d : pool)
        d = static_cast<Descriptor16>(rng.next());
    for (Descriptor16 a : pool) {
        CHECK(hamming(a, a) == 0);
        for (Descriptor16 b : pool) {
            CHECK(hamming(a, b) == hamming(b, a));
            for (Descriptor16 c : pool)
                CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
        }
    }
}

TEST_CASE("lbp8: frozen examples and direct-comparison oracle") {
    Frame flat(7, 7, 9);
    CHECK(lbp8(flat, 3, 3) == 0xFF); // ties encode 1

    std::uint8_t patch[49];
    std::fill(patch, patch + 49, 0);
    patch[24] = 255;
    CHECK(lbp8(frame_from_patch(patch), 3, 3) == 0x00);

    // Oracle: the eight ring comparisons written out literally, clockwise
    // from the top-left diagonal, neighbor k in bit k.
    const int ring[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                            {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};
    Pcg32 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        Frame f = test::random_frame(7, 7, rng);
        std::uint16_t want = 0;
        for (int k = 0; k < 8; ++k)
            if (f.at(3 + ring[k][0], 3 + ring[k][1]) >= f.at(3, 3))
                want |= static_cast<std::uint16_t>(1u << k);
        CHECK(lbp8(f, 3, 3) == want);
    }
}

TEST_CASE("siltp8: frozen examples and per-neighbor oracle") {
    RelativeThreshold tau{1, 20}; // 0.05

    Frame flat(7, 7, 100);
    CHECK(siltp8(flat, 3, 3, tau) == 0x0000); // all codes 00

    // Zero center: any positive neighbor exceeds (1+tau)*0.
    std::uint8_t patch[49];
    std::fill(patch, patch + 49, 0);
    patch[24] = 0;
    patch[23] = 1; // the (-1,0) neighbor, index 7 in ring order
    Frame f = frame_from_patch(patch);
    CHECK(siltp8(f, 3, 3, tau) == (1u << 14)); // code 01 at neighbor 7

    const int ring[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                            {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};
    Pcg32 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        Frame g = test::random_frame(7, 7, rng);
        int c = g.at(3, 3);
        std::uint16_t want = 0;
        for (int k = 0; k < 8; ++k) {
            int v = g.at(3 + ring[k][0], 3 + ring[k][1]);
            unsigned code = 0;
            if (20 * v > 21 * c)
                code = 1;
            else if (20 * v < 19 * c)
                code = 2;
            want |= static_cast<std::uint16_t>(code << (2 * k));
        }
        CHECK(siltp8(g, 3, 3, tau) == want);
    }
}

TEST_CASE("lbsp16: frozen examples and direct-comparison oracle") {
    RelativeThreshold tau{3, 10}; // 0.30

    Frame flat(7, 7, 64);
    CHECK(lbsp16(flat, 3, 3, tau) == 0xFFFF);

    std::uint8_t patch[49];
    std::fill(patch, patch + 49, 255);
    patch[24] = 0;
    CHECK(lbsp16(frame_from_patch(patch), 3, 3, tau) == 0x0000);

    const int offsets[16][2] = {{-2, -2}, {0, -2}, {2, -2}, {-1, -1},
                                {0, -1},  {1, -1}, {-2, 0},  {-1, 0},
                                {1, 0},   {2, 0},  {-1, 1},  {0, 1},
                                {1, 1},   {-2, 2}, {0, 2},   {2, 2}};
    Pcg32 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        Frame g = test::random_frame(7, 7, rng);
        int c = g.at(3, 3);
        std::uint16_t want = 0;
        for (int k = 0; k < 16; ++k) {
            int v = g.at(3 + offsets[k][0], 3 + offsets[k][1]);
            if (10 * std::abs(v - c) <= 3 * c)
                want |= static_cast<std::uint16_t>(1u << (15 - k));
        }
        CHECK(lbsp16(g, 3, 3, tau) == want);
    }
}

TEST_CASE("operator names parse and default thresholds are the documented set") {
    CHECK(parse_operator("rlbsp") == TextureOp::rlbsp);
    CHECK(parse_operator("lbsp") == TextureOp::lbsp);
    CHECK(parse_operator("siltp") == TextureOp::siltp);
    CHECK(parse_operator("lbp") == TextureOp::lbp);
    CHECK_THROWS_AS(parse_operator("sobel"), DataError);

    CHECK(default_threshold(TextureOp::rlbsp).value() == doctest::Approx(0.14));
    CHECK(default_threshold(TextureOp::lbsp).value() == doctest::Approx(0.30));
    CHECK(default_threshold(TextureOp::siltp).value() == doctest::Approx(0.05));
}

TEST_CASE("descriptor_frame: every operator matches its pointwise form") {
    Pcg32 rng(99);
    Frame f = test::random_frame(11, 9, rng);
    auto check_op = [&](TextureOp op, RelativeThreshold tau) {
        std::vector<Descriptor16> img = descriptor_frame(f, op, tau);
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                Descriptor16 want = 0;
                switch (op) {
                    case TextureOp::rlbsp: want = rlbsp(f, x, y, tau); break;
                    case TextureOp::lbsp: want = lbsp16(f, x, y, tau); break;
                    case TextureOp::siltp: want = siltp8(f, x, y, tau); break;
                    case TextureOp::lbp: want = lbp8(f, x, y); break;
                }
                CHECK(img[static_cast<std::size_t>(y) * f.width + x] == want);
            }
    };
    check_op(TextureOp::rlbsp, {7, 50});
    check_op(TextureOp::lbsp, {3, 10});
    check_op(TextureOp::siltp, {1, 20});
    check_op(TextureOp::lbp, {0, 1});
}
