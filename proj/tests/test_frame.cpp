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

#include <fstream>
#include <string>

#include "core/error.hpp"
#include "core/frame.hpp"
#include "support.hpp"

using namespace bgs;

namespace {

std::filesystem::path write_bytes(const std::filesystem::path& dir,
                                  const std::string& name,
                                  const std::string& bytes) {
    std::filesystem::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    return p;
}

} // namespace

TEST_CASE("pgm decode: 2x2 binary raster") {
    test::TempDir dir;
    std::string bytes = "P5\n2 2\n255\n";
    bytes += '\x00';
    bytes += '\x80';
    bytes += '\xFF';
    bytes += '\x40';
    Frame f = load_image(write_bytes(dir.path(), "a.pgm", bytes));
    REQUIRE(f.width == 2);
    REQUIRE(f.height == 2);
    CHECK(f.at(0, 0) == 0);
    CHECK(f.at(1, 0) == 128);
    CHECK(f.at(0, 1) == 255);
    CHECK(f.at(1, 1) == 64);
}

TEST_CASE("ppm decode: color image folds to luminance") {
    test::TempDir dir;
    // Single red pixel: (299*255 + 500) / 1000 = 76.
    std::string bytes = "P6\n1 1\n255\n";
    bytes += '\xFF';
    bytes += '\x00';
    bytes += '\x00';
    Frame f = load_image(write_bytes(dir.path(), "red.ppm", bytes));
    REQUIRE(f.width == 1);
    REQUIRE(f.height == 1);
    CHECK(f.at(0, 0) == 76);
}

TEST_CASE("luminance: constant gray stays the same value") {
    // Equal channels must map to that channel value for all intensities.
    for (int v : {0, 1, 64, 128, 200, 255})
        CHECK(luminance(static_cast<std::uint8_t>(v),
                        static_cast<std::uint8_t>(v),
                        static_cast<std::uint8_t>(v)) == v);
    // Frozen mixed-channel values.
    CHECK(luminance(255, 0, 0) == 76);
    CHECK(luminance(0, 255, 0) == 150);
    CHECK(luminance(0, 0, 255) == 29);
    CHECK(luminance(255, 255, 255) == 255);
}

TEST_CASE("pgm decode: header comments are ignored") {
    test::TempDir dir;
    std::string bytes = "P5\n# made by hand\n2 1\n# another note\n255\nab";
    Frame f = load_image(write_bytes(dir.path(), "c.pgm", bytes));
    REQUIRE(f.width == 2);
    REQUIRE(f.height == 1);
    CHECK(f.at(0, 0) == 'a');
    CHECK(f.at(1, 0) == 'b');
}

TEST_CASE("pgm decode: maxval bounds") {
    test::TempDir dir;
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "z.pgm",
                                           std::string("P5\n1 1\n0\nx"))),
                    DataError);
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "w.pgm",
                                           std::string("P5\n1 1\n256\nxy"))),
                    DataError);
    // Small maxval is legal; stored bytes pass through untouched.
    Frame f = load_image(write_bytes(dir.path(), "ok.pgm",
                                     std::string("P5\n1 1\n7\n\x05")));
    CHECK(f.at(0, 0) == 5);
}

TEST_CASE("pgm decode: truncated raster raises IoError") {
    test::TempDir dir;
    std::string bytes = "P5\n4 4\n255\nshort";
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "t.pgm", bytes)),
                    IoError);
}

TEST_CASE("decode: unknown magic raises DataError") {
    test::TempDir dir;
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "p.pgm",
                                           std::string("P2\n1 1\n255\n5"))),
                    DataError);
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "q.pgm",
                                           std::string("BM notapnm"))),
                    DataError);
}

TEST_CASE("load_image: missing file raises IoError") {
    test::TempDir dir;
    CHECK_THROWS_AS(load_image(dir.path() / "absent.pgm"), IoError);
}

TEST_CASE("pgm decode: zero dimensions are rejected") {
    test::TempDir dir;
    CHECK_THROWS_AS(load_image(write_bytes(dir.path(), "e.pgm",
                                           std::string("P5\n0 3\n255\n"))),
                    DataError);
}

TEST_CASE("save_pgm then load_image is the identity") {
    test::TempDir dir;
    Pcg32 rng(3);
    Frame cases[] = {Frame(5, 4, 0), Frame(3, 3, 255),
                     test::random_frame(17, 11, rng)};
    // Checkerboard.
    Frame board(8, 6, 0);
    for (int y = 0; y < board.height; ++y)
        for (int x = 0; x < board.width; ++x)
            board.at(x, y) = ((x + y) & 1) ? 255 : 0;

    int n = 0;
    auto roundtrip = [&](const Frame& f) {
        auto p = dir.path() / ("rt" + std::to_string(n++) + ".pgm");
        save_pgm(f, p);
        Frame back = load_image(p);
        REQUIRE(back.width == f.width);
        REQUIRE(back.height == f.height);
        CHECK(back.data == f.data);
    };
    for (const Frame& f : cases)
        roundtrip(f);
    roundtrip(board);
}

TEST_CASE("at_clamped replicates edge pixels") {
    Frame f(3, 2, 0);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x)
            f.at(x, y) = static_cast<std::uint8_t>(10 * y + x);
    CHECK(f.at_clamped(-1, -5) == f.at(0, 0));
    CHECK(f.at_clamped(99, 0) == f.at(2, 0));
    CHECK(f.at_clamped(1, 7) == f.at(1, 1));
    CHECK(f.at_clamped(1, 1) == f.at(1, 1));
}
