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

#include <algorithm>
#include <fstream>

#include "core/error.hpp"
#include "core/sequence.hpp"
#include "core/synth.hpp"
#include "support.hpp"

using namespace bgs;

TEST_CASE("spec parsing: keys, comments, and types") {
    SceneSpec s = parse_scene_spec_text(
        "# demo scene\n"
        "width = 64\n"
        "height=48\n"
        "frames = 10\n"
        "background = flicker\n"
        "bg_value = 90\n"
        "flicker_amplitude = 0.25\n"
        "flicker_period = 10\n"
        "\n"
        "square_size = 8\n"
        "square_intensity = 200\n"
        "square_x = 4   # top-left corner\n"
        "square_y = 6\n"
        "square_vx = 2\n"
        "square_vy = 0\n"
        "seed = 33\n",
        "inline");
    CHECK(s.width == 64);
    CHECK(s.height == 48);
    CHECK(s.frames == 10);
    CHECK(s.mode == BackgroundMode::flicker);
    CHECK(s.bg_value == 90);
    CHECK(s.flicker_amplitude == doctest::Approx(0.25));
    CHECK(s.flicker_period == 10);
    CHECK(s.square_size == 8);
    CHECK(s.square_x == 4);
    CHECK(s.square_vx == 2);
    CHECK(s.seed == 33);

    CHECK_THROWS_AS(parse_scene_spec_text("wdith = 64\n", "inline"),
                    DataError);
    CHECK_THROWS_AS(parse_scene_spec_text("width = ten\n", "inline"),
                    DataError);
    CHECK_THROWS_AS(parse_scene_spec_text("background = plasma\n", "inline"),
                    DataError);
    CHECK_THROWS_AS(parse_scene_spec_text("width 64\n", "inline"), DataError);
}

TEST_CASE("spec parsing: file form matches text form") {
    test::TempDir dir;
    auto path = dir.path() / "scene.txt";
    {
        std::ofstream out(path);
        out << "width=32\nheight=24\nframes=3\nsquare_size=0\n";
    }
    SceneSpec s = parse_scene_spec(path.string());
    CHECK(s.width == 32);
    CHECK(s.height == 24);
    CHECK(s.frames == 3);
    CHECK(s.square_size == 0);
    CHECK_THROWS_AS(parse_scene_spec((dir.path() / "missing.txt").string()),
                    IoError);
}

TEST_CASE("validation: structural bounds") {
    SceneSpec bad;
    bad.width = 6;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.frames = 0;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.mode = BackgroundMode::flicker;
    bad.flicker_amplitude = 1.0;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.bg_value = 300;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.square_size = -1;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.square_intensity = 300;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
    bad = {};
    bad.mode = BackgroundMode::noise;
    bad.noise_sigma = -0.5;
    CHECK_THROWS_AS(validate_scene(bad), DataError);
}

TEST_CASE("square presence: rendered whole or not at all") {
    SceneSpec s;
    s.width = 160;
    s.height = 120;
    s.frames = 100;
    s.bg_value = 70;
    s.square_size = 20;
    s.square_intensity = 130;
    s.square_y = 50;

    // A static square hanging over the right edge is a legal spec; it is
    // simply never rendered, so the ground truth stays empty.
    s.square_x = 155;
    CHECK_NOTHROW(validate_scene(s));
    int x = 0, y = 0;
    CHECK_FALSE(square_position(s, 0, &x, &y));
    SceneFrame f = render_scene_frame(s, 0);
    for (std::uint8_t v : f.gt.data)
        CHECK(v == 0);
    for (std::uint8_t v : f.image.data)
        CHECK(v == 70);

    // Flush with the edge is inside.
    s.square_x = 140;
    REQUIRE(square_position(s, 0, &x, &y));
    CHECK(x == 140);

    // Entering from off-frame: invisible while any part would hang out,
    // then appears complete the first frame its whole body fits.
    s.square_x = -30;
    s.square_vx = 1;
    CHECK_NOTHROW(validate_scene(s));
    CHECK_FALSE(square_position(s, 29, &x, &y)); // left edge still crossed
    REQUIRE(square_position(s, 30, &x, &y));
    CHECK(x == 0);
    SceneFrame entry = render_scene_frame(s, 30);
    CHECK(entry.gt.at(0, 50) == 255);
    CHECK(entry.gt.at(19, 50) == 255);
    CHECK(entry.gt.at(20, 50) == 0);
    SceneFrame before = render_scene_frame(s, 29);
    for (std::uint8_t v : before.gt.data)
        CHECK(v == 0);

    // A square that never reaches the frame is allowed too.
    s.square_x = -500;
    CHECK_NOTHROW(validate_scene(s));
    CHECK_FALSE(square_position(s, 99, &x, &y));
}

TEST_CASE("render: constant background with a static square") {
    SceneSpec s;
    s.width = 40;
    s.height = 30;
    s.frames = 4;
    s.bg_value = 100;
    s.square_size = 10;
    s.square_intensity = 200;
    s.square_x = 5;
    s.square_y = 8;
    validate_scene(s);

    SceneFrame first = render_scene_frame(s, 0);
    for (int t = 1; t < s.frames; ++t) {
        SceneFrame f = render_scene_frame(s, t);
        CHECK(f.image.data == first.image.data);
        CHECK(f.gt.data == first.gt.data);
    }
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x) {
            bool inside = x >= 5 && x < 15 && y >= 8 && y < 18;
            CHECK(first.image.at(x, y) == (inside ? 200 : 100));
            CHECK(first.gt.at(x, y) == (inside ? 255 : 0));
        }
}

TEST_CASE("render: the square advances by its velocity each frame") {
    SceneSpec s;
    s.width = 60;
    s.height = 30;
    s.frames = 20;
    s.bg_value = 50;
    s.square_size = 8;
    s.square_intensity = 220;
    s.square_x = 2;
    s.square_y = 10;
    s.square_vx = 1;
    validate_scene(s);

    for (int t = 0; t < s.frames; ++t) {
        int x = 0, y = 0;
        REQUIRE(square_position(s, t, &x, &y));
        CHECK(x == 2 + t);
        CHECK(y == 10);
        SceneFrame f = render_scene_frame(s, t);
        CHECK(f.gt.at(x, 10) == 255);
        if (x > 0)
            CHECK(f.gt.at(x - 1, 10) == 0);
        CHECK(f.gt.at(x + 7, 10) == 255);
        CHECK(f.gt.at(x + 8, 10) == 0);
    }
}

TEST_CASE("render: flicker follows the sine envelope exactly") {
    SceneSpec s;
    s.width = 16;
    s.height = 12;
    s.frames = 50;
    s.mode = BackgroundMode::flicker;
    s.bg_value = 100;
    s.flicker_amplitude = 0.2;
    s.flicker_period = 25;
    s.square_size = 0;
    validate_scene(s);

    int lo = 255, hi = 0;
    for (int t = 0; t < s.frames; ++t) {
        SceneFrame f = render_scene_frame(s, t);
        // Within a frame the level is spatially uniform.
        for (std::uint8_t v : f.image.data)
            CHECK(v == f.image.data[0]);
        lo = std::min(lo, static_cast<int>(f.image.data[0]));
        hi = std::max(hi, static_cast<int>(f.image.data[0]));
        for (std::uint8_t v : f.gt.data)
            CHECK(v == 0);
    }
    // 100 * (1 + 0.2 sin(...)) over an integer grid: the sine peaks near but
    // not exactly at +-1; rounding still reaches the nominal extremes at
    // period 25 (sin peaks at t=6 and t=19 are within 0.5 of full swing).
    CHECK(lo == 80);
    CHECK(hi == 120);
    CHECK(render_scene_frame(s, 0).image.data[0] == 100);
}

TEST_CASE("render: noise frames are deterministic and order-independent") {
    SceneSpec s;
    s.width = 24;
    s.height = 18;
    s.frames = 10;
    s.mode = BackgroundMode::noise;
    s.bg_value = 120;
    s.noise_sigma = 5.0;
    s.square_size = 0;
    validate_scene(s);

    SceneFrame a = render_scene_frame(s, 3);
    SceneFrame b = render_scene_frame(s, 3);
    CHECK(a.image.data == b.image.data);

    // Random access: rendering 7 first must not perturb 5.
    SceneFrame five_direct = render_scene_frame(s, 5);
    render_scene_frame(s, 7);
    SceneFrame five_again = render_scene_frame(s, 5);
    CHECK(five_direct.image.data == five_again.image.data);

    // Different frames get different noise fields.
    SceneFrame c = render_scene_frame(s, 4);
    CHECK(a.image.data != c.image.data);

    // A different seed changes the field.
    SceneSpec s2 = s;
    s2.seed = 2;
    CHECK(render_scene_frame(s2, 3).image.data != a.image.data);

    // Noise never touches the ground truth.
    for (std::uint8_t v : a.gt.data)
        CHECK(v == 0);
}

TEST_CASE("render: ground truth stays crisp under noise") {
    SceneSpec s;
    s.width = 40;
    s.height = 30;
    s.frames = 2;
    s.mode = BackgroundMode::noise;
    s.bg_value = 80;
    s.noise_sigma = 10.0;
    s.square_size = 12;
    s.square_intensity = 180;
    s.square_x = 10;
    s.square_y = 9;
    validate_scene(s);
    SceneFrame f = render_scene_frame(s, 1);
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x) {
            bool inside = x >= 10 && x < 22 && y >= 9 && y < 21;
            CHECK(f.gt.at(x, y) == (inside ? 255 : 0));
        }
}

TEST_CASE("write_scene: output loads back as a scoreable sequence") {
    test::TempDir dir;
    SceneSpec s;
    s.width = 32;
    s.height = 24;
    s.frames = 6;
    s.bg_value = 100;
    s.square_size = 8;
    s.square_intensity = 210;
    s.square_x = 4;
    s.square_y = 4;
    validate_scene(s);
    write_scene(s, dir.path().string());

    SequenceSource seq = load_sequence(dir.path().string());
    REQUIRE(seq.inputs.size() == 6);
    CHECK(seq.inputs.front().first == 1);
    CHECK(seq.inputs.back().first == 6);
    REQUIRE(seq.window.has_value());
    CHECK(seq.window->first == 1);
    CHECK(seq.window->last == 6);
    REQUIRE(seq.groundtruth.size() == 6);

    // Frame id t+1 on disk is render_scene_frame(spec, t), byte for byte.
    Frame img = load_image(seq.inputs[2].second);
    Frame gt = load_image(seq.groundtruth.at(3));
    SceneFrame want = render_scene_frame(s, 2);
    CHECK(img.data == want.image.data);
    CHECK(gt.data == want.gt.data);
}
