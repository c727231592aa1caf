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

#include "synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace bgs {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

long parse_long(const std::string& v, const std::string& key,
                const std::string& origin) {
    std::size_t pos = 0;
    long out;
    try {
        out = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw DataError(origin + ": key \"" + key + "\" needs an integer, got \"" +
                        v + "\"");
    }
    if (pos != v.size())
        throw DataError(origin + ": key \"" + key + "\" needs an integer, got \"" +
                        v + "\"");
    return out;
}

double parse_double(const std::string& v, const std::string& key,
                    const std::string& origin) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw DataError(origin + ": key \"" + key + "\" needs a number, got \"" +
                        v + "\"");
    }
    if (pos != v.size())
        throw DataError(origin + ": key \"" + key + "\" needs a number, got \"" +
                        v + "\"");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// One standard normal deviate; a fresh Box-Muller pair per call, second
/// half discarded. Costs two uniforms per pixel but keeps the draw count
/// per pixel fixed, which makes the stream layout easy to reason about.
inline double normal(Pcg32& rng) {
    double u1 = (rng.next() + 0.5) * (1.0 / 4294967296.0); // in (0,1)
    double u2 = (rng.next() + 0.5) * (1.0 / 4294967296.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

inline std::uint8_t clip_round(double v) {
    long r = std::lround(v);
    if (r < 0) r = 0;
    if (r > 255) r = 255;
    return static_cast<std::uint8_t>(r);
}

} // namespace

SceneSpec parse_scene_spec_text(const std::string& text,
                                const std::string& origin) {
    SceneSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string s = trim(line);
        if (s.empty())
            continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw DataError(origin + ":" + std::to_string(lineno) +
                            ": expected key=value, got \"" + s + "\"");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key == "width")
            spec.width = static_cast<int>(parse_long(val, key, origin));
        else if (key == "height")
            spec.height = static_cast<int>(parse_long(val, key, origin));
        else if (key == "frames")
            spec.frames = static_cast<int>(parse_long(val, key, origin));
        else if (key == "background") {
            if (val == "constant")
                spec.mode = BackgroundMode::constant;
            else if (val == "flicker")
                spec.mode = BackgroundMode::flicker;
            else if (val == "noise")
                spec.mode = BackgroundMode::noise;
            else
                throw DataError(origin + ": background must be constant, "
                                         "flicker, or noise; got \"" +
                                val + "\"");
        } else if (key == "bg_value")
            spec.bg_value = static_cast<int>(parse_long(val, key, origin));
        else if (key == "flicker_amplitude")
            spec.flicker_amplitude = parse_double(val, key, origin);
        else if (key == "flicker_period")
            spec.flicker_period = static_cast<int>(parse_long(val, key, origin));
        else if (key == "noise_sigma")
            spec.noise_sigma = parse_double(val, key, origin);
        else if (key == "square_size")
            spec.square_size = static_cast<int>(parse_long(val, key, origin));
        else if (key == "square_intensity")
            spec.square_intensity = static_cast<int>(parse_long(val, key, origin));
        else if (key == "square_x")
            spec.square_x = static_cast<int>(parse_long(val, key, origin));
        else if (key == "square_y")
            spec.square_y = static_cast<int>(parse_long(val, key, origin));
        else if (key == "square_vx")
            spec.square_vx = static_cast<int>(parse_long(val, key, origin));
        else if (key == "square_vy")
            spec.square_vy = static_cast<int>(parse_long(val, key, origin));
        else if (key == "seed")
            spec.seed = static_cast<std::uint64_t>(parse_long(val, key, origin));
        else
            throw DataError(origin + ": unknown key \"" + key + "\"");
    }
    validate_scene(spec);
    return spec;
}

SceneSpec parse_scene_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": cannot open scene spec");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scene_spec_text(text.str(), path);
}

bool square_position(const SceneSpec& spec, int t, int* x, int* y) {
    if (spec.square_size <= 0)
        return false;
    int sx = spec.square_x + spec.square_vx * t;
    int sy = spec.square_y + spec.square_vy * t;
    bool inside = sx >= 0 && sy >= 0 && sx + spec.square_size <= spec.width &&
                  sy + spec.square_size <= spec.height;
    if (!inside)
        return false;
    *x = sx;
    *y = sy;
    return true;
}

void validate_scene(const SceneSpec& spec) {
    if (spec.width < 7 || spec.height < 7)
        throw DataError("scene: frame must be at least 7x7");
    if (spec.frames < 1)
        throw DataError("scene: need at least one frame");
    if (spec.bg_value < 0 || spec.bg_value > 255)
        throw DataError("scene: bg_value must be in [0,255]");
    if (spec.mode == BackgroundMode::flicker &&
        (spec.flicker_amplitude < 0.0 || spec.flicker_amplitude >= 1.0))
        throw DataError("scene: flicker_amplitude must be in [0,1)");
    if (spec.mode == BackgroundMode::flicker && spec.flicker_period < 1)
        throw DataError("scene: flicker_period must be >= 1");
    if (spec.mode == BackgroundMode::noise && spec.noise_sigma < 0.0)
        throw DataError("scene: noise_sigma must be >= 0");
    if (spec.square_size < 0)
        throw DataError("scene: square_size must be >= 0");
    if (spec.square_size > 0 &&
        (spec.square_intensity < 0 || spec.square_intensity > 255))
        throw DataError("scene: square_intensity must be in [0,255]");
}

SceneFrame render_scene_frame(const SceneSpec& spec, int t) {
    if (t < 0 || t >= spec.frames)
        throw DataError("scene: frame index " + std::to_string(t) +
                        " outside 0.." + std::to_string(spec.frames - 1));

    double level = spec.bg_value;
    if (spec.mode == BackgroundMode::flicker)
        level *= 1.0 + spec.flicker_amplitude *
                           std::sin(2.0 * kPi * t / spec.flicker_period);

    SceneFrame out{Frame(spec.width, spec.height),
                   Frame(spec.width, spec.height, 0)};

    int sx = 0, sy = 0;
    bool square = square_position(spec, t, &sx, &sy);

    if (spec.mode == BackgroundMode::noise && spec.noise_sigma > 0.0) {
        Pcg32 rng(spec.seed, static_cast<std::uint64_t>(t));
        std::size_t i = 0;
        for (int y = 0; y < spec.height; ++y) {
            for (int x = 0; x < spec.width; ++x, ++i) {
                bool in_sq = square && x >= sx && x < sx + spec.square_size &&
                             y >= sy && y < sy + spec.square_size;
                double v = in_sq ? spec.square_intensity : level;
                out.image.data[i] = clip_round(v + spec.noise_sigma * normal(rng));
                if (in_sq)
                    out.gt.data[i] = 255;
            }
        }
    } else {
        std::uint8_t bg = clip_round(level);
        std::fill(out.image.data.begin(), out.image.data.end(), bg);
        if (square) {
            std::uint8_t fg =
                clip_round(static_cast<double>(spec.square_intensity));
            for (int y = sy; y < sy + spec.square_size; ++y) {
                std::size_t row = static_cast<std::size_t>(y) * spec.width;
                for (int x = sx; x < sx + spec.square_size; ++x) {
                    out.image.data[row + x] = fg;
                    out.gt.data[row + x] = 255;
                }
            }
        }
    }
    return out;
}

void write_scene(const SceneSpec& spec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "input", ec);
    fs::create_directories(fs::path(out_dir) / "groundtruth", ec);
    if (ec)
        throw IoError(out_dir + ": cannot create output directories");

    char name[32];
    for (int t = 0; t < spec.frames; ++t) {
        SceneFrame f = render_scene_frame(spec, t);
        std::snprintf(name, sizeof name, "in%06d.pgm", t + 1);
        save_pgm(f.image, (fs::path(out_dir) / "input" / name).string());
        std::snprintf(name, sizeof name, "gt%06d.pgm", t + 1);
        save_pgm(f.gt, (fs::path(out_dir) / "groundtruth" / name).string());
    }
    std::ofstream roi((fs::path(out_dir) / "temporalROI.txt").string());
    if (!roi)
        throw IoError(out_dir + ": cannot write temporalROI.txt");
    roi << 1 << " " << spec.frames << "\n";
}

} // namespace bgs
