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

#include "frame.hpp"

namespace bgs {

enum class BackgroundMode { constant, flicker, noise };

/// Synthetic test scene: a flat background (optionally flickering or noisy)
/// with one constant-intensity square moving at a fixed velocity, plus exact
/// ground truth. Parsed from a flat key=value file (see parse_scene_spec).
struct SceneSpec {
    int width = 160;
    int height = 120;
    int frames = 100;

    BackgroundMode mode = BackgroundMode::constant;
    int bg_value = 120;
    double flicker_amplitude = 0.2; // fraction of bg_value, multiplicative
    int flicker_period = 25;        // frames per full sine cycle
    double noise_sigma = 5.0;       // Gaussian, applied to the composed frame

    // The square is drawn whole or not at all: it is rendered (and marked in
    // the ground truth) only at frames where it lies fully inside the frame.
    // A start position off-frame is legal; the square then appears complete
    // once its motion has carried its whole body in.
    int square_size = 20;      // 0 disables the square
    int square_intensity = 200;
    int square_x = 0;          // top-left at frame 0; may start off-frame
    int square_y = 0;
    int square_vx = 0;         // pixels per frame
    int square_vy = 0;

    std::uint64_t seed = 1;
};

/// Reads a key=value spec file ('#' comments, blank lines ignored).
/// Recognized keys: width, height, frames, background (constant|flicker|
/// noise), bg_value, flicker_amplitude, flicker_period, noise_sigma,
/// square_size, square_intensity, square_x, square_y, square_vx, square_vy,
/// seed. Unknown keys and unparsable values throw DataError. The result is
/// validated (see validate_scene).
SceneSpec parse_scene_spec(const std::string& path);
SceneSpec parse_scene_spec_text(const std::string& text,
                                const std::string& origin);

/// Enforces the scene invariants: dimensions at least 7x7, at least one
/// frame, background value and square intensity in [0,255], flicker
/// amplitude in [0,1) with a positive period, non-negative noise sigma and
/// square size. Throws DataError on violation. Square placement needs no
/// validation: positions that are not fully inside simply do not render.
void validate_scene(const SceneSpec& spec);

struct SceneFrame {
    Frame image;
    Frame gt; // 0 background, 255 inside the rendered square
};

/// Renders frame t deterministically: each frame draws from its own PRNG
/// substream (stream id = t), so frames can be produced in any order and the
/// sequence is reproducible from (spec, seed) alone. Composition order:
/// background level (with flicker applied multiplicatively, before
/// clipping), then the square, then per-pixel Gaussian noise over the whole
/// composed frame, then rounding and clipping to [0,255].
SceneFrame render_scene_frame(const SceneSpec& spec, int t);

/// Square placement at frame t; returns false when the square is not
/// rendered there (size 0 or not fully inside the frame). Used by rendering
/// and by tests.
bool square_position(const SceneSpec& spec, int t, int* x, int* y);

/// Writes the whole scene as a loadable sequence: out_dir/input/in%06d.pgm,
/// out_dir/groundtruth/gt%06d.pgm (ids starting at 1), and
/// out_dir/temporalROI.txt covering every frame.
void write_scene(const SceneSpec& spec, const std::string& out_dir);

} // namespace bgs
