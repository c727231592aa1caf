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
#include <memory>
#include <string>
#include <vector>

#include "frame.hpp"
#include "rng.hpp"
#include "texture.hpp"

namespace bgs {

/// Sample-consensus model parameters. The defaults are the reference
/// operating point used throughout the test suite.
struct ModelParams {
    int samples = 50;           // N, bank size per pixel
    int min_matches = 2;        // consensus threshold
    int color_threshold = 15;   // Rc, L1 intensity distance (match is strict <)
    int texture_threshold = 5;  // Rt, Hamming distance (match is strict <)
    int update_factor = 16;     // phi, expected frames between stochastic updates

    /// Throws DataError unless samples >= min_matches >= 1,
    /// color_threshold in [0,255], texture_threshold in [0,16],
    /// update_factor >= 1.
    void validate() const;
};

/// One remembered observation: the pixel intensity and its texture
/// descriptor, taken from the same frame and position.
struct PixelSample {
    std::uint8_t intensity;
    Descriptor16 descriptor;
};

/// Per-pixel bank of N past samples with stochastic replacement. A pixel is
/// background when at least min_matches stored samples lie within both the
/// color and texture thresholds of the current observation.
///
/// All stochastic choices come from one seeded PCG32 stream consumed in
/// row-major pixel order, so a (frame sequence, params, seed) triple fully
/// determines every mask and the final model state.
class BackgroundModel {
public:
    /// Builds the model from the first frame: each pixel's N samples are
    /// drawn by picking uniform-random positions in its 3x3 neighborhood
    /// (self included, clamped at borders) and copying that position's
    /// (intensity, descriptor) pair. One uniform draw on [0,9) per sample,
    /// pixels in row-major order.
    BackgroundModel(const Frame& first, const std::vector<Descriptor16>& desc,
                    const ModelParams& params, std::uint64_t seed);

    /// Match rule: strict inequality on both distances; a sample at exactly
    /// either threshold does not match.
    static bool matches(PixelSample stored, std::uint8_t intensity,
                        Descriptor16 descriptor, const ModelParams& params) {
        int cd = stored.intensity > intensity ? stored.intensity - intensity
                                              : intensity - stored.intensity;
        if (cd >= params.color_threshold)
            return false;
        return hamming(stored.descriptor, descriptor) < params.texture_threshold;
    }

    /// Exhaustive matching-sample count for one pixel; the reference the
    /// early-exit classifier is tested against.
    int match_count(int x, int y, std::uint8_t intensity,
                    Descriptor16 descriptor) const;

    /// Labels every pixel: 0 where at least min_matches bank samples match
    /// (samples scanned in index order, stopping as soon as the quota is
    /// reached), 255 otherwise. Read-only on the model.
    Frame classify(const Frame& frame,
                   const std::vector<Descriptor16>& desc) const;

    /// Stochastic model maintenance for one classified frame. For each
    /// background pixel, in row-major order, two independent 1-in-phi draws:
    /// the first replaces a random sample of the pixel's own bank with the
    /// current observation, the second writes that same observation into a
    /// random sample of a uniform-random 8-neighbor's bank (neighbor
    /// coordinates clamped at borders). Foreground pixels consume no draws
    /// and modify nothing.
    void update(const Frame& frame, const std::vector<Descriptor16>& desc,
                const Frame& mask);

    int width() const { return width_; }
    int height() const { return height_; }
    const ModelParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

    /// Bank of pixel (x,y): params().samples consecutive entries.
    const PixelSample* bank(int x, int y) const {
        return &bank_[(static_cast<std::size_t>(y) * width_ + x) * params_.samples];
    }

    /// Serializes the model (header, PRNG state, banks) to a versioned
    /// binary snapshot; loading it reproduces identical subsequent masks.
    void save(const std::string& path) const;
    static BackgroundModel load(const std::string& path,
                                const ModelParams& params);

private:
    BackgroundModel() = default;

    void require_dims(const Frame& frame, std::size_t desc_size) const;

    int width_ = 0;
    int height_ = 0;
    ModelParams params_{};
    std::uint64_t seed_ = 0;
    Pcg32 rng_;
    std::vector<PixelSample> bank_; // width*height*samples, row-major pixels
};

/// Full pipeline for one sequence: descriptor pass, classification, update.
/// The first processed frame initializes the model and yields an
/// all-background mask (there is nothing to compare against yet); every
/// later frame is classified first, then folded into the model.
class Engine {
public:
    Engine(TextureOp op, RelativeThreshold tau, const ModelParams& params,
           std::uint64_t seed);

    /// Frame dimensions are fixed by the first frame; a mismatch on any
    /// later frame throws DataError.
    Frame process(const Frame& frame);

    bool primed() const { return model_ != nullptr; }
    const BackgroundModel& model() const { return *model_; }
    TextureOp op() const { return op_; }

    void save(const std::string& path) const; // throws DataError when unprimed
    static Engine load(const std::string& path, TextureOp op,
                       RelativeThreshold tau, const ModelParams& params);

private:
    TextureOp op_;
    RelativeThreshold tau_;
    ModelParams params_;
    std::uint64_t seed_;
    std::unique_ptr<BackgroundModel> model_;
};

} // namespace bgs
