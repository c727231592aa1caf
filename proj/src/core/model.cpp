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

#include "model.hpp"

#include <cstring>
#include <fstream>

#include "error.hpp"

namespace bgs {

namespace {

constexpr char kSnapshotMagic[4] = {'B', 'G', 'S', 'M'};
constexpr std::uint32_t kSnapshotVersion = 1;

/// Neighbor offsets for the update step: the 8-connected ring in row-major
/// order, self excluded. Clamping at borders can alias a ring position back
/// onto the pixel itself; that is the documented border behavior, not a bug.
constexpr int kNeighbors[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                  {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

inline int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    write_u32(out, static_cast<std::uint32_t>(v));
    write_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t read_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw IoError(path + ": truncated snapshot");
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
    std::uint64_t lo = read_u32(in, path);
    std::uint64_t hi = read_u32(in, path);
    return lo | (hi << 32);
}

} // namespace

void ModelParams::validate() const {
    if (min_matches < 1 || samples < min_matches)
        throw DataError("model params: need samples >= min_matches >= 1 (got " +
                        std::to_string(samples) + ", " +
                        std::to_string(min_matches) + ")");
    if (color_threshold < 0 || color_threshold > 255)
        throw DataError("model params: color threshold must be in [0,255]");
    if (texture_threshold < 0 || texture_threshold > 16)
        throw DataError("model params: texture threshold must be in [0,16]");
    if (update_factor < 1)
        throw DataError("model params: update factor must be >= 1");
}

BackgroundModel::BackgroundModel(const Frame& first,
                                 const std::vector<Descriptor16>& desc,
                                 const ModelParams& params, std::uint64_t seed)
    : width_(first.width),
      height_(first.height),
      params_(params),
      seed_(seed),
      rng_(seed) {
    params_.validate();
    if (first.width < kPatchSize || first.height < kPatchSize)
        throw DataError("model init: frame must be at least 7x7, got " +
                        std::to_string(first.width) + "x" +
                        std::to_string(first.height));
    if (desc.size() != first.pixel_count())
        throw DataError("model init: descriptor image size mismatch");

    const int n = params_.samples;
    bank_.resize(first.pixel_count() * static_cast<std::size_t>(n));
    PixelSample* dst = bank_.data();
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            for (int i = 0; i < n; ++i) {
                std::uint32_t pick = rng_.bounded(9);
                int sx = clampi(x + static_cast<int>(pick % 3) - 1, 0, width_ - 1);
                int sy = clampi(y + static_cast<int>(pick / 3) - 1, 0, height_ - 1);
                std::size_t src = static_cast<std::size_t>(sy) * width_ + sx;
                *dst++ = {first.data[src], desc[src]};
            }
        }
    }
}

void BackgroundModel::require_dims(const Frame& frame,
                                   std::size_t desc_size) const {
    if (frame.width != width_ || frame.height != height_)
        throw DataError("frame size " + std::to_string(frame.width) + "x" +
                        std::to_string(frame.height) +
                        " does not match model size " + std::to_string(width_) +
                        "x" + std::to_string(height_));
    if (desc_size != frame.pixel_count())
        throw DataError("descriptor image size does not match frame");
}

int BackgroundModel::match_count(int x, int y, std::uint8_t intensity,
                                 Descriptor16 descriptor) const {
    const PixelSample* b = bank(x, y);
    int n = 0;
    for (int i = 0; i < params_.samples; ++i)
        n += matches(b[i], intensity, descriptor, params_) ? 1 : 0;
    return n;
}

Frame BackgroundModel::classify(const Frame& frame,
                                const std::vector<Descriptor16>& desc) const {
    require_dims(frame, desc.size());
    Frame mask(width_, height_);
    const int n = params_.samples;
    const int quota = params_.min_matches;
    const PixelSample* b = bank_.data();
    std::size_t p = 0;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x, ++p, b += n) {
            const std::uint8_t iv = frame.data[p];
            const Descriptor16 dv = desc[p];
            int found = 0;
            for (int i = 0; i < n && found < quota; ++i)
                found += matches(b[i], iv, dv, params_) ? 1 : 0;
            mask.data[p] = found >= quota ? 0 : 255;
        }
    }
    return mask;
}

void BackgroundModel::update(const Frame& frame,
                             const std::vector<Descriptor16>& desc,
                             const Frame& mask) {
    require_dims(frame, desc.size());
    if (mask.width != width_ || mask.height != height_)
        throw DataError("mask size does not match model size");
    const int n = params_.samples;
    const std::uint32_t phi = static_cast<std::uint32_t>(params_.update_factor);
    std::size_t p = 0;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x, ++p) {
            if (mask.data[p] != 0)
                continue; // foreground: model untouched, no draws consumed
            const PixelSample f{frame.data[p], desc[p]};
            if (rng_.bounded(phi) == 0)
                bank_[p * n + rng_.bounded(static_cast<std::uint32_t>(n))] = f;
            if (rng_.bounded(phi) == 0) {
                const int* d = kNeighbors[rng_.bounded(8)];
                int nx = clampi(x + d[0], 0, width_ - 1);
                int ny = clampi(y + d[1], 0, height_ - 1);
                std::size_t q = static_cast<std::size_t>(ny) * width_ + nx;
                bank_[q * n + rng_.bounded(static_cast<std::uint32_t>(n))] = f;
            }
        }
    }
}

void BackgroundModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path + ": cannot open for writing");
    out.write(kSnapshotMagic, 4);
    write_u32(out, kSnapshotVersion);
    write_u32(out, static_cast<std::uint32_t>(width_));
    write_u32(out, static_cast<std::uint32_t>(height_));
    write_u32(out, static_cast<std::uint32_t>(params_.samples));
    write_u64(out, seed_);
    write_u64(out, rng_.state());
    write_u64(out, rng_.increment());
    for (const PixelSample& s : bank_) {
        unsigned char rec[3] = {s.intensity,
                                static_cast<unsigned char>(s.descriptor),
                                static_cast<unsigned char>(s.descriptor >> 8)};
        out.write(reinterpret_cast<const char*>(rec), 3);
    }
    if (!out)
        throw IoError(path + ": write failure");
}

BackgroundModel BackgroundModel::load(const std::string& path,
                                      const ModelParams& params) {
    params.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path + ": cannot open for reading");
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kSnapshotMagic, 4) != 0)
        throw DataError(path + ": not a model snapshot (bad magic)");
    std::uint32_t version = read_u32(in, path);
    if (version != kSnapshotVersion)
        throw DataError(path + ": unsupported snapshot version " +
                        std::to_string(version));
    BackgroundModel m;
    m.width_ = static_cast<int>(read_u32(in, path));
    m.height_ = static_cast<int>(read_u32(in, path));
    std::uint32_t n = read_u32(in, path);
    if (m.width_ <= 0 || m.height_ <= 0 || n == 0)
        throw DataError(path + ": corrupt snapshot header");
    if (n != static_cast<std::uint32_t>(params.samples))
        throw DataError(path + ": snapshot holds " + std::to_string(n) +
                        " samples per pixel, params say " +
                        std::to_string(params.samples));
    m.params_ = params;
    m.seed_ = read_u64(in, path);
    std::uint64_t state = read_u64(in, path);
    std::uint64_t inc = read_u64(in, path);
    m.rng_.restore(state, inc);
    std::size_t count = static_cast<std::size_t>(m.width_) * m.height_ * n;
    m.bank_.resize(count);
    for (PixelSample& s : m.bank_) {
        unsigned char rec[3];
        if (!in.read(reinterpret_cast<char*>(rec), 3))
            throw IoError(path + ": truncated snapshot");
        s.intensity = rec[0];
        s.descriptor = static_cast<Descriptor16>(rec[1] |
                                                 (static_cast<unsigned>(rec[2]) << 8));
    }
    return m;
}

Engine::Engine(TextureOp op, RelativeThreshold tau, const ModelParams& params,
               std::uint64_t seed)
    : op_(op), tau_(tau), params_(params), seed_(seed) {
    params_.validate();
}

Frame Engine::process(const Frame& frame) {
    std::vector<Descriptor16> desc = descriptor_frame(frame, op_, tau_);
    if (!model_) {
        model_ = std::make_unique<BackgroundModel>(frame, desc, params_, seed_);
        return Frame(frame.width, frame.height, 0);
    }
    Frame mask = model_->classify(frame, desc);
    model_->update(frame, desc, mask);
    return mask;
}

void Engine::save(const std::string& path) const {
    if (!model_)
        throw DataError("engine snapshot: no frame processed yet");
    model_->save(path);
}

Engine Engine::load(const std::string& path, TextureOp op,
                    RelativeThreshold tau, const ModelParams& params) {
    Engine e(op, tau, params, 0);
    e.model_ = std::make_unique<BackgroundModel>(BackgroundModel::load(path, params));
    e.seed_ = e.model_->seed();
    return e;
}

} // namespace bgs
