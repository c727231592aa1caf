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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "core/frame.hpp"
#include "core/rng.hpp"

namespace bgs::test {

/// Self-cleaning unique directory under the system temp path.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::filesystem::path base = std::filesystem::temp_directory_path();
        path_ = base / ("bgs-test-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& rel = "") const {
        return rel.empty() ? path_.string() : (path_ / rel).string();
    }

private:
    std::filesystem::path path_;
};

inline Frame random_frame(int w, int h, Pcg32& rng, int maxval = 255) {
    Frame f(w, h);
    for (std::uint8_t& v : f.data)
        v = static_cast<std::uint8_t>(rng.bounded(maxval + 1));
    return f;
}

/// Random raw 7x7 patch (49 values).
inline void random_patch(std::uint8_t patch[49], Pcg32& rng, int maxval = 255) {
    for (int i = 0; i < 49; ++i)
        patch[i] = static_cast<std::uint8_t>(rng.bounded(maxval + 1));
}

inline Frame frame_from_patch(const std::uint8_t patch[49]) {
    Frame f(7, 7);
    std::copy(patch, patch + 49, f.data.begin());
    return f;
}

} // namespace bgs::test
