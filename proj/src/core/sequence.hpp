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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace bgs {

/// A change-detection-style sequence directory:
///   root/input/in%06d.pgm      frames (required, PGM/PPM)
///   root/groundtruth/gt%06d.*  labels (optional)
///   root/temporalROI.txt       "first last" frame ids (optional)
///   root/ROI.pgm|ROI.ppm       spatial scoring mask (optional)
struct SequenceSource {
    std::filesystem::path root;

    /// Frame ids with their input paths, ascending by id. The id is the
    /// trailing digit run of the file stem (in000042 -> 42).
    std::vector<std::pair<long, std::filesystem::path>> inputs;

    /// Ground-truth paths by frame id; empty when the sequence has none.
    std::map<long, std::filesystem::path> groundtruth;

    std::optional<FrameRange> window;
    std::optional<std::filesystem::path> roi;

    bool has_groundtruth() const { return !groundtruth.empty(); }
};

/// Extracts the trailing digit run of a file stem as the frame id
/// (e.g. "in000007" -> 7, "bin42" -> 42); returns -1 when the stem does not
/// end in a digit.
long frame_id_of(const std::filesystem::path& file);

/// Enumerates a sequence directory. Throws IoError when root or
/// root/input is missing, DataError when input holds no PGM/PPM frames,
/// when ids collide, or when temporalROI.txt is malformed or outside the
/// id range.
SequenceSource load_sequence(const std::string& root);

/// Enumerates a flat directory of PGM/PPM files keyed by frame id (the
/// layout `subtract` writes and `evaluate` reads back). Same errors as
/// load_sequence.
std::map<long, std::filesystem::path> list_frames(const std::string& dir);

} // namespace bgs
