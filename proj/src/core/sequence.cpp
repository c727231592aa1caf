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

#include "sequence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "error.hpp"

namespace bgs {

namespace fs = std::filesystem;

namespace {

bool supported_image(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm" || ext == ".ppm";
}

/// Collects id->path for every supported image in a directory.
/// Non-image files are ignored; image files without a trailing-digit id or
/// with a duplicate id are hard errors, since ids are the pairing key
/// between frames, ground truth, and masks.
std::map<long, fs::path> scan_dir(const fs::path& dir, const char* what) {
    if (!fs::exists(dir))
        throw IoError(dir.string() + ": " + what + " directory missing");
    if (!fs::is_directory(dir))
        throw IoError(dir.string() + ": not a directory");
    std::map<long, fs::path> out;
    for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || !supported_image(e.path()))
            continue;
        long id = frame_id_of(e.path());
        if (id < 0)
            throw DataError(e.path().string() +
                            ": cannot derive a frame id (file stem must end "
                            "in digits)");
        auto [it, inserted] = out.emplace(id, e.path());
        if (!inserted)
            throw DataError(dir.string() + ": duplicate frame id " +
                            std::to_string(id) + " (" +
                            it->second.filename().string() + " vs " +
                            e.path().filename().string() + ")");
    }
    if (out.empty())
        throw DataError(dir.string() + ": no PGM/PPM frames found");
    return out;
}

} // namespace

long frame_id_of(const fs::path& file) {
    std::string stem = file.stem().string();
    std::size_t end = stem.size();
    std::size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1])))
        --begin;
    if (begin == end)
        return -1;
    // Cap the parsed run to avoid overflow on absurd names; ids beyond
    // 15 digits do not occur in real datasets.
    if (end - begin > 15)
        begin = end - 15;
    return std::stol(stem.substr(begin, end - begin));
}

SequenceSource load_sequence(const std::string& root) {
    fs::path rootp(root);
    if (!fs::exists(rootp))
        throw IoError(root + ": sequence directory missing");

    SequenceSource seq;
    seq.root = rootp;

    std::map<long, fs::path> inputs = scan_dir(rootp / "input", "input");
    seq.inputs.assign(inputs.begin(), inputs.end()); // map iterates ascending

    fs::path gtdir = rootp / "groundtruth";
    if (fs::exists(gtdir))
        seq.groundtruth = scan_dir(gtdir, "groundtruth");

    fs::path troi = rootp / "temporalROI.txt";
    if (fs::exists(troi)) {
        std::ifstream in(troi);
        long first = 0, last = 0;
        if (!(in >> first >> last))
            throw DataError(troi.string() +
                            ": expected two integers (first last)");
        if (first > last)
            throw DataError(troi.string() + ": empty window " +
                            std::to_string(first) + ".." + std::to_string(last));
        long lo = seq.inputs.front().first;
        long hi = seq.inputs.back().first;
        if (first < lo || last > hi)
            throw DataError(troi.string() + ": window " + std::to_string(first) +
                            ".." + std::to_string(last) +
                            " lies outside frame ids " + std::to_string(lo) +
                            ".." + std::to_string(hi));
        seq.window = FrameRange{first, last};
    }

    for (const char* name : {"ROI.pgm", "ROI.ppm"}) {
        fs::path p = rootp / name;
        if (fs::exists(p)) {
            seq.roi = p;
            break;
        }
    }
    return seq;
}

std::map<long, fs::path> list_frames(const std::string& dir) {
    return scan_dir(dir, "frame");
}

} // namespace bgs
