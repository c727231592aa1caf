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
#include <optional>
#include <string>
#include <vector>

#include "frame.hpp"

namespace bgs {

/// Ground-truth label codes (change-detection benchmark convention).
/// 0 and 50 score as negatives, 255 as positive; 85 and 170 are excluded
/// from scoring entirely.
enum GtLabel : std::uint8_t {
    kGtBackground = 0,
    kGtShadow = 50,
    kGtOutsideRoi = 85,
    kGtUnknown = 170,
    kGtForeground = 255,
};

/// Throws DataError if any pixel carries a value outside the five legal
/// ground-truth codes.
void validate_gt_labels(const Frame& gt, const std::string& origin);

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
    std::uint64_t total() const { return tp + fp + tn + fn; }
};

/// Inclusive frame-index range, used for temporal ROI gating.
struct FrameRange {
    long first = 0;
    long last = 0;
    bool contains(long i) const { return i >= first && i <= last; }
};

/// Scores one mask against one ground-truth frame. Pixels labeled 85 or 170,
/// pixels where `roi` (when given) is zero, and frames outside `window`
/// (when given) contribute nothing. Mask pixels must be exactly 0 or 255;
/// anything else throws DataError, as do dimension mismatches and illegal
/// ground-truth labels.
void accumulate(ConfusionCounts& counts, const Frame& mask, const Frame& gt,
                const Frame* roi = nullptr,
                const std::optional<FrameRange>& window = std::nullopt,
                long frame_index = 0);

struct MetricsReport {
    double recall = 0;
    double specificity = 0;
    double fpr = 0;
    double fnr = 0;
    double pwc = 0;
    double precision = 0;
    double fmeasure = 0;
};

/// The seven benchmark metrics. Zero-denominator conventions keep compute
/// total: recall/fnr/precision/fmeasure fall back to 0, specificity to 1,
/// fpr to 0, and pwc to 0 when every count is zero.
MetricsReport compute(const ConfusionCounts& counts);

/// Unweighted per-metric mean; this is the aggregation rule at both levels
/// (sequences into a category, categories into the overall row). Throws
/// DataError on an empty list.
MetricsReport mean_report(const std::vector<MetricsReport>& reports);

/// CSV emission, 4 decimal places (the printf rounding of the platform,
/// round-to-nearest with ties to even in the usual conversion).
extern const char* const kCsvHeader; // category,recall,...,fmeasure
std::string csv_row(const std::string& name, const MetricsReport& report);

} // namespace bgs
