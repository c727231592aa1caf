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

#include "metrics.hpp"

#include <cstdio>

#include "error.hpp"

namespace bgs {

namespace {

inline bool legal_gt(std::uint8_t v) {
    return v == kGtBackground || v == kGtShadow || v == kGtOutsideRoi ||
           v == kGtUnknown || v == kGtForeground;
}

} // namespace

void validate_gt_labels(const Frame& gt, const std::string& origin) {
    for (std::uint8_t v : gt.data)
        if (!legal_gt(v))
            throw DataError(origin + ": illegal ground-truth label " +
                            std::to_string(v) +
                            " (expected 0, 50, 85, 170, or 255)");
}

void accumulate(ConfusionCounts& counts, const Frame& mask, const Frame& gt,
                const Frame* roi, const std::optional<FrameRange>& window,
                long frame_index) {
    if (mask.width != gt.width || mask.height != gt.height)
        throw DataError("mask and ground truth differ in size (" +
                        std::to_string(mask.width) + "x" +
                        std::to_string(mask.height) + " vs " +
                        std::to_string(gt.width) + "x" +
                        std::to_string(gt.height) + ")");
    if (roi && (roi->width != gt.width || roi->height != gt.height))
        throw DataError("ROI mask size does not match frames");
    if (window && !window->contains(frame_index))
        return;

    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    const std::size_t n = gt.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t label = gt.data[i];
        if (!legal_gt(label))
            throw DataError("illegal ground-truth label " +
                            std::to_string(label) +
                            " (expected 0, 50, 85, 170, or 255)");
        if (label == kGtOutsideRoi || label == kGtUnknown)
            continue;
        if (roi && roi->data[i] == 0)
            continue;
        std::uint8_t m = mask.data[i];
        if (m != 0 && m != 255)
            throw DataError("mask pixel value " + std::to_string(m) +
                            " is not binary (expected 0 or 255)");
        bool actual_pos = label == kGtForeground;
        bool predicted_pos = m == 255;
        if (actual_pos)
            predicted_pos ? ++tp : ++fn;
        else
            predicted_pos ? ++fp : ++tn;
    }
    counts.tp += tp;
    counts.fp += fp;
    counts.tn += tn;
    counts.fn += fn;
}

MetricsReport compute(const ConfusionCounts& c) {
    const double tp = static_cast<double>(c.tp);
    const double fp = static_cast<double>(c.fp);
    const double tn = static_cast<double>(c.tn);
    const double fn = static_cast<double>(c.fn);
    MetricsReport r;
    if (c.tp + c.fn > 0) {
        r.recall = tp / (tp + fn);
        r.fnr = fn / (tp + fn);
    }
    if (c.fp + c.tn > 0) {
        r.specificity = tn / (fp + tn);
        r.fpr = fp / (fp + tn);
    } else {
        r.specificity = 1.0; // nothing negative to misclassify
        r.fpr = 0.0;
    }
    if (c.tp + c.fp > 0)
        r.precision = tp / (tp + fp);
    if (r.precision + r.recall > 0)
        r.fmeasure = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    if (c.total() > 0)
        r.pwc = 100.0 * (fn + fp) / (tp + fn + fp + tn);
    return r;
}

MetricsReport mean_report(const std::vector<MetricsReport>& reports) {
    if (reports.empty())
        throw DataError("cannot aggregate an empty report list");
    MetricsReport m;
    for (const MetricsReport& r : reports) {
        m.recall += r.recall;
        m.specificity += r.specificity;
        m.fpr += r.fpr;
        m.fnr += r.fnr;
        m.pwc += r.pwc;
        m.precision += r.precision;
        m.fmeasure += r.fmeasure;
    }
    const double k = static_cast<double>(reports.size());
    m.recall /= k;
    m.specificity /= k;
    m.fpr /= k;
    m.fnr /= k;
    m.pwc /= k;
    m.precision /= k;
    m.fmeasure /= k;
    return m;
}

const char* const kCsvHeader =
    "category,recall,specificity,fpr,fnr,pwc,precision,fmeasure";

std::string csv_row(const std::string& name, const MetricsReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ",%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f",
                  r.recall, r.specificity, r.fpr, r.fnr, r.pwc, r.precision,
                  r.fmeasure);
    return name + buf;
}

} // namespace bgs
