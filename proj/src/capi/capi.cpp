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

#include "bgs/bgs.h"

#include <new>
#include <string>

#include "../core/error.hpp"
#include "../core/frame.hpp"
#include "../core/metrics.hpp"
#include "../core/model.hpp"
#include "../core/sequence.hpp"
#include "../core/synth.hpp"
#include "../core/texture.hpp"

/* Handle definitions. Each wraps exactly one core object; the C layer owns
 * allocation and error translation, nothing else. */
struct bgs_frame {
    bgs::Frame f;
};
struct bgs_engine {
    bgs::Engine e;
};
struct bgs_sequence {
    bgs::SequenceSource s;
    // Stable storage for returned path strings, keyed as the core object is.
    std::vector<std::string> input_paths;
    std::map<long, std::string> gt_paths;
    std::string roi_path;
};
struct bgs_synth {
    bgs::SceneSpec spec;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

/* Runs a callable, translating exceptions to status codes. */
template <typename Fn>
bgs_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const bgs::IoError& e) {
        set_error(e.what());
        return BGS_ERR_IO;
    } catch (const bgs::DataError& e) {
        set_error(e.what());
        return BGS_ERR_DATA;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return BGS_ERR_NOMEM;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BGS_ERR_UNKNOWN;
    } catch (...) {
        set_error("unknown error");
        return BGS_ERR_UNKNOWN;
    }
}

bgs_status invalid(const char* msg) {
    set_error(msg);
    return BGS_ERR_INVALID_ARGUMENT;
}

bgs::TextureOp to_op(int32_t op, bool* ok) {
    *ok = true;
    switch (op) {
        case BGS_OP_RLBSP: return bgs::TextureOp::rlbsp;
        case BGS_OP_LBSP: return bgs::TextureOp::lbsp;
        case BGS_OP_SILTP: return bgs::TextureOp::siltp;
        case BGS_OP_LBP: return bgs::TextureOp::lbp;
    }
    *ok = false;
    return bgs::TextureOp::rlbsp;
}

/* Resolves (op, tau) from params-style inputs; throws DataError on a bad
 * tau so guarded() maps it. */
bgs::RelativeThreshold resolve_tau(bgs::TextureOp op, double tau) {
    if (tau < 0.0)
        return bgs::default_threshold(op);
    return bgs::RelativeThreshold::from_value(tau);
}

bgs::ModelParams to_model_params(const bgs_params& p) {
    bgs::ModelParams mp;
    mp.samples = p.samples;
    mp.min_matches = p.min_matches;
    mp.color_threshold = p.color_threshold;
    mp.texture_threshold = p.texture_threshold;
    mp.update_factor = p.update_factor;
    return mp;
}

} // namespace

extern "C" {

const char* bgs_version(void) { return "1.0.0"; }

const char* bgs_last_error(void) { return t_last_error.c_str(); }

/* ---- frames ------------------------------------------------------- */

bgs_status bgs_frame_create(int32_t width, int32_t height, uint8_t fill,
                            bgs_frame** out) {
    if (!out)
        return invalid("bgs_frame_create: null out");
    if (width <= 0 || height <= 0)
        return invalid("bgs_frame_create: dimensions must be positive");
    return guarded([&] {
        *out = new bgs_frame{bgs::Frame(width, height, fill)};
        return BGS_OK;
    });
}

bgs_status bgs_frame_load(const char* path, bgs_frame** out) {
    if (!path || !out)
        return invalid("bgs_frame_load: null argument");
    return guarded([&] {
        *out = new bgs_frame{bgs::load_image(path)};
        return BGS_OK;
    });
}

bgs_status bgs_frame_save_pgm(const bgs_frame* frame, const char* path) {
    if (!frame || !path)
        return invalid("bgs_frame_save_pgm: null argument");
    return guarded([&] {
        bgs::save_pgm(frame->f, path);
        return BGS_OK;
    });
}

int32_t bgs_frame_width(const bgs_frame* frame) {
    return frame ? frame->f.width : 0;
}

int32_t bgs_frame_height(const bgs_frame* frame) {
    return frame ? frame->f.height : 0;
}

const uint8_t* bgs_frame_data(const bgs_frame* frame) {
    return frame ? frame->f.data.data() : nullptr;
}

uint8_t* bgs_frame_data_mut(bgs_frame* frame) {
    return frame ? frame->f.data.data() : nullptr;
}

void bgs_frame_free(bgs_frame* frame) { delete frame; }

/* ---- descriptors -------------------------------------------------- */

bgs_status bgs_descriptor_frame(const bgs_frame* frame, bgs_operator op,
                                double tau, uint16_t* out) {
    if (!frame || !out)
        return invalid("bgs_descriptor_frame: null argument");
    bool ok;
    bgs::TextureOp top = to_op(op, &ok);
    if (!ok)
        return invalid("bgs_descriptor_frame: unknown operator");
    return guarded([&]() -> bgs_status {
        bgs::RelativeThreshold rt;
        try {
            rt = resolve_tau(top, tau);
        } catch (const bgs::DataError& e) {
            set_error(e.what());
            return BGS_ERR_INVALID_ARGUMENT;
        }
        std::vector<bgs::Descriptor16> d = bgs::descriptor_frame(frame->f, top, rt);
        std::copy(d.begin(), d.end(), out);
        return BGS_OK;
    });
}

int32_t bgs_hamming(uint16_t a, uint16_t b) { return bgs::hamming(a, b); }

/* ---- engine -------------------------------------------------------- */

void bgs_params_defaults(bgs_params* params) {
    if (!params)
        return;
    params->samples = 50;
    params->min_matches = 2;
    params->color_threshold = 15;
    params->texture_threshold = 5;
    params->update_factor = 16;
    params->op = BGS_OP_RLBSP;
    params->tau = -1.0; // operator default
    params->seed = 1;
}

bgs_status bgs_engine_create(const bgs_params* params, bgs_engine** out) {
    if (!params || !out)
        return invalid("bgs_engine_create: null argument");
    bool ok;
    bgs::TextureOp op = to_op(params->op, &ok);
    if (!ok)
        return invalid("bgs_engine_create: unknown operator");
    return guarded([&]() -> bgs_status {
        try {
            *out = new bgs_engine{bgs::Engine(op, resolve_tau(op, params->tau),
                                              to_model_params(*params),
                                              params->seed)};
        } catch (const bgs::DataError& e) {
            // Parameter-validation failures are caller errors, not data
            // errors in any file.
            set_error(e.what());
            return BGS_ERR_INVALID_ARGUMENT;
        }
        return BGS_OK;
    });
}

bgs_status bgs_engine_process(bgs_engine* engine, const bgs_frame* frame,
                              bgs_frame** mask_out) {
    if (!engine || !frame || !mask_out)
        return invalid("bgs_engine_process: null argument");
    return guarded([&] {
        *mask_out = new bgs_frame{engine->e.process(frame->f)};
        return BGS_OK;
    });
}

bgs_status bgs_engine_save(const bgs_engine* engine, const char* path) {
    if (!engine || !path)
        return invalid("bgs_engine_save: null argument");
    return guarded([&] {
        engine->e.save(path);
        return BGS_OK;
    });
}

bgs_status bgs_engine_load(const char* path, const bgs_params* params,
                           bgs_engine** out) {
    if (!path || !params || !out)
        return invalid("bgs_engine_load: null argument");
    bool ok;
    bgs::TextureOp op = to_op(params->op, &ok);
    if (!ok)
        return invalid("bgs_engine_load: unknown operator");
    return guarded([&] {
        *out = new bgs_engine{bgs::Engine::load(path, op,
                                                resolve_tau(op, params->tau),
                                                to_model_params(*params))};
        return BGS_OK;
    });
}

void bgs_engine_free(bgs_engine* engine) { delete engine; }

/* ---- sequences ----------------------------------------------------- */

bgs_status bgs_sequence_open(const char* root, bgs_sequence** out) {
    if (!root || !out)
        return invalid("bgs_sequence_open: null argument");
    return guarded([&] {
        auto* seq = new bgs_sequence{bgs::load_sequence(root), {}, {}, {}};
        seq->input_paths.reserve(seq->s.inputs.size());
        for (const auto& [id, path] : seq->s.inputs)
            seq->input_paths.push_back(path.string());
        for (const auto& [id, path] : seq->s.groundtruth)
            seq->gt_paths.emplace(id, path.string());
        if (seq->s.roi)
            seq->roi_path = seq->s.roi->string();
        *out = seq;
        return BGS_OK;
    });
}

int64_t bgs_sequence_count(const bgs_sequence* seq) {
    return seq ? static_cast<int64_t>(seq->s.inputs.size()) : 0;
}

int64_t bgs_sequence_frame_id(const bgs_sequence* seq, int64_t index) {
    if (!seq || index < 0 || index >= bgs_sequence_count(seq))
        return -1;
    return seq->s.inputs[static_cast<std::size_t>(index)].first;
}

const char* bgs_sequence_frame_path(const bgs_sequence* seq, int64_t index) {
    if (!seq || index < 0 || index >= bgs_sequence_count(seq))
        return nullptr;
    return seq->input_paths[static_cast<std::size_t>(index)].c_str();
}

const char* bgs_sequence_gt_path(const bgs_sequence* seq, int64_t frame_id) {
    if (!seq)
        return nullptr;
    auto it = seq->gt_paths.find(static_cast<long>(frame_id));
    return it == seq->gt_paths.end() ? nullptr : it->second.c_str();
}

int32_t bgs_sequence_window(const bgs_sequence* seq, int64_t* first,
                            int64_t* last) {
    if (!seq || !seq->s.window)
        return 0;
    if (first)
        *first = seq->s.window->first;
    if (last)
        *last = seq->s.window->last;
    return 1;
}

const char* bgs_sequence_roi_path(const bgs_sequence* seq) {
    if (!seq || seq->roi_path.empty())
        return nullptr;
    return seq->roi_path.c_str();
}

void bgs_sequence_free(bgs_sequence* seq) { delete seq; }

/* ---- evaluation ---------------------------------------------------- */

bgs_status bgs_confusion_accumulate(bgs_confusion* counts,
                                    const bgs_frame* mask, const bgs_frame* gt,
                                    const bgs_frame* roi) {
    if (!counts || !mask || !gt)
        return invalid("bgs_confusion_accumulate: null argument");
    return guarded([&] {
        bgs::ConfusionCounts c{counts->tp, counts->fp, counts->tn, counts->fn};
        bgs::accumulate(c, mask->f, gt->f, roi ? &roi->f : nullptr);
        counts->tp = c.tp;
        counts->fp = c.fp;
        counts->tn = c.tn;
        counts->fn = c.fn;
        return BGS_OK;
    });
}

bgs_status bgs_metrics_compute(const bgs_confusion* counts, bgs_metrics* out) {
    if (!counts || !out)
        return invalid("bgs_metrics_compute: null argument");
    bgs::MetricsReport r =
        bgs::compute({counts->tp, counts->fp, counts->tn, counts->fn});
    *out = {r.recall, r.specificity, r.fpr, r.fnr, r.pwc, r.precision,
            r.fmeasure};
    return BGS_OK;
}

bgs_status bgs_metrics_mean(const bgs_metrics* reports, size_t count,
                            bgs_metrics* out) {
    if (!reports || !out)
        return invalid("bgs_metrics_mean: null argument");
    if (count == 0)
        return invalid("bgs_metrics_mean: empty report list");
    return guarded([&] {
        std::vector<bgs::MetricsReport> rs(count);
        for (size_t i = 0; i < count; ++i)
            rs[i] = {reports[i].recall,    reports[i].specificity,
                     reports[i].fpr,       reports[i].fnr,
                     reports[i].pwc,       reports[i].precision,
                     reports[i].fmeasure};
        bgs::MetricsReport m = bgs::mean_report(rs);
        *out = {m.recall, m.specificity, m.fpr, m.fnr, m.pwc, m.precision,
                m.fmeasure};
        return BGS_OK;
    });
}

const char* bgs_metrics_csv_header(void) { return bgs::kCsvHeader; }

bgs_status bgs_metrics_csv_row(const char* name, const bgs_metrics* report,
                               char* buf, size_t cap) {
    if (!name || !report || !buf)
        return invalid("bgs_metrics_csv_row: null argument");
    return guarded([&]() -> bgs_status {
        bgs::MetricsReport r{report->recall, report->specificity, report->fpr,
                             report->fnr,    report->pwc,         report->precision,
                             report->fmeasure};
        std::string row = bgs::csv_row(name, r);
        if (row.size() + 1 > cap)
            return invalid("bgs_metrics_csv_row: buffer too small");
        std::copy(row.begin(), row.end(), buf);
        buf[row.size()] = '\0';
        return BGS_OK;
    });
}

/* ---- synthetic scenes ---------------------------------------------- */

bgs_status bgs_synth_open(const char* spec_path, bgs_synth** out) {
    if (!spec_path || !out)
        return invalid("bgs_synth_open: null argument");
    return guarded([&] {
        *out = new bgs_synth{bgs::parse_scene_spec(spec_path)};
        return BGS_OK;
    });
}

bgs_status bgs_synth_parse(const char* spec_text, bgs_synth** out) {
    if (!spec_text || !out)
        return invalid("bgs_synth_parse: null argument");
    return guarded([&] {
        *out = new bgs_synth{
            bgs::parse_scene_spec_text(spec_text, "(inline spec)")};
        return BGS_OK;
    });
}

int32_t bgs_synth_width(const bgs_synth* synth) {
    return synth ? synth->spec.width : 0;
}

int32_t bgs_synth_height(const bgs_synth* synth) {
    return synth ? synth->spec.height : 0;
}

int32_t bgs_synth_frames(const bgs_synth* synth) {
    return synth ? synth->spec.frames : 0;
}

bgs_status bgs_synth_render(const bgs_synth* synth, int32_t t,
                            bgs_frame** image_out, bgs_frame** gt_out) {
    if (!synth || !image_out)
        return invalid("bgs_synth_render: null argument");
    if (t < 0 || t >= synth->spec.frames)
        return invalid("bgs_synth_render: frame index out of range");
    return guarded([&] {
        bgs::SceneFrame f = bgs::render_scene_frame(synth->spec, t);
        *image_out = new bgs_frame{std::move(f.image)};
        if (gt_out)
            *gt_out = new bgs_frame{std::move(f.gt)};
        return BGS_OK;
    });
}

bgs_status bgs_synth_write(const bgs_synth* synth, const char* out_dir) {
    if (!synth || !out_dir)
        return invalid("bgs_synth_write: null argument");
    return guarded([&] {
        bgs::write_scene(synth->spec, out_dir);
        return BGS_OK;
    });
}

void bgs_synth_free(bgs_synth* synth) { delete synth; }

} // extern "C"
