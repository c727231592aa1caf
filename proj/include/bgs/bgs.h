/* This file is part of the bgs project, a texture-based background
 * subtraction library.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the bgs background-subtraction library.
 *
 * Conventions:
 *   - Every fallible call returns a bgs_status; BGS_OK is 0. On failure,
 *     bgs_last_error() returns a human-readable message for the calling
 *     thread, valid until that thread's next failing bgs call.
 *   - Objects are opaque handles created and destroyed by this library.
 *     Out-parameters are written only on BGS_OK.
 *   - Returned const char* strings are owned by the handle they came from
 *     (or are static) and must not be freed by the caller.
 *   - No call is thread-safe on the *same* handle; distinct handles may be
 *     used from distinct threads freely.
 */

#ifndef BGS_BGS_H
#define BGS_BGS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BGS_API __declspec(dllexport)
#else
#define BGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bgs_status {
    BGS_OK = 0,
    BGS_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or null handle   */
    BGS_ERR_IO = 2,               /* file missing, unreadable, truncated  */
    BGS_ERR_DATA = 3,             /* content violates a format/consistency rule */
    BGS_ERR_NOMEM = 4,
    BGS_ERR_UNKNOWN = 5
} bgs_status;

/* Library version, e.g. "1.0.0". */
BGS_API const char* bgs_version(void);

/* Message of the calling thread's most recent failing call ("" if none). */
BGS_API const char* bgs_last_error(void);

/* ------------------------------------------------------------------ */
/* Frames                                                              */
/* ------------------------------------------------------------------ */

/* Single-channel 8-bit image, row-major. */
typedef struct bgs_frame bgs_frame;

BGS_API bgs_status bgs_frame_create(int32_t width, int32_t height,
                                    uint8_t fill, bgs_frame** out);

/* Loads a binary PGM (P5) or PPM (P6); color is reduced to BT.601 luma. */
BGS_API bgs_status bgs_frame_load(const char* path, bgs_frame** out);

/* Writes a binary PGM (P5), maxval 255. */
BGS_API bgs_status bgs_frame_save_pgm(const bgs_frame* frame,
                                      const char* path);

BGS_API int32_t bgs_frame_width(const bgs_frame* frame);
BGS_API int32_t bgs_frame_height(const bgs_frame* frame);

/* Pixel storage, width*height bytes, row-major. Valid until the frame is
 * freed; the mutable variant lets callers fill frames they created. */
BGS_API const uint8_t* bgs_frame_data(const bgs_frame* frame);
BGS_API uint8_t* bgs_frame_data_mut(bgs_frame* frame);

BGS_API void bgs_frame_free(bgs_frame* frame);

/* ------------------------------------------------------------------ */
/* Texture descriptors                                                 */
/* ------------------------------------------------------------------ */

typedef enum bgs_operator {
    BGS_OP_RLBSP = 0,
    BGS_OP_LBSP = 1,
    BGS_OP_SILTP = 2,
    BGS_OP_LBP = 3
} bgs_operator;

/* Computes the per-pixel 16-bit descriptor image for `op` into `out`
 * (width*height entries, row-major, caller-allocated). tau is the relative
 * threshold; pass a negative value for the operator's default (rlbsp 0.14,
 * lbsp 0.30, siltp 0.05; lbp takes none). The frame must be at least 7x7. */
BGS_API bgs_status bgs_descriptor_frame(const bgs_frame* frame, bgs_operator op,
                                        double tau, uint16_t* out);

/* Number of differing bits between two descriptors (0..16). */
BGS_API int32_t bgs_hamming(uint16_t a, uint16_t b);

/* ------------------------------------------------------------------ */
/* Background-subtraction engine                                       */
/* ------------------------------------------------------------------ */

typedef struct bgs_params {
    int32_t samples;           /* bank size per pixel            (default 50) */
    int32_t min_matches;       /* consensus threshold            (default 2)  */
    int32_t color_threshold;   /* L1 intensity distance, strict  (default 15) */
    int32_t texture_threshold; /* Hamming distance, strict       (default 5)  */
    int32_t update_factor;     /* 1-in-N update subsampling      (default 16) */
    int32_t op;                /* bgs_operator                   (default RLBSP) */
    double tau;                /* relative threshold; <0 = operator default   */
    uint64_t seed;             /* PRNG seed                      (default 1)  */
} bgs_params;

/* Fills `params` with the reference defaults listed above. */
BGS_API void bgs_params_defaults(bgs_params* params);

typedef struct bgs_engine bgs_engine;

BGS_API bgs_status bgs_engine_create(const bgs_params* params,
                                     bgs_engine** out);

/* Feeds one frame through the pipeline (descriptors, classification, model
 * update) and returns the mask (0 background, 255 foreground; caller frees).
 * The first frame initializes the model and yields an all-background mask.
 * Frame dimensions are fixed by that first frame. */
BGS_API bgs_status bgs_engine_process(bgs_engine* engine,
                                      const bgs_frame* frame,
                                      bgs_frame** mask_out);

/* Model snapshot (versioned binary). Loading one resumes the stream:
 * subsequent masks are identical to an uninterrupted run. `params` must
 * agree with the snapshot's per-pixel sample count. */
BGS_API bgs_status bgs_engine_save(const bgs_engine* engine, const char* path);
BGS_API bgs_status bgs_engine_load(const char* path, const bgs_params* params,
                                   bgs_engine** out);

BGS_API void bgs_engine_free(bgs_engine* engine);

/* ------------------------------------------------------------------ */
/* Sequence directories                                                */
/* ------------------------------------------------------------------ */

/* A sequence directory: input/ frames named with trailing-digit ids,
 * optional groundtruth/, temporalROI.txt, and ROI.pgm. */
typedef struct bgs_sequence bgs_sequence;

BGS_API bgs_status bgs_sequence_open(const char* root, bgs_sequence** out);

BGS_API int64_t bgs_sequence_count(const bgs_sequence* seq);

/* Frame id / input path at position `index` (0 <= index < count),
 * ascending by id. Returns -1 / NULL on a bad index. */
BGS_API int64_t bgs_sequence_frame_id(const bgs_sequence* seq, int64_t index);
BGS_API const char* bgs_sequence_frame_path(const bgs_sequence* seq,
                                            int64_t index);

/* Ground-truth path for a frame id; NULL when the sequence has none. */
BGS_API const char* bgs_sequence_gt_path(const bgs_sequence* seq,
                                         int64_t frame_id);

/* Temporal scoring window; returns 1 and fills first/last when present. */
BGS_API int32_t bgs_sequence_window(const bgs_sequence* seq, int64_t* first,
                                    int64_t* last);

/* Spatial ROI image path, or NULL. */
BGS_API const char* bgs_sequence_roi_path(const bgs_sequence* seq);

BGS_API void bgs_sequence_free(bgs_sequence* seq);

/* ------------------------------------------------------------------ */
/* Evaluation                                                          */
/* ------------------------------------------------------------------ */

typedef struct bgs_confusion {
    uint64_t tp, fp, tn, fn;
} bgs_confusion;

typedef struct bgs_metrics {
    double recall, specificity, fpr, fnr, pwc, precision, fmeasure;
} bgs_metrics;

/* Scores `mask` against ground truth `gt` into `counts` (add-only; zero the
 * struct before the first call). Labels 85/170 and pixels where `roi`
 * (optional, may be NULL) is zero are excluded; labels 0/50 are negatives,
 * 255 positive. Mask pixels must be 0 or 255. */
BGS_API bgs_status bgs_confusion_accumulate(bgs_confusion* counts,
                                            const bgs_frame* mask,
                                            const bgs_frame* gt,
                                            const bgs_frame* roi);

/* The seven benchmark metrics with total zero-denominator conventions. */
BGS_API bgs_status bgs_metrics_compute(const bgs_confusion* counts,
                                       bgs_metrics* out);

/* Unweighted per-metric mean of `count` reports (the aggregation rule for
 * sequences into a category and categories into an overall row). */
BGS_API bgs_status bgs_metrics_mean(const bgs_metrics* reports, size_t count,
                                    bgs_metrics* out);

/* CSV helpers: header line (static string) and one formatted row
 * "name,re,sp,fpr,fnr,pwc,pr,fm" at 4 decimal places. `cap` is the size of
 * `buf`; the row must fit including its NUL. */
BGS_API const char* bgs_metrics_csv_header(void);
BGS_API bgs_status bgs_metrics_csv_row(const char* name,
                                       const bgs_metrics* report, char* buf,
                                       size_t cap);

/* ------------------------------------------------------------------ */
/* Synthetic scenes                                                    */
/* ------------------------------------------------------------------ */

/* A parsed, validated synthetic-scene description (flat key=value format;
 * see the project README for the key list). */
typedef struct bgs_synth bgs_synth;

BGS_API bgs_status bgs_synth_open(const char* spec_path, bgs_synth** out);
BGS_API bgs_status bgs_synth_parse(const char* spec_text, bgs_synth** out);

BGS_API int32_t bgs_synth_width(const bgs_synth* synth);
BGS_API int32_t bgs_synth_height(const bgs_synth* synth);
BGS_API int32_t bgs_synth_frames(const bgs_synth* synth);

/* Renders frame t (0-based). `gt_out` may be NULL when the ground truth is
 * not needed. Rendering is deterministic per (spec, t). */
BGS_API bgs_status bgs_synth_render(const bgs_synth* synth, int32_t t,
                                    bgs_frame** image_out, bgs_frame** gt_out);

/* Writes the whole scene as a sequence directory (input/, groundtruth/,
 * temporalROI.txt) rooted at out_dir. */
BGS_API bgs_status bgs_synth_write(const bgs_synth* synth, const char* out_dir);

BGS_API void bgs_synth_free(bgs_synth* synth);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BGS_BGS_H */
