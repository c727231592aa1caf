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

// Command-line front end. Everything below talks to the library through its
// public C interface (bgs/bgs.h); no core internals are linked.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bgs/bgs.h"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

/* Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error. */
int exit_code_for(bgs_status st) {
    switch (st) {
        case BGS_OK: return 0;
        case BGS_ERR_INVALID_ARGUMENT: return 1;
        case BGS_ERR_IO: return 2;
        default: return 3;
    }
}

struct StatusError {
    bgs_status status;
    std::string message;
};

void check(bgs_status st) {
    if (st != BGS_OK)
        throw StatusError{st, bgs_last_error()};
}

[[noreturn]] void fail_data(const std::string& msg) {
    throw StatusError{BGS_ERR_DATA, msg};
}

[[noreturn]] void fail_io(const std::string& msg) {
    throw StatusError{BGS_ERR_IO, msg};
}

struct FrameDeleter {
    void operator()(bgs_frame* f) const { bgs_frame_free(f); }
};
struct EngineDeleter {
    void operator()(bgs_engine* e) const { bgs_engine_free(e); }
};
struct SequenceDeleter {
    void operator()(bgs_sequence* s) const { bgs_sequence_free(s); }
};
struct SynthDeleter {
    void operator()(bgs_synth* s) const { bgs_synth_free(s); }
};
using FramePtr = std::unique_ptr<bgs_frame, FrameDeleter>;
using EnginePtr = std::unique_ptr<bgs_engine, EngineDeleter>;
using SequencePtr = std::unique_ptr<bgs_sequence, SequenceDeleter>;
using SynthPtr = std::unique_ptr<bgs_synth, SynthDeleter>;

FramePtr load_frame(const std::string& path) {
    bgs_frame* f = nullptr;
    check(bgs_frame_load(path.c_str(), &f));
    return FramePtr(f);
}

SequencePtr open_sequence(const std::string& root) {
    bgs_sequence* s = nullptr;
    check(bgs_sequence_open(root.c_str(), &s));
    return SequencePtr(s);
}

/* Trailing digit run of a file stem, or -1 (the frame-id convention of the
 * sequence layout, reimplemented here for flat mask/gt directories). */
long long id_of(const fs::path& p) {
    std::string stem = p.stem().string();
    std::size_t end = stem.size(), begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1])))
        --begin;
    if (begin == end)
        return -1;
    if (end - begin > 15)
        begin = end - 15;
    return std::stoll(stem.substr(begin, end - begin));
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm" || ext == ".ppm";
}

/* id -> path for every PGM/PPM in a flat directory. */
std::map<long long, fs::path> list_ids(const fs::path& dir, const char* what) {
    if (!fs::exists(dir))
        fail_io(dir.string() + ": " + what + " directory missing");
    std::map<long long, fs::path> out;
    for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || !is_image_file(e.path()))
            continue;
        long long id = id_of(e.path());
        if (id < 0)
            fail_data(e.path().string() + ": cannot derive a frame id");
        if (!out.emplace(id, e.path()).second)
            fail_data(dir.string() + ": duplicate frame id " + std::to_string(id));
    }
    if (out.empty())
        fail_data(dir.string() + std::string(": no PGM/PPM ") + what + " files");
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string cpu_model() {
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("model name", 0) == 0) {
            std::size_t colon = line.find(':');
            if (colon != std::string::npos) {
                std::size_t s = line.find_first_not_of(" \t", colon + 1);
                if (s != std::string::npos)
                    return line.substr(s);
            }
        }
    }
    return "unknown CPU";
}

/* ------------------------------------------------------------------ */
/* subtract                                                            */
/* ------------------------------------------------------------------ */

struct SubtractOptions {
    std::string input;
    std::string output;
    std::string op = "rlbsp";
    double tau = -1.0;
    bgs_params params{};
};

bgs_operator op_from_name(const std::string& name) {
    if (name == "rlbsp") return BGS_OP_RLBSP;
    if (name == "lbsp") return BGS_OP_LBSP;
    if (name == "siltp") return BGS_OP_SILTP;
    return BGS_OP_LBP;
}

int run_subtract(const SubtractOptions& opt) {
    SequencePtr seq = open_sequence(opt.input);
    std::error_code ec;
    fs::create_directories(opt.output, ec);
    if (ec)
        fail_io(opt.output + ": cannot create output directory");

    bgs_params params = opt.params;
    params.op = op_from_name(opt.op);
    params.tau = opt.tau;
    bgs_engine* raw = nullptr;
    check(bgs_engine_create(&params, &raw));
    EnginePtr engine(raw);

    const int64_t count = bgs_sequence_count(seq.get());
    std::chrono::nanoseconds model_time{0};
    int width = 0, height = 0;
    char name[40];
    for (int64_t i = 0; i < count; ++i) {
        FramePtr frame = load_frame(bgs_sequence_frame_path(seq.get(), i));
        bgs_frame* mask_raw = nullptr;
        Clock::time_point t0 = Clock::now();
        check(bgs_engine_process(engine.get(), frame.get(), &mask_raw));
        model_time += Clock::now() - t0;
        FramePtr mask(mask_raw);
        width = bgs_frame_width(frame.get());
        height = bgs_frame_height(frame.get());
        std::snprintf(name, sizeof name, "bin%06lld.pgm",
                      static_cast<long long>(bgs_sequence_frame_id(seq.get(), i)));
        check(bgs_frame_save_pgm(mask.get(), (fs::path(opt.output) / name).string().c_str()));
    }
    double seconds = std::chrono::duration<double>(model_time).count();
    std::printf("%lld frames (%dx%d), operator %s: model loop %.3f s, %.1f fps "
                "(I/O excluded)\n",
                static_cast<long long>(count), width, height, opt.op.c_str(),
                seconds, seconds > 0 ? static_cast<double>(count) / seconds : 0.0);
    return 0;
}

/* ------------------------------------------------------------------ */
/* evaluate                                                            */
/* ------------------------------------------------------------------ */

struct EvaluateOptions {
    std::string masks;
    std::string gt;
    std::string roi;                 // empty = per-sequence default
    std::vector<long long> window;   // empty or {first, last}
    std::string out;
};

struct SequenceJob {
    std::string name;
    fs::path mask_dir;
    std::map<long long, fs::path> gt; // id -> path
    std::optional<std::pair<long long, long long>> window;
    fs::path roi_path; // empty = none
};

/* Scores one sequence: every ground-truth frame inside the window must have
 * a mask with the same id. */
bgs_metrics score_sequence(const SequenceJob& job) {
    std::map<long long, fs::path> masks = list_ids(job.mask_dir, "mask");
    FramePtr roi;
    if (!job.roi_path.empty())
        roi = load_frame(job.roi_path.string());

    bgs_confusion counts{0, 0, 0, 0};
    long long scored = 0;
    for (const auto& [id, gt_path] : job.gt) {
        if (job.window && (id < job.window->first || id > job.window->second))
            continue;
        auto it = masks.find(id);
        if (it == masks.end())
            fail_data(job.mask_dir.string() + ": no mask for frame id " +
                      std::to_string(id));
        FramePtr gt = load_frame(gt_path.string());
        FramePtr mask = load_frame(it->second.string());
        check(bgs_confusion_accumulate(&counts, mask.get(), gt.get(), roi.get()));
        ++scored;
    }
    if (scored == 0)
        fail_data(job.name + ": the evaluation window excludes every frame");
    bgs_metrics m{};
    check(bgs_metrics_compute(&counts, &m));
    return m;
}

/* Builds a job for a sequence-root directory (input/ + groundtruth/),
 * honoring its temporalROI.txt and ROI image unless overridden. */
SequenceJob sequence_job(const std::string& name, const fs::path& root,
                         const fs::path& mask_dir, const EvaluateOptions& opt) {
    SequenceJob job;
    job.name = name;
    job.mask_dir = mask_dir;
    SequencePtr seq = open_sequence(root.string());
    const int64_t count = bgs_sequence_count(seq.get());
    for (int64_t i = 0; i < count; ++i) {
        long long id = bgs_sequence_frame_id(seq.get(), i);
        const char* gt = bgs_sequence_gt_path(seq.get(), id);
        if (gt)
            job.gt.emplace(id, fs::path(gt));
    }
    if (job.gt.empty())
        fail_data(root.string() + ": sequence has no ground truth");
    int64_t first = 0, last = 0;
    if (bgs_sequence_window(seq.get(), &first, &last))
        job.window = {first, last};
    if (const char* roi = bgs_sequence_roi_path(seq.get()))
        job.roi_path = roi;
    if (!opt.window.empty())
        job.window = {opt.window[0], opt.window[1]};
    if (!opt.roi.empty())
        job.roi_path = opt.roi;
    return job;
}

int run_evaluate(const EvaluateOptions& opt) {
    fs::path gt_root(opt.gt);
    std::vector<SequenceJob> jobs;

    if (fs::is_directory(gt_root / "input") &&
        fs::is_directory(gt_root / "groundtruth")) {
        // Single sequence rooted at --gt.
        jobs.push_back(sequence_job(gt_root.filename().string(), gt_root,
                                    opt.masks, opt));
    } else if (fs::is_directory(gt_root / "groundtruth") ||
               fs::is_directory(gt_root)) {
        // Either a bare groundtruth/ tree or a flat directory of label
        // frames; fall back to category layout when neither holds images.
        fs::path flat = fs::is_directory(gt_root / "groundtruth")
                            ? gt_root / "groundtruth"
                            : gt_root;
        bool has_images = false;
        for (const fs::directory_entry& e : fs::directory_iterator(flat))
            if (e.is_regular_file() && is_image_file(e.path())) {
                has_images = true;
                break;
            }
        if (has_images) {
            SequenceJob job;
            job.name = gt_root.filename().string();
            job.mask_dir = opt.masks;
            job.gt = list_ids(flat, "ground-truth");
            if (!opt.window.empty())
                job.window = {opt.window[0], opt.window[1]};
            if (!opt.roi.empty())
                job.roi_path = opt.roi;
            jobs.push_back(std::move(job));
        } else {
            // Category directory: every subdirectory that looks like a
            // sequence root contributes one row; masks live in a matching
            // subdirectory of --masks.
            std::vector<fs::path> seq_roots;
            for (const fs::directory_entry& e : fs::directory_iterator(gt_root))
                if (e.is_directory() &&
                    fs::is_directory(e.path() / "groundtruth"))
                    seq_roots.push_back(e.path());
            std::sort(seq_roots.begin(), seq_roots.end());
            if (seq_roots.empty())
                fail_data(opt.gt + ": no ground truth found (expected a "
                                   "sequence root, label frames, or a "
                                   "category of sequences)");
            for (const fs::path& root : seq_roots)
                jobs.push_back(sequence_job(root.filename().string(), root,
                                            fs::path(opt.masks) / root.filename(),
                                            opt));
        }
    } else {
        fail_io(opt.gt + ": not a directory");
    }

    std::vector<bgs_metrics> reports;
    std::vector<std::string> lines;
    char buf[256];
    for (const SequenceJob& job : jobs) {
        bgs_metrics m = score_sequence(job);
        reports.push_back(m);
        check(bgs_metrics_csv_row(job.name.c_str(), &m, buf, sizeof buf));
        lines.emplace_back(buf);
    }
    bgs_metrics overall{};
    check(bgs_metrics_mean(reports.data(), reports.size(), &overall));
    check(bgs_metrics_csv_row("overall", &overall, buf, sizeof buf));
    lines.emplace_back(buf);

    std::ofstream out(opt.out, std::ios::trunc);
    if (!out)
        fail_io(opt.out + ": cannot open report for writing");
    out << bgs_metrics_csv_header() << "\n";
    std::cout << bgs_metrics_csv_header() << "\n";
    for (const std::string& line : lines) {
        out << line << "\n";
        std::cout << line << "\n";
    }
    if (!out)
        fail_io(opt.out + ": write failure");
    return 0;
}

/* ------------------------------------------------------------------ */
/* synth                                                               */
/* ------------------------------------------------------------------ */

int run_synth(const std::string& spec, const std::string& out_dir) {
    bgs_synth* raw = nullptr;
    check(bgs_synth_open(spec.c_str(), &raw));
    SynthPtr synth(raw);
    check(bgs_synth_write(synth.get(), out_dir.c_str()));
    std::printf("wrote %d frames (%dx%d) to %s\n", bgs_synth_frames(synth.get()),
                bgs_synth_width(synth.get()), bgs_synth_height(synth.get()),
                out_dir.c_str());
    return 0;
}

/* ------------------------------------------------------------------ */
/* bench                                                               */
/* ------------------------------------------------------------------ */

struct BenchOptions {
    std::string input;
    std::string synth;
    int repeat = 5;
};

std::vector<FramePtr> bench_frames(const BenchOptions& opt) {
    std::vector<FramePtr> frames;
    if (!opt.synth.empty()) {
        bgs_synth* raw = nullptr;
        check(bgs_synth_open(opt.synth.c_str(), &raw));
        SynthPtr synth(raw);
        int n = bgs_synth_frames(synth.get());
        frames.reserve(n);
        for (int t = 0; t < n; ++t) {
            bgs_frame* img = nullptr;
            check(bgs_synth_render(synth.get(), t, &img, nullptr));
            frames.emplace_back(img);
        }
    } else {
        SequencePtr seq = open_sequence(opt.input);
        int64_t n = bgs_sequence_count(seq.get());
        frames.reserve(static_cast<std::size_t>(n));
        for (int64_t i = 0; i < n; ++i)
            frames.push_back(load_frame(bgs_sequence_frame_path(seq.get(), i)));
    }
    int w = bgs_frame_width(frames[0].get());
    int h = bgs_frame_height(frames[0].get());
    for (const FramePtr& f : frames)
        if (bgs_frame_width(f.get()) != w || bgs_frame_height(f.get()) != h)
            fail_data("bench: frames differ in size");
    return frames;
}

int run_bench(const BenchOptions& opt) {
    std::vector<FramePtr> frames = bench_frames(opt);
    const std::size_t n = frames.size();
    const int w = bgs_frame_width(frames[0].get());
    const int h = bgs_frame_height(frames[0].get());

    std::printf("machine: %s, %u hardware threads\n", cpu_model().c_str(),
                std::thread::hardware_concurrency());
#if defined(__VERSION__)
    std::printf("compiler: %s\n", __VERSION__);
#endif
    std::printf("workload: %zu frames of %dx%d, %d timed repetitions, median "
                "reported, warm-up and file I/O excluded\n\n",
                n, w, h, opt.repeat);

    // Per-operator descriptor throughput (single-threaded, whole frames).
    const std::pair<bgs_operator, const char*> ops_list[] = {
        {BGS_OP_RLBSP, "rlbsp"},
        {BGS_OP_LBSP, "lbsp"},
        {BGS_OP_SILTP, "siltp"},
        {BGS_OP_LBP, "lbp"},
    };
    std::vector<uint16_t> desc(static_cast<std::size_t>(w) * h);
    std::printf("descriptor throughput:\n");
    for (const auto& [op, opname] : ops_list) {
        for (const FramePtr& f : frames) // warm-up pass
            check(bgs_descriptor_frame(f.get(), op, -1.0, desc.data()));
        std::vector<double> fps;
        for (int rep = 0; rep < opt.repeat; ++rep) {
            Clock::time_point t0 = Clock::now();
            for (const FramePtr& f : frames)
                check(bgs_descriptor_frame(f.get(), op, -1.0, desc.data()));
            double s = std::chrono::duration<double>(Clock::now() - t0).count();
            fps.push_back(static_cast<double>(n) / s);
        }
        std::printf("  %-6s %9.1f fps (min %.1f, max %.1f)\n", opname,
                    median_of(fps), *std::min_element(fps.begin(), fps.end()),
                    *std::max_element(fps.begin(), fps.end()));
    }

    // Full pipeline at default parameters: descriptors + classification +
    // model update per frame. Each repetition replays the sequence on a
    // fresh engine; one untimed warm-up repetition comes first.
    bgs_params params;
    bgs_params_defaults(&params);
    auto pipeline_pass = [&](bool timed, double* out_fps) {
        bgs_engine* raw = nullptr;
        check(bgs_engine_create(&params, &raw));
        EnginePtr engine(raw);
        Clock::time_point t0 = Clock::now();
        for (const FramePtr& f : frames) {
            bgs_frame* mask = nullptr;
            check(bgs_engine_process(engine.get(), f.get(), &mask));
            bgs_frame_free(mask);
        }
        if (timed) {
            double s = std::chrono::duration<double>(Clock::now() - t0).count();
            *out_fps = static_cast<double>(n) / s;
        }
    };
    pipeline_pass(false, nullptr);
    std::vector<double> fps;
    for (int rep = 0; rep < opt.repeat; ++rep) {
        double f = 0;
        pipeline_pass(true, &f);
        fps.push_back(f);
    }
    std::printf("\nfull pipeline (rlbsp, default parameters):\n"
                "  %9.1f fps (min %.1f, max %.1f)\n",
                median_of(fps), *std::min_element(fps.begin(), fps.end()),
                *std::max_element(fps.begin(), fps.end()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bgs: texture-based background subtraction"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 usage error, 2 I/O error, "
               "3 data error.");

    // subtract ---------------------------------------------------------
    SubtractOptions sub_opt;
    bgs_params_defaults(&sub_opt.params);
    long long sub_samples = sub_opt.params.samples;
    long long sub_min = sub_opt.params.min_matches;
    long long sub_rc = sub_opt.params.color_threshold;
    long long sub_rt = sub_opt.params.texture_threshold;
    long long sub_phi = sub_opt.params.update_factor;
    std::uint64_t sub_seed = sub_opt.params.seed;

    CLI::App* sub = app.add_subcommand(
        "subtract", "Segment a sequence into foreground masks");
    sub->set_config("--config", "", "Read options from a key=value file");
    sub->add_option("--input", sub_opt.input, "Sequence root (contains input/)")
        ->required();
    sub->add_option("--output", sub_opt.output, "Directory for bin%06d.pgm masks")
        ->required();
    sub->add_option("--operator", sub_opt.op, "Texture operator")
        ->check(CLI::IsMember({"rlbsp", "lbsp", "siltp", "lbp"}))
        ->capture_default_str();
    sub->add_option("--tau", sub_opt.tau,
                    "Relative threshold (operator default when omitted: "
                    "rlbsp 0.14, lbsp 0.30, siltp 0.05)");
    sub->add_option("--samples", sub_samples, "Samples per pixel (N)")
        ->capture_default_str();
    sub->add_option("--min-matches", sub_min, "Consensus threshold")
        ->capture_default_str();
    sub->add_option("--rc", sub_rc, "Color distance threshold")
        ->capture_default_str();
    sub->add_option("--rt", sub_rt, "Texture distance threshold")
        ->capture_default_str();
    sub->add_option("--phi", sub_phi, "Update subsampling factor")
        ->capture_default_str();
    sub->add_option("--seed", sub_seed, "PRNG seed")->capture_default_str();

    // evaluate ----------------------------------------------------------
    EvaluateOptions eval_opt;
    CLI::App* eval = app.add_subcommand(
        "evaluate", "Score masks against ground truth into a CSV report");
    eval->set_config("--config", "", "Read options from a key=value file");
    eval->add_option("--masks", eval_opt.masks, "Directory of mask files")
        ->required();
    eval->add_option("--gt", eval_opt.gt,
                     "Ground truth: a sequence root, a directory of label "
                     "frames, or a category of sequence roots")
        ->required();
    eval->add_option("--roi", eval_opt.roi,
                     "Spatial ROI image (overrides the sequence's own)");
    eval->add_option("--window", eval_opt.window,
                     "Temporal window FIRST LAST (overrides temporalROI.txt)")
        ->expected(2);
    eval->add_option("--out", eval_opt.out, "Report CSV path")->required();

    // synth -------------------------------------------------------------
    std::string synth_spec, synth_out;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic sequence with ground truth");
    synth->set_config("--config", "", "Read options from a key=value file");
    synth->add_option("--spec", synth_spec, "Scene spec file (key=value)")
        ->required();
    synth->add_option("--out", synth_out, "Output sequence root")->required();

    // bench ---------------------------------------------------------------
    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand(
        "bench", "Measure descriptor and pipeline throughput");
    bench->set_config("--config", "", "Read options from a key=value file");
    CLI::Option* bi = bench->add_option("--input", bench_opt.input,
                                        "Sequence root to load frames from");
    CLI::Option* bs = bench->add_option("--synth", bench_opt.synth,
                                        "Scene spec to render frames from");
    bi->excludes(bs);
    bs->excludes(bi);
    bench->add_option("--repeat", bench_opt.repeat, "Timed repetitions")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sub->parsed()) {
            sub_opt.params.samples = static_cast<int32_t>(sub_samples);
            sub_opt.params.min_matches = static_cast<int32_t>(sub_min);
            sub_opt.params.color_threshold = static_cast<int32_t>(sub_rc);
            sub_opt.params.texture_threshold = static_cast<int32_t>(sub_rt);
            sub_opt.params.update_factor = static_cast<int32_t>(sub_phi);
            sub_opt.params.seed = sub_seed;
            return run_subtract(sub_opt);
        }
        if (eval->parsed())
            return run_evaluate(eval_opt);
        if (synth->parsed())
            return run_synth(synth_spec, synth_out);
        if (bench->parsed()) {
            if (bench_opt.input.empty() && bench_opt.synth.empty()) {
                std::cerr << "error: bench needs --input or --synth\n";
                return 1;
            }
            return run_bench(bench_opt);
        }
    } catch (const StatusError& e) {
        std::cerr << "error: " << e.message << "\n";
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
