// Copyright 2026 The clsketch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// clsketch command-line front end. Data goes to files, progress to stderr.
// Every command that writes files also writes <first output>.manifest.json
// recording its arguments.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clsketch/clsketch.h"

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitDivergence = 5;
constexpr int kExitFingerprint = 6;
constexpr int kExitInvalid = 7;

class Failure {
 public:
  Failure(clsk_status status, std::string message) : status_(status), message_(std::move(message)) {}
  clsk_status status() const { return status_; }
  const std::string& message() const { return message_; }

 private:
  clsk_status status_;
  std::string message_;
};

void check(clsk_status s) {
  if (s != CLSK_OK) throw Failure(s, clsk_last_error());
}

int exit_code(clsk_status s) {
  switch (s) {
    case CLSK_OK:
      return kExitOk;
    case CLSK_ERR_IO:
      return kExitIo;
    case CLSK_ERR_FORMAT:
    case CLSK_ERR_TRUNCATED:
    case CLSK_ERR_VERSION:
    case CLSK_ERR_MAGIC:
      return kExitFormat;
    case CLSK_ERR_DIVERGENCE:
      return kExitDivergence;
    case CLSK_ERR_FINGERPRINT:
      return kExitFingerprint;
    case CLSK_ERR_CONFIG:
    case CLSK_ERR_SHAPE:
    case CLSK_ERR_DEGENERATE:
    case CLSK_ERR_INDEPENDENCE:
      return kExitInvalid;
    case CLSK_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Points = std::unique_ptr<clsk_points, Deleter<clsk_points, clsk_points_free>>;
using Normalizer = std::unique_ptr<clsk_normalizer, Deleter<clsk_normalizer, clsk_normalizer_free>>;
using Sketch = std::unique_ptr<clsk_sketch, Deleter<clsk_sketch, clsk_sketch_free>>;
using Model = std::unique_ptr<clsk_model, Deleter<clsk_model, clsk_model_free>>;
using History = std::unique_ptr<clsk_history, Deleter<clsk_history, clsk_history_free>>;
using Image = std::unique_ptr<clsk_image, Deleter<clsk_image, clsk_image_free>>;

template <class H, class F>
H make(F&& f) {
  typename H::pointer raw = nullptr;
  check(f(&raw));
  return H(raw);
}

bool is_pgm(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".pgm" || ext == ".PGM";
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::random_device rd;
  const std::string tmp = path + ".tmp" + std::to_string(rd() & 0xffffffu);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Failure(CLSK_ERR_IO, "cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure(CLSK_ERR_IO, "cannot move output into place at '" + path + "'");
  }
}

struct Globals {
  unsigned threads = 1;
  bool deterministic = false;
  bool quiet = false;
  std::vector<std::string> argv;
};

void write_manifest(const Globals& g, const std::string& command, const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["tool"] = "clsketch";
  j["version"] = clsk_version();
  j["command"] = command;
  j["argv"] = g.argv;
  j["threads"] = g.threads;
  j["deterministic"] = g.deterministic;
  j["outputs"] = outputs;
  write_text_atomic(outputs.front() + ".manifest.json", j.dump(2) + "\n");
}

std::vector<size_t> parse_layers(const std::string& text) {
  std::vector<size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      dims.push_back(static_cast<size_t>(v));
    } catch (const std::exception&) {
      throw Failure(CLSK_ERR_CONFIG, "--layers: '" + item + "' is not a positive integer");
    }
  }
  if (dims.size() < 2) throw Failure(CLSK_ERR_CONFIG, "--layers needs at least two entries");
  return dims;
}

// ---- gen-spiral -------------------------------------------------------------

struct GenSpiralArgs {
  size_t n = 100000;
  uint64_t seed = 0;
  double jitter = 0.0;
  std::string out;
};

void run_gen_spiral(const Globals& g, const GenSpiralArgs& a) {
  Points pts = make<Points>([&](clsk_points** o) { return clsk_generate_spiral(a.n, a.jitter, a.seed, o); });
  check(clsk_points_write_csv(pts.get(), a.out.c_str()));
  write_manifest(g, "gen-spiral", {a.out});
}

// ---- add-noise --------------------------------------------------------------

struct AddNoiseArgs {
  std::string input;
  double sigma = 0.15;
  uint64_t seed = 0;
  std::string out;
};

void run_add_noise(const Globals& g, const AddNoiseArgs& a) {
  if (is_pgm(a.input)) {
    Image img = make<Image>([&](clsk_image** o) { return clsk_image_read_pgm(a.input.c_str(), o); });
    Image noisy = make<Image>([&](clsk_image** o) { return clsk_image_add_noise(img.get(), a.sigma, a.seed, o); });
    check(clsk_image_write_pgm(noisy.get(), a.out.c_str()));
  } else {
    Points pts = make<Points>([&](clsk_points** o) { return clsk_points_read_csv(a.input.c_str(), o); });
    Points noisy =
        make<Points>([&](clsk_points** o) { return clsk_points_add_noise(pts.get(), a.sigma, a.seed, o); });
    check(clsk_points_write_csv(noisy.get(), a.out.c_str()));
  }
  write_manifest(g, "add-noise", {a.out});
}

// ---- gen-image / sample-patches ---------------------------------------------

struct GenImageArgs {
  size_t width = 256;
  size_t height = 256;
  size_t shapes = 40;
  uint64_t seed = 0;
  std::string out;
};

void run_gen_image(const Globals& g, const GenImageArgs& a) {
  Image img = make<Image>(
      [&](clsk_image** o) { return clsk_image_synthetic(a.width, a.height, a.seed, a.shapes, o); });
  check(clsk_image_write_pgm(img.get(), a.out.c_str()));
  write_manifest(g, "gen-image", {a.out});
}

struct SamplePatchesArgs {
  std::string input;
  size_t count = 200000;
  size_t side = 3;
  uint64_t seed = 0;
  bool augment = false;
  std::string out;
};

void run_sample_patches(const Globals& g, const SamplePatchesArgs& a) {
  Image img = make<Image>([&](clsk_image** o) { return clsk_image_read_pgm(a.input.c_str(), o); });
  Points pts = make<Points>([&](clsk_points** o) {
    return clsk_image_sample_patches(img.get(), a.count, a.side, a.seed, a.augment ? 1 : 0, o);
  });
  check(clsk_points_write_csv(pts.get(), a.out.c_str()));
  write_manifest(g, "sample-patches", {a.out});
}

// ---- sketch -----------------------------------------------------------------

struct SketchArgs {
  std::string input;
  size_t m = 500;
  std::string scale = "auto";
  uint64_t seed = 0;
  std::string out;
  std::string normalizer;  // default <out>.norm.json
};

void run_sketch(const Globals& g, const SketchArgs& a) {
  double scale = 0.0;
  if (a.scale != "auto") {
    try {
      scale = std::stod(a.scale);
    } catch (const std::exception&) {
      throw Failure(CLSK_ERR_CONFIG, "--scale must be 'auto' or a positive number");
    }
    if (!(scale > 0.0)) throw Failure(CLSK_ERR_CONFIG, "--scale must be 'auto' or a positive number");
  }
  const std::string norm_path = a.normalizer.empty() ? a.out + ".norm.json" : a.normalizer;
  if (!g.quiet) std::cerr << "sketching " << a.input << " (two passes)\n";
  clsk_sketch* sk_raw = nullptr;
  clsk_normalizer* norm_raw = nullptr;
  check(clsk_sketch_csv(a.input.c_str(), a.m, scale, a.seed, g.threads, &sk_raw, &norm_raw));
  Sketch sk(sk_raw);
  Normalizer norm(norm_raw);
  check(clsk_sketch_write(sk.get(), a.out.c_str()));
  check(clsk_normalizer_write(norm.get(), norm_path.c_str()));
  write_manifest(g, "sketch", {a.out, norm_path});
  std::printf("n=%llu m=%zu d=%zu scale=%.17g compression_factor=%.17g\n",
              static_cast<unsigned long long>(clsk_sketch_count(sk.get())), clsk_sketch_m(sk.get()),
              clsk_sketch_dim(sk.get()), clsk_sketch_scale(sk.get()), clsk_sketch_compression_factor(sk.get()));
}

// ---- train ------------------------------------------------------------------

struct TrainArgs {
  std::string sketch;
  std::string normalizer;  // default <sketch>.norm.json
  std::string algo = "naive";
  std::string layers = "2,64,64,128";
  size_t points = 1000;
  uint64_t iters = 1000;
  std::string step_rule = "adam";
  double lr = 1e-3;
  std::string alpha;  // default: 50 for unbiased, auto otherwise
  uint64_t seed = 0;
  std::optional<uint64_t> grid_seed;
  size_t eval_points = 0;
  uint64_t eval_seed = 0x5eed;
  uint64_t checkpoint = 0;
  bool allow_shared_seed = false;
  std::string out;
  std::string history;  // default <out>.history.csv
};

void report_progress(const clsk_train_record* r, void* user) {
  if (*static_cast<const bool*>(user)) return;
  std::fprintf(stderr, "iter %llu loss %.6g alpha %.6g step %.3g (%.1fs)\n", static_cast<unsigned long long>(r->iter),
               r->loss, r->alpha, r->step, r->seconds);
}

void run_train(const Globals& g, const TrainArgs& a) {
  clsk_train_options opt;
  clsk_train_options_default(&opt);
  if (a.algo == "naive") {
    opt.algorithm = CLSK_ALGO_NAIVE;
  } else if (a.algo == "unbiased") {
    opt.algorithm = CLSK_ALGO_UNBIASED;
  } else if (a.algo == "fixed-grid") {
    opt.algorithm = CLSK_ALGO_FIXED_GRID;
  } else {
    throw Failure(CLSK_ERR_CONFIG, "--algo must be naive, unbiased or fixed-grid");
  }
  if (a.step_rule == "constant") {
    opt.step_rule = CLSK_STEP_CONSTANT;
  } else if (a.step_rule == "diminishing") {
    opt.step_rule = CLSK_STEP_DIMINISHING;
  } else if (a.step_rule == "adam") {
    opt.step_rule = CLSK_STEP_ADAM;
  } else {
    throw Failure(CLSK_ERR_CONFIG, "--step-rule must be constant, diminishing or adam");
  }
  const std::string alpha = a.alpha.empty() ? (a.algo == "unbiased" ? "50" : "auto") : a.alpha;
  if (alpha == "auto") {
    opt.alpha_auto = 1;
  } else {
    opt.alpha_auto = 0;
    try {
      opt.alpha = std::stod(alpha);
    } catch (const std::exception&) {
      throw Failure(CLSK_ERR_CONFIG, "--alpha must be 'auto' or a positive number");
    }
  }
  opt.iterations = a.iters;
  opt.grid_points = a.points;
  opt.learning_rate = a.lr;
  opt.grid_seed = a.grid_seed.value_or(a.seed + 1);
  opt.eval_points = a.eval_points;
  opt.eval_seed = a.eval_seed;
  opt.checkpoint_interval = a.checkpoint;
  opt.allow_shared_seed = a.allow_shared_seed ? 1 : 0;
  bool quiet = g.quiet;
  opt.progress = report_progress;
  opt.progress_user = &quiet;

  const std::vector<size_t> dims = parse_layers(a.layers);
  const std::string norm_path = a.normalizer.empty() ? a.sketch + ".norm.json" : a.normalizer;
  const std::string history_path = a.history.empty() ? a.out + ".history.csv" : a.history;
  Sketch sk = make<Sketch>([&](clsk_sketch** o) { return clsk_sketch_read(a.sketch.c_str(), o); });
  Normalizer norm = make<Normalizer>([&](clsk_normalizer** o) { return clsk_normalizer_read(norm_path.c_str(), o); });
  Model model = make<Model>(
      [&](clsk_model** o) { return clsk_model_init(dims.data(), dims.size(), a.seed, norm.get(), o); });
  History hist = make<History>([&](clsk_history** o) { return clsk_train(model.get(), sk.get(), &opt, o); });
  check(clsk_model_write(model.get(), a.out.c_str()));
  check(clsk_history_write_csv(hist.get(), history_path.c_str()));
  write_manifest(g, "train", {a.out, history_path});
}

// ---- denoise ----------------------------------------------------------------

struct DenoiseArgs {
  std::string model;
  std::string input;
  double lambda = 0.0;
  uint64_t steps = 200;
  double lr = 0.1;
  double tol = 1e-10;
  bool no_backtrack = false;
  std::string out;
};

clsk_denoise_options denoise_options(const DenoiseArgs& a) {
  clsk_denoise_options o;
  clsk_denoise_options_default(&o);
  o.lambda = a.lambda;
  o.steps = a.steps;
  o.step_size = a.lr;
  o.tolerance = a.tol;
  o.backtracking = a.no_backtrack ? 0 : 1;
  return o;
}

void run_denoise(const Globals& g, const DenoiseArgs& a) {
  const clsk_denoise_options o = denoise_options(a);
  Model model = make<Model>([&](clsk_model** m) { return clsk_model_read(a.model.c_str(), m); });
  Points noisy = make<Points>([&](clsk_points** p) { return clsk_points_read_csv(a.input.c_str(), p); });
  Points out = make<Points>([&](clsk_points** p) { return clsk_denoise_points(model.get(), noisy.get(), &o, p); });
  check(clsk_points_write_csv(out.get(), a.out.c_str()));
  write_manifest(g, "denoise", {a.out});
}

struct DenoiseImageArgs {
  DenoiseArgs base;
  size_t patch = 3;
  size_t stride = 3;
  std::string agg = "average";
};

void run_denoise_image(const Globals& g, const DenoiseImageArgs& a) {
  const clsk_denoise_options o = denoise_options(a.base);
  clsk_patch_options p;
  clsk_patch_options_default(&p);
  p.side = a.patch;
  p.stride = a.stride;
  if (a.agg == "average") {
    p.aggregation = CLSK_AGG_AVERAGE;
  } else if (a.agg == "center") {
    p.aggregation = CLSK_AGG_CENTER;
  } else {
    throw Failure(CLSK_ERR_CONFIG, "--agg must be average or center");
  }
  Model model = make<Model>([&](clsk_model** m) { return clsk_model_read(a.base.model.c_str(), m); });
  Image noisy = make<Image>([&](clsk_image** i) { return clsk_image_read_pgm(a.base.input.c_str(), i); });
  Image out = make<Image>([&](clsk_image** i) { return clsk_denoise_image(model.get(), noisy.get(), &o, &p, i); });
  check(clsk_image_write_pgm(out.get(), a.base.out.c_str()));
  write_manifest(g, "denoise-image", {a.base.out});
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string clean;
  std::string noisy;
  std::string denoised;
  std::string report;
};

std::vector<double> load_signal(const std::string& path) {
  if (is_pgm(path)) {
    Image img = make<Image>([&](clsk_image** i) { return clsk_image_read_pgm(path.c_str(), i); });
    const double* px = clsk_image_pixels(img.get());
    return std::vector<double>(px, px + clsk_image_width(img.get()) * clsk_image_height(img.get()));
  }
  Points pts = make<Points>([&](clsk_points** p) { return clsk_points_read_csv(path.c_str(), p); });
  const double* d = clsk_points_data(pts.get());
  return std::vector<double>(d, d + clsk_points_dim(pts.get()) * clsk_points_count(pts.get()));
}

void run_eval(const Globals& g, const EvalArgs& a) {
  const auto clean = load_signal(a.clean);
  const auto noisy = load_signal(a.noisy);
  const auto den = load_signal(a.denoised);
  if (clean.size() != noisy.size() || clean.size() != den.size()) {
    throw Failure(CLSK_ERR_SHAPE, "clean, noisy and denoised inputs differ in size");
  }
  double snr_noisy = 0, snr_den = 0, gain = 0, psnr_noisy = 0, psnr_den = 0;
  check(clsk_snr_db(clean.data(), noisy.data(), clean.size(), &snr_noisy));
  check(clsk_snr_db(clean.data(), den.data(), clean.size(), &snr_den));
  check(clsk_snr_gain_db(clean.data(), noisy.data(), den.data(), clean.size(), &gain));
  check(clsk_psnr_db(clean.data(), noisy.data(), clean.size(), &psnr_noisy));
  check(clsk_psnr_db(clean.data(), den.data(), clean.size(), &psnr_den));
  nlohmann::ordered_json j;
  j["snr_clean_noisy_db"] = snr_noisy;
  j["snr_clean_denoised_db"] = snr_den;
  j["gain_db"] = gain;
  j["psnr_noisy_db"] = psnr_noisy;
  j["psnr_denoised_db"] = psnr_den;
  const std::string text = j.dump(2) + "\n";
  if (a.report.empty()) {
    std::cout << text;
  } else {
    write_text_atomic(a.report, text);
    write_manifest(g, "eval", {a.report});
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  g.argv.assign(argv, argv + argc);

  CLI::App app{"clsketch: sketch datasets, learn a deep regularizer from the sketch, denoise with it"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file", false);
  app.add_option("--threads", g.threads, "Worker threads for sketching")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic,
               "Require bit-reproducible results (always honoured; recorded in the manifest)");
  app.add_flag("-q,--quiet", g.quiet, "Suppress progress output");

  std::function<void()> action;

  GenSpiralArgs gs;
  auto* c_gs = app.add_subcommand("gen-spiral", "Sample points from a planar spiral");
  c_gs->add_option("--n", gs.n, "Number of samples")->check(CLI::PositiveNumber);
  c_gs->add_option("--seed", gs.seed, "Random seed");
  c_gs->add_option("--jitter", gs.jitter, "Standard deviation of Gaussian jitter")->check(CLI::NonNegativeNumber);
  c_gs->add_option("--out", gs.out, "Output CSV")->required();
  c_gs->callback([&] { action = [&] { run_gen_spiral(g, gs); }; });

  AddNoiseArgs an;
  auto* c_an = app.add_subcommand("add-noise", "Add white Gaussian noise to a CSV point set or PGM image");
  c_an->add_option("--input", an.input, "Input CSV or PGM")->required();
  c_an->add_option("--sigma", an.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  c_an->add_option("--seed", an.seed, "Random seed");
  c_an->add_option("--out", an.out, "Output file (same kind as the input)")->required();
  c_an->callback([&] { action = [&] { run_add_noise(g, an); }; });

  GenImageArgs gi;
  auto* c_gi = app.add_subcommand("gen-image", "Render a synthetic piecewise-smooth test image");
  c_gi->add_option("--width", gi.width)->check(CLI::PositiveNumber);
  c_gi->add_option("--height", gi.height)->check(CLI::PositiveNumber);
  c_gi->add_option("--shapes", gi.shapes, "Number of random shapes");
  c_gi->add_option("--seed", gi.seed, "Random seed");
  c_gi->add_option("--out", gi.out, "Output PGM")->required();
  c_gi->callback([&] { action = [&] { run_gen_image(g, gi); }; });

  SamplePatchesArgs sp;
  auto* c_sp = app.add_subcommand("sample-patches", "Draw random square patches from a PGM image");
  c_sp->add_option("--input", sp.input, "Input PGM")->required();
  c_sp->add_option("--count", sp.count, "Number of patches")->check(CLI::PositiveNumber);
  c_sp->add_option("--side", sp.side, "Patch side length")->check(CLI::PositiveNumber);
  c_sp->add_option("--seed", sp.seed, "Random seed");
  c_sp->add_flag("--augment", sp.augment, "Apply a random rotation/reflection to each patch");
  c_sp->add_option("--out", sp.out, "Output CSV")->required();
  c_sp->callback([&] { action = [&] { run_sample_patches(g, sp); }; });

  SketchArgs sk;
  auto* c_sk = app.add_subcommand("sketch", "Compute the random Fourier sketch of a CSV point set");
  c_sk->add_option("--input", sk.input, "Input CSV")->required();
  c_sk->add_option("--m", sk.m, "Sketch size")->check(CLI::PositiveNumber);
  c_sk->add_option("--scale", sk.scale, "Frequency standard deviation, or 'auto'");
  c_sk->add_option("--seed", sk.seed, "Frequency seed");
  c_sk->add_option("--out", sk.out, "Output sketch file")->required();
  c_sk->add_option("--normalizer", sk.normalizer, "Normalizer JSON output (default <out>.norm.json)");
  c_sk->callback([&] { action = [&] { run_sketch(g, sk); }; });

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Learn a regularizer from a sketch with CL-SGD");
  c_tr->add_option("--sketch", tr.sketch, "Sketch file")->required();
  c_tr->add_option("--normalizer", tr.normalizer, "Normalizer JSON (default <sketch>.norm.json)");
  c_tr->add_option("--algo", tr.algo, "naive, unbiased or fixed-grid");
  c_tr->add_option("--layers", tr.layers, "Comma-separated layer widths, input first");
  c_tr->add_option("--points", tr.points, "Grid size P")->check(CLI::PositiveNumber);
  c_tr->add_option("--iters", tr.iters, "Iterations K");
  c_tr->add_option("--step-rule", tr.step_rule, "constant, diminishing or adam");
  c_tr->add_option("--lr", tr.lr, "Step size, initial step size or Adam learning rate");
  c_tr->add_option("--alpha", tr.alpha, "'auto' or a fixed positive normalization (default 50 for unbiased, auto otherwise)");
  c_tr->add_option("--seed", tr.seed, "Initialization seed");
  c_tr->add_option("--grid-seed", tr.grid_seed, "Grid seed (default seed + 1)");
  c_tr->add_option("--eval-points", tr.eval_points, "Monitoring grid size (default 4 P)");
  c_tr->add_option("--eval-seed", tr.eval_seed, "Monitoring grid seed");
  c_tr->add_option("--checkpoint", tr.checkpoint, "Checkpoint interval (default K / 100)");
  c_tr->add_flag("--allow-shared-seed", tr.allow_shared_seed, "Warn instead of failing on dependent grids");
  c_tr->add_option("--out", tr.out, "Output model file")->required();
  c_tr->add_option("--history", tr.history, "History CSV (default <out>.history.csv)");
  c_tr->callback([&] { action = [&] { run_train(g, tr); }; });

  auto add_denoise_flags = [](CLI::App* c, DenoiseArgs& d) {
    c->add_option("--model", d.model, "Model file")->required();
    c->add_option("--lambda", d.lambda, "Regularization weight")->check(CLI::NonNegativeNumber);
    c->add_option("--steps", d.steps, "Gradient steps");
    c->add_option("--lr", d.lr, "Gradient step size")->check(CLI::PositiveNumber);
    c->add_option("--tol", d.tol, "Stop once an update moves less than this");
    c->add_flag("--no-backtrack", d.no_backtrack, "Keep the step fixed even if the objective increases");
  };

  DenoiseArgs dn;
  auto* c_dn = app.add_subcommand("denoise", "Denoise a CSV point set");
  add_denoise_flags(c_dn, dn);
  c_dn->add_option("--input", dn.input, "Noisy CSV")->required();
  c_dn->add_option("--out", dn.out, "Output CSV")->required();
  c_dn->callback([&] { action = [&] { run_denoise(g, dn); }; });

  DenoiseImageArgs di;
  auto* c_di = app.add_subcommand("denoise-image", "Denoise a PGM image patch by patch");
  add_denoise_flags(c_di, di.base);
  c_di->add_option("--input", di.base.input, "Noisy PGM")->required();
  c_di->add_option("--patch", di.patch, "Patch side length")->check(CLI::PositiveNumber);
  c_di->add_option("--stride", di.stride, "Patch stride, 1 to side")->check(CLI::PositiveNumber);
  c_di->add_option("--agg", di.agg, "average or center");
  c_di->add_option("--out", di.base.out, "Output PGM")->required();
  c_di->callback([&] { action = [&] { run_denoise_image(g, di); }; });

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Report SNR and PSNR of noisy and denoised signals");
  c_ev->add_option("--clean", ev.clean, "Clean CSV or PGM")->required();
  c_ev->add_option("--noisy", ev.noisy, "Noisy CSV or PGM")->required();
  c_ev->add_option("--denoised", ev.denoised, "Denoised CSV or PGM")->required();
  c_ev->add_option("--report", ev.report, "Report JSON (default: stdout)");
  c_ev->callback([&] { action = [&] { run_eval(g, ev); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
  } catch (const Failure& f) {
    std::cerr << "clsketch: error (" << clsk_status_name(f.status()) << "): " << f.message() << "\n";
    return exit_code(f.status());
  } catch (const std::exception& e) {
    std::cerr << "clsketch: error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
