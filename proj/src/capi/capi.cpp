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

#include "clsketch/clsketch.h"

#include <cstdio>
#include <memory>
#include <new>
#include <random>
#include <span>
#include <string>

#include "clsgd/train.hpp"
#include "data/generators.hpp"
#include "data/io.hpp"
#include "denoise/metrics.hpp"
#include "denoise/patches.hpp"
#include "denoise/variational.hpp"
#include "error.hpp"
#include "sketch/frequencies.hpp"
#include "sketch/sketch_state.hpp"

struct clsk_points {
  Eigen::MatrixXd m;  // dim x count
};
struct clsk_normalizer {
  clsk::data::AffineNormalizer n;
};
struct clsk_sketch {
  clsk::sketch::Sketch s;
};
struct clsk_model {
  clsk::data::Model m;
};
struct clsk_history {
  clsk::clsgd::TrainHistory h;
};
struct clsk_image {
  clsk::denoise::GrayImage img;
};

namespace {

using clsk::ErrorCode;
using clsk::require;

thread_local std::string g_last_error;

// Rows per streaming block; a multiple of the shard size keeps the result
// identical to sketching the whole file in memory.
constexpr std::size_t kStreamBlockRows = 4 * clsk::sketch::kSketchShardRows;
constexpr std::size_t kScaleReservoir = 2000;

template <class F>
clsk_status guard(F&& f) noexcept {
  try {
    f();
    return CLSK_OK;
  } catch (const clsk::Error& e) {
    g_last_error = e.what();
    return static_cast<clsk_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return CLSK_ERR_INTERNAL;
}

template <class T>
const T& deref(const T* p, const char* what) {
  require(p != nullptr, ErrorCode::kConfig, std::string(what) + " is null");
  return *p;
}

template <class T>
void check_out(T** out) {
  require(out != nullptr, ErrorCode::kConfig, "output pointer is null");
}

clsk::denoise::DenoiseConfig to_config(const clsk_denoise_options* o) {
  clsk_denoise_options def;
  clsk_denoise_options_default(&def);
  const clsk_denoise_options& src = o != nullptr ? *o : def;
  clsk::denoise::DenoiseConfig c;
  c.lambda = src.lambda;
  c.steps = src.steps;
  c.step_size = src.step_size;
  c.tolerance = src.tolerance;
  c.backtracking = src.backtracking != 0;
  return c;
}

}  // namespace

extern "C" {

const char* clsk_version(void) { return "0.1.0"; }

const char* clsk_status_name(clsk_status status) {
  switch (status) {
    case CLSK_OK: return "ok";
    case CLSK_ERR_CONFIG: return "config";
    case CLSK_ERR_SHAPE: return "shape";
    case CLSK_ERR_IO: return "io";
    case CLSK_ERR_FORMAT: return "format";
    case CLSK_ERR_TRUNCATED: return "truncated";
    case CLSK_ERR_VERSION: return "version";
    case CLSK_ERR_MAGIC: return "magic";
    case CLSK_ERR_FINGERPRINT: return "fingerprint";
    case CLSK_ERR_DIVERGENCE: return "divergence";
    case CLSK_ERR_DEGENERATE: return "degenerate";
    case CLSK_ERR_INDEPENDENCE: return "independence";
    case CLSK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* clsk_last_error(void) { return g_last_error.c_str(); }

// ---- point sets -----------------------------------------------------------

clsk_status clsk_points_create(size_t dim, size_t count, const double* data, clsk_points** out) {
  return guard([&] {
    check_out(out);
    require(dim >= 1, ErrorCode::kConfig, "dimension must be at least 1");
    require(data != nullptr || count == 0, ErrorCode::kConfig, "data is null");
    auto p = std::make_unique<clsk_points>();
    p->m.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
    if (count > 0) p->m = Eigen::Map<const Eigen::MatrixXd>(data, p->m.rows(), p->m.cols());
    *out = p.release();
  });
}

clsk_status clsk_points_read_csv(const char* path, clsk_points** out) {
  return guard([&] {
    check_out(out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    auto p = std::make_unique<clsk_points>();
    p->m = clsk::data::read_points_csv(path);
    *out = p.release();
  });
}

clsk_status clsk_points_write_csv(const clsk_points* points, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    clsk::data::write_points_csv(path, deref(points, "points").m);
  });
}

size_t clsk_points_dim(const clsk_points* points) { return points ? static_cast<size_t>(points->m.rows()) : 0; }
size_t clsk_points_count(const clsk_points* points) { return points ? static_cast<size_t>(points->m.cols()) : 0; }
const double* clsk_points_data(const clsk_points* points) { return points ? points->m.data() : nullptr; }
void clsk_points_free(clsk_points* points) { delete points; }

clsk_status clsk_generate_spiral(size_t count, double jitter, uint64_t seed, clsk_points** out) {
  return guard([&] {
    check_out(out);
    clsk::data::SpiralSpec spec;
    spec.n = count;
    spec.jitter = jitter;
    spec.seed = seed;
    auto p = std::make_unique<clsk_points>();
    p->m = clsk::data::generate_spiral(spec);
    *out = p.release();
  });
}

clsk_status clsk_points_add_noise(const clsk_points* points, double sigma, uint64_t seed, clsk_points** out) {
  return guard([&] {
    check_out(out);
    auto p = std::make_unique<clsk_points>();
    p->m = clsk::data::add_gaussian_noise(deref(points, "points").m, sigma, seed);
    *out = p.release();
  });
}

// ---- normalizer -----------------------------------------------------------

clsk_status clsk_normalizer_fit(const clsk_points* points, clsk_normalizer** out) {
  return guard([&] {
    check_out(out);
    auto n = std::make_unique<clsk_normalizer>();
    n->n = clsk::data::AffineNormalizer::fit(deref(points, "points").m);
    *out = n.release();
  });
}

clsk_status clsk_normalizer_create(size_t dim, const double* mins, const double* maxs, clsk_normalizer** out) {
  return guard([&] {
    check_out(out);
    require(mins != nullptr && maxs != nullptr, ErrorCode::kConfig, "bounds are null");
    auto n = std::make_unique<clsk_normalizer>();
    n->n = clsk::data::AffineNormalizer(std::vector<double>(mins, mins + dim), std::vector<double>(maxs, maxs + dim));
    *out = n.release();
  });
}

clsk_status clsk_normalizer_read(const char* path, clsk_normalizer** out) {
  return guard([&] {
    check_out(out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    auto n = std::make_unique<clsk_normalizer>();
    n->n = clsk::data::read_normalizer(path);
    *out = n.release();
  });
}

clsk_status clsk_normalizer_write(const clsk_normalizer* norm, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    clsk::data::write_normalizer(path, deref(norm, "normalizer").n);
  });
}

size_t clsk_normalizer_dim(const clsk_normalizer* norm) { return norm ? norm->n.dim() : 0; }

clsk_status clsk_normalizer_apply(const clsk_normalizer* norm, const clsk_points* in, int inverse,
                                  clsk_points** out) {
  return guard([&] {
    check_out(out);
    const auto& n = deref(norm, "normalizer").n;
    auto p = std::make_unique<clsk_points>();
    p->m = deref(in, "points").m;
    if (inverse != 0) {
      n.invert_inplace(p->m);
    } else {
      n.apply_inplace(p->m);
    }
    *out = p.release();
  });
}

void clsk_normalizer_free(clsk_normalizer* norm) { delete norm; }

// ---- sketches -------------------------------------------------------------

clsk_status clsk_sketch_points(const clsk_points* normalized, size_t m, double scale, uint64_t seed,
                               unsigned threads, clsk_sketch** out) {
  return guard([&] {
    check_out(out);
    const auto& pts = deref(normalized, "points").m;
    require(pts.cols() > 0, ErrorCode::kConfig, "cannot sketch an empty point set");
    if (scale <= 0.0) scale = clsk::sketch::default_frequency_scale(pts, seed);
    const clsk::sketch::FrequencySet freqs({m, static_cast<std::size_t>(pts.rows()), scale, seed});
    auto s = std::make_unique<clsk_sketch>();
    s->s = clsk::sketch::sketch_points(freqs, pts, threads);
    *out = s.release();
  });
}

clsk_status clsk_sketch_csv(const char* path, size_t m, double scale, uint64_t seed, unsigned threads,
                            clsk_sketch** sketch_out, clsk_normalizer** normalizer_out) {
  return guard([&] {
    check_out(sketch_out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    std::vector<double> row;

    // Pass 1: bounding box and a uniform reservoir for the scale heuristic.
    std::vector<double> lo, hi, reservoir;
    std::size_t d = 0;
    std::uint64_t n = 0;
    {
      clsk::data::CsvReader reader(path);
      std::mt19937_64 rng(clsk::sketch::derive_seed(seed, 0x7e5e7001ULL));
      while (reader.next(row)) {
        if (n == 0) {
          d = row.size();
          lo = row;
          hi = row;
        }
        for (std::size_t j = 0; j < d; ++j) {
          lo[j] = std::min(lo[j], row[j]);
          hi[j] = std::max(hi[j], row[j]);
        }
        if (n < kScaleReservoir) {
          reservoir.insert(reservoir.end(), row.begin(), row.end());
        } else {
          const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(rng);
          if (k < kScaleReservoir) std::copy(row.begin(), row.end(), reservoir.begin() + static_cast<long>(k * d));
        }
        ++n;
      }
    }
    require(n > 0, ErrorCode::kFormat, std::string("'") + path + "' contains no samples");
    clsk::data::AffineNormalizer norm(lo, hi);
    if (scale <= 0.0) {
      Eigen::MatrixXd sample = Eigen::Map<const Eigen::MatrixXd>(
          reservoir.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(reservoir.size() / d));
      norm.apply_inplace(sample);
      scale = clsk::sketch::default_frequency_scale(sample, seed);
    }
    const clsk::sketch::FrequencySet freqs({m, d, scale, seed});

    // Pass 2: sketch normalized samples block by block.
    clsk::sketch::SketchState state(freqs);
    {
      clsk::data::CsvReader reader(path);
      Eigen::MatrixXd block(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(kStreamBlockRows));
      Eigen::Index filled = 0;
      auto flush = [&] {
        if (filled == 0) return;
        Eigen::MatrixXd part = block.leftCols(filled);
        norm.apply_inplace(part);
        clsk::sketch::accumulate_points(state, freqs, part, threads);
        filled = 0;
      };
      while (reader.next(row)) {
        block.col(filled++) = Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(d));
        if (filled == block.cols()) flush();
      }
      flush();
      require(state.count() == n, ErrorCode::kIo, std::string("'") + path + "' changed between passes");
    }
    auto s = std::make_unique<clsk_sketch>();
    s->s = state.finalize();
    std::unique_ptr<clsk_normalizer> nout;
    if (normalizer_out != nullptr) {
      nout = std::make_unique<clsk_normalizer>();
      nout->n = norm;
    }
    *sketch_out = s.release();
    if (normalizer_out != nullptr) *normalizer_out = nout.release();
  });
}

clsk_status clsk_sketch_read(const char* path, clsk_sketch** out) {
  return guard([&] {
    check_out(out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    auto s = std::make_unique<clsk_sketch>();
    s->s = clsk::data::read_sketch(path);
    *out = s.release();
  });
}

clsk_status clsk_sketch_write(const clsk_sketch* sketch, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    clsk::data::write_sketch(path, deref(sketch, "sketch").s);
  });
}

size_t clsk_sketch_m(const clsk_sketch* sketch) { return sketch ? sketch->s.spec.m : 0; }
size_t clsk_sketch_dim(const clsk_sketch* sketch) { return sketch ? sketch->s.spec.d : 0; }
uint64_t clsk_sketch_count(const clsk_sketch* sketch) { return sketch ? sketch->s.n : 0; }
double clsk_sketch_scale(const clsk_sketch* sketch) { return sketch ? sketch->s.spec.scale : 0.0; }
uint64_t clsk_sketch_seed(const clsk_sketch* sketch) { return sketch ? sketch->s.spec.seed : 0; }
uint64_t clsk_sketch_fingerprint(const clsk_sketch* sketch) { return sketch ? sketch->s.spec.fingerprint() : 0; }
double clsk_sketch_compression_factor(const clsk_sketch* sketch) {
  return sketch ? sketch->s.compression_factor() : 0.0;
}

void clsk_sketch_values(const clsk_sketch* sketch, double* out) {
  if (sketch == nullptr || out == nullptr) return;
  for (std::size_t l = 0; l < sketch->s.values.size(); ++l) {
    out[2 * l] = sketch->s.values[l].real();
    out[2 * l + 1] = sketch->s.values[l].imag();
  }
}

void clsk_sketch_free(clsk_sketch* sketch) { delete sketch; }

// ---- models ---------------------------------------------------------------

clsk_status clsk_model_init(const size_t* layer_dims, size_t layer_count, uint64_t seed,
                            const clsk_normalizer* norm, clsk_model** out) {
  return guard([&] {
    check_out(out);
    require(layer_dims != nullptr, ErrorCode::kConfig, "layer dimensions are null");
    const std::vector<std::size_t> dims(layer_dims, layer_dims + layer_count);
    const auto& n = deref(norm, "normalizer").n;
    clsk::nn::ReluNet net = clsk::nn::init_network(dims, seed);
    require(n.dim() == net.input_dim(), ErrorCode::kShape,
            "normalizer dimension " + std::to_string(n.dim()) + " does not match the input layer " +
                std::to_string(net.input_dim()));
    *out = new clsk_model{clsk::data::Model{std::move(net), n}};
  });
}

clsk_status clsk_model_read(const char* path, clsk_model** out) {
  return guard([&] {
    check_out(out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    *out = new clsk_model{clsk::data::read_model(path)};
  });
}

clsk_status clsk_model_write(const clsk_model* model, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    clsk::data::write_model(path, deref(model, "model").m);
  });
}

size_t clsk_model_layer_count(const clsk_model* model) { return model ? model->m.net.dims().size() : 0; }
size_t clsk_model_layer_dim(const clsk_model* model, size_t layer) {
  if (model == nullptr || layer >= model->m.net.dims().size()) return 0;
  return model->m.net.dims()[layer];
}
size_t clsk_model_param_count(const clsk_model* model) { return model ? model->m.net.param_count() : 0; }
const double* clsk_model_params(const clsk_model* model) { return model ? model->m.net.params().data() : nullptr; }

clsk_status clsk_model_forward(const clsk_model* model, const double* x, double* out) {
  return guard([&] {
    const auto& net = deref(model, "model").m.net;
    require(x != nullptr && out != nullptr, ErrorCode::kConfig, "input or output is null");
    const auto y = clsk::nn::forward(net, std::span<const double>(x, net.input_dim()));
    std::copy(y.begin(), y.end(), out);
  });
}

void clsk_model_free(clsk_model* model) { delete model; }

// ---- training -------------------------------------------------------------

void clsk_train_options_default(clsk_train_options* o) {
  if (o == nullptr) return;
  const clsk::clsgd::TrainConfig c;
  o->algorithm = CLSK_ALGO_NAIVE;
  o->iterations = c.iterations;
  o->grid_points = c.grid_points;
  o->alpha_auto = 1;
  o->alpha = 1.0;
  o->step_rule = CLSK_STEP_ADAM;
  o->learning_rate = c.step.rate;
  o->grid_seed = c.grid_seed;
  o->eval_points = 0;
  o->eval_seed = c.eval_seed;
  o->checkpoint_interval = 0;
  o->allow_shared_seed = 0;
  o->dense_budget_bytes = c.dense_budget_bytes;
  o->progress = nullptr;
  o->progress_user = nullptr;
}

clsk_status clsk_train(clsk_model* model, const clsk_sketch* sketch, const clsk_train_options* options,
                       clsk_history** history_out) {
  return guard([&] {
    require(model != nullptr, ErrorCode::kConfig, "model is null");
    const auto& sk = deref(sketch, "sketch").s;
    const auto& o = deref(options, "options");
    clsk::clsgd::TrainConfig c;
    switch (o.algorithm) {
      case CLSK_ALGO_NAIVE: c.algorithm = clsk::clsgd::Algorithm::kNaive; break;
      case CLSK_ALGO_UNBIASED: c.algorithm = clsk::clsgd::Algorithm::kUnbiased; break;
      case CLSK_ALGO_FIXED_GRID: c.algorithm = clsk::clsgd::Algorithm::kFixedGrid; break;
      default: clsk::fail(ErrorCode::kConfig, "unknown algorithm");
    }
    switch (o.step_rule) {
      case CLSK_STEP_CONSTANT: c.step.kind = clsk::clsgd::StepKind::kConstant; break;
      case CLSK_STEP_DIMINISHING: c.step.kind = clsk::clsgd::StepKind::kDiminishing; break;
      case CLSK_STEP_ADAM: c.step.kind = clsk::clsgd::StepKind::kAdam; break;
      default: clsk::fail(ErrorCode::kConfig, "unknown step rule");
    }
    c.iterations = o.iterations;
    c.grid_points = o.grid_points;
    if (o.alpha_auto == 0) c.alpha = o.alpha;
    c.step.rate = o.learning_rate;
    c.grid_seed = o.grid_seed;
    c.eval_points = o.eval_points;
    c.eval_seed = o.eval_seed;
    c.checkpoint_interval = o.checkpoint_interval;
    c.allow_shared_seed = o.allow_shared_seed != 0;
    c.dense_budget_bytes = o.dense_budget_bytes;

    const clsk::sketch::FrequencySet freqs(sk.spec);
    const clsk::clsgd::ReluDensity density(model->m.net.dims());
    const auto current = model->m.net.params();
    std::vector<double> params(current.begin(), current.end());
    clsk::clsgd::TrainProgress progress;
    if (o.progress != nullptr) {
      progress = [&o](const clsk::clsgd::TrainRecord& r) {
        const clsk_train_record rec{r.iter, r.loss, r.alpha, r.step, r.seconds};
        o.progress(&rec, o.progress_user);
      };
    }
    auto history = std::make_unique<clsk_history>();
    history->h = clsk::clsgd::train(density, params, c, sk, freqs, progress);
    model->m.net = clsk::nn::ReluNet(model->m.net.dims(), std::move(params));
    if (history_out != nullptr) *history_out = history.release();
  });
}

size_t clsk_history_size(const clsk_history* history) { return history ? history->h.records.size() : 0; }

clsk_train_record clsk_history_record(const clsk_history* history, size_t index) {
  if (history == nullptr || index >= history->h.records.size()) return clsk_train_record{0, 0.0, 0.0, 0.0, 0.0};
  const auto& r = history->h.records[index];
  return clsk_train_record{r.iter, r.loss, r.alpha, r.step, r.seconds};
}

clsk_status clsk_history_write_csv(const clsk_history* history, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    std::string out = "iter,loss,alpha,step,seconds\n";
    char buf[160];
    for (const auto& r : deref(history, "history").h.records) {
      const int n = std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.6f\n",
                                  static_cast<unsigned long long>(r.iter), r.loss, r.alpha, r.step, r.seconds);
      out.append(buf, static_cast<std::size_t>(n));
    }
    clsk::data::write_file_atomic(path, out);
  });
}

void clsk_history_free(clsk_history* history) { delete history; }

// ---- denoising ------------------------------------------------------------

void clsk_denoise_options_default(clsk_denoise_options* o) {
  if (o == nullptr) return;
  const clsk::denoise::DenoiseConfig c;
  o->lambda = c.lambda;
  o->steps = c.steps;
  o->step_size = c.step_size;
  o->tolerance = c.tolerance;
  o->backtracking = c.backtracking ? 1 : 0;
}

clsk_status clsk_denoise_points(const clsk_model* model, const clsk_points* noisy,
                                const clsk_denoise_options* options, clsk_points** out) {
  return guard([&] {
    check_out(out);
    const auto& m = deref(model, "model").m;
    Eigen::MatrixXd v = deref(noisy, "points").m;
    require(static_cast<std::size_t>(v.rows()) == m.net.input_dim(), ErrorCode::kShape,
            "points have dimension " + std::to_string(v.rows()) + ", model expects " +
                std::to_string(m.net.input_dim()));
    const auto cfg = to_config(options);
    Eigen::MatrixXd u;
    if (cfg.lambda == 0.0) {
      cfg.validate();
      u = std::move(v);  // identity; skip the normalizer round trip so the copy is exact
    } else {
      m.normalizer.apply_inplace(v);
      u = clsk::denoise::denoise_batch(m.net, v, cfg);
      m.normalizer.invert_inplace(u);
    }
    auto p = std::make_unique<clsk_points>();
    p->m = std::move(u);
    *out = p.release();
  });
}

// ---- images ---------------------------------------------------------------

void clsk_patch_options_default(clsk_patch_options* o) {
  if (o == nullptr) return;
  o->side = 3;
  o->stride = 3;
  o->aggregation = CLSK_AGG_AVERAGE;
}

clsk_status clsk_image_create(size_t width, size_t height, const double* pixels, clsk_image** out) {
  return guard([&] {
    check_out(out);
    require(width >= 1 && height >= 1, ErrorCode::kConfig, "image must have positive size");
    auto img = std::make_unique<clsk_image>();
    img->img = clsk::denoise::GrayImage(width, height);
    if (pixels != nullptr) std::copy(pixels, pixels + width * height, img->img.pixels.begin());
    *out = img.release();
  });
}

clsk_status clsk_image_read_pgm(const char* path, clsk_image** out) {
  return guard([&] {
    check_out(out);
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    auto img = std::make_unique<clsk_image>();
    img->img = clsk::data::read_pgm(path);
    *out = img.release();
  });
}

clsk_status clsk_image_write_pgm(const clsk_image* image, const char* path) {
  return guard([&] {
    require(path != nullptr, ErrorCode::kConfig, "path is null");
    clsk::data::write_pgm(path, deref(image, "image").img);
  });
}

size_t clsk_image_width(const clsk_image* image) { return image ? image->img.width : 0; }
size_t clsk_image_height(const clsk_image* image) { return image ? image->img.height : 0; }
const double* clsk_image_pixels(const clsk_image* image) { return image ? image->img.pixels.data() : nullptr; }

clsk_status clsk_image_add_noise(const clsk_image* image, double sigma, uint64_t seed, clsk_image** out) {
  return guard([&] {
    check_out(out);
    const auto& src = deref(image, "image").img;
    auto img = std::make_unique<clsk_image>();
    img->img = src;
    img->img.pixels = clsk::data::add_gaussian_noise(src.pixels, sigma, seed);
    *out = img.release();
  });
}

clsk_status clsk_image_synthetic(size_t width, size_t height, uint64_t seed, size_t shapes, clsk_image** out) {
  return guard([&] {
    check_out(out);
    auto img = std::make_unique<clsk_image>();
    img->img = clsk::data::synthetic_image(width, height, seed, shapes);
    *out = img.release();
  });
}

clsk_status clsk_image_sample_patches(const clsk_image* image, size_t count, size_t side, uint64_t seed,
                                      int augment, clsk_points** out) {
  return guard([&] {
    check_out(out);
    auto p = std::make_unique<clsk_points>();
    p->m = clsk::data::sample_patches(deref(image, "image").img, count, side, seed, augment != 0);
    *out = p.release();
  });
}

clsk_status clsk_denoise_image(const clsk_model* model, const clsk_image* noisy,
                               const clsk_denoise_options* options, const clsk_patch_options* patches,
                               clsk_image** out) {
  return guard([&] {
    check_out(out);
    const auto& m = deref(model, "model").m;
    clsk::denoise::PatchConfig pc;
    if (patches != nullptr) {
      pc.side = patches->side;
      pc.stride = patches->stride;
      switch (patches->aggregation) {
        case CLSK_AGG_AVERAGE: pc.aggregation = clsk::denoise::Aggregation::kAverage; break;
        case CLSK_AGG_CENTER: pc.aggregation = clsk::denoise::Aggregation::kCenter; break;
        default: clsk::fail(ErrorCode::kConfig, "unknown aggregation");
      }
    }
    auto img = std::make_unique<clsk_image>();
    img->img = clsk::denoise::denoise_image(m.net, deref(noisy, "image").img, to_config(options), pc, &m.normalizer);
    *out = img.release();
  });
}

void clsk_image_free(clsk_image* image) { delete image; }

// ---- metrics --------------------------------------------------------------

clsk_status clsk_snr_db(const double* clean, const double* x, size_t n, double* out) {
  return guard([&] {
    require(clean != nullptr && x != nullptr && out != nullptr, ErrorCode::kConfig, "null argument");
    *out = clsk::denoise::snr_db({clean, n}, {x, n});
  });
}

clsk_status clsk_snr_gain_db(const double* clean, const double* noisy, const double* denoised, size_t n,
                             double* out) {
  return guard([&] {
    require(clean != nullptr && noisy != nullptr && denoised != nullptr && out != nullptr, ErrorCode::kConfig,
            "null argument");
    *out = clsk::denoise::snr_gain_db({clean, n}, {noisy, n}, {denoised, n});
  });
}

clsk_status clsk_psnr_db(const double* reference, const double* test, size_t n, double* out) {
  return guard([&] {
    require(reference != nullptr && test != nullptr && out != nullptr, ErrorCode::kConfig, "null argument");
    *out = clsk::denoise::psnr_db({reference, n}, {test, n});
  });
}

}  // extern "C"
