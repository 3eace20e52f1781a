/*
 * Copyright 2026 The clsketch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * clsketch C API.
 *
 * Every fallible call returns a clsk_status. On failure the message is
 * available from clsk_last_error() on the calling thread until the next
 * failing call on that thread. Output handles are written only on success.
 * Handles are opaque; release each with its *_free function (NULL is
 * accepted). A handle may be read from several threads at once but must
 * not be mutated concurrently.
 *
 * Point sets are stored sample-major: sample i occupies
 * data[i * dim .. i * dim + dim - 1].
 */

#ifndef CLSKETCH_CLSKETCH_H_
#define CLSKETCH_CLSKETCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CLSK_BUILDING_LIBRARY)
#define CLSK_API __declspec(dllexport)
#else
#define CLSK_API __declspec(dllimport)
#endif
#else
#define CLSK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clsk_status {
  CLSK_OK = 0,
  CLSK_ERR_CONFIG = 1,       /* invalid argument or option */
  CLSK_ERR_SHAPE = 2,        /* dimension or length mismatch */
  CLSK_ERR_IO = 3,           /* file cannot be opened, read or written */
  CLSK_ERR_FORMAT = 4,       /* malformed file contents */
  CLSK_ERR_TRUNCATED = 5,    /* file ends early */
  CLSK_ERR_VERSION = 6,      /* unsupported file format version */
  CLSK_ERR_MAGIC = 7,        /* wrong file type */
  CLSK_ERR_FINGERPRINT = 8,  /* sketch and frequency set do not match */
  CLSK_ERR_DIVERGENCE = 9,   /* non-finite loss, parameters or iterate */
  CLSK_ERR_DEGENERATE = 10,  /* degenerate data or density */
  CLSK_ERR_INDEPENDENCE = 11,/* two-grid estimator given identical grid seeds */
  CLSK_ERR_INTERNAL = 99     /* unexpected failure, including out of memory */
} clsk_status;

CLSK_API const char* clsk_version(void);
CLSK_API const char* clsk_status_name(clsk_status status);
CLSK_API const char* clsk_last_error(void);

/* ---- point sets -------------------------------------------------------- */

typedef struct clsk_points clsk_points;

CLSK_API clsk_status clsk_points_create(size_t dim, size_t count, const double* data, clsk_points** out);
CLSK_API clsk_status clsk_points_read_csv(const char* path, clsk_points** out);
CLSK_API clsk_status clsk_points_write_csv(const clsk_points* points, const char* path);
CLSK_API size_t clsk_points_dim(const clsk_points* points);
CLSK_API size_t clsk_points_count(const clsk_points* points);
CLSK_API const double* clsk_points_data(const clsk_points* points);
CLSK_API void clsk_points_free(clsk_points* points);

/* Spiral with radius 0.3 -> 1.0 over one turn, t uniform, optional jitter. */
CLSK_API clsk_status clsk_generate_spiral(size_t count, double jitter, uint64_t seed, clsk_points** out);
/* Copy with i.i.d. N(0, sigma^2) added to every coordinate. */
CLSK_API clsk_status clsk_points_add_noise(const clsk_points* points, double sigma, uint64_t seed,
                                           clsk_points** out);

/* ---- normalizer -------------------------------------------------------- */

typedef struct clsk_normalizer clsk_normalizer;

CLSK_API clsk_status clsk_normalizer_fit(const clsk_points* points, clsk_normalizer** out);
CLSK_API clsk_status clsk_normalizer_create(size_t dim, const double* mins, const double* maxs,
                                            clsk_normalizer** out);
CLSK_API clsk_status clsk_normalizer_read(const char* path, clsk_normalizer** out);
CLSK_API clsk_status clsk_normalizer_write(const clsk_normalizer* norm, const char* path);
CLSK_API size_t clsk_normalizer_dim(const clsk_normalizer* norm);
/* Maps raw coordinates into the unit cube (forward) or back (inverse). */
CLSK_API clsk_status clsk_normalizer_apply(const clsk_normalizer* norm, const clsk_points* in, int inverse,
                                           clsk_points** out);
CLSK_API void clsk_normalizer_free(clsk_normalizer* norm);

/* ---- sketches ---------------------------------------------------------- */

typedef struct clsk_sketch clsk_sketch;

/* Sketches points already inside the unit cube. scale <= 0 selects the
 * median-phase heuristic. threads only affects speed. */
CLSK_API clsk_status clsk_sketch_points(const clsk_points* normalized, size_t m, double scale, uint64_t seed,
                                        unsigned threads, clsk_sketch** out);
/* Two streaming passes over a CSV file: the first fits the normalizer (and
 * the scale when scale <= 0), the second sketches the normalized samples. */
CLSK_API clsk_status clsk_sketch_csv(const char* path, size_t m, double scale, uint64_t seed, unsigned threads,
                                     clsk_sketch** sketch_out, clsk_normalizer** normalizer_out);
CLSK_API clsk_status clsk_sketch_read(const char* path, clsk_sketch** out);
CLSK_API clsk_status clsk_sketch_write(const clsk_sketch* sketch, const char* path);
CLSK_API size_t clsk_sketch_m(const clsk_sketch* sketch);
CLSK_API size_t clsk_sketch_dim(const clsk_sketch* sketch);
CLSK_API uint64_t clsk_sketch_count(const clsk_sketch* sketch);
CLSK_API double clsk_sketch_scale(const clsk_sketch* sketch);
CLSK_API uint64_t clsk_sketch_seed(const clsk_sketch* sketch);
CLSK_API uint64_t clsk_sketch_fingerprint(const clsk_sketch* sketch);
/* n * d / m */
CLSK_API double clsk_sketch_compression_factor(const clsk_sketch* sketch);
/* Writes m (re, im) pairs into out, which must hold 2 * m doubles. */
CLSK_API void clsk_sketch_values(const clsk_sketch* sketch, double* out);
CLSK_API void clsk_sketch_free(clsk_sketch* sketch);

/* ---- models ------------------------------------------------------------ */

typedef struct clsk_model clsk_model;

CLSK_API clsk_status clsk_model_init(const size_t* layer_dims, size_t layer_count, uint64_t seed,
                                     const clsk_normalizer* norm, clsk_model** out);
CLSK_API clsk_status clsk_model_read(const char* path, clsk_model** out);
CLSK_API clsk_status clsk_model_write(const clsk_model* model, const char* path);
CLSK_API size_t clsk_model_layer_count(const clsk_model* model);
CLSK_API size_t clsk_model_layer_dim(const clsk_model* model, size_t layer);
CLSK_API size_t clsk_model_param_count(const clsk_model* model);
CLSK_API const double* clsk_model_params(const clsk_model* model);
/* Network output f(x) for one input in normalized coordinates. */
CLSK_API clsk_status clsk_model_forward(const clsk_model* model, const double* x, double* out);
CLSK_API void clsk_model_free(clsk_model* model);

/* ---- training ---------------------------------------------------------- */

typedef enum clsk_algorithm {
  CLSK_ALGO_NAIVE = 0,
  CLSK_ALGO_UNBIASED = 1,
  CLSK_ALGO_FIXED_GRID = 2
} clsk_algorithm;

typedef enum clsk_step_rule {
  CLSK_STEP_CONSTANT = 0,
  CLSK_STEP_DIMINISHING = 1, /* lr / k */
  CLSK_STEP_ADAM = 2
} clsk_step_rule;

typedef struct clsk_train_record {
  uint64_t iter;
  double loss;
  double alpha;
  double step;
  double seconds;
} clsk_train_record;

typedef void (*clsk_progress_fn)(const clsk_train_record* record, void* user);

typedef struct clsk_train_options {
  clsk_algorithm algorithm;
  uint64_t iterations;
  size_t grid_points;
  int alpha_auto;   /* nonzero: least-squares alpha; otherwise use alpha */
  double alpha;
  clsk_step_rule step_rule;
  double learning_rate;
  uint64_t grid_seed;
  size_t eval_points;          /* 0: 4 * grid_points */
  uint64_t eval_seed;
  uint64_t checkpoint_interval; /* 0: iterations / 100, at least 1 */
  int allow_shared_seed;
  size_t dense_budget_bytes;
  clsk_progress_fn progress; /* may be NULL */
  void* progress_user;
} clsk_train_options;

typedef struct clsk_history clsk_history;

CLSK_API void clsk_train_options_default(clsk_train_options* options);
/* Trains `model` in place. The sketch dimension must match the model input. */
CLSK_API clsk_status clsk_train(clsk_model* model, const clsk_sketch* sketch, const clsk_train_options* options,
                                clsk_history** history_out);
CLSK_API size_t clsk_history_size(const clsk_history* history);
CLSK_API clsk_train_record clsk_history_record(const clsk_history* history, size_t index);
/* CSV with header iter,loss,alpha,step,seconds */
CLSK_API clsk_status clsk_history_write_csv(const clsk_history* history, const char* path);
CLSK_API void clsk_history_free(clsk_history* history);

/* ---- denoising --------------------------------------------------------- */

typedef struct clsk_denoise_options {
  double lambda;
  uint64_t steps;
  double step_size;
  double tolerance;
  int backtracking;
} clsk_denoise_options;

CLSK_API void clsk_denoise_options_default(clsk_denoise_options* options);
/* Raw coordinates in and out; the model's normalizer is applied around the
 * variational solve. */
CLSK_API clsk_status clsk_denoise_points(const clsk_model* model, const clsk_points* noisy,
                                         const clsk_denoise_options* options, clsk_points** out);

/* ---- images ------------------------------------------------------------ */

typedef struct clsk_image clsk_image;

typedef enum clsk_aggregation { CLSK_AGG_AVERAGE = 0, CLSK_AGG_CENTER = 1 } clsk_aggregation;

typedef struct clsk_patch_options {
  size_t side;
  size_t stride;
  clsk_aggregation aggregation;
} clsk_patch_options;

CLSK_API void clsk_patch_options_default(clsk_patch_options* options);
CLSK_API clsk_status clsk_image_create(size_t width, size_t height, const double* pixels, clsk_image** out);
CLSK_API clsk_status clsk_image_read_pgm(const char* path, clsk_image** out);
CLSK_API clsk_status clsk_image_write_pgm(const clsk_image* image, const char* path);
CLSK_API size_t clsk_image_width(const clsk_image* image);
CLSK_API size_t clsk_image_height(const clsk_image* image);
CLSK_API const double* clsk_image_pixels(const clsk_image* image);
/* Noise is not clamped; clamping happens when the image is written. */
CLSK_API clsk_status clsk_image_add_noise(const clsk_image* image, double sigma, uint64_t seed, clsk_image** out);
CLSK_API clsk_status clsk_image_synthetic(size_t width, size_t height, uint64_t seed, size_t shapes,
                                          clsk_image** out);
/* Random side x side patches as a side^2-dimensional point set. */
CLSK_API clsk_status clsk_image_sample_patches(const clsk_image* image, size_t count, size_t side, uint64_t seed,
                                               int augment, clsk_points** out);
CLSK_API clsk_status clsk_denoise_image(const clsk_model* model, const clsk_image* noisy,
                                        const clsk_denoise_options* options, const clsk_patch_options* patches,
                                        clsk_image** out);
CLSK_API void clsk_image_free(clsk_image* image);

/* ---- metrics ----------------------------------------------------------- */

/* Results are capped at CLSK_DB_CAP when the error is exactly zero. */
#define CLSK_DB_CAP 999.0

CLSK_API clsk_status clsk_snr_db(const double* clean, const double* x, size_t n, double* out);
CLSK_API clsk_status clsk_snr_gain_db(const double* clean, const double* noisy, const double* denoised, size_t n,
                                      double* out);
CLSK_API clsk_status clsk_psnr_db(const double* reference, const double* test, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CLSKETCH_CLSKETCH_H_ */
