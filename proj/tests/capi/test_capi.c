/* Copyright 2026 The clsketch Authors
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

/* Exercises the shared library through its C header only. */

#define _POSIX_C_SOURCE 200809L

#include <clsketch/clsketch.h>

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

static int failures = 0;

#define CHECK(cond)                                                              \
  do {                                                                           \
    if (!(cond)) {                                                               \
      fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n", __FILE__,     \
              __LINE__, #cond, clsk_last_error());                               \
      ++failures;                                                                \
    }                                                                            \
  } while (0)

#define CHECK_OK(expr) CHECK((expr) == CLSK_OK)

static char tmpdir[256];

static const char* tmp_path(const char* name) {
  static char buf[512];
  snprintf(buf, sizeof buf, "%s/%s", tmpdir, name);
  return buf;
}

static void count_records(const clsk_train_record* r, void* user) {
  (void)r;
  ++*(int*)user;
}

static void test_basics(void) {
  CHECK(strlen(clsk_version()) > 0);
  CHECK(strcmp(clsk_status_name(CLSK_ERR_TRUNCATED), "truncated") == 0);
  CHECK(strcmp(clsk_status_name(CLSK_OK), "ok") == 0);

  clsk_points* p = NULL;
  CHECK(clsk_points_create(2, 3, NULL, &p) == CLSK_ERR_CONFIG);
  CHECK(p == NULL);
  CHECK(strstr(clsk_last_error(), "null") != NULL);
  CHECK(clsk_generate_spiral(0, 0.0, 1, &p) == CLSK_ERR_CONFIG);
  CHECK(clsk_points_read_csv(tmp_path("missing.csv"), &p) == CLSK_ERR_IO);
  CHECK(clsk_generate_spiral(10, 0.0, 1, NULL) == CLSK_ERR_CONFIG);

  /* freeing NULL is harmless */
  clsk_points_free(NULL);
  clsk_sketch_free(NULL);
  clsk_model_free(NULL);
  clsk_history_free(NULL);
  clsk_image_free(NULL);
  clsk_normalizer_free(NULL);
}

static void test_points_and_normalizer(void) {
  const double data[6] = {-1.0, 0.0, 1.0, 0.5, 0.0, 1.0}; /* three 2-D samples */
  clsk_points* p = NULL;
  CHECK_OK(clsk_points_create(2, 3, data, &p));
  CHECK(clsk_points_dim(p) == 2);
  CHECK(clsk_points_count(p) == 3);
  CHECK(clsk_points_data(p)[2] == 1.0);

  clsk_normalizer* n = NULL;
  CHECK_OK(clsk_normalizer_fit(p, &n));
  clsk_points* y = NULL;
  CHECK_OK(clsk_normalizer_apply(n, p, 0, &y));
  CHECK(fabs(clsk_points_data(y)[0] - 0.01) < 1e-15);
  CHECK(fabs(clsk_points_data(y)[2] - 0.99) < 1e-15);
  CHECK(fabs(clsk_points_data(y)[4] - 0.5) < 1e-15);
  clsk_points* back = NULL;
  CHECK_OK(clsk_normalizer_apply(n, y, 1, &back));
  for (int i = 0; i < 6; ++i) CHECK(fabs(clsk_points_data(back)[i] - data[i]) < 1e-12);

  CHECK_OK(clsk_points_write_csv(p, tmp_path("p.csv")));
  clsk_points* r = NULL;
  CHECK_OK(clsk_points_read_csv(tmp_path("p.csv"), &r));
  CHECK(memcmp(clsk_points_data(r), data, sizeof data) == 0);

  CHECK_OK(clsk_normalizer_write(n, tmp_path("n.json")));
  clsk_normalizer* n2 = NULL;
  CHECK_OK(clsk_normalizer_read(tmp_path("n.json"), &n2));
  CHECK(clsk_normalizer_dim(n2) == 2);

  const double flat_min[1] = {1.0}, flat_max[1] = {1.0};
  clsk_normalizer* bad = NULL;
  CHECK(clsk_normalizer_create(1, flat_min, flat_max, &bad) == CLSK_ERR_DEGENERATE);

  clsk_points_free(p);
  clsk_points_free(y);
  clsk_points_free(back);
  clsk_points_free(r);
  clsk_normalizer_free(n);
  clsk_normalizer_free(n2);
}

static void test_sketch_train_denoise(void) {
  clsk_points* spiral = NULL;
  CHECK_OK(clsk_generate_spiral(5000, 0.0, 3, &spiral));
  CHECK_OK(clsk_points_write_csv(spiral, tmp_path("spiral.csv")));

  clsk_normalizer* norm = NULL;
  clsk_points* unit = NULL;
  CHECK_OK(clsk_normalizer_fit(spiral, &norm));
  CHECK_OK(clsk_normalizer_apply(norm, spiral, 0, &unit));

  clsk_sketch* sk = NULL;
  CHECK_OK(clsk_sketch_points(unit, 64, 0.0, 5, 1, &sk));
  CHECK(clsk_sketch_m(sk) == 64);
  CHECK(clsk_sketch_dim(sk) == 2);
  CHECK(clsk_sketch_count(sk) == 5000);
  CHECK(clsk_sketch_scale(sk) > 0.0);
  CHECK(fabs(clsk_sketch_compression_factor(sk) - 5000.0 * 2.0 / 64.0) < 1e-9);

  /* the streaming path builds the same normalizer; with the same scale the sketch agrees */
  clsk_sketch* streamed = NULL;
  clsk_normalizer* snorm = NULL;
  CHECK_OK(clsk_sketch_csv(tmp_path("spiral.csv"), 64, clsk_sketch_scale(sk), 5, 1, &streamed, &snorm));
  CHECK(clsk_sketch_fingerprint(streamed) == clsk_sketch_fingerprint(sk));
  double a[128], b[128];
  clsk_sketch_values(sk, a);
  clsk_sketch_values(streamed, b);
  double worst = 0.0;
  for (int i = 0; i < 128; ++i) worst = fmax(worst, fabs(a[i] - b[i]));
  CHECK(worst < 1e-12);

  CHECK_OK(clsk_sketch_write(sk, tmp_path("s.clsk")));
  clsk_sketch* sk2 = NULL;
  CHECK_OK(clsk_sketch_read(tmp_path("s.clsk"), &sk2));
  clsk_sketch_values(sk2, b);
  CHECK(memcmp(a, b, sizeof a) == 0);

  const size_t dims[4] = {2, 16, 16, 8};
  clsk_model* model = NULL;
  CHECK_OK(clsk_model_init(dims, 4, 7, norm, &model));
  CHECK(clsk_model_layer_count(model) == 4);
  CHECK(clsk_model_layer_dim(model, 3) == 8);
  CHECK(clsk_model_param_count(model) == 2 * 16 + 16 + 16 * 16 + 16 + 16 * 8 + 8);

  clsk_train_options opt;
  clsk_train_options_default(&opt);
  CHECK(opt.alpha_auto != 0);
  opt.iterations = 50;
  opt.grid_points = 200;
  opt.learning_rate = 1e-2;
  int calls = 0;
  opt.progress = count_records;
  opt.progress_user = &calls;
  clsk_history* hist = NULL;
  CHECK_OK(clsk_train(model, sk, &opt, &hist));
  CHECK(clsk_history_size(hist) == 51);
  CHECK(calls == 51);
  {
    const clsk_train_record first = clsk_history_record(hist, 0);
    const clsk_train_record last = clsk_history_record(hist, 50);
    CHECK(first.iter == 0);
    CHECK(last.iter == 50);
    CHECK(last.loss < first.loss);
  }
  CHECK_OK(clsk_history_write_csv(hist, tmp_path("h.csv")));
  {
    FILE* f = fopen(tmp_path("h.csv"), "r");
    char line[128] = {0};
    CHECK(f != NULL);
    if (f) {
      CHECK(fgets(line, sizeof line, f) != NULL);
      fclose(f);
    }
    CHECK(strcmp(line, "iter,loss,alpha,step,seconds\n") == 0);
  }

  /* a sketch of 3-D data cannot train a 2-D model */
  clsk_points* cube = NULL;
  const double cube_data[6] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK_OK(clsk_points_create(3, 2, cube_data, &cube));
  clsk_sketch* other = NULL;
  CHECK_OK(clsk_sketch_points(cube, 16, 3.0, 6, 1, &other));
  clsk_history* h2 = NULL;
  opt.progress = NULL;
  CHECK(clsk_train(model, other, &opt, &h2) == CLSK_ERR_SHAPE);
  CHECK(h2 == NULL);
  opt.grid_points = 0;
  CHECK(clsk_train(model, sk, &opt, &h2) == CLSK_ERR_CONFIG);
  clsk_points_free(cube);

  CHECK_OK(clsk_model_write(model, tmp_path("m.clnn")));
  clsk_model* loaded = NULL;
  CHECK_OK(clsk_model_read(tmp_path("m.clnn"), &loaded));
  CHECK(memcmp(clsk_model_params(loaded), clsk_model_params(model),
               clsk_model_param_count(model) * sizeof(double)) == 0);
  {
    FILE* f = fopen(tmp_path("bad.clnn"), "wb");
    fputs("CLNN", f);
    fclose(f);
    clsk_model* bad = NULL;
    CHECK(clsk_model_read(tmp_path("bad.clnn"), &bad) == CLSK_ERR_TRUNCATED);
  }

  /* denoising with lambda 0 returns the noisy points */
  clsk_points* noisy = NULL;
  CHECK_OK(clsk_points_add_noise(spiral, 0.15, 9, &noisy));
  clsk_denoise_options dopt;
  clsk_denoise_options_default(&dopt);
  CHECK(dopt.lambda == 0.0);
  clsk_points* den = NULL;
  CHECK_OK(clsk_denoise_points(loaded, noisy, &dopt, &den));
  worst = 0.0;
  for (size_t i = 0; i < 2 * clsk_points_count(noisy); ++i) {
    worst = fmax(worst, fabs(clsk_points_data(den)[i] - clsk_points_data(noisy)[i]));
  }
  CHECK(worst == 0.0);
  dopt.lambda = 0.01;
  clsk_points* den2 = NULL;
  CHECK_OK(clsk_denoise_points(loaded, noisy, &dopt, &den2));
  CHECK(clsk_points_count(den2) == 5000);

  double out = 0.0;
  CHECK_OK(clsk_snr_gain_db(clsk_points_data(spiral), clsk_points_data(noisy), clsk_points_data(spiral), 10000, &out));
  CHECK(out == CLSK_DB_CAP);
  CHECK_OK(clsk_snr_db(clsk_points_data(spiral), clsk_points_data(noisy), 10000, &out));
  CHECK(out > 5.0 && out < 20.0);

  clsk_points_free(spiral);
  clsk_points_free(unit);
  clsk_points_free(noisy);
  clsk_points_free(den);
  clsk_points_free(den2);
  clsk_normalizer_free(norm);
  clsk_normalizer_free(snorm);
  clsk_sketch_free(sk);
  clsk_sketch_free(sk2);
  clsk_sketch_free(streamed);
  clsk_sketch_free(other);
  clsk_model_free(model);
  clsk_model_free(loaded);
  clsk_history_free(hist);
}

static void test_images(void) {
  clsk_image* img = NULL;
  CHECK_OK(clsk_image_synthetic(40, 30, 2, 10, &img));
  CHECK(clsk_image_width(img) == 40);
  CHECK(clsk_image_height(img) == 30);
  clsk_image* noisy = NULL;
  CHECK_OK(clsk_image_add_noise(img, 0.07, 3, &noisy));
  double psnr = 0.0;
  CHECK_OK(clsk_psnr_db(clsk_image_pixels(img), clsk_image_pixels(noisy), 1200, &psnr));
  CHECK(psnr > 21.0 && psnr < 25.0);

  clsk_points* patches = NULL;
  CHECK_OK(clsk_image_sample_patches(img, 100, 3, 4, 1, &patches));
  CHECK(clsk_points_dim(patches) == 9);
  CHECK(clsk_points_count(patches) == 100);

  clsk_normalizer* n = NULL;
  CHECK_OK(clsk_normalizer_fit(patches, &n));
  const size_t dims[3] = {9, 8, 4};
  clsk_model* model = NULL;
  CHECK_OK(clsk_model_init(dims, 3, 1, n, &model));
  clsk_denoise_options dopt;
  clsk_denoise_options_default(&dopt);
  clsk_patch_options popt;
  clsk_patch_options_default(&popt);
  CHECK(popt.side == 3 && popt.stride == 3 && popt.aggregation == CLSK_AGG_AVERAGE);
  clsk_image* out = NULL;
  CHECK_OK(clsk_denoise_image(model, noisy, &dopt, &popt, &out));
  for (size_t i = 0; i < 1200; ++i) {
    double v = clsk_image_pixels(noisy)[i];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    if (clsk_image_pixels(out)[i] != v) {
      CHECK(!"lambda 0 must return the clamped input");
      break;
    }
  }

  CHECK_OK(clsk_image_write_pgm(img, tmp_path("i.pgm")));
  clsk_image* back = NULL;
  CHECK_OK(clsk_image_read_pgm(tmp_path("i.pgm"), &back));
  for (size_t i = 0; i < 1200; ++i) {
    if (fabs(clsk_image_pixels(back)[i] - clsk_image_pixels(img)[i]) > 0.5 / 255.0 + 1e-12) {
      CHECK(!"8-bit round trip within half a level");
      break;
    }
  }

  const size_t wrong[3] = {4, 8, 4};
  const double lo[4] = {0, 0, 0, 0}, hi[4] = {1, 1, 1, 1};
  clsk_normalizer* n4 = NULL;
  CHECK_OK(clsk_normalizer_create(4, lo, hi, &n4));
  clsk_model* m4 = NULL;
  CHECK(clsk_model_init(wrong, 3, 1, NULL, &m4) == CLSK_ERR_CONFIG);
  CHECK(clsk_model_init(wrong, 3, 1, n, &m4) == CLSK_ERR_SHAPE);
  CHECK_OK(clsk_model_init(wrong, 3, 1, n4, &m4));
  clsk_image* fail_out = NULL;
  CHECK(clsk_denoise_image(m4, noisy, &dopt, &popt, &fail_out) == CLSK_ERR_SHAPE);

  clsk_image_free(img);
  clsk_image_free(noisy);
  clsk_image_free(out);
  clsk_image_free(back);
  clsk_points_free(patches);
  clsk_normalizer_free(n);
  clsk_normalizer_free(n4);
  clsk_model_free(model);
  clsk_model_free(m4);
}

int main(void) {
  snprintf(tmpdir, sizeof tmpdir, "%s/clsk_capi_XXXXXX", getenv("TMPDIR") ? getenv("TMPDIR") : "/tmp");
  if (mkdtemp(tmpdir) == NULL) {
    perror("mkdtemp");
    return 1;
  }
  test_basics();
  test_points_and_normalizer();
  test_sketch_train_denoise();
  test_images();

  const char* names[] = {"missing.csv", "p.csv", "n.json", "spiral.csv", "s.clsk", "h.csv",
                         "m.clnn", "bad.clnn", "i.pgm"};
  for (size_t i = 0; i < sizeof names / sizeof names[0]; ++i) unlink(tmp_path(names[i]));
  rmdir(tmpdir);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
