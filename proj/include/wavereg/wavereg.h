/*
 * Copyright 2026 The wavereg Authors
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

#ifndef WAVEREG_WAVEREG_H
#define WAVEREG_WAVEREG_H

/*
 * C interface to the wavereg registration library.
 *
 * Every object is an opaque handle released with its matching *_free
 * function. Calls that can fail return a wr_status; on failure
 * wr_last_error() describes the problem until the next failing call on the
 * same thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WAVEREG_BUILDING_DLL)
#    define WAVEREG_API __declspec(dllexport)
#  else
#    define WAVEREG_API __declspec(dllimport)
#  endif
#else
#  define WAVEREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wr_status {
  WR_OK = 0,
  WR_ERR_PARAMETER = 1,
  WR_ERR_IO = 2,
  WR_ERR_FORMAT = 3,
  WR_ERR_DIMENSION = 4,
  WR_ERR_NUMERIC = 5,
  WR_ERR_REGISTRATION = 6,
  WR_ERR_INTERNAL = 7
} wr_status;

typedef struct wr_image wr_image;
typedef struct wr_mask wr_mask;
typedef struct wr_config wr_config;
typedef struct wr_result wr_result;

/* Transform parameters; theta in radians. Maps fixed to moving coordinates
 * about the image center, so positive tx moves content left. */
typedef struct wr_params {
  double tx, ty, theta, sx, sy, k;
} wr_params;

WAVEREG_API const char* wr_version(void);
WAVEREG_API const char* wr_last_error(void);
WAVEREG_API const char* wr_status_name(wr_status status);
WAVEREG_API wr_params wr_params_identity(void);

/* Images */
WAVEREG_API wr_status wr_image_create(int width, int height, const double* data, wr_image** out);
WAVEREG_API wr_status wr_image_load_pgm(const char* path, wr_image** out);
/* maxval must be 255 or 65535. */
WAVEREG_API wr_status wr_image_save_pgm(const wr_image* image, const char* path, int maxval);
WAVEREG_API int wr_image_width(const wr_image* image);
WAVEREG_API int wr_image_height(const wr_image* image);
/* Copies width*height intensities into out; count must be at least that. */
WAVEREG_API wr_status wr_image_copy_data(const wr_image* image, double* out, size_t count);
WAVEREG_API void wr_image_free(wr_image* image);

/* Masks; nonzero PGM samples are set bits. */
WAVEREG_API wr_status wr_mask_load_pgm(const char* path, wr_mask** out);
WAVEREG_API size_t wr_mask_count(const wr_mask* mask);
WAVEREG_API void wr_mask_free(wr_mask* mask);

/* Grey/fuchsia difference overlay written as binary PPM. mask may be NULL
 * (all pixels valid). tolerance_fraction <= 0 selects the default 0.1. */
WAVEREG_API wr_status wr_overlay_write_ppm(const wr_image* fixed, const wr_image* registered, const wr_mask* mask,
                                           double tolerance_fraction, const char* path);

/* Synthetic fixtures */
typedef struct wr_fixture_spec {
  const char* pattern; /* "phantom", "checker", "noise" */
  int size;
  wr_params truth;
  const char* remap;   /* "identity", "invert", "gamma:<g>", "negate-log" */
  double noise_sigma;  /* fraction of the intensity range */
  uint64_t seed;
} wr_fixture_spec;

WAVEREG_API wr_fixture_spec wr_fixture_spec_default(void);
WAVEREG_API wr_status wr_fixture_generate(const wr_fixture_spec* spec, wr_image** fixed, wr_image** moving);
/* Writes fixed.pgm, moving.pgm and truth.json into dir. */
WAVEREG_API wr_status wr_fixture_write(const wr_fixture_spec* spec, const char* dir);

/* Registration configuration */
WAVEREG_API wr_status wr_config_create(wr_config** out);
WAVEREG_API void wr_config_free(wr_config* config);
/* "pyramid", "wavelet" or "dwt-pyramid". */
WAVEREG_API wr_status wr_config_set_method(wr_config* config, const char* method);
WAVEREG_API wr_status wr_config_set_seed(wr_config* config, uint64_t seed);
WAVEREG_API wr_status wr_config_set_pyramid_levels(wr_config* config, int levels);
WAVEREG_API wr_status wr_config_set_max_iterations(wr_config* config, int iterations);
WAVEREG_API wr_status wr_config_set_histogram_bins(wr_config* config, int bins);
/* "sum_all_bands" or "ll_only". */
WAVEREG_API wr_status wr_config_set_subband_objective(wr_config* config, const char* objective);
WAVEREG_API wr_status wr_config_set_initial(wr_config* config, const wr_params* initial);
/* Six flags in tx, ty, theta, sx, sy, k order; zero freezes a parameter. */
WAVEREG_API wr_status wr_config_set_parameter_mask(wr_config* config, const int active[6]);

/* Registration */
WAVEREG_API wr_status wr_register(const wr_image* fixed, const wr_image* moving, const wr_config* config,
                                  wr_result** out);
WAVEREG_API wr_status wr_result_params(const wr_result* result, wr_params* out);
WAVEREG_API double wr_result_max_mi_bits(const wr_result* result);
WAVEREG_API double wr_result_final_mi_bits(const wr_result* result);
WAVEREG_API double wr_result_cc(const wr_result* result);
WAVEREG_API wr_status wr_result_registered(const wr_result* result, wr_image** out);
/* Writes registered.pgm, mask.pgm, params.json, metrics.json, trace_level*.csv. */
WAVEREG_API wr_status wr_result_write(const wr_result* result, const char* dir);
WAVEREG_API void wr_result_free(wr_result* result);

/* Three-way comparison. `source` is a manifest CSV (id,fixed_path,moving_path)
 * or a directory of fixture subdirectories. */
WAVEREG_API wr_status wr_compare_count_pairs(const char* source, size_t* count);
/* Writes <out_dir>/report.csv and, when write_pair_outputs is nonzero, the
 * per-method results under <out_dir>/<id>/<method>/. */
WAVEREG_API wr_status wr_compare(const char* source, const wr_config* config, const char* out_dir,
                                 int write_pair_outputs);

#ifdef __cplusplus
}
#endif

#endif /* WAVEREG_WAVEREG_H */
