/* mcwl — motion-compensated wavelet lifting for volumetric data.
 *
 * C interface of the shared library. All objects are opaque handles
 * owned by the library; every function that can fail returns an
 * mcwl_status, with a human-readable message available from
 * mcwl_last_error() on the calling thread.
 */
#ifndef MCWL_H
#define MCWL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mcwl_volume mcwl_volume;
typedef struct mcwl_decomp mcwl_decomp;
typedef struct mcwl_report mcwl_report;

typedef enum mcwl_status {
  MCWL_OK = 0,
  MCWL_ERR_ARGUMENT = 1,   /* invalid parameter or dimension mismatch */
  MCWL_ERR_FORMAT = 2,     /* malformed or corrupt file contents */
  MCWL_ERR_IO = 3,         /* filesystem failure */
  MCWL_ERR_DEGENERATE = 4, /* metric undefined for this input */
  MCWL_ERR_INTERNAL = 5
} mcwl_status;

typedef enum mcwl_method {
  MCWL_METHOD_ZERO = 0,
  MCWL_METHOD_BLOCK = 1,
  MCWL_METHOD_BLOCK_FILL = 2,
  MCWL_METHOD_MESH = 3
} mcwl_method;

typedef enum mcwl_rounding {
  MCWL_ROUNDING_PAPER = 0,   /* floor(sum/4) in the update step */
  MCWL_ROUNDING_JPEG2000 = 1 /* floor((sum+2)/4) */
} mcwl_rounding;

typedef enum mcwl_report_format {
  MCWL_FORMAT_CSV = 0,
  MCWL_FORMAT_JSON = 1
} mcwl_report_format;

typedef enum mcwl_phantom_kind {
  MCWL_PHANTOM_STATIC = 0,
  MCWL_PHANTOM_TRANSLATE = 1,
  MCWL_PHANTOM_ELLIPTIC = 2,
  MCWL_PHANTOM_NOISE = 3
} mcwl_phantom_kind;

typedef struct mcwl_phantom_spec {
  mcwl_phantom_kind kind;
  int32_t shift_y, shift_x;  /* per-slice translation */
  int32_t amplitude;         /* per-slice ellipse boundary displacement */
  int32_t noise_amplitude;   /* uniform noise in [-a, a], any kind */
  uint64_t seed;
} mcwl_phantom_spec;

typedef struct mcwl_transform_params {
  mcwl_method method;
  uint32_t block_size;   /* block matching, default 8 */
  uint32_t search_range; /* full search radius, default 8 */
  uint32_t grid_spacing; /* mesh grid, default 8 */
  uint32_t vertex_block; /* odd vertex matching window, default 7 */
  mcwl_rounding rounding;
} mcwl_transform_params;

const char* mcwl_version(void);
const char* mcwl_status_name(mcwl_status status);
/* Message for the most recent failing call on this thread ("" if none). */
const char* mcwl_last_error(void);

/* ---- volumes ------------------------------------------------------- */

/* voxels may be NULL for an all-zero volume; otherwise it must hold
 * slices*rows*cols values in slice-major, row-major order. */
mcwl_status mcwl_volume_create(uint32_t slices, uint32_t rows, uint32_t cols,
                               uint8_t bit_depth, const uint16_t* voxels,
                               mcwl_volume** out);
void mcwl_volume_free(mcwl_volume* volume);
mcwl_status mcwl_volume_load(const char* path, mcwl_volume** out);
mcwl_status mcwl_volume_save(const mcwl_volume* volume, const char* path);
uint32_t mcwl_volume_slices(const mcwl_volume* volume);
uint32_t mcwl_volume_rows(const mcwl_volume* volume);
uint32_t mcwl_volume_cols(const mcwl_volume* volume);
uint8_t mcwl_volume_bit_depth(const mcwl_volume* volume);
const uint16_t* mcwl_volume_voxels(const mcwl_volume* volume);
int mcwl_volume_equal(const mcwl_volume* a, const mcwl_volume* b);

void mcwl_phantom_spec_default(mcwl_phantom_spec* spec);
mcwl_status mcwl_phantom_generate(const mcwl_phantom_spec* spec, uint32_t slices,
                                  uint32_t rows, uint32_t cols, uint8_t bit_depth,
                                  mcwl_volume** out);

/* ---- transform ------------------------------------------------------ */

void mcwl_transform_params_default(mcwl_transform_params* params);
mcwl_status mcwl_forward(const mcwl_volume* volume, const mcwl_transform_params* params,
                         mcwl_decomp** out);
/* Inversion is self-contained: method, rounding and motion records are
 * stored in the decomposition. */
mcwl_status mcwl_inverse(const mcwl_decomp* decomp, mcwl_volume** out);
void mcwl_decomp_free(mcwl_decomp* decomp);
mcwl_status mcwl_decomp_save(const mcwl_decomp* decomp, const char* path);
mcwl_status mcwl_decomp_load(const char* path, mcwl_decomp** out);
mcwl_method mcwl_decomp_method(const mcwl_decomp* decomp);
mcwl_rounding mcwl_decomp_rounding(const mcwl_decomp* decomp);
uint32_t mcwl_decomp_slices(const mcwl_decomp* decomp);
uint32_t mcwl_decomp_rows(const mcwl_decomp* decomp);
uint32_t mcwl_decomp_cols(const mcwl_decomp* decomp);
uint8_t mcwl_decomp_bit_depth(const mcwl_decomp* decomp);
uint32_t mcwl_decomp_lowpass_count(const mcwl_decomp* decomp);
uint32_t mcwl_decomp_highpass_count(const mcwl_decomp* decomp);
/* Row-major coefficient planes; NULL when the index is out of range. */
const int32_t* mcwl_decomp_lowpass(const mcwl_decomp* decomp, uint32_t index);
const int32_t* mcwl_decomp_highpass(const mcwl_decomp* decomp, uint32_t index);

/* ---- analysis -------------------------------------------------------- */

mcwl_status mcwl_volume_variance(const mcwl_volume* volume, double* out);
mcwl_status mcwl_analyze(const mcwl_decomp* decomp, const mcwl_volume* volume,
                         mcwl_report** out);
void mcwl_report_free(mcwl_report* report);
/* Attach the no-compensation baseline so the report carries the lowpass
 * gain; both reports must describe the same volume. */
mcwl_status mcwl_report_set_baseline(mcwl_report* report, const mcwl_report* baseline);
mcwl_method mcwl_report_method(const mcwl_report* report);
double mcwl_report_volume_variance(const mcwl_report* report);
double mcwl_report_highpass_variance(const mcwl_report* report);
double mcwl_report_lowpass_variance(const mcwl_report* report);
/* MCWL_ERR_DEGENERATE when a subband variance vanishes. */
mcwl_status mcwl_report_subband_gain(const mcwl_report* report, double* out);
double mcwl_report_mse(const mcwl_report* report);
double mcwl_report_psnr_db(const mcwl_report* report); /* +inf when MSE is 0 */
int64_t mcwl_report_linf(const mcwl_report* report);
/* MCWL_ERR_ARGUMENT when no baseline was attached; +/-inf markers pass
 * through as IEEE infinities. */
mcwl_status mcwl_report_lowpass_gain_db(const mcwl_report* report, double* out);
uint32_t mcwl_report_slice_count(const mcwl_report* report);
double mcwl_report_slice_mse(const mcwl_report* report, uint32_t index);
double mcwl_report_slice_psnr_db(const mcwl_report* report, uint32_t index);
int64_t mcwl_report_slice_linf(const mcwl_report* report, uint32_t index);
mcwl_status mcwl_report_write(const mcwl_report* report, const char* path,
                              mcwl_report_format format);

#ifdef __cplusplus
}
#endif

#endif /* MCWL_H */
