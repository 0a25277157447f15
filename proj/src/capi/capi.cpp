#include "mcwl/mcwl.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/lifting.hpp"
#include "core/metrics.hpp"
#include "core/phantom.hpp"
#include "core/volume.hpp"

struct mcwl_volume {
  mcwl::Volume impl;
};
struct mcwl_decomp {
  mcwl::Decomposition impl;
};
struct mcwl_report {
  mcwl::AnalysisReport impl;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
mcwl_status wrap(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return MCWL_OK;
  } catch (const mcwl::FormatError& e) {
    g_last_error = e.what();
    return MCWL_ERR_FORMAT;
  } catch (const mcwl::IoError& e) {
    g_last_error = e.what();
    return MCWL_ERR_IO;
  } catch (const mcwl::DegenerateError& e) {
    g_last_error = e.what();
    return MCWL_ERR_DEGENERATE;
  } catch (const mcwl::ArgumentError& e) {
    g_last_error = e.what();
    return MCWL_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MCWL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCWL_ERR_INTERNAL;
  }
}

mcwl_status require(bool ok, const char* message) {
  if (ok) return MCWL_OK;
  g_last_error = message;
  return MCWL_ERR_ARGUMENT;
}

mcwl::PhantomSpec to_core(const mcwl_phantom_spec& s) {
  mcwl::PhantomSpec spec;
  switch (s.kind) {
    case MCWL_PHANTOM_STATIC: spec.kind = mcwl::PhantomKind::Static; break;
    case MCWL_PHANTOM_TRANSLATE: spec.kind = mcwl::PhantomKind::GlobalTranslation; break;
    case MCWL_PHANTOM_ELLIPTIC: spec.kind = mcwl::PhantomKind::EllipticDeformation; break;
    case MCWL_PHANTOM_NOISE: spec.kind = mcwl::PhantomKind::Noise; break;
    default: throw mcwl::ArgumentError("unknown phantom kind");
  }
  spec.shift_y = s.shift_y;
  spec.shift_x = s.shift_x;
  spec.amplitude = s.amplitude;
  spec.noise_amplitude = s.noise_amplitude;
  spec.seed = s.seed;
  return spec;
}

mcwl::TransformParams to_core(const mcwl_transform_params& p) {
  mcwl::TransformParams params;
  switch (p.method) {
    case MCWL_METHOD_ZERO: params.method = mcwl::Method::Zero; break;
    case MCWL_METHOD_BLOCK: params.method = mcwl::Method::Block; break;
    case MCWL_METHOD_BLOCK_FILL: params.method = mcwl::Method::BlockFill; break;
    case MCWL_METHOD_MESH: params.method = mcwl::Method::Mesh; break;
    default: throw mcwl::ArgumentError("unknown compensation method");
  }
  params.block_size = p.block_size;
  params.search_range = p.search_range;
  params.grid_spacing = p.grid_spacing;
  params.vertex_block = p.vertex_block;
  switch (p.rounding) {
    case MCWL_ROUNDING_PAPER: params.rounding = mcwl::RoundingMode::Paper; break;
    case MCWL_ROUNDING_JPEG2000: params.rounding = mcwl::RoundingMode::Jpeg2000; break;
    default: throw mcwl::ArgumentError("unknown rounding mode");
  }
  return params;
}

}  // namespace

extern "C" {

const char* mcwl_version(void) { return "1.0.0"; }

const char* mcwl_status_name(mcwl_status status) {
  switch (status) {
    case MCWL_OK: return "ok";
    case MCWL_ERR_ARGUMENT: return "argument error";
    case MCWL_ERR_FORMAT: return "format error";
    case MCWL_ERR_IO: return "io error";
    case MCWL_ERR_DEGENERATE: return "degenerate input";
    case MCWL_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* mcwl_last_error(void) { return g_last_error.c_str(); }

mcwl_status mcwl_volume_create(uint32_t slices, uint32_t rows, uint32_t cols,
                               uint8_t bit_depth, const uint16_t* voxels, mcwl_volume** out) {
  if (mcwl_status s = require(out != nullptr, "output handle is null")) return s;
  return wrap([&] {
    std::vector<std::uint16_t> data;
    const std::size_t n = std::size_t(slices) * rows * cols;
    if (voxels) data.assign(voxels, voxels + n);
    else data.assign(n, 0);
    *out = new mcwl_volume{mcwl::Volume(slices, rows, cols, bit_depth, std::move(data))};
  });
}

void mcwl_volume_free(mcwl_volume* volume) { delete volume; }

mcwl_status mcwl_volume_load(const char* path, mcwl_volume** out) {
  if (mcwl_status s = require(path && out, "null argument")) return s;
  return wrap([&] { *out = new mcwl_volume{mcwl::load_volume(path)}; });
}

mcwl_status mcwl_volume_save(const mcwl_volume* volume, const char* path) {
  if (mcwl_status s = require(volume && path, "null argument")) return s;
  return wrap([&] { mcwl::save_volume(volume->impl, path); });
}

uint32_t mcwl_volume_slices(const mcwl_volume* v) { return v ? v->impl.slices() : 0; }
uint32_t mcwl_volume_rows(const mcwl_volume* v) { return v ? v->impl.rows() : 0; }
uint32_t mcwl_volume_cols(const mcwl_volume* v) { return v ? v->impl.cols() : 0; }
uint8_t mcwl_volume_bit_depth(const mcwl_volume* v) { return v ? v->impl.bit_depth() : 0; }
const uint16_t* mcwl_volume_voxels(const mcwl_volume* v) {
  return v ? v->impl.voxels().data() : nullptr;
}
int mcwl_volume_equal(const mcwl_volume* a, const mcwl_volume* b) {
  if (!a || !b) return 0;
  return a->impl == b->impl ? 1 : 0;
}

void mcwl_phantom_spec_default(mcwl_phantom_spec* spec) {
  if (!spec) return;
  spec->kind = MCWL_PHANTOM_STATIC;
  spec->shift_y = 0;
  spec->shift_x = 0;
  spec->amplitude = 0;
  spec->noise_amplitude = 0;
  spec->seed = 0;
}

mcwl_status mcwl_phantom_generate(const mcwl_phantom_spec* spec, uint32_t slices, uint32_t rows,
                                  uint32_t cols, uint8_t bit_depth, mcwl_volume** out) {
  if (mcwl_status s = require(spec && out, "null argument")) return s;
  return wrap([&] {
    *out = new mcwl_volume{mcwl::generate_phantom(to_core(*spec), slices, rows, cols, bit_depth)};
  });
}

void mcwl_transform_params_default(mcwl_transform_params* params) {
  if (!params) return;
  params->method = MCWL_METHOD_ZERO;
  params->block_size = 8;
  params->search_range = 8;
  params->grid_spacing = 8;
  params->vertex_block = 7;
  params->rounding = MCWL_ROUNDING_PAPER;
}

mcwl_status mcwl_forward(const mcwl_volume* volume, const mcwl_transform_params* params,
                         mcwl_decomp** out) {
  if (mcwl_status s = require(volume && params && out, "null argument")) return s;
  return wrap([&] {
    const mcwl::TransformParams p = to_core(*params);
    auto comp = mcwl::make_compensator(p);
    *out = new mcwl_decomp{mcwl::forward(volume->impl, *comp, p.rounding)};
  });
}

mcwl_status mcwl_inverse(const mcwl_decomp* decomp, mcwl_volume** out) {
  if (mcwl_status s = require(decomp && out, "null argument")) return s;
  return wrap([&] {
    mcwl::TransformParams p;
    p.method = decomp->impl.method;
    auto comp = mcwl::make_compensator(p);
    *out = new mcwl_volume{mcwl::inverse(decomp->impl, *comp)};
  });
}

void mcwl_decomp_free(mcwl_decomp* decomp) { delete decomp; }

mcwl_status mcwl_decomp_save(const mcwl_decomp* decomp, const char* path) {
  if (mcwl_status s = require(decomp && path, "null argument")) return s;
  return wrap([&] { mcwl::save_decomposition(decomp->impl, path); });
}

mcwl_status mcwl_decomp_load(const char* path, mcwl_decomp** out) {
  if (mcwl_status s = require(path && out, "null argument")) return s;
  return wrap([&] { *out = new mcwl_decomp{mcwl::load_decomposition(path)}; });
}

mcwl_method mcwl_decomp_method(const mcwl_decomp* d) {
  return d ? mcwl_method(int(d->impl.method)) : MCWL_METHOD_ZERO;
}
mcwl_rounding mcwl_decomp_rounding(const mcwl_decomp* d) {
  return d ? mcwl_rounding(int(d->impl.rounding)) : MCWL_ROUNDING_PAPER;
}
uint32_t mcwl_decomp_slices(const mcwl_decomp* d) { return d ? d->impl.slices : 0; }
uint32_t mcwl_decomp_rows(const mcwl_decomp* d) { return d ? d->impl.rows : 0; }
uint32_t mcwl_decomp_cols(const mcwl_decomp* d) { return d ? d->impl.cols : 0; }
uint8_t mcwl_decomp_bit_depth(const mcwl_decomp* d) { return d ? d->impl.bit_depth : 0; }
uint32_t mcwl_decomp_lowpass_count(const mcwl_decomp* d) {
  return d ? uint32_t(d->impl.lowpass.size()) : 0;
}
uint32_t mcwl_decomp_highpass_count(const mcwl_decomp* d) {
  return d ? uint32_t(d->impl.highpass.size()) : 0;
}
const int32_t* mcwl_decomp_lowpass(const mcwl_decomp* d, uint32_t index) {
  if (!d || index >= d->impl.lowpass.size()) return nullptr;
  return d->impl.lowpass[index].data().data();
}
const int32_t* mcwl_decomp_highpass(const mcwl_decomp* d, uint32_t index) {
  if (!d || index >= d->impl.highpass.size()) return nullptr;
  return d->impl.highpass[index].data().data();
}

mcwl_status mcwl_volume_variance(const mcwl_volume* volume, double* out) {
  if (mcwl_status s = require(volume && out, "null argument")) return s;
  return wrap([&] { *out = mcwl::volume_variance(volume->impl); });
}

mcwl_status mcwl_analyze(const mcwl_decomp* decomp, const mcwl_volume* volume,
                         mcwl_report** out) {
  if (mcwl_status s = require(decomp && volume && out, "null argument")) return s;
  return wrap([&] { *out = new mcwl_report{mcwl::analyze(decomp->impl, volume->impl)}; });
}

void mcwl_report_free(mcwl_report* report) { delete report; }

mcwl_status mcwl_report_set_baseline(mcwl_report* report, const mcwl_report* baseline) {
  if (mcwl_status s = require(report && baseline, "null argument")) return s;
  return wrap([&] { mcwl::set_baseline(report->impl, baseline->impl); });
}

mcwl_method mcwl_report_method(const mcwl_report* r) {
  return r ? mcwl_method(int(r->impl.method)) : MCWL_METHOD_ZERO;
}
double mcwl_report_volume_variance(const mcwl_report* r) { return r ? r->impl.sigma_f_sq : 0; }
double mcwl_report_highpass_variance(const mcwl_report* r) { return r ? r->impl.sigma_h_sq : 0; }
double mcwl_report_lowpass_variance(const mcwl_report* r) { return r ? r->impl.sigma_l_sq : 0; }

mcwl_status mcwl_report_subband_gain(const mcwl_report* report, double* out) {
  if (mcwl_status s = require(report && out, "null argument")) return s;
  if (!report->impl.subband_gain) {
    g_last_error = "subband gain undefined: a subband variance is zero";
    return MCWL_ERR_DEGENERATE;
  }
  *out = *report->impl.subband_gain;
  g_last_error.clear();
  return MCWL_OK;
}

double mcwl_report_mse(const mcwl_report* r) { return r ? r->impl.mse_global : 0; }
double mcwl_report_psnr_db(const mcwl_report* r) { return r ? r->impl.psnr_global_db : 0; }
int64_t mcwl_report_linf(const mcwl_report* r) { return r ? r->impl.linf_global : 0; }

mcwl_status mcwl_report_lowpass_gain_db(const mcwl_report* report, double* out) {
  if (mcwl_status s = require(report && out, "null argument")) return s;
  if (!report->impl.lowpass_gain_db) {
    g_last_error = "no baseline attached to this report";
    return MCWL_ERR_ARGUMENT;
  }
  *out = *report->impl.lowpass_gain_db;
  g_last_error.clear();
  return MCWL_OK;
}

uint32_t mcwl_report_slice_count(const mcwl_report* r) {
  return r ? uint32_t(r->impl.slice_psnr_db.size()) : 0;
}
double mcwl_report_slice_mse(const mcwl_report* r, uint32_t index) {
  if (!r || index >= r->impl.slice_mse.size()) return 0;
  return r->impl.slice_mse[index];
}
double mcwl_report_slice_psnr_db(const mcwl_report* r, uint32_t index) {
  if (!r || index >= r->impl.slice_psnr_db.size()) return 0;
  return r->impl.slice_psnr_db[index];
}
int64_t mcwl_report_slice_linf(const mcwl_report* r, uint32_t index) {
  if (!r || index >= r->impl.slice_linf.size()) return 0;
  return r->impl.slice_linf[index];
}

mcwl_status mcwl_report_write(const mcwl_report* report, const char* path,
                              mcwl_report_format format) {
  if (mcwl_status s = require(report && path, "null argument")) return s;
  return wrap([&] {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw mcwl::IoError(std::string("cannot open '") + path + "' for writing");
    mcwl::write_report(report->impl, out,
                       format == MCWL_FORMAT_JSON ? mcwl::ReportFormat::Json
                                                  : mcwl::ReportFormat::Csv);
    if (!out.flush()) throw mcwl::IoError(std::string("write failure on '") + path + "'");
  });
}

}  // extern "C"
