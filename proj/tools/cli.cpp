// Command-line front end for the mcwl shared library. Implements the
// experimental protocol: phantom generation, one-level compensated
// lifting, inversion, round-trip verification and the method
// comparison tables.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcwl/mcwl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;

struct VolumeDeleter {
  void operator()(mcwl_volume* v) const { mcwl_volume_free(v); }
};
struct DecompDeleter {
  void operator()(mcwl_decomp* d) const { mcwl_decomp_free(d); }
};
struct ReportDeleter {
  void operator()(mcwl_report* r) const { mcwl_report_free(r); }
};
using VolumePtr = std::unique_ptr<mcwl_volume, VolumeDeleter>;
using DecompPtr = std::unique_ptr<mcwl_decomp, DecompDeleter>;
using ReportPtr = std::unique_ptr<mcwl_report, ReportDeleter>;

int exit_code_for(mcwl_status status) {
  switch (status) {
    case MCWL_OK: return kExitOk;
    case MCWL_ERR_FORMAT:
    case MCWL_ERR_IO: return kExitFormat;
    default: return kExitUsage;
  }
}

// Prints the library error and converts the status to an exit code.
int fail(mcwl_status status, const char* context) {
  std::fprintf(stderr, "error: %s: %s\n", context, mcwl_last_error());
  return exit_code_for(status);
}

std::string fmt(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

bool parse_dims(const std::string& text, uint32_t& k, uint32_t& m, uint32_t& n) {
  return std::sscanf(text.c_str(), "%" SCNu32 "x%" SCNu32 "x%" SCNu32, &k, &m, &n) == 3;
}

bool parse_shift(const std::string& text, int32_t& dy, int32_t& dx) {
  return std::sscanf(text.c_str(), "%" SCNd32 ",%" SCNd32, &dy, &dx) == 2;
}

bool parse_method(const std::string& text, mcwl_method& out) {
  if (text == "zero") out = MCWL_METHOD_ZERO;
  else if (text == "block") out = MCWL_METHOD_BLOCK;
  else if (text == "block-fill" || text == "block+fill") out = MCWL_METHOD_BLOCK_FILL;
  else if (text == "mesh") out = MCWL_METHOD_MESH;
  else return false;
  return true;
}

const char* method_label(mcwl_method m) {
  switch (m) {
    case MCWL_METHOD_ZERO: return "zero";
    case MCWL_METHOD_BLOCK: return "block";
    case MCWL_METHOD_BLOCK_FILL: return "block+fill";
    case MCWL_METHOD_MESH: return "mesh";
  }
  return "?";
}

// Table ordering used throughout the comparison outputs.
constexpr mcwl_method kCompareOrder[4] = {MCWL_METHOD_ZERO, MCWL_METHOD_MESH, MCWL_METHOD_BLOCK,
                                          MCWL_METHOD_BLOCK_FILL};

struct CommonOptions {
  std::string method_text = "zero";
  uint32_t block_size = 8;
  uint32_t search_range = 8;
  uint32_t grid = 8;
  uint32_t vertex_block = 7;
  std::string rounding = "paper";
};

void add_transform_flags(CLI::App* cmd, CommonOptions& opt, bool with_method = true) {
  if (with_method)
    cmd->add_option("--method", opt.method_text, "zero | block | block-fill | mesh")
        ->capture_default_str();
  cmd->add_option("--block-size", opt.block_size, "block matching block side")
      ->capture_default_str();
  cmd->add_option("--search-range", opt.search_range, "full search radius")
      ->capture_default_str();
  cmd->add_option("--grid", opt.grid, "mesh grid spacing")->capture_default_str();
  cmd->add_option("--vertex-block", opt.vertex_block, "mesh vertex matching window (odd)")
      ->capture_default_str();
  cmd->add_option("--rounding", opt.rounding, "paper | jpeg2000")
      ->check(CLI::IsMember({"paper", "jpeg2000"}))
      ->capture_default_str();
}

bool fill_params(const CommonOptions& opt, mcwl_transform_params& params, std::string& error) {
  mcwl_transform_params_default(&params);
  if (!parse_method(opt.method_text, params.method)) {
    error = "unknown method '" + opt.method_text + "'";
    return false;
  }
  params.block_size = opt.block_size;
  params.search_range = opt.search_range;
  params.grid_spacing = opt.grid;
  params.vertex_block = opt.vertex_block;
  params.rounding = opt.rounding == "jpeg2000" ? MCWL_ROUNDING_JPEG2000 : MCWL_ROUNDING_PAPER;
  return true;
}

// First differing voxel between two equally shaped volumes.
bool first_mismatch(const mcwl_volume* a, const mcwl_volume* b, uint32_t& k, uint32_t& m,
                    uint32_t& n) {
  const uint32_t rows = mcwl_volume_rows(a), cols = mcwl_volume_cols(a);
  const uint16_t* va = mcwl_volume_voxels(a);
  const uint16_t* vb = mcwl_volume_voxels(b);
  const size_t total = size_t(mcwl_volume_slices(a)) * rows * cols;
  for (size_t i = 0; i < total; ++i) {
    if (va[i] != vb[i]) {
      k = uint32_t(i / (size_t(rows) * cols));
      m = uint32_t(i / cols % rows);
      n = uint32_t(i % cols);
      return true;
    }
  }
  return false;
}

// ---- gen-phantom ----------------------------------------------------

struct GenPhantomOptions {
  std::string kind = "static";
  std::string dims;
  uint32_t bits = 12;
  uint64_t seed = 1;
  std::string shift = "0,0";
  int32_t amplitude = 0;
  int32_t noise = 0;
  std::string output;
};

int run_gen_phantom(const GenPhantomOptions& opt) {
  mcwl_phantom_spec spec;
  mcwl_phantom_spec_default(&spec);
  if (opt.kind == "static") spec.kind = MCWL_PHANTOM_STATIC;
  else if (opt.kind == "translate") spec.kind = MCWL_PHANTOM_TRANSLATE;
  else if (opt.kind == "elliptic") spec.kind = MCWL_PHANTOM_ELLIPTIC;
  else if (opt.kind == "noise") spec.kind = MCWL_PHANTOM_NOISE;
  else {
    std::fprintf(stderr, "error: unknown phantom kind '%s'\n", opt.kind.c_str());
    return kExitUsage;
  }
  if (!parse_shift(opt.shift, spec.shift_y, spec.shift_x)) {
    std::fprintf(stderr, "error: --shift expects 'dy,dx'\n");
    return kExitUsage;
  }
  spec.amplitude = opt.amplitude;
  spec.noise_amplitude = opt.noise;
  spec.seed = opt.seed;

  uint32_t k = 0, m = 0, n = 0;
  if (!parse_dims(opt.dims, k, m, n)) {
    std::fprintf(stderr, "error: --dims expects 'KxMxN'\n");
    return kExitUsage;
  }

  mcwl_volume* raw = nullptr;
  if (mcwl_status s = mcwl_phantom_generate(&spec, k, m, n, uint8_t(opt.bits), &raw))
    return fail(s, "gen-phantom");
  VolumePtr volume(raw);
  if (mcwl_status s = mcwl_volume_save(volume.get(), opt.output.c_str()))
    return fail(s, "gen-phantom");
  std::printf("wrote %s (%ux%ux%u, %u bit)\n", opt.output.c_str(), k, m, n, opt.bits);
  return kExitOk;
}

// ---- transform / inverse ---------------------------------------------

int run_transform(const std::string& input, const std::string& output,
                  const CommonOptions& opt) {
  mcwl_transform_params params;
  std::string error;
  if (!fill_params(opt, params, error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitUsage;
  }
  mcwl_volume* vraw = nullptr;
  if (mcwl_status s = mcwl_volume_load(input.c_str(), &vraw)) return fail(s, "transform");
  VolumePtr volume(vraw);
  mcwl_decomp* draw = nullptr;
  if (mcwl_status s = mcwl_forward(volume.get(), &params, &draw)) return fail(s, "transform");
  DecompPtr decomp(draw);
  if (mcwl_status s = mcwl_decomp_save(decomp.get(), output.c_str()))
    return fail(s, "transform");
  std::printf("wrote %s (method %s, %u lowpass + %u highpass slices)\n", output.c_str(),
              method_label(mcwl_decomp_method(decomp.get())),
              mcwl_decomp_lowpass_count(decomp.get()),
              mcwl_decomp_highpass_count(decomp.get()));
  return kExitOk;
}

int run_inverse(const std::string& input, const std::string& output) {
  mcwl_decomp* draw = nullptr;
  if (mcwl_status s = mcwl_decomp_load(input.c_str(), &draw)) return fail(s, "inverse");
  DecompPtr decomp(draw);
  mcwl_volume* vraw = nullptr;
  if (mcwl_status s = mcwl_inverse(decomp.get(), &vraw)) return fail(s, "inverse");
  VolumePtr volume(vraw);
  if (mcwl_status s = mcwl_volume_save(volume.get(), output.c_str()))
    return fail(s, "inverse");
  std::printf("wrote %s\n", output.c_str());
  return kExitOk;
}

// ---- roundtrip --------------------------------------------------------

int verify_roundtrip(const mcwl_volume* volume, mcwl_transform_params params,
                     const char* label) {
  mcwl_decomp* draw = nullptr;
  if (mcwl_status s = mcwl_forward(volume, &params, &draw)) return fail(s, "roundtrip");
  DecompPtr decomp(draw);
  mcwl_volume* rraw = nullptr;
  if (mcwl_status s = mcwl_inverse(decomp.get(), &rraw)) return fail(s, "roundtrip");
  VolumePtr restored(rraw);
  if (!mcwl_volume_equal(volume, restored.get())) {
    uint32_t k = 0, m = 0, n = 0;
    first_mismatch(volume, restored.get(), k, m, n);
    std::printf("FAIL %s%s: first mismatch at slice %u, row %u, col %u\n",
                method_label(params.method), label, k, m, n);
    return kExitVerification;
  }
  return kExitOk;
}

int run_roundtrip(const std::string& input, const std::string& method_text, uint32_t seeds,
                  const std::string& dims, uint32_t bits, const CommonOptions& opt) {
  std::vector<mcwl_method> methods;
  if (method_text == "all") {
    methods = {MCWL_METHOD_ZERO, MCWL_METHOD_MESH, MCWL_METHOD_BLOCK, MCWL_METHOD_BLOCK_FILL};
  } else {
    mcwl_method m;
    if (!parse_method(method_text, m)) {
      std::fprintf(stderr, "error: unknown method '%s'\n", method_text.c_str());
      return kExitUsage;
    }
    methods = {m};
  }
  CommonOptions base = opt;
  base.method_text = "zero";
  mcwl_transform_params params;
  std::string error;
  if (!fill_params(base, params, error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitUsage;
  }

  int failures = 0;
  int checks = 0;
  if (seeds > 0) {
    uint32_t k = 8, m = 32, n = 32;
    if (!dims.empty() && !parse_dims(dims, k, m, n)) {
      std::fprintf(stderr, "error: --dims expects 'KxMxN'\n");
      return kExitUsage;
    }
    for (uint32_t seed = 0; seed < seeds; ++seed) {
      mcwl_phantom_spec spec;
      mcwl_phantom_spec_default(&spec);
      spec.kind = MCWL_PHANTOM_NOISE;
      spec.noise_amplitude = int32_t(((1u << bits) - 1u) / 2u);
      spec.seed = seed;
      mcwl_volume* raw = nullptr;
      if (mcwl_status s = mcwl_phantom_generate(&spec, k, m, n, uint8_t(bits), &raw))
        return fail(s, "roundtrip");
      VolumePtr volume(raw);
      char label[48];
      std::snprintf(label, sizeof label, " (seed %u)", seed);
      for (mcwl_method method : methods) {
        params.method = method;
        ++checks;
        if (int rc = verify_roundtrip(volume.get(), params, label)) {
          if (rc != kExitVerification) return rc;
          ++failures;
        }
      }
    }
  } else {
    if (input.empty()) {
      std::fprintf(stderr, "error: roundtrip needs an input volume or --seeds\n");
      return kExitUsage;
    }
    mcwl_volume* raw = nullptr;
    if (mcwl_status s = mcwl_volume_load(input.c_str(), &raw)) return fail(s, "roundtrip");
    VolumePtr volume(raw);
    for (mcwl_method method : methods) {
      params.method = method;
      ++checks;
      if (int rc = verify_roundtrip(volume.get(), params, "")) {
        if (rc != kExitVerification) return rc;
        ++failures;
      }
    }
  }
  if (failures > 0) {
    std::printf("FAIL: %d of %d round trips differ\n", failures, checks);
    return kExitVerification;
  }
  std::printf("PASS: %d round trips bit-exact\n", checks);
  return kExitOk;
}

// ---- metrics ----------------------------------------------------------

int run_metrics(const std::string& input, const std::string& decomp_path,
                const std::string& output, const std::string& format,
                const CommonOptions& opt) {
  mcwl_volume* vraw = nullptr;
  if (mcwl_status s = mcwl_volume_load(input.c_str(), &vraw)) return fail(s, "metrics");
  VolumePtr volume(vraw);

  mcwl_transform_params params;
  std::string error;
  if (!fill_params(opt, params, error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitUsage;
  }

  DecompPtr decomp;
  if (!decomp_path.empty()) {
    mcwl_decomp* draw = nullptr;
    if (mcwl_status s = mcwl_decomp_load(decomp_path.c_str(), &draw))
      return fail(s, "metrics");
    decomp.reset(draw);
  } else {
    mcwl_decomp* draw = nullptr;
    if (mcwl_status s = mcwl_forward(volume.get(), &params, &draw)) return fail(s, "metrics");
    decomp.reset(draw);
  }

  mcwl_report* rraw = nullptr;
  if (mcwl_status s = mcwl_analyze(decomp.get(), volume.get(), &rraw))
    return fail(s, "metrics");
  ReportPtr report(rraw);

  // Zero-method baseline on the same volume for the lowpass gain.
  mcwl_transform_params zero_params = params;
  zero_params.method = MCWL_METHOD_ZERO;
  zero_params.rounding = mcwl_decomp_rounding(decomp.get());
  mcwl_decomp* zraw = nullptr;
  if (mcwl_status s = mcwl_forward(volume.get(), &zero_params, &zraw))
    return fail(s, "metrics");
  DecompPtr zero_decomp(zraw);
  mcwl_report* zrep = nullptr;
  if (mcwl_status s = mcwl_analyze(zero_decomp.get(), volume.get(), &zrep))
    return fail(s, "metrics");
  ReportPtr zero_report(zrep);
  if (mcwl_status s = mcwl_report_set_baseline(report.get(), zero_report.get()))
    return fail(s, "metrics");

  double gain = 0.0;
  std::string gain_text = "undef";
  if (mcwl_report_subband_gain(report.get(), &gain) == MCWL_OK) gain_text = fmt(gain);
  double lp_gain = 0.0;
  mcwl_report_lowpass_gain_db(report.get(), &lp_gain);
  std::printf("method %s: G_SUB %s, MSE %s, PSNR %s dB, gain %s dB, Linf %" PRId64 "\n",
              method_label(mcwl_report_method(report.get())), gain_text.c_str(),
              fmt(mcwl_report_mse(report.get())).c_str(),
              fmt(mcwl_report_psnr_db(report.get())).c_str(), fmt(lp_gain).c_str(),
              mcwl_report_linf(report.get()));

  if (!output.empty()) {
    const mcwl_report_format rf =
        format == "json" ? MCWL_FORMAT_JSON : MCWL_FORMAT_CSV;
    if (mcwl_status s = mcwl_report_write(report.get(), output.c_str(), rf))
      return fail(s, "metrics");
    std::printf("wrote %s\n", output.c_str());
  }
  return kExitOk;
}

// ---- compare ----------------------------------------------------------

struct MethodResult {
  mcwl_method method;
  ReportPtr report;
  std::string gain_text;  // subband gain or "undef"
};

int run_compare(const std::string& input, const std::string& prefix, const std::string& format,
                const CommonOptions& opt) {
  mcwl_volume* vraw = nullptr;
  if (mcwl_status s = mcwl_volume_load(input.c_str(), &vraw)) return fail(s, "compare");
  VolumePtr volume(vraw);

  CommonOptions base = opt;
  base.method_text = "zero";
  mcwl_transform_params params;
  std::string error;
  if (!fill_params(base, params, error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitUsage;
  }

  std::vector<MethodResult> results;
  ReportPtr zero_report;
  for (mcwl_method method : kCompareOrder) {
    params.method = method;
    mcwl_decomp* draw = nullptr;
    if (mcwl_status s = mcwl_forward(volume.get(), &params, &draw)) return fail(s, "compare");
    DecompPtr decomp(draw);
    mcwl_report* rraw = nullptr;
    if (mcwl_status s = mcwl_analyze(decomp.get(), volume.get(), &rraw))
      return fail(s, "compare");
    ReportPtr report(rraw);
    if (method == MCWL_METHOD_ZERO) {
      mcwl_report* zraw = nullptr;
      if (mcwl_status s = mcwl_analyze(decomp.get(), volume.get(), &zraw))
        return fail(s, "compare");
      zero_report.reset(zraw);
    }
    if (mcwl_status s = mcwl_report_set_baseline(report.get(), zero_report.get()))
      return fail(s, "compare");

    MethodResult result;
    result.method = method;
    double gain = 0.0;
    result.gain_text = mcwl_report_subband_gain(report.get(), &gain) == MCWL_OK ? fmt(gain)
                                                                                : "undef";
    result.report = std::move(report);
    results.push_back(std::move(result));
  }

  // Tables on stdout: coding gain, then the lowpass band quality.
  std::printf("subband coding gain G_SUB\n");
  for (const MethodResult& r : results) std::printf("%14s", method_label(r.method));
  std::printf("\n");
  for (const MethodResult& r : results) std::printf("%14s", r.gain_text.c_str());
  std::printf("\n\nlowpass PSNR [dB]\n");
  for (const MethodResult& r : results) std::printf("%14s", method_label(r.method));
  std::printf("\n");
  for (const MethodResult& r : results)
    std::printf("%14s", fmt(mcwl_report_psnr_db(r.report.get())).c_str());
  std::printf("\n\nlowpass gain G_LP,MSE [dB]\n");
  for (const MethodResult& r : results)
    if (r.method != MCWL_METHOD_ZERO) std::printf("%14s", method_label(r.method));
  std::printf("\n");
  for (const MethodResult& r : results) {
    if (r.method == MCWL_METHOD_ZERO) continue;
    double gain = 0.0;
    mcwl_report_lowpass_gain_db(r.report.get(), &gain);
    std::printf("%14s", fmt(gain).c_str());
  }
  std::printf("\n\nL_inf\n");
  for (const MethodResult& r : results) std::printf("%14s", method_label(r.method));
  std::printf("\n");
  for (const MethodResult& r : results)
    std::printf("%14" PRId64, mcwl_report_linf(r.report.get()));
  std::printf("\n");

  const uint32_t slice_count = mcwl_report_slice_count(results[0].report.get());

  if (format == "json") {
    std::string path = prefix + ".json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
      return kExitFormat;
    }
    out << "{\n  \"methods\": [\n";
    for (size_t i = 0; i < results.size(); ++i) {
      const MethodResult& r = results[i];
      double lp_gain = 0.0;
      mcwl_report_lowpass_gain_db(r.report.get(), &lp_gain);
      out << "    {\"method\": \"" << method_label(r.method) << "\", \"subband_gain\": ";
      if (r.gain_text == "undef") out << "\"undef\"";
      else out << r.gain_text;
      out << ", \"mse\": " << fmt(mcwl_report_mse(r.report.get()));
      const double psnr = mcwl_report_psnr_db(r.report.get());
      out << ", \"psnr_db\": " << (std::isinf(psnr) ? "\"inf\"" : fmt(psnr));
      out << ", \"lowpass_gain_db\": " << (std::isinf(lp_gain)
                                               ? (lp_gain > 0 ? "\"inf\"" : "\"-inf\"")
                                               : fmt(lp_gain));
      out << ", \"linf\": " << mcwl_report_linf(r.report.get());
      out << ", \"per_slice\": [";
      for (uint32_t k = 0; k < slice_count; ++k) {
        const double sp = mcwl_report_slice_psnr_db(r.report.get(), k);
        if (k) out << ", ";
        out << "{\"index\": " << k << ", \"psnr_db\": "
            << (std::isinf(sp) ? "\"inf\"" : fmt(sp))
            << ", \"linf\": " << mcwl_report_slice_linf(r.report.get(), k) << "}";
      }
      out << "]}" << (i + 1 < results.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    std::printf("\nwrote %s\n", path.c_str());
    return kExitOk;
  }

  const std::string tcg_path = prefix + "_tcg.csv";
  const std::string lowpass_path = prefix + "_lowpass.csv";
  const std::string slices_path = prefix + "_per_slice.csv";
  {
    std::ofstream out(tcg_path, std::ios::binary | std::ios::trunc);
    out << "method,subband_gain\n";
    for (const MethodResult& r : results)
      out << method_label(r.method) << ',' << r.gain_text << '\n';
  }
  {
    std::ofstream out(lowpass_path, std::ios::binary | std::ios::trunc);
    out << "method,mse,psnr_db,lowpass_gain_db,linf\n";
    for (const MethodResult& r : results) {
      double lp_gain = 0.0;
      mcwl_report_lowpass_gain_db(r.report.get(), &lp_gain);
      out << method_label(r.method) << ',' << fmt(mcwl_report_mse(r.report.get())) << ','
          << fmt(mcwl_report_psnr_db(r.report.get())) << ',' << fmt(lp_gain) << ','
          << mcwl_report_linf(r.report.get()) << '\n';
    }
  }
  {
    std::ofstream out(slices_path, std::ios::binary | std::ios::trunc);
    out << "slice,psnr_zero,psnr_mesh,psnr_block,psnr_block_fill,"
           "linf_zero,linf_mesh,linf_block,linf_block_fill\n";
    for (uint32_t k = 0; k < slice_count; ++k) {
      out << k;
      for (const MethodResult& r : results)
        out << ',' << fmt(mcwl_report_slice_psnr_db(r.report.get(), k));
      for (const MethodResult& r : results)
        out << ',' << mcwl_report_slice_linf(r.report.get(), k);
      out << '\n';
    }
  }
  std::printf("\nwrote %s, %s, %s\n", tcg_path.c_str(), lowpass_path.c_str(),
              slices_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible motion-compensated wavelet lifting along the slice axis"};
  app.require_subcommand(1);

  GenPhantomOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen-phantom", "generate a synthetic volume");
  gen->add_option("--kind", gen_opt.kind, "static | translate | elliptic | noise")
      ->capture_default_str();
  gen->add_option("--dims", gen_opt.dims, "volume dimensions KxMxN")->required();
  gen->add_option("--bits", gen_opt.bits, "bit depth in [8, 16]")->capture_default_str();
  gen->add_option("--seed", gen_opt.seed, "generator seed")->capture_default_str();
  gen->add_option("--shift", gen_opt.shift, "per-slice translation 'dy,dx'")
      ->capture_default_str();
  gen->add_option("--amplitude", gen_opt.amplitude, "per-slice ellipse displacement")
      ->capture_default_str();
  gen->add_option("--noise", gen_opt.noise, "uniform noise amplitude")->capture_default_str();
  gen->add_option("-o,--output", gen_opt.output, "output volume (.mcwv)")->required();

  std::string tr_in, tr_out;
  CommonOptions tr_opt;
  CLI::App* tr = app.add_subcommand("transform", "forward one-level decomposition");
  tr->add_option("-i,--input", tr_in, "input volume (.mcwv)")->required();
  tr->add_option("-o,--output", tr_out, "output decomposition (.mcwd)")->required();
  add_transform_flags(tr, tr_opt);

  std::string inv_in, inv_out;
  CLI::App* inv = app.add_subcommand("inverse", "reconstruct a volume from a decomposition");
  inv->add_option("-i,--input", inv_in, "input decomposition (.mcwd)")->required();
  inv->add_option("-o,--output", inv_out, "output volume (.mcwv)")->required();

  std::string rt_in, rt_method = "all", rt_dims;
  uint32_t rt_seeds = 0, rt_bits = 12;
  CommonOptions rt_opt;
  CLI::App* rt = app.add_subcommand("roundtrip", "verify forward+inverse is bit-exact");
  rt->add_option("-i,--input", rt_in, "input volume (.mcwv)");
  rt->add_option("--method", rt_method, "zero | block | block-fill | mesh | all")
      ->capture_default_str();
  rt->add_option("--seeds", rt_seeds, "sweep N seeded noise phantoms instead of a file");
  rt->add_option("--dims", rt_dims, "sweep volume dimensions KxMxN (default 8x32x32)");
  rt->add_option("--bits", rt_bits, "sweep bit depth")->capture_default_str();
  add_transform_flags(rt, rt_opt, false);

  std::string me_in, me_decomp, me_out, me_format = "csv";
  CommonOptions me_opt;
  CLI::App* me = app.add_subcommand("metrics", "analysis report for one method");
  me->add_option("-i,--input", me_in, "input volume (.mcwv)")->required();
  me->add_option("--decomp", me_decomp, "use an existing decomposition (.mcwd)");
  me->add_option("-o,--output", me_out, "report file");
  me->add_option("--format", me_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_transform_flags(me, me_opt);

  std::string cp_in, cp_prefix, cp_format = "csv";
  CommonOptions cp_opt;
  CLI::App* cp = app.add_subcommand("compare", "run all four methods and emit tables");
  cp->add_option("-i,--input", cp_in, "input volume (.mcwv)")->required();
  cp->add_option("-o,--output", cp_prefix, "output path prefix")->required();
  cp->add_option("--format", cp_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_transform_flags(cp, cp_opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return run_gen_phantom(gen_opt);
  if (tr->parsed()) return run_transform(tr_in, tr_out, tr_opt);
  if (inv->parsed()) return run_inverse(inv_in, inv_out);
  if (rt->parsed()) return run_roundtrip(rt_in, rt_method, rt_seeds, rt_dims, rt_bits, rt_opt);
  if (me->parsed()) return run_metrics(me_in, me_decomp, me_out, me_format, me_opt);
  if (cp->parsed()) return run_compare(cp_in, cp_prefix, cp_format, cp_opt);
  return kExitUsage;
}
