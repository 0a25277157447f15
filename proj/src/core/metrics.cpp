#include "metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace mcwl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double band_variance(const std::vector<Slice>& band) {
  std::size_t count = 0;
  double sum = 0.0;
  for (const Slice& s : band) {
    count += s.size();
    for (std::int32_t v : s.data()) sum += v;
  }
  if (count == 0) return 0.0;
  const double mean = sum / double(count);
  double acc = 0.0;
  for (const Slice& s : band)
    for (std::int32_t v : s.data()) acc += (v - mean) * (v - mean);
  return acc / double(count);
}

void check_pairing(const Decomposition& dec, const Volume& volume) {
  if (dec.slices != volume.slices() || dec.rows != volume.rows() ||
      dec.cols != volume.cols() || dec.bit_depth != volume.bit_depth())
    throw ArgumentError("decomposition and volume dimensions differ");
}

nlohmann::json metric_json(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

}  // namespace

std::string format_metric(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double volume_variance(const Volume& volume) {
  const auto& v = volume.voxels();
  double sum = 0.0;
  for (std::uint16_t x : v) sum += x;
  const double mean = sum / double(v.size());
  double acc = 0.0;
  for (std::uint16_t x : v) acc += (x - mean) * (x - mean);
  return acc / double(v.size());
}

double subband_gain_from_variances(double sigma_f_sq, double sigma_h_sq, double sigma_l_sq) {
  if (sigma_h_sq <= 0.0)
    throw DegenerateError("subband gain undefined: highpass variance is zero");
  if (sigma_l_sq <= 0.0)
    throw DegenerateError("subband gain undefined: lowpass variance is zero");
  return sigma_f_sq /
         (std::sqrt(kHighpassL2NormSq * sigma_h_sq) * std::sqrt(kLowpassL2NormSq * sigma_l_sq));
}

double subband_gain(const Decomposition& dec, const Volume& volume) {
  check_pairing(dec, volume);
  return subband_gain_from_variances(volume_variance(volume), band_variance(dec.highpass),
                                     band_variance(dec.lowpass));
}

MseResult lowpass_mse(const Decomposition& dec, const Volume& volume) {
  check_pairing(dec, volume);
  MseResult result;
  result.per_slice.reserve(dec.lowpass.size());
  const double plane = double(dec.rows) * double(dec.cols);
  double total = 0.0;
  for (std::size_t i = 0; i < dec.lowpass.size(); ++i) {
    const Slice& l = dec.lowpass[i];
    double acc = 0.0;
    for (std::uint32_t m = 0; m < dec.rows; ++m) {
      for (std::uint32_t n = 0; n < dec.cols; ++n) {
        const double d = double(l.at(m, n)) - double(volume.at(std::uint32_t(2 * i), m, n));
        acc += d * d;
      }
    }
    result.per_slice.push_back(acc / plane);
    total += acc;
  }
  result.global = total / (plane * double(dec.lowpass.size()));
  return result;
}

double lowpass_psnr_db(double mse, std::uint8_t bit_depth) {
  if (mse < 0.0) throw ArgumentError("MSE must be nonnegative");
  const double imax = double((1u << bit_depth) - 1u);
  if (mse == 0.0) return kInf;
  return 10.0 * std::log10(imax * imax / mse);
}

double lowpass_gain_db(const AnalysisReport& dcm, const AnalysisReport& zero) {
  if (dcm.slices != zero.slices || dcm.rows != zero.rows || dcm.cols != zero.cols ||
      dcm.bit_depth != zero.bit_depth)
    throw ArgumentError("lowpass gain requires reports on the same volume");
  if (dcm.mse_global == zero.mse_global) return 0.0;
  if (dcm.mse_global == 0.0) return kInf;
  if (zero.mse_global == 0.0) return -kInf;
  return 10.0 * std::log10(zero.mse_global / dcm.mse_global);
}

LinfResult linf_norm(const Decomposition& dec, const Volume& volume) {
  check_pairing(dec, volume);
  LinfResult result;
  result.per_slice.reserve(dec.lowpass.size());
  for (std::size_t i = 0; i < dec.lowpass.size(); ++i) {
    const Slice& l = dec.lowpass[i];
    std::int64_t worst = 0;
    for (std::uint32_t m = 0; m < dec.rows; ++m) {
      for (std::uint32_t n = 0; n < dec.cols; ++n) {
        const std::int64_t d =
            std::int64_t(l.at(m, n)) - std::int64_t(volume.at(std::uint32_t(2 * i), m, n));
        worst = std::max(worst, d < 0 ? -d : d);
      }
    }
    result.per_slice.push_back(worst);
    result.global = std::max(result.global, worst);
  }
  return result;
}

AnalysisReport analyze(const Decomposition& dec, const Volume& volume) {
  check_pairing(dec, volume);
  AnalysisReport report;
  report.method = dec.method;
  report.slices = dec.slices;
  report.rows = dec.rows;
  report.cols = dec.cols;
  report.bit_depth = dec.bit_depth;
  report.sigma_f_sq = volume_variance(volume);
  report.sigma_h_sq = band_variance(dec.highpass);
  report.sigma_l_sq = band_variance(dec.lowpass);
  if (report.sigma_h_sq > 0.0 && report.sigma_l_sq > 0.0)
    report.subband_gain =
        subband_gain_from_variances(report.sigma_f_sq, report.sigma_h_sq, report.sigma_l_sq);

  const MseResult mse = lowpass_mse(dec, volume);
  report.mse_global = mse.global;
  report.slice_mse = mse.per_slice;
  report.psnr_global_db = lowpass_psnr_db(mse.global, dec.bit_depth);
  report.slice_psnr_db.reserve(mse.per_slice.size());
  for (double m : mse.per_slice) report.slice_psnr_db.push_back(lowpass_psnr_db(m, dec.bit_depth));

  const LinfResult linf = linf_norm(dec, volume);
  report.linf_global = linf.global;
  report.slice_linf = linf.per_slice;
  return report;
}

void set_baseline(AnalysisReport& report, const AnalysisReport& zero_baseline) {
  report.lowpass_gain_db = lowpass_gain_db(report, zero_baseline);
  report.baseline = method_name(zero_baseline.method);
}

void write_report(const AnalysisReport& r, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::json j;
    j["method"] = method_name(r.method);
    j["slices"] = r.slices;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["bit_depth"] = r.bit_depth;
    j["sigma_f_sq"] = r.sigma_f_sq;
    j["sigma_h_sq"] = r.sigma_h_sq;
    j["sigma_l_sq"] = r.sigma_l_sq;
    j["subband_gain"] = r.subband_gain ? nlohmann::json(*r.subband_gain) : "undef";
    j["mse"] = r.mse_global;
    j["psnr_db"] = metric_json(r.psnr_global_db);
    j["linf"] = r.linf_global;
    if (r.lowpass_gain_db) {
      j["lowpass_gain_db"] = metric_json(*r.lowpass_gain_db);
      j["baseline"] = r.baseline;
    }
    nlohmann::json slices = nlohmann::json::array();
    for (std::size_t i = 0; i < r.slice_psnr_db.size(); ++i) {
      slices.push_back({{"index", i},
                        {"psnr_db", metric_json(r.slice_psnr_db[i])},
                        {"linf", r.slice_linf[i]}});
    }
    j["per_slice"] = slices;
    out << j.dump(2) << '\n';
    return;
  }

  out << "key,value\n";
  out << "method," << method_name(r.method) << '\n';
  out << "slices," << r.slices << '\n';
  out << "rows," << r.rows << '\n';
  out << "cols," << r.cols << '\n';
  out << "bit_depth," << unsigned(r.bit_depth) << '\n';
  out << "sigma_f_sq," << format_metric(r.sigma_f_sq) << '\n';
  out << "sigma_h_sq," << format_metric(r.sigma_h_sq) << '\n';
  out << "sigma_l_sq," << format_metric(r.sigma_l_sq) << '\n';
  out << "subband_gain," << (r.subband_gain ? format_metric(*r.subband_gain) : "undef") << '\n';
  out << "mse," << format_metric(r.mse_global) << '\n';
  out << "psnr_db," << format_metric(r.psnr_global_db) << '\n';
  out << "linf," << r.linf_global << '\n';
  if (r.lowpass_gain_db) {
    out << "lowpass_gain_db," << format_metric(*r.lowpass_gain_db) << '\n';
    out << "baseline," << r.baseline << '\n';
  }
  out << "index,psnr_db,linf\n";
  for (std::size_t i = 0; i < r.slice_psnr_db.size(); ++i)
    out << i << ',' << format_metric(r.slice_psnr_db[i]) << ',' << r.slice_linf[i] << '\n';
}

std::string report_to_string(const AnalysisReport& report, ReportFormat format) {
  std::ostringstream out;
  write_report(report, out, format);
  return out.str();
}

}  // namespace mcwl
