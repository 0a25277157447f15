#ifndef MCWL_CORE_METRICS_HPP
#define MCWL_CORE_METRICS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lifting.hpp"

namespace mcwl {

// Squared l2 norms of the LeGall 5/3 analysis impulse responses
// {-1/2, 1, -1/2} and {-1/8, 2/8, 6/8, 2/8, -1/8}: the subband gain
// weights.
inline constexpr double kHighpassL2NormSq = 3.0 / 2.0;    // 1.5
inline constexpr double kLowpassL2NormSq = 46.0 / 64.0;   // 0.71875

// All evaluation quantities for one (volume, method) pair. PSNR uses
// +infinity as the zero-MSE marker; an absent subband gain marks the
// degenerate constant-volume case.
struct AnalysisReport {
  Method method = Method::Zero;
  std::uint32_t slices = 0, rows = 0, cols = 0;
  std::uint8_t bit_depth = 8;
  double sigma_f_sq = 0.0;
  double sigma_h_sq = 0.0;
  double sigma_l_sq = 0.0;
  std::optional<double> subband_gain;
  double mse_global = 0.0;
  double psnr_global_db = 0.0;
  std::int64_t linf_global = 0;
  std::vector<double> slice_mse;
  std::vector<double> slice_psnr_db;
  std::vector<std::int64_t> slice_linf;
  std::optional<double> lowpass_gain_db;  // set against a named baseline
  std::string baseline;
};

enum class ReportFormat : std::uint8_t { Csv = 0, Json = 1 };

// Population variance with divisor M*N*K, two-pass.
double volume_variance(const Volume& volume);

// Subband coding gain; throws DegenerateError naming the offending
// subband when one variance vanishes.
double subband_gain(const Decomposition& dec, const Volume& volume);
double subband_gain_from_variances(double sigma_f_sq, double sigma_h_sq, double sigma_l_sq);

// MSE of the lowpass band against the corresponding (even) original
// slices: global (divisor M*N*K', K' lowpass slices) and per slice.
struct MseResult {
  double global = 0.0;
  std::vector<double> per_slice;
};
MseResult lowpass_mse(const Decomposition& dec, const Volume& volume);

double lowpass_psnr_db(double mse, std::uint8_t bit_depth);

// 10*log10(MSE_zero / MSE_dcm); equal inputs give 0 dB, zero MSE on one
// side gives the corresponding infinity marker.
double lowpass_gain_db(const AnalysisReport& dcm, const AnalysisReport& zero);

struct LinfResult {
  std::int64_t global = 0;
  std::vector<std::int64_t> per_slice;
};
LinfResult linf_norm(const Decomposition& dec, const Volume& volume);

AnalysisReport analyze(const Decomposition& dec, const Volume& volume);
void set_baseline(AnalysisReport& report, const AnalysisReport& zero_baseline);

void write_report(const AnalysisReport& report, std::ostream& out, ReportFormat format);
std::string report_to_string(const AnalysisReport& report, ReportFormat format);

// Fixed-precision rendering shared by every report writer so equal runs
// emit identical bytes; infinities render as "inf"/"-inf".
std::string format_metric(double value);

}  // namespace mcwl

#endif
