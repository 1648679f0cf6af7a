#pragma once

// One-dimensional searches over the beam-splitter parameter B and the input
// squeezing S, plus the curves built from them.

#include <optional>
#include <span>
#include <vector>

namespace sqgain {

/// Closed search interval for B.
struct BRange {
  double lo;
  double hi;
};

/// Highest transmittance amplitude considered by default. The default B
/// interval starts at (1 - t^2)/t^2 for this t.
inline constexpr double kMaxTransmittance = 0.99;

BRange default_b_range();

/// Which family of heralded states is optimized.
struct Branch {
  int k = 2;
  int ancilla = 0;
  double eta = 1.0;
};

/// Throws DomainError / UnsupportedError for combinations the models do not cover
/// (lossy detection is only modeled for the vacuum ancilla and even k).
void validate(const Branch& branch);

/// One evaluated point; also the CSV row of sweeps.
struct OptimizationResult {
  double S_dB = 0.0;
  int k = 0;
  int ancilla = 0;
  double eta = 1.0;
  double B_opt = 0.0;
  double var_min = 0.0;
  double gain_dB = 0.0;
  double prob = 0.0;
  double mean_n = 0.0;

  /// -10 lg(4 var_min); equals gain_dB + S_dB.
  double squeeze_out_dB() const;
};

using SweepRow = OptimizationResult;

double branch_variance(const Branch& branch, double y, double B);
double branch_probability(const Branch& branch, double y, double B);
double branch_mean_photon(const Branch& branch, double y, double B);

/// Every figure of merit at a fixed (S, B).
OptimizationResult evaluate_at(const Branch& branch, double S_dB, double B);

/// Coarse grid over B (log-spaced below 1, linear above, >= 400 points),
/// then golden-section refinement of the three best local minima to
/// |dB| < 1e-7. Ties go to the smaller B. Throws DomainError for an empty range.
OptimizationResult minimize_over_B(double S_dB, const Branch& branch,
                                   BRange range = default_b_range());

/// The B grid minimize_over_B starts from.
std::vector<double> b_grid(BRange range);

std::vector<SweepRow> gain_curve(std::span<const double> S_grid, const Branch& branch,
                                 BRange range = default_b_range());

/// Upper end of {S in (0, S_hi] : gain(S) > 0}; nullopt when the gain is
/// never positive on the scan.
std::optional<double> gain_width(const Branch& branch, BRange range = default_b_range(),
                                 double S_hi = 15.0);

/// Largest optimized gain over S in (S_lo, S_hi].
OptimizationResult max_gain(const Branch& branch, BRange range = default_b_range(),
                            double S_lo = 0.05, double S_hi = 6.0);

struct BrightnessPoint {
  double S_dB = 0.0;
  double B_opt = 0.0;
  double mean_n = 0.0;
  double ratio = 0.0;  ///< mean_n / sinh^2(s)
};

/// Single-photon-ancilla branch, B at the variance optimum for each S (> 0).
std::vector<BrightnessPoint> brightness_curve(std::span<const double> S_grid, int k,
                                              BRange range = default_b_range());

}  // namespace sqgain
