#pragma once

// Closed-form description of the states obtained by passing a single-mode
// squeezed vacuum (SMSV) through a beam splitter whose second port carries
// either vacuum (ancilla = 0) or one photon (ancilla = 1), and heralding on
// k photons in the reflected mode.
//
// Conventions:
//   y  = tanh(s)/2                 squeezing parameter of the input
//   y1 = y/(1+B)                   parameter of the transmitted mode
//   B  = (1-t^2)/t^2               beam-splitter parameter
//   Z(y) = 1/sqrt(1-4y^2)          generating function of C(2n,n) y^(2n)
//   X2 = (a - a^dag)/2i            vacuum variance 1/4
//
// All amplitudes are real; complex arithmetic lives only in the Fock oracle.

#include <span>
#include <vector>

namespace sqgain {

struct SqueezeParams {
  double s = 0.0;       ///< squeezing amplitude
  double y = 0.0;       ///< tanh(s)/2
  double S_dB = 0.0;    ///< -10 lg(exp(-2s))
  double mean_n = 0.0;  ///< sinh^2(s)

  static SqueezeParams from_amplitude(double s);
  /// Inverse of y = tanh(s)/2; requires 0 <= y < 0.5.
  static SqueezeParams from_parameter(double y);
};

/// Throws DomainError for negative input.
SqueezeParams squeeze_from_db(double S_dB);

struct BeamSplitterParams {
  double t = 1.0;  ///< transmittance amplitude
  double r = 0.0;  ///< reflectance amplitude
  double B = 0.0;  ///< r^2/t^2

  static BeamSplitterParams from_B(double B);
  static BeamSplitterParams from_transmittance(double t);
};

/// Guard rails shared by every closed-form routine.
struct AnalyticLimits {
  double y1_guard = 0.499;  ///< reject y1 >= guard (Z derivatives blow up at 0.5)
  int k_cap = 8;            ///< largest photon count accepted without raising the cap
};

enum class Parity { Even, Odd };

/// One measurement-induced state family: ancilla photons in, k photons heralded.
struct StateSpec {
  int ancilla = 0;
  int k = 0;
  double y1 = 0.0;
  double B = 0.0;

  static StateSpec from_input(int ancilla, int k, double y, double B);
  /// Squeezing parameter of the SMSV that produced this state.
  double input_y() const { return y1 * (1.0 + B); }
};

/// Fock-number parity of the heralded state. Vacuum ancilla keeps the parity
/// of k; a single-photon ancilla flips it.
Parity state_parity(int ancilla, int k);

/// Throws DomainError when the spec violates its invariants or the limits.
void validate(const StateSpec& spec, const AnalyticLimits& limits = {});

/// Derivatives Z^(0..k_max) evaluated at one point.
class ZTable {
public:
  ZTable(double y1, std::vector<double> values) : y1_(y1), values_(std::move(values)) {}

  double y1() const { return y1_; }
  int k_max() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
  std::span<const double> values() const { return values_; }

private:
  double y1_;
  std::vector<double> values_;
};

/// Z^(j)(y1) for j = 0..k_max via the recurrence
///   (1-4y^2) Z^(j+1) = 4(2j+1) y Z^(j) + 4 j^2 Z^(j-1).
/// Throws DomainError when y1 is negative or at/after the guard.
ZTable z_table(double y1, int k_max, const AnalyticLimits& limits = {});

/// Real Fock amplitudes of a heralded state, normalized over the full
/// (untruncated) series. `norm` is the squared norm kept below n_max and
/// `tail_mass` what lies beyond it.
struct FockCoeffs {
  std::vector<double> coeffs;
  double norm = 0.0;
  double tail_mass = 0.0;
};

/// exp(-2s)/4
double smsv_variance(const SqueezeParams& p);

/// Amplitude multiplying the k-photon branch of the hybrid entangled state
/// (vacuum or single-photon ancilla).
double hybrid_amplitude(const StateSpec& spec, const AnalyticLimits& limits = {});

/// Normalized amplitudes up to n_max. Throws TruncationError when the mass
/// beyond n_max exceeds tail_tol.
FockCoeffs state_coefficients(const StateSpec& spec, int n_max, double tail_tol = 1e-12,
                              const AnalyticLimits& limits = {});

/// Squared norm of the unnormalized single-photon-ancilla state:
/// G_0 = Z^3, G_k = Z^(k-1) - (2B/k) y1 Z^(k) + (B/k)^2 y1 d/dy1(y1 Z^(k)).
double norm_factor_added(int k, double y1, double B, const AnalyticLimits& limits = {});

/// d/dy1 of norm_factor_added at fixed B.
double norm_factor_added_derivative(int k, double y1, double B,
                                    const AnalyticLimits& limits = {});

/// R_k = k Z^(k-1) + (1-B) y1 Z^(k) - (B/k) y1 d/dy1(y1 Z^(k)); k >= 1.
double r_function(int k, double y1, double B, const AnalyticLimits& limits = {});

double mean_photon(const StateSpec& spec, const AnalyticLimits& limits = {});

/// Variance of X2 in the heralded state.
double variance(const StateSpec& spec, const AnalyticLimits& limits = {});

/// Probability of heralding k photons.
double probability(const StateSpec& spec, const AnalyticLimits& limits = {});

/// -10 lg(var_k/var_smsv). Throws DomainError for nonpositive variances.
double gain_db(double var_k, double var_smsv);

/// Squeezing of a state in dB relative to vacuum: -10 lg(4 var).
double squeezing_db(double var);

}  // namespace sqgain
