#pragma once

// Photon-number-resolving detector with quantum efficiency eta, expanded to
// second order in (1 - eta). Only the vacuum-ancilla branch with an even
// number of registered photons is modeled.

#include <array>

#include "sqgain/analytic.hpp"
#include "sqgain/fock_oracle.hpp"

namespace sqgain {

class DetectorModel {
public:
  /// Throws DomainError unless 0 < eta <= 1.
  explicit DetectorModel(double eta);

  double eta() const { return eta_; }
  double loss() const { return 1.0 - eta_; }

private:
  double eta_;
};

/// Mixture weights of |Psi_k>, |Psi_{k+1}>, |Psi_{k+2}> produced when the
/// detector misses zero, one or two photons:
///   w0 = 1, w1 = (1-eta) B <n_k>, w2 = (1-eta)^2/2 B^2 <n_k><n_{k+1}>.
/// `norm` is their sum.
struct MixedStateSecondOrder {
  int base_k = 0;
  std::array<double, 3> weights{1.0, 0.0, 0.0};
  double norm = 1.0;
};

MixedStateSecondOrder second_order_weights(int k, double y1, double B, const DetectorModel& det);

/// Normalization of the second-order mixture (a.k.a. the lossy-detector "g"
/// factor; unrelated to the squeezing gain).
double norm_factor_eta(int k, double y1, double B, double eta);

/// X2 variance of the second-order mixture. Throws UnsupportedError for odd k.
double variance_eta(int k, double y1, double B, double eta);

/// eta^k P_k norm_factor_eta.
double probability_eta(int k, double y1, double B, double eta);

/// Mean photon number of the second-order mixture.
double mean_photon_eta(int k, double y1, double B, double eta);

/// (|Psi_k><Psi_k| + w1 |Psi_{k+1}><Psi_{k+1}| + w2 |Psi_{k+2}><Psi_{k+2}|) / norm
/// on |0> .. |n_max>.
DensityMatrix mixed_state(int k, double y1, double B, double eta, int n_max);

/// True when (1-eta) B <n_{k+2}> > 0.5, i.e. the second-order expansion is
/// no longer trustworthy.
bool second_order_degraded(int k, double y1, double B, double eta);

/// Estimate of the neglected third-order contribution to the variance:
/// 2 w3/norm * max(1, |var_{k+3} - variance_eta|) with
/// w3 = (1-eta)^3/3! B^3 <n_k><n_{k+1}><n_{k+2}>.
double third_order_variance_bound(int k, double y1, double B, double eta);

/// Relative counterpart for the success probability: 2 w3/norm.
double third_order_probability_bound(int k, double y1, double B, double eta);

/// Same construction as the variance bound, for the mean photon number.
double third_order_mean_bound(int k, double y1, double B, double eta);

}  // namespace sqgain
