#include "sqgain/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqgain/error.hpp"

namespace sqgain {

namespace {

// The mixture reaches k+3 photons, so the internal cap sits above the public one.
AnalyticLimits extended_limits(int k) {
  const AnalyticLimits defaults;
  if (k < 0 || k > defaults.k_cap) {
    throw DomainError("k = " + std::to_string(k) + " outside [0, " +
                      std::to_string(defaults.k_cap) + "]");
  }
  AnalyticLimits lim = defaults;
  lim.k_cap = k + 4;
  return lim;
}

double mean_vac(int k, double y1, double B, const AnalyticLimits& lim) {
  return mean_photon(StateSpec{0, k, y1, B}, lim);
}

double var_vac(int k, double y1, double B, const AnalyticLimits& lim) {
  return variance(StateSpec{0, k, y1, B}, lim);
}

double third_order_weight(int k, double y1, double B, double loss, const AnalyticLimits& lim) {
  const double l3 = loss * loss * loss;
  return l3 / 6.0 * B * B * B * mean_vac(k, y1, B, lim) * mean_vac(k + 1, y1, B, lim) *
         mean_vac(k + 2, y1, B, lim);
}

}  // namespace

DetectorModel::DetectorModel(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("detector efficiency must lie in (0, 1], got " + std::to_string(eta));
  }
}

MixedStateSecondOrder second_order_weights(int k, double y1, double B, const DetectorModel& det) {
  const AnalyticLimits lim = extended_limits(k);
  const double loss = det.loss();
  MixedStateSecondOrder m;
  m.base_k = k;
  if (loss == 0.0 || B == 0.0) {
    // also validates the parameters
    (void)mean_vac(k, y1, B, lim);
    return m;
  }
  const double n0 = mean_vac(k, y1, B, lim);
  const double n1 = mean_vac(k + 1, y1, B, lim);
  m.weights = {1.0, loss * B * n0, 0.5 * loss * loss * B * B * n0 * n1};
  m.norm = m.weights[0] + m.weights[1] + m.weights[2];
  return m;
}

double norm_factor_eta(int k, double y1, double B, double eta) {
  return second_order_weights(k, y1, B, DetectorModel(eta)).norm;
}

double variance_eta(int k, double y1, double B, double eta) {
  if (k % 2 != 0) {
    throw UnsupportedError("lossy-detector variance is modeled for even k only, got k = " +
                           std::to_string(k));
  }
  const auto m = second_order_weights(k, y1, B, DetectorModel(eta));
  const AnalyticLimits lim = extended_limits(k);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double w = m.weights[static_cast<std::size_t>(i)];
    if (w != 0.0) acc += w * var_vac(k + i, y1, B, lim);
  }
  return acc / m.norm;
}

double probability_eta(int k, double y1, double B, double eta) {
  const auto m = second_order_weights(k, y1, B, DetectorModel(eta));
  const double p = probability(StateSpec{0, k, y1, B}, extended_limits(k));
  return std::pow(eta, k) * p * m.norm;
}

double mean_photon_eta(int k, double y1, double B, double eta) {
  const auto m = second_order_weights(k, y1, B, DetectorModel(eta));
  const AnalyticLimits lim = extended_limits(k);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double w = m.weights[static_cast<std::size_t>(i)];
    if (w != 0.0) acc += w * mean_vac(k + i, y1, B, lim);
  }
  return acc / m.norm;
}

DensityMatrix mixed_state(int k, double y1, double B, double eta, int n_max) {
  const auto m = second_order_weights(k, y1, B, DetectorModel(eta));
  const AnalyticLimits lim = extended_limits(k);
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  double tail = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double w = m.weights[static_cast<std::size_t>(i)];
    if (w == 0.0) continue;
    // truncation shows up in tail_mass rather than as an exception here
    const FockCoeffs c = state_coefficients(StateSpec{0, k + i, y1, B}, n_max, 1.0, lim);
    Eigen::Map<const Eigen::VectorXd> v(c.coeffs.data(), n_max + 1);
    rho.noalias() += (w / m.norm) * (v * v.transpose());
    tail = std::max(tail, c.tail_mass);
  }
  return DensityMatrix(rho.cast<cplx>(), tail);
}

bool second_order_degraded(int k, double y1, double B, double eta) {
  const DetectorModel det(eta);
  const AnalyticLimits lim = extended_limits(k);
  return det.loss() * B * mean_vac(k + 2, y1, B, lim) > 0.5;
}

double third_order_variance_bound(int k, double y1, double B, double eta) {
  const DetectorModel det(eta);
  const AnalyticLimits lim = extended_limits(k);
  const double w3 = third_order_weight(k, y1, B, det.loss(), lim);
  const double norm = norm_factor_eta(k, y1, B, eta);
  const double spread = std::abs(var_vac(k + 3, y1, B, lim) - variance_eta(k, y1, B, eta));
  return 2.0 * w3 / norm * std::max(1.0, spread);
}

double third_order_probability_bound(int k, double y1, double B, double eta) {
  const DetectorModel det(eta);
  const AnalyticLimits lim = extended_limits(k);
  return 2.0 * third_order_weight(k, y1, B, det.loss(), lim) / norm_factor_eta(k, y1, B, eta);
}

double third_order_mean_bound(int k, double y1, double B, double eta) {
  const DetectorModel det(eta);
  const AnalyticLimits lim = extended_limits(k);
  const double w3 = third_order_weight(k, y1, B, det.loss(), lim);
  const double norm = norm_factor_eta(k, y1, B, eta);
  const double spread = std::abs(mean_vac(k + 3, y1, B, lim) - mean_photon_eta(k, y1, B, eta));
  return 2.0 * w3 / norm * std::max(1.0, spread);
}

}  // namespace sqgain
