#pragma once

// Side-by-side evaluation of the closed forms and the Fock-space oracle at
// one parameter point.

#include "sqgain/fock_oracle.hpp"

namespace sqgain {

struct OraclePoint {
  double S_dB = 2.0;
  double B = 0.1;
  int k = 2;
  int ancilla = 0;
  double eta = 1.0;
};

struct OracleComparison {
  OraclePoint point;

  double var_closed = 0.0;
  double var_oracle = 0.0;
  double prob_closed = 0.0;
  double prob_oracle = 0.0;
  double mean_closed = 0.0;
  double mean_oracle = 0.0;
  /// 1 - fidelity for pure states, trace distance for lossy detection.
  double state_dev = 0.0;

  double input_tail = 0.0;        ///< SMSV mass beyond n_max
  double conditional_tail = 0.0;  ///< heralded-state mass beyond the oracle's mode-1 range

  double var_tol = 0.0;
  double prob_rel_tol = 0.0;
  double mean_tol = 0.0;
  double state_tol = 0.0;

  double var_dev() const;
  double prob_rel_dev() const;
  double mean_dev() const;
  bool within_tolerance() const;
  bool truncation_healthy(double tail_tol) const;
};

/// Tolerances: 1e-8 (variance, mean), 1e-10 relative (probability) and
/// 1e-10 (infidelity) for ideal detection; the third-order bounds of
/// detector.hpp plus a small numerical floor for eta < 1.
OracleComparison compare_with_oracle(const OraclePoint& point, const TruncationConfig& cfg);

}  // namespace sqgain
