#include "sqgain/crosscheck.hpp"

#include <algorithm>
#include <cmath>

#include "sqgain/analytic.hpp"
#include "sqgain/detector.hpp"
#include "sqgain/error.hpp"

namespace sqgain {

namespace {

constexpr double kIdealVarTol = 1e-8;
constexpr double kIdealMeanTol = 1e-8;
constexpr double kIdealProbRelTol = 1e-10;
constexpr double kIdealStateTol = 1e-10;
constexpr double kLossyFloor = 1e-10;

double conditional_tail(int ancilla, int k, double y1, double B, int n_out) {
  if (n_out < 0) return 1.0;
  AnalyticLimits lim;
  lim.k_cap = std::max(lim.k_cap, k);
  return state_coefficients(StateSpec{ancilla, k, y1, B}, n_out, 1.0, lim).tail_mass;
}

}  // namespace

double OracleComparison::var_dev() const { return std::abs(var_closed - var_oracle); }

double OracleComparison::prob_rel_dev() const {
  if (prob_closed == 0.0) return std::abs(prob_oracle);
  return std::abs(prob_closed - prob_oracle) / std::abs(prob_closed);
}

double OracleComparison::mean_dev() const { return std::abs(mean_closed - mean_oracle); }

bool OracleComparison::within_tolerance() const {
  return var_dev() < var_tol && prob_rel_dev() < prob_rel_tol && mean_dev() < mean_tol &&
         state_dev < state_tol;
}

bool OracleComparison::truncation_healthy(double tail_tol) const {
  return input_tail < tail_tol && conditional_tail < tail_tol;
}

OracleComparison compare_with_oracle(const OraclePoint& point, const TruncationConfig& cfg) {
  if (cfg.n_max < 2 * point.k + 20) {
    throw DomainError("oracle comparison needs n_max >= 2k + 20");
  }
  const SqueezeParams sq = squeeze_from_db(point.S_dB);
  const BeamSplitterParams bs = BeamSplitterParams::from_B(point.B);
  const StateSpec spec = StateSpec::from_input(point.ancilla, point.k, sq.y, point.B);

  // The oracle must see the truncated input even when it is unhealthy; the
  // caller decides what to do with input_tail.
  TruncationConfig lenient = cfg;
  lenient.tail_tol = 1.0;
  const FockVector input = smsv_vector(sq.y, lenient);
  const int n_total = cfg.n_max + point.ancilla;

  OracleComparison c;
  c.point = point;
  c.input_tail = input.tail_mass;

  if (point.eta >= 1.0) {
    c.var_closed = variance(spec);
    c.prob_closed = probability(spec);
    c.mean_closed = mean_photon(spec);

    const HeraldResult h = herald_project(input, point.ancilla, bs, point.k);
    c.prob_oracle = h.probability;
    if (h.probability > 0.0) {
      const Observables o = observables(h.state);
      c.var_oracle = o.x2_var;
      c.mean_oracle = o.mean_n;
      const FockCoeffs closed = state_coefficients(spec, h.state.n_max(), 1.0);
      FockVector closed_vec;
      closed_vec.amplitudes.assign(closed.coeffs.begin(), closed.coeffs.end());
      c.state_dev = 1.0 - fidelity(closed_vec, h.state);
    }
    c.conditional_tail = conditional_tail(point.ancilla, point.k, spec.y1, point.B,
                                          n_total - point.k);
    c.var_tol = kIdealVarTol;
    c.mean_tol = kIdealMeanTol;
    c.prob_rel_tol = kIdealProbRelTol;
    c.state_tol = kIdealStateTol;
    return c;
  }

  if (point.ancilla != 0) {
    throw UnsupportedError("lossy detection is modeled for the vacuum ancilla only");
  }
  const int k = point.k;
  const double y1 = spec.y1;
  c.var_closed = variance_eta(k, y1, point.B, point.eta);
  c.prob_closed = probability_eta(k, y1, point.B, point.eta);
  c.mean_closed = mean_photon_eta(k, y1, point.B, point.eta);

  const MixedHeraldResult h = herald_povm(input, 0, bs, k, point.eta);
  c.prob_oracle = h.probability;
  const Observables o = observables(h.state);
  c.var_oracle = o.x2_var;
  c.mean_oracle = o.mean_n;
  c.state_dev = trace_distance(mixed_state(k, y1, point.B, point.eta, n_total), h.state);

  double tail = 0.0;
  for (int i = 0; i < 3; ++i) {
    tail = std::max(tail, conditional_tail(0, k + i, y1, point.B, n_total - k - i));
  }
  c.conditional_tail = tail;
  c.var_tol = third_order_variance_bound(k, y1, point.B, point.eta) + kLossyFloor;
  c.mean_tol = third_order_mean_bound(k, y1, point.B, point.eta) + kLossyFloor;
  c.prob_rel_tol = third_order_probability_bound(k, y1, point.B, point.eta) + kLossyFloor;
  c.state_tol = third_order_probability_bound(k, y1, point.B, point.eta) + kLossyFloor;
  return c;
}

}  // namespace sqgain
