#include "sqgain/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqgain/error.hpp"

namespace sqgain {

namespace {

int parity_offset(int ancilla, int k) {
  return state_parity(ancilla, k) == Parity::Even ? 0 : 1;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// y1 d/dy1 (y1 Z^(k)) = y1 Z^(k) + y1^2 Z^(k+1)
double y_dy_yz(const ZTable& z, int k) {
  const double y1 = z.y1();
  return y1 * z[k] + y1 * y1 * z[k + 1];
}

}  // namespace

SqueezeParams SqueezeParams::from_amplitude(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError("squeezing amplitude must be finite and >= 0, got " + std::to_string(s));
  }
  SqueezeParams p;
  p.s = s;
  p.y = std::tanh(s) / 2.0;
  p.S_dB = 20.0 * s / std::numbers::ln10;
  const double sh = std::sinh(s);
  p.mean_n = sh * sh;
  return p;
}

SqueezeParams SqueezeParams::from_parameter(double y) {
  if (!(y >= 0.0 && y < 0.5)) {
    throw DomainError("squeezing parameter must lie in [0, 0.5), got " + std::to_string(y));
  }
  return from_amplitude(std::atanh(2.0 * y));
}

SqueezeParams squeeze_from_db(double S_dB) {
  if (!(S_dB >= 0.0) || !std::isfinite(S_dB)) {
    throw DomainError("squeezing in dB must be finite and >= 0, got " + std::to_string(S_dB));
  }
  return SqueezeParams::from_amplitude(S_dB * std::numbers::ln10 / 20.0);
}

BeamSplitterParams BeamSplitterParams::from_B(double B) {
  if (!(B >= 0.0) || !std::isfinite(B)) {
    throw DomainError("beam-splitter parameter B must be finite and >= 0, got " +
                      std::to_string(B));
  }
  BeamSplitterParams bs;
  bs.B = B;
  bs.t = 1.0 / std::sqrt(1.0 + B);
  bs.r = std::sqrt(B / (1.0 + B));
  return bs;
}

BeamSplitterParams BeamSplitterParams::from_transmittance(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("transmittance must lie in (0, 1], got " + std::to_string(t));
  }
  BeamSplitterParams bs;
  bs.t = t;
  bs.r = std::sqrt((1.0 - t) * (1.0 + t));
  bs.B = (1.0 - t * t) / (t * t);
  return bs;
}

StateSpec StateSpec::from_input(int ancilla, int k, double y, double B) {
  return StateSpec{ancilla, k, y / (1.0 + B), B};
}

Parity state_parity(int ancilla, int k) {
  const bool odd = ((k + ancilla) % 2) != 0;
  return odd ? Parity::Odd : Parity::Even;
}

void validate(const StateSpec& spec, const AnalyticLimits& limits) {
  if (spec.ancilla != 0 && spec.ancilla != 1) {
    throw DomainError("ancilla photon number must be 0 or 1, got " + std::to_string(spec.ancilla));
  }
  if (spec.k < 0) throw DomainError("heralded photon number must be >= 0");
  if (spec.k > limits.k_cap) {
    throw DomainError("k = " + std::to_string(spec.k) + " exceeds the configured cap " +
                      std::to_string(limits.k_cap));
  }
  if (!(spec.B >= 0.0) || !std::isfinite(spec.B)) throw DomainError("B must be finite and >= 0");
  if (!(spec.y1 >= 0.0)) throw DomainError("y1 must be >= 0");
  if (spec.y1 >= limits.y1_guard) {
    throw DomainError("y1 = " + std::to_string(spec.y1) + " is at or beyond the guard " +
                      std::to_string(limits.y1_guard));
  }
  if (spec.input_y() >= 0.5) throw DomainError("input squeezing parameter y must be < 0.5");
}

ZTable z_table(double y1, int k_max, const AnalyticLimits& limits) {
  if (!(y1 >= 0.0)) throw DomainError("z_table: y1 must be >= 0");
  if (y1 >= limits.y1_guard) {
    throw DomainError("z_table: y1 = " + std::to_string(y1) +
                      " too close to the branch point at 0.5");
  }
  if (k_max < 0) throw DomainError("z_table: k_max must be >= 0");

  const double w = 1.0 - 4.0 * y1 * y1;
  std::vector<double> z(static_cast<std::size_t>(k_max) + 1);
  z[0] = 1.0 / std::sqrt(w);
  for (int j = 0; j < k_max; ++j) {
    const double prev = j > 0 ? z[j - 1] : 0.0;
    z[j + 1] = (4.0 * (2.0 * j + 1.0) * y1 * z[j] + 4.0 * j * j * prev) / w;
  }
  for (double v : z) {
    if (!std::isfinite(v)) throw DomainError("z_table: derivative overflow, lower k_max or y1");
  }
  return ZTable(y1, std::move(z));
}

double smsv_variance(const SqueezeParams& p) { return std::exp(-2.0 * p.s) / 4.0; }

double hybrid_amplitude(const StateSpec& spec, const AnalyticLimits& limits) {
  validate(spec, limits);
  const int k = spec.k;
  const double x = spec.y1 * spec.B;
  if (spec.ancilla == 0) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(x, 0.5 * k) / std::sqrt(factorial(k));
  }
  const double scale = 1.0 / std::sqrt(1.0 + spec.B);
  if (k == 0) return scale * std::sqrt(spec.B);
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  return scale * sign * std::pow(x, 0.5 * (k - 1)) * k / std::sqrt(factorial(k));
}

FockCoeffs state_coefficients(const StateSpec& spec, int n_max, double tail_tol,
                              const AnalyticLimits& limits) {
  validate(spec, limits);
  if (n_max < 0) throw DomainError("state_coefficients: n_max must be >= 0");

  const int k = spec.k;
  const double y1 = spec.y1;
  const int p0 = parity_offset(spec.ancilla, k);

  // Unnormalized amplitudes on |p>, p = p0, p0+2, ... generated by their
  // two-step ratio; the overall scale is fixed afterwards numerically.
  auto ratio = [&](int p) {
    const double dp = p;
    if (spec.ancilla == 0) {
      return y1 * 2.0 * (dp + k + 1.0) / std::sqrt((dp + 1.0) * (dp + 2.0));
    }
    if (k == 0) return 2.0 * y1 * std::sqrt((dp + 2.0) / (dp + 1.0));
    return y1 * 2.0 * (dp + k) / std::sqrt((dp + 1.0) * (dp + 2.0));
  };
  auto shape = [&](int p) {
    if (spec.ancilla == 1 && k > 0) return 1.0 - spec.B * p / k;
    return 1.0;
  };

  FockCoeffs out;
  out.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double kept = 0.0;
  double tail = 0.0;
  double base = 1.0;
  constexpr int kMaxExtra = 200000;
  for (int p = p0;; p += 2) {
    const double amp = base * shape(p);
    const double mass = amp * amp;
    if (p <= n_max) {
      out.coeffs[static_cast<std::size_t>(p)] = amp;
      kept += mass;
    } else {
      tail += mass;
      if (mass <= 1e-34 * (kept + tail) || p > n_max + kMaxExtra || base == 0.0) break;
    }
    base *= ratio(p);
    if (base > 1e150) {
      // rescale everything accumulated so far
      constexpr double f = 1e-150;
      for (double& c : out.coeffs) c *= f;
      base *= f;
      kept *= f * f;
      tail *= f * f;
    }
  }

  const double total = kept + tail;
  if (!(total > 0.0)) throw DomainError("state_coefficients: state vanishes for these parameters");
  const double scale = 1.0 / std::sqrt(total);
  for (double& c : out.coeffs) c *= scale;
  out.norm = kept / total;
  out.tail_mass = tail / total;
  if (out.tail_mass > tail_tol) {
    throw TruncationError("state_coefficients: mass beyond n_max = " + std::to_string(n_max) +
                              " is " + std::to_string(out.tail_mass),
                          out.tail_mass);
  }
  return out;
}

double norm_factor_added(int k, double y1, double B, const AnalyticLimits& limits) {
  if (k < 0) throw DomainError("norm_factor_added: k must be >= 0");
  const ZTable z = z_table(y1, k + 1, limits);
  if (k == 0) return z[0] * z[0] * z[0];
  const double a1 = -2.0 * B / k;
  const double a2 = (B / k) * (B / k);
  return z[k - 1] + a1 * y1 * z[k] + a2 * y_dy_yz(z, k);
}

double norm_factor_added_derivative(int k, double y1, double B, const AnalyticLimits& limits) {
  if (k < 0) throw DomainError("norm_factor_added_derivative: k must be >= 0");
  const ZTable z = z_table(y1, k + 2, limits);
  if (k == 0) return 3.0 * z[0] * z[0] * z[1];
  const double a1 = -2.0 * B / k;
  const double a2 = (B / k) * (B / k);
  // d/dy1 [y1 Z^(k) + y1^2 Z^(k+1)] = Z^(k) + 3 y1 Z^(k+1) + y1^2 Z^(k+2)
  const double d_second = z[k] + 3.0 * y1 * z[k + 1] + y1 * y1 * z[k + 2];
  return z[k] + a1 * (z[k] + y1 * z[k + 1]) + a2 * d_second;
}

double r_function(int k, double y1, double B, const AnalyticLimits& limits) {
  if (k < 1) throw DomainError("r_function is defined for k >= 1 only");
  const ZTable z = z_table(y1, k + 1, limits);
  return k * z[k - 1] + (1.0 - B) * y1 * z[k] - (B / k) * y_dy_yz(z, k);
}

double mean_photon(const StateSpec& spec, const AnalyticLimits& limits) {
  validate(spec, limits);
  const int k = spec.k;
  const double y1 = spec.y1;
  if (y1 == 0.0) return parity_offset(spec.ancilla, k);
  if (spec.ancilla == 0) {
    const ZTable z = z_table(y1, k + 1, limits);
    return y1 * z[k + 1] / z[k];
  }
  const double g = norm_factor_added(k, y1, spec.B, limits);
  const double dg = norm_factor_added_derivative(k, y1, spec.B, limits);
  // G_0 sums over |2n+1> with weights y1^(2n): the derivative only counts 2n.
  const double offset = (k == 0) ? 1.0 : 0.0;
  return offset + y1 * dg / g;
}

double variance(const StateSpec& spec, const AnalyticLimits& limits) {
  validate(spec, limits);
  const int k = spec.k;
  const double y1 = spec.y1;
  if (y1 == 0.0) return 0.25 + 0.5 * parity_offset(spec.ancilla, k);

  const double n = mean_photon(spec, limits);
  const double common = 0.25 + 0.5 * n * (1.0 - 2.0 * y1);
  if (spec.ancilla == 0) return common - y1 * (k + 1);
  if (k == 0) return common - 2.0 * y1;
  const double g = norm_factor_added(k, y1, spec.B, limits);
  const double r = r_function(k, y1, spec.B, limits);
  return common - k * y1 + 2.0 * y1 * spec.B * r / (k * g);
}

double probability(const StateSpec& spec, const AnalyticLimits& limits) {
  validate(spec, limits);
  const int k = spec.k;
  const double y1 = spec.y1;
  const double y = spec.input_y();
  const double prefactor = std::sqrt(1.0 - 4.0 * y * y);  // 1/cosh(s)
  const double x = y1 * spec.B;
  if (spec.ancilla == 0) {
    const ZTable z = z_table(y1, k, limits);
    return prefactor * std::pow(x, k) * z[k] / factorial(k);
  }
  const double g = norm_factor_added(k, y1, spec.B, limits);
  if (k == 0) return prefactor * spec.B * g / (1.0 + spec.B);
  return prefactor / (1.0 + spec.B) * std::pow(x, k - 1) / factorial(k) * k * k * g;
}

double gain_db(double var_k, double var_smsv) {
  if (!(var_k > 0.0) || !(var_smsv > 0.0)) {
    throw DomainError("gain_db: variances must be positive");
  }
  return -10.0 * std::log10(var_k / var_smsv);
}

double squeezing_db(double var) {
  if (!(var > 0.0)) throw DomainError("squeezing_db: variance must be positive");
  return -10.0 * std::log10(4.0 * var);
}

}  // namespace sqgain
