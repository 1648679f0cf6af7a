#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sqgain/analytic.hpp"
#include "sqgain/error.hpp"
#include "sqgain/fock_oracle.hpp"

using namespace sqgain;

namespace {

// j-th derivative of sum_n C(2n,n) y^(2n), summed term by term.
double z_series(double y, int j) {
  double total = 0.0;
  double c = 1.0;  // C(2n, n)
  for (int n = 0; n < 4000; ++n) {
    const int p = 2 * n;
    if (p >= j) {
      double falling = 1.0;
      for (int i = 0; i < j; ++i) falling *= p - i;
      const double term = c * falling * std::pow(y, p - j);
      total += term;
      if (n > 10 && term <= 1e-18 * total) break;
    }
    c *= 2.0 * (2.0 * n + 1.0) / (n + 1.0);
  }
  return total;
}

double s_from_db(double S_dB) { return S_dB * std::log(10.0) / 20.0; }

}  // namespace

TEST_CASE("squeezing conversions") {
  const SqueezeParams p = squeeze_from_db(3.0);
  CHECK(p.s == doctest::Approx(s_from_db(3.0)).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(std::tanh(p.s) / 2).epsilon(1e-14));
  CHECK(p.mean_n == doctest::Approx(std::sinh(p.s) * std::sinh(p.s)).epsilon(1e-14));
  CHECK(smsv_variance(p) == doctest::Approx(std::exp(-2 * p.s) / 4).epsilon(1e-14));
  CHECK(squeezing_db(smsv_variance(p)) == doctest::Approx(3.0).epsilon(1e-12));

  const SqueezeParams q = SqueezeParams::from_parameter(p.y);
  CHECK(q.s == doctest::Approx(p.s).epsilon(1e-12));
  CHECK(squeeze_from_db(0.0).y == 0.0);
  CHECK_THROWS_AS(squeeze_from_db(-1.0), DomainError);
  CHECK_THROWS_AS(SqueezeParams::from_parameter(0.5), DomainError);
}

TEST_CASE("beam splitter parametrizations agree") {
  const BeamSplitterParams a = BeamSplitterParams::from_B(0.25);
  CHECK(a.t * a.t + a.r * a.r == doctest::Approx(1.0));
  CHECK(a.r * a.r / (a.t * a.t) == doctest::Approx(0.25));
  const BeamSplitterParams b = BeamSplitterParams::from_transmittance(a.t);
  CHECK(b.B == doctest::Approx(0.25));
  CHECK_THROWS_AS(BeamSplitterParams::from_B(-0.1), DomainError);
}

TEST_CASE("Z derivatives follow the series") {
  for (double y : {0.0, 0.05, 0.2, 0.35, 0.45}) {
    const ZTable z = z_table(y, 8);
    REQUIRE(z.k_max() == 8);
    CHECK(z[0] == doctest::Approx(1.0 / std::sqrt(1 - 4 * y * y)).epsilon(1e-14));
    for (int j = 0; j <= 8; ++j) {
      CAPTURE(y);
      CAPTURE(j);
      CHECK(z[j] == doctest::Approx(z_series(y, j)).epsilon(1e-11));
    }
  }
}

TEST_CASE("Z table rejects the singular region") {
  CHECK_THROWS_AS(z_table(0.499, 2), DomainError);
  CHECK_THROWS_AS(z_table(-0.1, 2), DomainError);
  CHECK_NOTHROW(z_table(0.4989, 2));
}

TEST_CASE("state spec validation") {
  const double y = squeeze_from_db(2.0).y;
  CHECK_THROWS_AS(variance(StateSpec::from_input(2, 1, y, 0.1)), DomainError);
  CHECK_THROWS_AS(variance(StateSpec::from_input(0, 9, y, 0.1)), DomainError);
  CHECK_THROWS_AS(variance(StateSpec::from_input(0, -1, y, 0.1)), DomainError);
  CHECK_THROWS_AS(variance(StateSpec::from_input(0, 2, y, -0.5)), DomainError);
  AnalyticLimits wide;
  wide.k_cap = 20;
  CHECK_NOTHROW(variance(StateSpec::from_input(0, 12, y, 0.1), wide));
  CHECK_THROWS_AS(r_function(0, 0.1, 0.1), DomainError);
}

TEST_CASE("coefficients have definite parity and unit norm") {
  const double y = squeeze_from_db(4.0).y;
  for (int ancilla : {0, 1}) {
    for (int k = 0; k <= 8; ++k) {
      const StateSpec spec = StateSpec::from_input(ancilla, k, y, 0.3);
      const FockCoeffs c = state_coefficients(spec, 120);
      const int odd = state_parity(ancilla, k) == Parity::Odd ? 1 : 0;
      double sum = 0.0;
      for (std::size_t n = 0; n < c.coeffs.size(); ++n) {
        if (static_cast<int>(n % 2) != odd) {
          CHECK(c.coeffs[n] == 0.0);
        }
        sum += c.coeffs[n] * c.coeffs[n];
      }
      CAPTURE(ancilla);
      CAPTURE(k);
      CHECK(sum == doctest::Approx(c.norm).epsilon(1e-14));
      CHECK(c.norm + c.tail_mass == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(c.tail_mass < 1e-12);
    }
  }
  CHECK(state_parity(0, 3) == Parity::Odd);
  CHECK(state_parity(1, 3) == Parity::Even);
}

TEST_CASE("truncation of closed-form coefficients is reported") {
  const double y = squeeze_from_db(8.0).y;
  const StateSpec spec = StateSpec::from_input(0, 6, y, 0.02);
  CHECK_THROWS_AS(state_coefficients(spec, 60), TruncationError);
  const FockCoeffs c = state_coefficients(spec, 60, 1.0);
  CHECK(c.tail_mass > 1e-12);
  CHECK(c.norm + c.tail_mass == doctest::Approx(1.0));
}

TEST_CASE("probabilities are complete") {
  AnalyticLimits wide;
  wide.k_cap = 200;
  for (int ancilla : {0, 1}) {
    for (double S : {0.5, 2.0, 5.0}) {
      for (double B : {0.02, 0.5, 1.5}) {
        const double y = squeeze_from_db(S).y;
        double total = 0.0;
        for (int k = 0; k <= 200; ++k) {
          const double p = probability(StateSpec::from_input(ancilla, k, y, B), wide);
          total += p;
          if (k > 20 && p < 1e-18) break;
        }
        CAPTURE(ancilla);
        CAPTURE(S);
        CAPTURE(B);
        CHECK(std::abs(total - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("small squeezing limits") {
  // the approach is linear in s, so the limit is checked at s = 1e-8 and the
  // slope at s = 1e-4
  const auto y_of = [](double s) { return squeeze_from_db(20.0 * s / std::log(10.0)).y; };
  for (int ancilla : {0, 1}) {
    for (int k = 0; k <= 6; ++k) {
      const double expected = state_parity(ancilla, k) == Parity::Even ? 0.25 : 0.75;
      const double d8 = variance(StateSpec::from_input(ancilla, k, y_of(1e-8), 0.1)) - expected;
      const double d4 = variance(StateSpec::from_input(ancilla, k, y_of(1e-4), 0.1)) - expected;
      CAPTURE(ancilla);
      CAPTURE(k);
      CHECK(std::abs(d8) < 1e-6);
      CHECK(d4 / 1e-4 == doctest::Approx(d8 / 1e-8).epsilon(1e-3));
    }
  }
}

TEST_CASE("zero squeezing is handled exactly") {
  CHECK(variance(StateSpec{0, 0, 0.0, 0.1}) == 0.25);
  CHECK(variance(StateSpec{0, 1, 0.0, 0.1}) == 0.75);
  CHECK(mean_photon(StateSpec{0, 1, 0.0, 0.1}) == 1.0);
}

TEST_CASE("k = 0 with vacuum ancilla is a weaker SMSV") {
  const double y = squeeze_from_db(3.0).y;
  const double B = 0.4;
  const StateSpec spec = StateSpec::from_input(0, 0, y, B);
  const SqueezeParams out = SqueezeParams::from_parameter(spec.y1);
  CHECK(variance(spec) == doctest::Approx(smsv_variance(out)).epsilon(1e-13));
  CHECK(mean_photon(spec) == doctest::Approx(out.mean_n).epsilon(1e-13));
}

TEST_CASE("closed forms against a direct Fock sum") {
  // observables of the normalized coefficient vector
  const double y = squeeze_from_db(3.0).y;
  for (int ancilla : {0, 1}) {
    for (int k = 0; k <= 6; ++k) {
      const StateSpec spec = StateSpec::from_input(ancilla, k, y, 0.2);
      const FockCoeffs c = state_coefficients(spec, 150);
      FockVector v;
      v.amplitudes.assign(c.coeffs.begin(), c.coeffs.end());
      const Observables o = observables(v);
      CAPTURE(ancilla);
      CAPTURE(k);
      CHECK(mean_photon(spec) == doctest::Approx(o.mean_n).epsilon(1e-12));
      CHECK(variance(spec) == doctest::Approx(o.x2_var).epsilon(1e-12));
      CHECK(o.x1_var * o.x2_var >= 1.0 / 16 - 1e-12);
    }
  }
}

TEST_CASE("hybrid amplitude signs") {
  const double y = squeeze_from_db(2.0).y;
  for (int k = 0; k <= 6; ++k) {
    const double a0 = hybrid_amplitude(StateSpec::from_input(0, k, y, 0.3));
    const double a1 = hybrid_amplitude(StateSpec::from_input(1, k, y, 0.3));
    CAPTURE(k);
    CHECK((k % 2 == 0 ? a0 > 0 : a0 < 0));
    if (k > 0) CHECK((k % 2 == 0 ? a1 < 0 : a1 > 0));
  }
  const double B = 0.3;
  CHECK(hybrid_amplitude(StateSpec::from_input(1, 0, y, B)) ==
        doctest::Approx(std::sqrt(B / (1 + B))));
}

TEST_CASE("gain in dB") {
  CHECK(gain_db(0.125, 0.25) == doctest::Approx(10 * std::log10(2.0)));
  CHECK(gain_db(0.25, 0.25) == 0.0);
  CHECK_THROWS_AS(gain_db(0.0, 0.25), DomainError);
  CHECK_THROWS_AS(squeezing_db(-1.0), DomainError);
}

TEST_CASE("norm factor derivative matches finite differences") {
  const double y1 = 0.2;
  const double h = 1e-6;
  for (int k = 0; k <= 6; ++k) {
    const double fd =
        (norm_factor_added(k, y1 + h, 0.4) - norm_factor_added(k, y1 - h, 0.4)) / (2 * h);
    CAPTURE(k);
    CHECK(norm_factor_added_derivative(k, y1, 0.4) == doctest::Approx(fd).epsilon(1e-7));
  }
}
