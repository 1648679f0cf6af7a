#pragma once

#include <stdexcept>
#include <string>

namespace sqgain {

/// Input outside the mathematical domain of an operation (negative dB,
/// eta outside (0,1], y1 past the guard, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A truncated Fock representation lost more probability mass than allowed.
class TruncationError : public std::runtime_error {
public:
  TruncationError(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}

  double tail_mass() const noexcept { return tail_mass_; }

private:
  double tail_mass_;
};

/// Parameter combination the model does not cover (e.g. odd k with a lossy detector).
class UnsupportedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sqgain
