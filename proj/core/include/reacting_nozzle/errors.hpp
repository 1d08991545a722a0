#pragma once

#include <stdexcept>
#include <string>

namespace reacting_nozzle {

/// Input violates a physical precondition (non-positive density, subsonic
/// state, Lambda <= 0, ...). Carries a human-readable reason.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The marching solver cannot continue. Raised for sonic degeneracy and CFL
/// violations; the CLI maps this family to exit status 2.
class PhysicalAbort : public std::runtime_error {
public:
  PhysicalAbort(const std::string& what, double xi, double eta)
      : std::runtime_error(what), xi_(xi), eta_(eta) {}

  double xi() const noexcept { return xi_; }
  double eta() const noexcept { return eta_; }

private:
  double xi_;
  double eta_;
};

class SonicDegeneracy : public PhysicalAbort {
public:
  using PhysicalAbort::PhysicalAbort;
};

class CflViolation : public PhysicalAbort {
public:
  using PhysicalAbort::PhysicalAbort;
};

}  // namespace reacting_nozzle
