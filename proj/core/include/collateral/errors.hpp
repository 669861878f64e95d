#pragma once

#include <stdexcept>
#include <string>

namespace collateral {

/// A physical quantity is undefined for the requested parameters
/// (e.g. the qubit frequency at a flux where the Josephson energy vanishes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The effective ground-state coupling has no zero inside the search bracket.
class NoIdlingPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A photon number exceeds the Fock-space truncation.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace collateral
