#pragma once

#include <stdexcept>
#include <string>

namespace nql {

// Dense simulation is capped at 12 qubits (a 4096 x 4096 complex matrix).
// Everything above must go through the analytic samplers.
inline constexpr int kMaxDenseQubits = 12;

// Pauli-group enumeration is capped separately: 4^n elements.
inline constexpr int kMaxEnumQubits = 10;

/// Requested object exceeds a hard size cap. The message names the cost.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A floating-point consistency check failed (trace drift, imaginary
/// residue, negative probability beyond tolerance, ...).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nql
