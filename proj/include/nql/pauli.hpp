#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nql/common.hpp"
#include "nql/rng.hpp"

namespace nql {

/// An n-qubit Pauli string stored as two bit vectors over F2, one word each.
///
/// Site i of the string corresponds to bit i:
///   (x=0,z=0) -> I   (x=1,z=0) -> X   (x=1,z=1) -> Y   (x=0,z=1) -> Z
/// Products are projective: the global phase is dropped everywhere except in
/// phase_form(), which is the only phase any implemented formula consumes.
/// Bit i of a dense basis index is qubit i (qubit 0 = least significant bit),
/// and position 0 of the text form "XIZY" is qubit 0.
struct PauliString {
  int n = 1;
  uint64_t x = 0;
  uint64_t z = 0;

  PauliString() = default;
  PauliString(int n_qubits, uint64_t x_bits, uint64_t z_bits);

  bool is_identity() const { return x == 0 && z == 0; }
  uint64_t mask() const { return n >= 64 ? ~0ull : ((1ull << n) - 1); }

  bool operator==(const PauliString& o) const = default;

  /// Text form, one of "IXYZ" per site, position 0 = qubit 0.
  std::string str() const;
  static PauliString from_str(const std::string& s);
};

/// Number of non-identity sites.
int weight(const PauliString& p);

/// Symplectic form <p,q> = p.x·q.z + p.z·q.x over F2.
/// Zero iff the dense matrices of p and q commute.
int symplectic_product(const PauliString& p, const PauliString& q);

/// Phase term <p> = p.x·p.z mod 2 (number of Y sites mod 2).
int phase_form(const PauliString& p);

/// Projective product: componentwise XOR. The i^k global phase is dropped.
PauliString multiply(const PauliString& p, const PauliString& q);

/// Visits all 4^n (or 4^n - 1) strings once, in lexicographic (x|z) order
/// with x as the major key. That order is the canonical tie-break order for
/// all argmax scans downstream. Capped at n <= 10.
void for_each_pauli(int n, bool include_identity,
                    const std::function<void(const PauliString&)>& fn);

std::vector<PauliString> enumerate_group(int n, bool include_identity);

/// Uniform over the group, optionally excluding the identity.
PauliString random_pauli(int n, bool include_identity, Rng& rng);

}  // namespace nql
