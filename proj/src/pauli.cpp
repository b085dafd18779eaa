#include "nql/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace nql {

PauliString::PauliString(int n_qubits, uint64_t x_bits, uint64_t z_bits)
    : n(n_qubits), x(x_bits), z(z_bits) {
  if (n < 1 || n > 63) {
    throw std::invalid_argument("PauliString: qubit count must be in [1, 63], got " +
                                std::to_string(n));
  }
  if ((x & ~mask()) != 0 || (z & ~mask()) != 0) {
    throw std::invalid_argument("PauliString: bits set above position n-1");
  }
}

std::string PauliString::str() const {
  std::string out(static_cast<size_t>(n), 'I');
  for (int i = 0; i < n; ++i) {
    const bool xi = (x >> i) & 1, zi = (z >> i) & 1;
    out[static_cast<size_t>(i)] = xi ? (zi ? 'Y' : 'X') : (zi ? 'Z' : 'I');
  }
  return out;
}

PauliString PauliString::from_str(const std::string& s) {
  if (s.empty() || s.size() > 63) {
    throw std::invalid_argument("PauliString::from_str: length must be in [1, 63]");
  }
  uint64_t x = 0, z = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case 'I': break;
      case 'X': x |= 1ull << i; break;
      case 'Y': x |= 1ull << i; z |= 1ull << i; break;
      case 'Z': z |= 1ull << i; break;
      default:
        throw std::invalid_argument(std::string("PauliString::from_str: bad character '") +
                                    s[i] + "'");
    }
  }
  return PauliString(static_cast<int>(s.size()), x, z);
}

int weight(const PauliString& p) { return std::popcount(p.x | p.z); }

static void require_same_n(const PauliString& p, const PauliString& q, const char* op) {
  if (p.n != q.n) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(p.n) + " vs " + std::to_string(q.n) + ")");
  }
}

int symplectic_product(const PauliString& p, const PauliString& q) {
  require_same_n(p, q, "symplectic_product");
  return (std::popcount(p.x & q.z) + std::popcount(p.z & q.x)) & 1;
}

int phase_form(const PauliString& p) { return std::popcount(p.x & p.z) & 1; }

PauliString multiply(const PauliString& p, const PauliString& q) {
  require_same_n(p, q, "multiply");
  return PauliString(p.n, p.x ^ q.x, p.z ^ q.z);
}

void for_each_pauli(int n, bool include_identity,
                    const std::function<void(const PauliString&)>& fn) {
  if (n < 1) throw std::invalid_argument("for_each_pauli: n must be >= 1");
  if (n > kMaxEnumQubits) {
    throw capacity_error("for_each_pauli: enumerating 4^" + std::to_string(n) +
                         " Pauli strings exceeds the cap of n <= " +
                         std::to_string(kMaxEnumQubits));
  }
  const uint64_t top = 1ull << n;
  for (uint64_t x = 0; x < top; ++x) {
    for (uint64_t z = 0; z < top; ++z) {
      if (!include_identity && x == 0 && z == 0) continue;
      fn(PauliString(n, x, z));
    }
  }
}

std::vector<PauliString> enumerate_group(int n, bool include_identity) {
  std::vector<PauliString> out;
  if (n >= 1 && n <= kMaxEnumQubits) {
    out.reserve((1ull << (2 * n)) - (include_identity ? 0 : 1));
  }
  for_each_pauli(n, include_identity, [&](const PauliString& p) { out.push_back(p); });
  return out;
}

PauliString random_pauli(int n, bool include_identity, Rng& rng) {
  if (n < 1 || n > 63) throw std::invalid_argument("random_pauli: n must be in [1, 63]");
  while (true) {
    const uint64_t x = rng.bits(n);
    const uint64_t z = rng.bits(n);
    if (!include_identity && x == 0 && z == 0) continue;
    return PauliString(n, x, z);
  }
}

}  // namespace nql
