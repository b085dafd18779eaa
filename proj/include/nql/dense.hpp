#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "nql/common.hpp"
#include "nql/pauli.hpp"
#include "nql/rng.hpp"

namespace nql {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Density matrix on m qubits (2^m x 2^m, column-major, qubit 0 = LSB of the
/// basis index). Validity (trace 1, Hermitian, near-PSD) is checked on demand
/// by validate(), not per operation.
struct DenseState {
  int m = 1;
  Matrix rho;

  /// Throws numerical_error unless trace and Hermiticity hold within 1e-10
  /// and the minimum eigenvalue is >= -1e-8 (drift allowance for long
  /// channel chains).
  void validate() const;
};

/// General operator on m qubits.
struct DenseOp {
  int m = 1;
  Matrix op;
};

void require_dense_qubits(int m, const char* what);

Matrix pauli_matrix(const PauliString& p);
DenseOp pauli_op(const PauliString& p);

DenseState state_max_mixed(int n);

/// (1 + P)/2^n. The identity is rejected: that arm of the distinguishing
/// problem is state_max_mixed.
DenseState state_i_plus_p(const PauliString& p);

/// Rank-1 projector onto a Haar-random pure state (normalized complex
/// Gaussian vector).
DenseState state_haar_pure(int n, Rng& rng);

double purity(const DenseState& s);

/// Single-qubit depolarizing channel (1-l) rho + l tr_q(rho) (x) I/2, applied
/// independently to each listed qubit. The same linear map extends to
/// arbitrary operators (the channel is self-adjoint), which is what the
/// operator overloads below use.
void depolarize_in_place(Matrix& mat, int m, double lambda, std::span<const int> qubits);
void depolarize_all_in_place(Matrix& mat, int m, double lambda);
DenseState depolarize(const DenseState& s, double lambda, std::span<const int> qubits);
DenseState depolarize_all(const DenseState& s, double lambda);
DenseOp depolarize_op_all(const DenseOp& a, double lambda);

/// SWAP_n exchanging registers A = qubits [0, n) and B = qubits [n, 2n);
/// site i of A pairs with qubit n+i of B.
DenseOp swap_op(int n);

/// Bell POVM element Pi_s = 4^-n sum_p (-1)^{<s,p> + <p>} P (x) P on 2n
/// qubits, labeled by s = (sx | sz). Rank-1 projector onto a Bell basis
/// state; the full set resolves the identity.
DenseOp bell_povm_element(int n, uint64_t sx, uint64_t sz);

/// All 4^n Bell POVM elements, ordered by (sx major, sz minor).
std::vector<DenseOp> bell_povm(int n);

/// tr(op * state); the imaginary residue must be <= 1e-10 and is discarded.
double expectation(const DenseOp& op, const DenseState& state);

/// A POVM validated once at construction: every element PSD within 1e-8 and
/// the sum within 1e-8 of the identity.
struct Povm {
  int m = 1;
  std::vector<Matrix> elements;
};
Povm make_povm(std::vector<DenseOp> elements);

/// Samples an outcome index with probability tr(F_s rho). Probabilities in
/// [-1e-10, 0) are clamped to zero and the vector renormalized; anything
/// more negative is a numerical_error.
int measure_povm(const DenseState& state, const Povm& povm, Rng& rng);

// Dense circuit-evolution kernels (shared by the Simon demo and the shadow
// dense path). All act in place on a 2^m x 2^m matrix.
void apply_single_qubit_unitary(Matrix& rho, int m, int qubit, const Eigen::Matrix2cd& u);

/// Conjugates rho by a permutation matrix that is its own inverse.
void apply_involution(Matrix& rho, std::span<const uint32_t> perm);

/// Outcome distribution of measuring qubits [0, k) in the computational
/// basis (marginal of the diagonal).
std::vector<double> marginal_distribution(const Matrix& rho, int m, int k);

}  // namespace nql
