#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trotter/linalg.hpp"

namespace trotter {

/// Largest qubit count realized as dense 2^n x 2^n matrices.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// Thrown when a request would exceed a dense-matrix size cap.
class DenseCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown on malformed Hamiltonian text input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Pauli : unsigned char { I, X, Y, Z };

char to_char(Pauli p) noexcept;
Pauli pauli_from_char(char c);

/// The 2x2 matrix of a single Pauli axis.
ComplexMatrix pauli_matrix(Pauli axis);

/// Weighted tensor product of Pauli axes; axes[0] is the leftmost Kronecker
/// factor (most significant qubit).
class PauliString {
 public:
  PauliString(std::vector<Pauli> axes, double weight);
  /// Parses an axes string over "IXYZ", e.g. "ZZI".
  PauliString(std::string_view axes, double weight);

  std::size_t qubits() const noexcept { return axes_.size(); }
  const std::vector<Pauli>& axes() const noexcept { return axes_; }
  Pauli axis(std::size_t qubit) const { return axes_.at(qubit); }
  double weight() const noexcept { return weight_; }

  /// Number of non-identity axes.
  std::size_t support() const noexcept;
  bool is_identity() const noexcept { return support() == 0; }

  std::string axes_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> axes_;
  double weight_;
};

/// H = sum_j w_j P_j over n qubits, with a fixed term order.
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(std::vector<PauliString> terms);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::vector<PauliString>& terms() const noexcept { return terms_; }
  const PauliString& term(std::size_t j) const { return terms_.at(j); }

  /// Max support over terms (the k in k-local).
  std::size_t locality() const noexcept;

 private:
  std::size_t qubits_;
  std::vector<PauliString> terms_;
};

/// Ordered list of same-dimension dense matrices H_1..H_L.
class TermList {
 public:
  explicit TermList(std::vector<ComplexMatrix> terms);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const ComplexMatrix& operator[](std::size_t j) const { return terms_[j]; }
  const std::vector<ComplexMatrix>& terms() const noexcept { return terms_; }

  /// sum_j H_j
  ComplexMatrix sum() const;

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> terms_;
};

/// Dense matrix of a single weighted Pauli string (dimension 2^n).
ComplexMatrix realize(const PauliString& p);

/// Term j becomes w_j times the n-fold Kronecker product of its axes.
/// Throws DenseCapExceeded for n > kMaxDenseQubits.
TermList realize(const PauliHamiltonian& h);

/**
 * Transverse-field Ising chain with open boundaries,
 * H = -J sum_i Z_i Z_{i+1} - h sum_i X_i.
 *
 * Terms are the n-1 bonds left to right, then the n fields left to right.
 */
PauliHamiltonian ising_1d(std::size_t n, double coupling, double field);

/// Heisenberg chain, J sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1});
/// per bond the terms are ordered XX, YY, ZZ.
PauliHamiltonian heisenberg_1d(std::size_t n, double coupling);

/// tau = t * max_j ||H_j||.
double tau(const TermList& terms, double t);

/**
 * Reads the line-oriented Hamiltonian format: `<weight> <axes>` per line,
 * `#` starts a comment line, blank lines are skipped.
 */
PauliHamiltonian parse_hamiltonian(std::istream& in);
PauliHamiltonian load_hamiltonian(const std::string& path);

}  // namespace trotter
