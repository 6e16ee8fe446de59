#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <variant>
#include <vector>

#include "trotter/hamiltonian.hpp"
#include "trotter/linalg.hpp"

namespace trotter {

/// Largest circuit width evaluated as a dense unitary.
inline constexpr std::size_t kMaxCircuitQubits = 10;

/// Hadamard, (1/sqrt2)[[1, 1], [1, -1]].
struct Had {
  std::size_t qubit;
  friend bool operator==(const Had&, const Had&) = default;
};

/// Z rotation, diag(e^{-i theta/2}, e^{i theta/2}).
struct Rz {
  std::size_t qubit;
  double theta;
  friend bool operator==(const Rz&, const Rz&) = default;
};

/// |a>|b> -> |a>|a xor b>.
struct Cnot {
  std::size_t control;
  std::size_t target;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

/// diag(1, i).
struct Phase {
  std::size_t qubit;
  friend bool operator==(const Phase&, const Phase&) = default;
};

using Gate = std::variant<Had, Rz, Cnot, Phase>;

/// Gate sequence on n qubits; gates()[0] is applied first. Qubit 0 is the
/// most significant tensor factor.
class Circuit {
 public:
  explicit Circuit(std::size_t qubits);
  Circuit(std::size_t qubits, std::vector<Gate> gates);

  std::size_t qubits() const noexcept { return qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  void append(const Gate& gate);
  void append(const Circuit& other);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t qubits_;
  std::vector<Gate> gates_;
};

/// U = U_last ... U_first as a dense 2^n matrix (n <= kMaxCircuitQubits).
ComplexMatrix circuit_unitary(const Circuit& circuit);

/**
 * Exact circuit for e^{-i w t P}.
 *
 * Basis change on every non-identity qubit (X: Had; Y: Phase^3 then Had),
 * a CNOT ladder collecting parity onto the highest-index non-identity qubit,
 * Rz(2 w t) there, then the mirror image (Y un-computes as Had, Phase).
 * An all-identity string yields an empty circuit when w t == 0 and throws
 * std::invalid_argument otherwise, since a pure global phase has no exact
 * circuit in this gate set.
 */
Circuit compile_pauli_exponential(const PauliString& p, double t);

/// m repetitions of the order-`order` Suzuki schedule, each factor (j, c)
/// compiled as compile_pauli_exponential(term_j, c t / m).
Circuit compile_trotter(const PauliHamiltonian& h, double t,
                        std::uint64_t steps, int order);

/// Text format: `qubits n` header, then one of `H q`, `RZ q theta`,
/// `CNOT c t`, `S q` per line; angles use 17 significant digits.
void write_circuit(std::ostream& out, const Circuit& circuit);
Circuit read_circuit(std::istream& in);

}  // namespace trotter
