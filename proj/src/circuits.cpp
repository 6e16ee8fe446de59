#include "trotter/circuits.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trotter/format.hpp"
#include "trotter/formulas.hpp"

namespace trotter {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_qubit(std::size_t q, std::size_t width) {
  if (q >= width) {
    throw std::out_of_range("gate qubit " + std::to_string(q) +
                            " outside circuit width " + std::to_string(width));
  }
}

void check_gate(const Gate& gate, std::size_t width) {
  std::visit(Overloaded{
                 [&](const Had& g) { check_qubit(g.qubit, width); },
                 [&](const Rz& g) {
                   check_qubit(g.qubit, width);
                   if (!std::isfinite(g.theta)) {
                     throw std::invalid_argument("Rz angle must be finite");
                   }
                 },
                 [&](const Phase& g) { check_qubit(g.qubit, width); },
                 [&](const Cnot& g) {
                   check_qubit(g.control, width);
                   check_qubit(g.target, width);
                   if (g.control == g.target) {
                     throw std::invalid_argument(
                         "CNOT control and target must differ");
                   }
                 },
             },
             gate);
}

// Left-multiplies `u` by a 2x2 gate {{a, b}, {c, d}} acting on `qubit`.
void apply_single(ComplexMatrix& u, std::size_t width, std::size_t qubit,
                  Complex a, Complex b, Complex c, Complex d) {
  const std::size_t dim = u.dim();
  const std::size_t mask = std::size_t{1} << (width - 1 - qubit);
  for (std::size_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & mask) continue;
    const std::size_t r1 = r0 | mask;
    for (std::size_t col = 0; col < dim; ++col) {
      const Complex x0 = u(r0, col);
      const Complex x1 = u(r1, col);
      u(r0, col) = a * x0 + b * x1;
      u(r1, col) = c * x0 + d * x1;
    }
  }
}

void apply_diagonal(ComplexMatrix& u, std::size_t width, std::size_t qubit,
                    Complex d0, Complex d1) {
  const std::size_t dim = u.dim();
  const std::size_t mask = std::size_t{1} << (width - 1 - qubit);
  for (std::size_t row = 0; row < dim; ++row) {
    const Complex d = (row & mask) ? d1 : d0;
    for (std::size_t col = 0; col < dim; ++col) u(row, col) *= d;
  }
}

void apply_cnot(ComplexMatrix& u, std::size_t width, const Cnot& g) {
  const std::size_t dim = u.dim();
  const std::size_t cmask = std::size_t{1} << (width - 1 - g.control);
  const std::size_t tmask = std::size_t{1} << (width - 1 - g.target);
  for (std::size_t row = 0; row < dim; ++row) {
    if (!(row & cmask) || (row & tmask)) continue;
    const std::size_t partner = row | tmask;
    for (std::size_t col = 0; col < dim; ++col) {
      std::swap(u(row, col), u(partner, col));
    }
  }
}

std::size_t parse_index(std::istringstream& in, std::size_t line_no) {
  long long value = -1;
  if (!(in >> value) || value < 0) {
    throw ParseError("circuit line " + std::to_string(line_no) +
                     ": expected qubit index");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

Circuit::Circuit(std::size_t qubits) : qubits_(qubits) {
  if (qubits_ == 0) throw std::invalid_argument("Circuit: needs >= 1 qubit");
}

Circuit::Circuit(std::size_t qubits, std::vector<Gate> gates)
    : Circuit(qubits) {
  gates_.reserve(gates.size());
  for (const auto& g : gates) append(g);
}

void Circuit::append(const Gate& gate) {
  check_gate(gate, qubits_);
  gates_.push_back(gate);
}

void Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_) {
    throw std::invalid_argument("Circuit::append: width mismatch");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const std::size_t n = circuit.qubits();
  if (n > kMaxCircuitQubits) {
    throw DenseCapExceeded("circuit width " + std::to_string(n) +
                           " exceeds the dense cap of " +
                           std::to_string(kMaxCircuitQubits));
  }
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n);
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& gate : circuit.gates()) {
    std::visit(
        Overloaded{
            [&](const Had& g) { apply_single(u, n, g.qubit, h, h, h, -h); },
            [&](const Rz& g) {
              apply_diagonal(u, n, g.qubit, std::polar(1.0, -g.theta / 2),
                             std::polar(1.0, g.theta / 2));
            },
            [&](const Phase& g) {
              apply_diagonal(u, n, g.qubit, 1.0, Complex{0.0, 1.0});
            },
            [&](const Cnot& g) { apply_cnot(u, n, g); },
        },
        gate);
  }
  return u;
}

Circuit compile_pauli_exponential(const PauliString& p, double t) {
  const std::size_t n = p.qubits();
  Circuit circuit(n);

  std::vector<std::size_t> support;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.axis(q) != Pauli::I) support.push_back(q);
  }
  const double angle = 2.0 * p.weight() * t;
  if (support.empty()) {
    if (angle == 0.0) return circuit;
    throw std::invalid_argument(
        "compile_pauli_exponential: all-identity term with nonzero weight is "
        "a global phase and has no exact circuit");
  }

  // Into the Z basis: X = Had Z Had, Y = (Phase Had) Z (Phase Had)^dagger.
  for (std::size_t q : support) {
    if (p.axis(q) == Pauli::X) {
      circuit.append(Had{q});
    } else if (p.axis(q) == Pauli::Y) {
      for (int i = 0; i < 3; ++i) circuit.append(Phase{q});
      circuit.append(Had{q});
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) {
    circuit.append(Cnot{support[i], support[i + 1]});
  }
  circuit.append(Rz{support.back(), angle});
  for (std::size_t i = support.size() - 1; i-- > 0;) {
    circuit.append(Cnot{support[i], support[i + 1]});
  }
  for (std::size_t i = support.size(); i-- > 0;) {
    const std::size_t q = support[i];
    if (p.axis(q) == Pauli::X) {
      circuit.append(Had{q});
    } else if (p.axis(q) == Pauli::Y) {
      circuit.append(Had{q});
      circuit.append(Phase{q});
    }
  }
  return circuit;
}

Circuit compile_trotter(const PauliHamiltonian& h, double t,
                        std::uint64_t steps, int order) {
  if (steps == 0) {
    throw std::invalid_argument("compile_trotter: steps must be >= 1");
  }
  const Schedule schedule = suzuki(order, h.term_count());
  const double dt = t / static_cast<double>(steps);

  Circuit step(h.qubits());
  for (const auto& f : schedule.factors()) {
    step.append(compile_pauli_exponential(h.term(f.term), f.coeff * dt));
  }
  Circuit circuit(h.qubits());
  for (std::uint64_t i = 0; i < steps; ++i) circuit.append(step);
  return circuit;
}

void write_circuit(std::ostream& out, const Circuit& circuit) {
  out << "qubits " << circuit.qubits() << '\n';
  for (const auto& gate : circuit.gates()) {
    std::visit(Overloaded{
                   [&](const Had& g) { out << "H " << g.qubit << '\n'; },
                   [&](const Rz& g) {
                     out << "RZ " << g.qubit << ' ' << format_double(g.theta)
                         << '\n';
                   },
                   [&](const Phase& g) { out << "S " << g.qubit << '\n'; },
                   [&](const Cnot& g) {
                     out << "CNOT " << g.control << ' ' << g.target << '\n';
                   },
               },
               gate);
  }
}

Circuit read_circuit(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<Circuit> circuit;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string op;
    if (!(fields >> op)) continue;
    const auto fail = [&](const std::string& why) {
      return ParseError("circuit line " + std::to_string(line_no) + ": " + why);
    };
    if (!circuit) {
      if (op != "qubits") throw fail("expected 'qubits n' header");
      circuit.emplace(parse_index(fields, line_no));
      continue;
    }
    try {
      if (op == "H") {
        circuit->append(Had{parse_index(fields, line_no)});
      } else if (op == "S") {
        circuit->append(Phase{parse_index(fields, line_no)});
      } else if (op == "CNOT") {
        const std::size_t c = parse_index(fields, line_no);
        circuit->append(Cnot{c, parse_index(fields, line_no)});
      } else if (op == "RZ") {
        const std::size_t q = parse_index(fields, line_no);
        std::string angle;
        fields >> angle;
        double theta = 0.0;
        const auto [end, ec] =
            std::from_chars(angle.data(), angle.data() + angle.size(), theta);
        if (angle.empty() || ec != std::errc{} ||
            end != angle.data() + angle.size()) {
          throw fail("bad RZ angle '" + angle + "'");
        }
        circuit->append(Rz{q, theta});
      } else {
        throw fail("unknown gate '" + op + "'");
      }
    } catch (const std::logic_error& e) {
      throw fail(e.what());
    }
    std::string extra;
    if (fields >> extra) throw fail("trailing tokens");
  }
  if (!circuit) throw ParseError("circuit: missing 'qubits n' header");
  return *std::move(circuit);
}

}  // namespace trotter
