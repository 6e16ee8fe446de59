#include "trotter/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace trotter {

namespace {

void require_dense_cap(std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw DenseCapExceeded("qubit count " + std::to_string(n) +
                           " exceeds the dense cap of " +
                           std::to_string(kMaxDenseQubits));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

char to_char(Pauli p) noexcept {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("unknown Pauli axis '") + c +
                                  "'");
  }
}

ComplexMatrix pauli_matrix(Pauli axis) {
  using namespace std::complex_literals;
  switch (axis) {
    case Pauli::I: return {{1.0, 0.0}, {0.0, 1.0}};
    case Pauli::X: return {{0.0, 1.0}, {1.0, 0.0}};
    case Pauli::Y: return {{0.0, -1i}, {1i, 0.0}};
    case Pauli::Z: return {{1.0, 0.0}, {0.0, -1.0}};
  }
  throw std::invalid_argument("pauli_matrix: bad axis");
}

PauliString::PauliString(std::vector<Pauli> axes, double weight)
    : axes_(std::move(axes)), weight_(weight) {
  if (axes_.empty()) {
    throw std::invalid_argument("PauliString: needs at least one qubit");
  }
  if (!std::isfinite(weight_)) {
    throw std::invalid_argument("PauliString: weight must be finite");
  }
}

PauliString::PauliString(std::string_view axes, double weight)
    : PauliString(
          [&] {
            std::vector<Pauli> out;
            out.reserve(axes.size());
            for (char c : axes) out.push_back(pauli_from_char(c));
            return out;
          }(),
          weight) {}

std::size_t PauliString::support() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(axes_.begin(), axes_.end(),
                    [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::axes_string() const {
  std::string out;
  out.reserve(axes_.size());
  for (Pauli p : axes_) out.push_back(to_char(p));
  return out;
}

PauliHamiltonian::PauliHamiltonian(std::vector<PauliString> terms)
    : qubits_(0), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("PauliHamiltonian: needs at least one term");
  }
  qubits_ = terms_.front().qubits();
  for (const auto& term : terms_) {
    if (term.qubits() != qubits_) {
      throw std::invalid_argument(
          "PauliHamiltonian: term '" + term.axes_string() + "' acts on " +
          std::to_string(term.qubits()) + " qubits, expected " +
          std::to_string(qubits_));
    }
  }
}

std::size_t PauliHamiltonian::locality() const noexcept {
  std::size_t k = 0;
  for (const auto& term : terms_) k = std::max(k, term.support());
  return k;
}

TermList::TermList(std::vector<ComplexMatrix> terms)
    : dim_(0), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("TermList: needs at least one term");
  }
  dim_ = terms_.front().dim();
  for (const auto& m : terms_) {
    if (m.dim() != dim_) {
      throw std::invalid_argument("TermList: all terms must share dimension");
    }
  }
}

ComplexMatrix TermList::sum() const {
  ComplexMatrix total(dim_);
  for (const auto& m : terms_) total += m;
  return total;
}

ComplexMatrix realize(const PauliString& p) {
  require_dense_cap(p.qubits());
  ComplexMatrix out = pauli_matrix(p.axis(0));
  for (std::size_t q = 1; q < p.qubits(); ++q) {
    out = kron(out, pauli_matrix(p.axis(q)));
  }
  out *= p.weight();
  return out;
}

TermList realize(const PauliHamiltonian& h) {
  require_dense_cap(h.qubits());
  std::vector<ComplexMatrix> terms;
  terms.reserve(h.term_count());
  for (const auto& term : h.terms()) terms.push_back(realize(term));
  return TermList(std::move(terms));
}

PauliHamiltonian ising_1d(std::size_t n, double coupling, double field) {
  if (n < 2) throw std::invalid_argument("ising_1d: need n >= 2");
  std::vector<PauliString> terms;
  terms.reserve(2 * n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Pauli> axes(n, Pauli::I);
    axes[i] = axes[i + 1] = Pauli::Z;
    terms.emplace_back(std::move(axes), -coupling);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Pauli> axes(n, Pauli::I);
    axes[i] = Pauli::X;
    terms.emplace_back(std::move(axes), -field);
  }
  return PauliHamiltonian(std::move(terms));
}

PauliHamiltonian heisenberg_1d(std::size_t n, double coupling) {
  if (n < 2) throw std::invalid_argument("heisenberg_1d: need n >= 2");
  std::vector<PauliString> terms;
  terms.reserve(3 * (n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      std::vector<Pauli> axes(n, Pauli::I);
      axes[i] = axes[i + 1] = p;
      terms.emplace_back(std::move(axes), coupling);
    }
  }
  return PauliHamiltonian(std::move(terms));
}

double tau(const TermList& terms, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("tau: t must be positive");
  double largest = 0.0;
  for (const auto& m : terms.terms()) {
    largest = std::max(largest, spectral_norm(m));
  }
  return t * largest;
}

PauliHamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<PauliString> terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    const auto gap = text.find_first_of(" \t");
    if (gap == std::string_view::npos) {
      throw ParseError(where() + "expected '<weight> <axes>'");
    }
    const std::string_view weight_text = text.substr(0, gap);
    const std::string_view axes_text = trim(text.substr(gap));
    if (axes_text.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(where() + "trailing tokens after axes");
    }

    double weight = 0.0;
    const auto [end, ec] = std::from_chars(
        weight_text.data(), weight_text.data() + weight_text.size(), weight);
    if (ec != std::errc{} || end != weight_text.data() + weight_text.size()) {
      throw ParseError(where() + "bad weight '" + std::string(weight_text) +
                       "'");
    }
    try {
      terms.emplace_back(axes_text, weight);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where() + e.what());
    }
  }
  if (terms.empty()) throw ParseError("Hamiltonian has no terms");
  try {
    return PauliHamiltonian(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

PauliHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Hamiltonian file '" + path + "'");
  return parse_hamiltonian(in);
}

}  // namespace trotter
