#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trotter/experiments.hpp"
#include "trotter/hamiltonian.hpp"

using namespace trotter;
using namespace std::complex_literals;
using oracle::EMatrix;

namespace {

EMatrix eigen_pauli(char c) {
  EMatrix m(2, 2);
  switch (c) {
    case 'I': m << 1.0, 0.0, 0.0, 1.0; break;
    case 'X': m << 0.0, 1.0, 1.0, 0.0; break;
    case 'Y': m << 0.0, -1i, 1i, 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

// Kronecker chain built with Eigen's own kroneckerProduct.
EMatrix eigen_string(const std::string& axes, double weight) {
  EMatrix out = EMatrix::Identity(1, 1);
  for (char c : axes) {
    EMatrix next = Eigen::kroneckerProduct(out, eigen_pauli(c)).eval();
    out = next;
  }
  return weight * out;
}

double eigen_distance(const ComplexMatrix& a, const EMatrix& b) {
  return oracle::svd_norm(EMatrix(oracle::to_eigen(a) - b));
}

}  // namespace

TEST(PauliMatrix, Definitions) {
  EXPECT_EQ(pauli_matrix(Pauli::I), ComplexMatrix::identity(2));
  EXPECT_EQ(pauli_matrix(Pauli::X), (ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_EQ(pauli_matrix(Pauli::Y), (ComplexMatrix{{0.0, -1i}, {1i, 0.0}}));
  EXPECT_EQ(pauli_matrix(Pauli::Z), (ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}));
}

TEST(PauliMatrix, SquaresToIdentity) {
  for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    EXPECT_EQ(matmul(pauli_matrix(p), pauli_matrix(p)),
              ComplexMatrix::identity(2));
  }
}

TEST(PauliString, ParsesAxes) {
  const PauliString p("ZIX", -0.5);
  EXPECT_EQ(p.qubits(), 3u);
  EXPECT_EQ(p.axis(0), Pauli::Z);
  EXPECT_EQ(p.axis(1), Pauli::I);
  EXPECT_EQ(p.axis(2), Pauli::X);
  EXPECT_EQ(p.support(), 2u);
  EXPECT_EQ(p.axes_string(), "ZIX");
  EXPECT_DOUBLE_EQ(p.weight(), -0.5);
  EXPECT_TRUE(PauliString("III", 1.0).is_identity());
}

TEST(PauliString, RejectsBadInput) {
  EXPECT_THROW(PauliString("ZQ", 1.0), std::invalid_argument);
  EXPECT_THROW(PauliString("", 1.0), std::invalid_argument);
  EXPECT_THROW(PauliString("Z", std::nan("")), std::invalid_argument);
  EXPECT_THROW(PauliString("Z", INFINITY), std::invalid_argument);
}

TEST(PauliHamiltonian, RejectsMixedWidths) {
  EXPECT_THROW(PauliHamiltonian({PauliString("ZZ", 1.0), PauliString("X", 1.0)}),
               std::invalid_argument);
  EXPECT_THROW(PauliHamiltonian(std::vector<PauliString>{}),
               std::invalid_argument);
}

TEST(TermList, RejectsMixedDimensions) {
  EXPECT_THROW(TermList({ComplexMatrix(2), ComplexMatrix(4)}),
               std::invalid_argument);
  EXPECT_THROW(TermList(std::vector<ComplexMatrix>{}), std::invalid_argument);
}

TEST(Realize, SingleZ) {
  const TermList terms = realize(PauliHamiltonian({PauliString("Z", 1.0)}));
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0], pauli_matrix(Pauli::Z));
}

TEST(Realize, IsingThreeSitesMatchesExpansion) {
  const TermList terms = realize(ising_1d(3, 1.0, 1.0));
  ASSERT_EQ(terms.size(), 5u);
  const char* axes[] = {"ZZI", "IZZ", "XII", "IXI", "IIX"};
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_LT(eigen_distance(terms[j], eigen_string(axes[j], -1.0)), 1e-15)
        << axes[j];
  }
  EMatrix total = EMatrix::Zero(8, 8);
  for (const char* a : axes) total += eigen_string(a, -1.0);
  EXPECT_LT(eigen_distance(terms.sum(), total), 1e-14);
}

TEST(Realize, ZISumIsDiagonal) {
  const TermList terms = realize(
      PauliHamiltonian({PauliString("ZI", 1.0), PauliString("IZ", 1.0)}));
  const std::vector<Complex> diag{2.0, 0.0, 0.0, -2.0};
  EXPECT_EQ(terms.sum(), ComplexMatrix::diagonal(diag));
}

TEST(Realize, HeisenbergTwoSites) {
  const TermList terms = realize(heisenberg_1d(2, 1.0));
  const ComplexMatrix expected{{1.0, 0.0, 0.0, 0.0},
                               {0.0, -1.0, 2.0, 0.0},
                               {0.0, 2.0, -1.0, 0.0},
                               {0.0, 0.0, 0.0, 1.0}};
  EXPECT_LT(distance(terms.sum(), expected), 1e-15);
}

TEST(Realize, RandomStringsMatchEigenKronecker) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> axis(0, 3);
  std::uniform_int_distribution<std::size_t> width(1, 5);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::string axes;
    for (std::size_t q = width(rng); q > 0; --q) axes += "IXYZ"[axis(rng)];
    const double w = weight(rng);
    EXPECT_LT(eigen_distance(realize(PauliString(axes, w)), eigen_string(axes, w)),
              1e-14)
        << axes;
  }
}

TEST(Realize, DenseCap) {
  const std::string wide(kMaxDenseQubits + 1, 'Z');
  EXPECT_THROW(realize(PauliHamiltonian({PauliString(wide, 1.0)})),
               DenseCapExceeded);
  EXPECT_THROW(realize(ising_1d(13, 1.0, 1.0)), DenseCapExceeded);
}

TEST(Ising, TermLayout) {
  const PauliHamiltonian h = ising_1d(2, 0.7, 0.3);
  ASSERT_EQ(h.term_count(), 3u);
  EXPECT_EQ(h.term(0), PauliString("ZZ", -0.7));
  EXPECT_EQ(h.term(1), PauliString("XI", -0.3));
  EXPECT_EQ(h.term(2), PauliString("IX", -0.3));
  EXPECT_EQ(ising_1d(5, 1.0, 1.0).term_count(), 9u);
  EXPECT_THROW(ising_1d(1, 1.0, 1.0), std::invalid_argument);
}

TEST(Heisenberg, TermLayout) {
  const PauliHamiltonian h = heisenberg_1d(3, 2.0);
  ASSERT_EQ(h.term_count(), 6u);
  const char* axes[] = {"XXI", "YYI", "ZZI", "IXX", "IYY", "IZZ"};
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(h.term(j), PauliString(axes[j], 2.0));
  }
  EXPECT_EQ(heisenberg_1d(2, 1.0).term_count(), 3u);
  EXPECT_EQ(heisenberg_1d(4, 1.0).term_count(), 9u);
  EXPECT_THROW(heisenberg_1d(1, 1.0), std::invalid_argument);
}

TEST(Ising, CountsAndLocality) {
  for (std::size_t n = 2; n <= 10; ++n) {
    EXPECT_EQ(ising_1d(n, 1.0, 1.0).term_count(), 2 * n - 1);
    EXPECT_EQ(ising_1d(n, 1.0, 1.0).locality(), 2u);
    EXPECT_EQ(heisenberg_1d(n, 1.0).locality(), 2u);
  }
}

TEST(Tau, Examples) {
  for (std::size_t n : {2u, 3u, 5u}) {
    const TermList terms = realize(ising_1d(n, -1.0, -1.0));
    EXPECT_NEAR(tau(terms, static_cast<double>(n)), static_cast<double>(n),
                1e-12);
  }
  const TermList scaled(
      {Complex(-3.5) * ComplexMatrix::identity(4)});
  EXPECT_NEAR(tau(scaled, 1.0), 3.5, 1e-14);

  const SplitMatrices abc = reference_split_matrices();
  const double expected =
      std::max(oracle::svd_norm(abc.b), oracle::svd_norm(abc.c));
  EXPECT_NEAR(tau(TermList({abc.b, abc.c}), 1.0), expected, 1e-12);
  EXPECT_NEAR(expected, 7.7255478892820445341, 1e-12);
  EXPECT_THROW(tau(scaled, 0.0), std::invalid_argument);
}

TEST(Properties, UnitPauliStringsHaveUnitNormAndAreHermitian) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> axis(0, 3);
  std::uniform_int_distribution<std::size_t> width(1, 6);
  std::uniform_real_distribution<double> weight(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::string axes;
    for (std::size_t q = width(rng); q > 0; --q) axes += "IXYZ"[axis(rng)];
    const ComplexMatrix unit = realize(PauliString(axes, 1.0));
    EXPECT_NEAR(spectral_norm(unit), 1.0, 1e-12) << axes;
    const ComplexMatrix m = realize(PauliString(axes, weight(rng)));
    EXPECT_LE(spectral_norm(m - dagger(m)), 1e-12) << axes;
  }
}

TEST(Parse, ReadsTermsAndComments) {
  std::istringstream in(
      "# transverse field pair\n"
      "-1.0 ZZ\n"
      "\n"
      "  -0.5   XI  \n"
      "2.5e-1 IX\n");
  const PauliHamiltonian h = parse_hamiltonian(in);
  ASSERT_EQ(h.term_count(), 3u);
  EXPECT_EQ(h.term(0), PauliString("ZZ", -1.0));
  EXPECT_EQ(h.term(1), PauliString("XI", -0.5));
  EXPECT_EQ(h.term(2), PauliString("IX", 0.25));
}

TEST(Parse, Errors) {
  const char* bad[] = {
      "",                // no terms
      "# only comment\n",
      "1.0\n",           // missing axes
      "abc ZZ\n",        // bad weight
      "1.0 ZQ\n",        // bad axis
      "1.0 ZZ extra\n",  // trailing token
      "1.0 ZZ\n1.0 Z\n", // mixed widths
      "nan ZZ\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(parse_hamiltonian(in), ParseError) << text;
  }
  EXPECT_THROW(load_hamiltonian("/nonexistent/h.txt"), ParseError);
}
