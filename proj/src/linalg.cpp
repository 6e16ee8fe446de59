#include "trotter/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace trotter {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim()
        << ")";
    throw std::invalid_argument(msg.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* op) {
  if (!m.is_finite()) {
    throw std::overflow_error(std::string(op) +
                              ": result has non-finite entries");
  }
}

double vector_norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& x : v) sum += std::norm(x);
  return std::sqrt(sum);
}

void apply(const ComplexMatrix& a, std::span<const Complex> v,
           std::span<Complex> out) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
}

void apply_adjoint(const ComplexMatrix& a, std::span<const Complex> v,
                   std::span<Complex> out) {
  const std::size_t n = a.dim();
  std::fill(out.begin(), out.end(), Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += std::conj(a(i, j)) * v[i];
  }
}

// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal
// `alpha` and off-diagonal `beta`, by Sturm-sequence bisection.
double tridiagonal_max_eigenvalue(std::span<const double> alpha,
                                  std::span<const double> beta) {
  const std::size_t k = alpha.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < k; ++i) {
    const double radius = (i > 0 ? std::abs(beta[i - 1]) : 0.0) +
                          (i + 1 < k ? std::abs(beta[i]) : 0.0);
    lo = std::min(lo, alpha[i] - radius);
    hi = std::max(hi, alpha[i] + radius);
  }
  // Number of eigenvalues strictly greater than x.
  const auto count_above = [&](double x) {
    std::size_t below = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double b2 = i > 0 ? beta[i - 1] * beta[i - 1] : 0.0;
      d = alpha[i] - x - (i > 0 ? b2 / d : 0.0);
      if (d == 0.0) d = -std::numeric_limits<double>::min();
      if (d < 0.0) ++below;
    }
    return k - below;
  };
  for (int iter = 0;
       iter < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi));
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (count_above(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

// Last component of the unit eigenvector for the top eigenvalue `theta`,
// by two rounds of inverse iteration with a shift just above theta (the
// shifted matrix is negative definite, so elimination needs no pivoting).
double tridiagonal_top_vector_tail(std::span<const double> alpha,
                                   std::span<const double> beta,
                                   double theta) {
  const std::size_t k = alpha.size();
  if (k == 1) return 1.0;
  const double shift = theta + 1e-13 * std::max(std::abs(theta), 1e-300);
  std::vector<double> x(k, 1.0);
  std::vector<double> diag(k);
  std::vector<double> rhs(k);
  for (int round = 0; round < 2; ++round) {
    for (std::size_t i = 0; i < k; ++i) {
      diag[i] = alpha[i] - shift;
      rhs[i] = x[i];
    }
    for (std::size_t i = 1; i < k; ++i) {
      const double factor = beta[i - 1] / diag[i - 1];
      diag[i] -= factor * beta[i - 1];
      rhs[i] -= factor * rhs[i - 1];
    }
    x[k - 1] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
      x[i] = (rhs[i] - beta[i] * x[i + 1]) / diag[i];
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x[k - 1];
}

// Largest eigenvalue of a^dagger a restricted to the Krylov space of `start`,
// by Lanczos with full reorthogonalization. Stops when the top Ritz pair's
// residual drops below 1e-14 relative, or the space is exhausted.
double lanczos_top(const ComplexMatrix& a, std::vector<Complex> start) {
  constexpr double kRelTol = 1e-14;
  const std::size_t n = a.dim();

  const double start_norm = vector_norm(start);
  if (start_norm == 0.0) return 0.0;
  for (auto& x : start) x /= start_norm;

  std::vector<std::vector<Complex>> basis;
  basis.push_back(std::move(start));
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<Complex> av(n);
  std::vector<Complex> w(n);

  double theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& q = basis[j];
    apply(a, q, av);
    apply_adjoint(a, av, w);
    Complex proj{};
    for (std::size_t i = 0; i < n; ++i) proj += std::conj(q[i]) * w[i];
    alpha.push_back(proj.real());
    // Two passes of Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Complex c{};
        for (std::size_t i = 0; i < n; ++i) c += std::conj(b[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
      }
    }
    const double next_beta = vector_norm(w);

    theta = tridiagonal_max_eigenvalue(alpha, beta);
    const double scale = std::max(std::abs(theta), 1e-300);
    if (next_beta <= kRelTol * scale) break;
    const double residual =
        next_beta * std::abs(tridiagonal_top_vector_tail(alpha, beta, theta));
    if (residual <= kRelTol * scale) break;

    beta.push_back(next_beta);
    std::vector<Complex> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / next_beta;
    basis.push_back(std::move(next));
  }
  return std::max(theta, 0.0);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be > 0");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be > 0");
  if (entries_.size() != dim * dim) {
    throw std::invalid_argument("ComplexMatrix: expected " +
                                std::to_string(dim * dim) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  if (!is_finite()) {
    throw std::invalid_argument("ComplexMatrix: entries must be finite");
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw std::invalid_argument("ComplexMatrix: dim must be > 0");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ComplexMatrix: rows must be square");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!is_finite()) {
    throw std::invalid_argument("ComplexMatrix: entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  if (!m.is_finite()) {
    throw std::invalid_argument("ComplexMatrix: entries must be finite");
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  require_finite(*this, "operator+");
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  require_finite(*this, "operator-");
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : entries_) x *= scale;
  require_finite(*this, "operator*");
  return *this;
}

bool ComplexMatrix::is_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::frobenius_norm() const noexcept {
  return vector_norm(entries_);
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
  a *= scale;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, Complex scale) {
  a *= scale;
  return a;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  require_finite(out, "matmul");
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
          out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
      }
    }
  }
  require_finite(out, "kron");
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return matmul(a, b) - matmul(b, a);
}

ComplexMatrix expm(const ComplexMatrix& a) {
  constexpr double kScaledNorm = 0.5;
  constexpr double kTermTol = 1e-16;
  constexpr int kMaxTerms = 64;

  const double norm = a.frobenius_norm();
  if (!std::isfinite(norm)) {
    throw std::overflow_error("expm: input norm is not finite");
  }

  int squarings = 0;
  if (norm > kScaledNorm) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
  }
  const ComplexMatrix scaled = std::ldexp(1.0, -squarings) * a;

  const std::size_t n = a.dim();
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = matmul(term, scaled);
    term *= 1.0 / k;
    sum += term;
    if (term.frobenius_norm() < kTermTol) break;
  }

  try {
    for (int i = 0; i < squarings; ++i) sum = matmul(sum, sum);
  } catch (const std::overflow_error&) {
    std::ostringstream msg;
    msg << "expm: result overflows (input Frobenius norm " << norm << ", "
        << squarings << " squarings)";
    throw std::overflow_error(msg.str());
  }
  return sum;
}

double spectral_norm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  const double frobenius = a.frobenius_norm();
  if (frobenius == 0.0) return 0.0;

  // Work on a copy scaled by a power of two (exact) so its norm is O(1).
  const int exponent = std::ilogb(frobenius);
  ComplexMatrix unit = a;
  for (auto& x : unit.entries()) {
    x = {std::ldexp(x.real(), -exponent), std::ldexp(x.imag(), -exponent)};
  }

  const double from_ones = lanczos_top(unit, std::vector<Complex>(n, 1.0));
  // Second deterministic start that is not orthogonal to the patterns the
  // all-ones vector misses (e.g. when it lies in the null space).
  std::vector<Complex> perturbed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    perturbed[i] =
        std::polar(1.0 + 0.37 * x / static_cast<double>(n), 0.71 * x);
  }
  const double from_perturbed = lanczos_top(unit, std::move(perturbed));
  return std::ldexp(std::sqrt(std::max(from_ones, from_perturbed)), exponent);
}

ComplexMatrix matrix_power(const ComplexMatrix& a, std::uint64_t m) {
  ComplexMatrix result = ComplexMatrix::identity(a.dim());
  if (m == 0) return result;
  ComplexMatrix base = a;
  bool first = true;
  while (true) {
    if (m & 1U) {
      result = first ? base : matmul(result, base);
      first = false;
    }
    m >>= 1U;
    if (m == 0) break;
    base = matmul(base, base);
  }
  return result;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return spectral_norm(a - b);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.dim() == b.dim() && distance(a, b) <= tol;
}

}  // namespace trotter
