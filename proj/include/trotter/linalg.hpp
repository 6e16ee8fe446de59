#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trotter {

using Complex = std::complex<double>;

/// Default tolerance for matrix comparisons (spectral-norm distance).
inline constexpr double kMatrixTolerance = 1e-10;

/**
 * Dense square complex matrix stored row-major.
 *
 * Every matrix handed out by this module has finite entries; operations that
 * would produce NaN or Inf throw instead.
 */
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension. `dim` must be positive.
  explicit ComplexMatrix(std::size_t dim);

  /// Takes ownership of `entries` (row-major, `dim * dim` values).
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  /// Row-major nested initializer, e.g. `{{1, 0}, {0, -1}}`.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  bool is_finite() const noexcept;

  /// Frobenius norm; an upper bound on the spectral norm.
  double frobenius_norm() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);

/// Matrix product a·b. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Kronecker product; block (i, j) of the result is a(i, j)·b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// [a, b] = ab − ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Matrix exponential by scaling and squaring of a truncated Taylor series.
 *
 * The input is scaled by 2^-s until its Frobenius norm is at most 0.5, the
 * series is summed until the next term has norm below 1e-16, and the result
 * is squared s times. Throws std::overflow_error when the input norm is not
 * finite or the result overflows.
 */
ComplexMatrix expm(const ComplexMatrix& a);

/**
 * Largest singular value: sqrt of the top eigenvalue of a†a from Lanczos
 * with full reorthogonalization.
 *
 * The input is rescaled by a power of two first, so accuracy is relative.
 * Deterministic. Two fixed start vectors (normalized all-ones and a fixed
 * phase pattern) are run and the larger result kept. Each run stops once the
 * top Ritz residual is below 1e-14 relative or the Krylov space is exhausted.
 */
double spectral_norm(const ComplexMatrix& a);

/// a^m by repeated squaring; m = 0 gives the identity.
ComplexMatrix matrix_power(const ComplexMatrix& a, std::uint64_t m);

/// Spectral-norm distance ‖a − b‖.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kMatrixTolerance);

}  // namespace trotter
