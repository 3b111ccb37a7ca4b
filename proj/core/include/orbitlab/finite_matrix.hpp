#pragma once

// Square rational matrices: exact powers, floating spectral norms.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "orbitlab/rational.hpp"
#include "orbitlab/vector.hpp"

namespace orbitlab {

class FiniteMatrix {
 public:
  /// Zero matrix.
  explicit FiniteMatrix(std::size_t dim);
  /// Rows must form a non-empty square array.
  static FiniteMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static FiniteMatrix identity(std::size_t dim);
  static FiniteMatrix diagonal(const std::vector<Rational>& diag);

  std::size_t dim() const { return dim_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  FiniteMatrix transpose() const;
  FiniteMatrix scaled(const Rational& alpha) const;
  FiniteMatrix power(std::size_t n) const;
  bool is_zero() const;

  /// Throws DomainError if x has a coordinate at index >= dim.
  FinVec apply(const FinVec& x) const;

  /// max column / row absolute sums; their product bounds the squared
  /// spectral norm from above.
  Rational one_norm() const;
  Rational inf_norm() const;

  friend FiniteMatrix operator*(const FiniteMatrix& a, const FiniteMatrix& b);
  friend FiniteMatrix operator+(const FiniteMatrix& a, const FiniteMatrix& b);
  friend bool operator==(const FiniteMatrix&, const FiniteMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Rational> entries_;
};

/// Power iteration exceeded its cap without meeting the tolerance.
struct NormNonConvergence : std::runtime_error {
  NormNonConvergence(double last_estimate, double residual_bound, std::size_t iterations);
  double last_estimate;
  double residual_bound;
  std::size_t iterations;
};

struct NormOptions {
  double tol = 1e-12;
  std::size_t max_iterations = 200000;
};

/// Largest singular value of a rational matrix, by power iteration on A^T A
/// in double precision. Stops once the Rayleigh residual is below
/// tol * estimate, which puts the estimate within relative tol of a
/// singular value.
double spectral_norm(const FiniteMatrix& a, const NormOptions& options = {});

/// ||M^n||_2 with M^n formed exactly.
double matrix_power_norm(const FiniteMatrix& m, std::size_t n, double tol);

/// ||M^N||^(1/N). Never below the spectral radius, so it biases high.
double gelfand_estimate(const FiniteMatrix& m, std::size_t n, double tol);

}  // namespace orbitlab
