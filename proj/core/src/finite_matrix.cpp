#include "orbitlab/finite_matrix.hpp"

#include <cmath>
#include <string>

namespace orbitlab {

FiniteMatrix::FiniteMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("FiniteMatrix: dimension must be positive");
}

FiniteMatrix FiniteMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  FiniteMatrix out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      throw std::invalid_argument("FiniteMatrix: row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t c = 0; c < rows.size(); ++c) {
      out(r, c) = rows[r][c];
      out(r, c).canonicalize();
    }
  }
  return out;
}

FiniteMatrix FiniteMatrix::identity(std::size_t dim) {
  FiniteMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1;
  return out;
}

FiniteMatrix FiniteMatrix::diagonal(const std::vector<Rational>& diag) {
  FiniteMatrix out(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

FiniteMatrix FiniteMatrix::transpose() const {
  FiniteMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

FiniteMatrix FiniteMatrix::scaled(const Rational& alpha) const {
  FiniteMatrix out = *this;
  for (auto& e : out.entries_) e *= alpha;
  return out;
}

FiniteMatrix operator*(const FiniteMatrix& a, const FiniteMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("FiniteMatrix product: dimension mismatch");
  const std::size_t d = a.dim_;
  FiniteMatrix out(d);
  Rational term;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      const Rational& lhs = a(r, k);
      if (sgn(lhs) == 0) continue;
      for (std::size_t c = 0; c < d; ++c) {
        term = lhs * b(k, c);
        out(r, c) += term;
      }
    }
  }
  return out;
}

FiniteMatrix operator+(const FiniteMatrix& a, const FiniteMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("FiniteMatrix sum: dimension mismatch");
  FiniteMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

FiniteMatrix FiniteMatrix::power(std::size_t n) const {
  FiniteMatrix result = identity(dim_);
  FiniteMatrix base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool FiniteMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (sgn(e) != 0) return false;
  return true;
}

FinVec FiniteMatrix::apply(const FinVec& x) const {
  if (auto top = x.max_index(); top && *top >= dim_) {
    throw DomainError("FiniteMatrix apply: coordinate " + std::to_string(*top) +
                      " outside dimension " + std::to_string(dim_));
  }
  std::vector<FinVec::Entry> out;
  for (std::size_t r = 0; r < dim_; ++r) {
    Rational acc(0);
    for (const auto& [c, v] : x.entries()) acc += (*this)(r, c) * v;
    if (sgn(acc) != 0) out.emplace_back(r, std::move(acc));
  }
  return FinVec::from_entries(std::move(out));
}

Rational FiniteMatrix::one_norm() const {
  Rational best(0);
  for (std::size_t c = 0; c < dim_; ++c) {
    Rational s(0);
    for (std::size_t r = 0; r < dim_; ++r) s += abs((*this)(r, c));
    if (s > best) best = s;
  }
  return best;
}

Rational FiniteMatrix::inf_norm() const {
  Rational best(0);
  for (std::size_t r = 0; r < dim_; ++r) {
    Rational s(0);
    for (std::size_t c = 0; c < dim_; ++c) s += abs((*this)(r, c));
    if (s > best) best = s;
  }
  return best;
}

NormNonConvergence::NormNonConvergence(double last, double residual, std::size_t iters)
    : std::runtime_error("spectral norm power iteration did not converge after " +
                         std::to_string(iters) + " iterations (estimate " + std::to_string(last) +
                         ", residual " + std::to_string(residual) + ")"),
      last_estimate(last),
      residual_bound(residual),
      iterations(iters) {}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> multiply(const std::vector<double>& m, std::size_t d, const std::vector<double>& v) {
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out[r] += m[r * d + c] * v[c];
  return out;
}

}  // namespace

double spectral_norm(const FiniteMatrix& a, const NormOptions& options) {
  const std::size_t d = a.dim();
  // Scale exactly by the largest magnitude so the double copy neither
  // overflows nor underflows.
  Rational scale(0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (abs(a(r, c)) > scale) scale = abs(a(r, c));
  if (sgn(scale) == 0) return 0.0;

  std::vector<double> ad(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) ad[r * d + c] = Rational(a(r, c) / scale).get_d();

  // Gram matrix A^T A
  std::vector<double> gram(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) gram[i * d + j] += ad[k * d + i] * ad[k * d + j];

  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = 1.0 + 1.0 / static_cast<double>(i + 2);
  for (std::size_t attempt = 0;; ++attempt) {
    double n0 = std::sqrt(dot(v, v));
    for (auto& x : v) x /= n0;
    if (std::sqrt(dot(multiply(gram, d, v), multiply(gram, d, v))) > 0.0) break;
    if (attempt == d) return 0.0;
    std::fill(v.begin(), v.end(), 0.0);
    v[attempt] = 1.0;
  }

  double lambda = 0.0;
  double residual = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    auto w = multiply(gram, d, v);
    lambda = dot(v, w);
    residual = 0.0;
    for (std::size_t i = 0; i < d; ++i) residual += (w[i] - lambda * v[i]) * (w[i] - lambda * v[i]);
    residual = std::sqrt(residual);
    if (lambda > 0.0 && residual <= options.tol * lambda) {
      return std::sqrt(lambda) * scale.get_d();
    }
    const double nw = std::sqrt(dot(w, w));
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / nw;
  }
  throw NormNonConvergence(std::sqrt(std::max(lambda, 0.0)) * scale.get_d(), residual,
                           options.max_iterations);
}

double matrix_power_norm(const FiniteMatrix& m, std::size_t n, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("matrix_power_norm: tol must be positive");
  return spectral_norm(m.power(n), NormOptions{.tol = tol});
}

double gelfand_estimate(const FiniteMatrix& m, std::size_t n, double tol) {
  if (n < 2) throw std::invalid_argument("gelfand_estimate: N must be at least 2");
  const double norm = matrix_power_norm(m, n, tol);
  return std::pow(norm, 1.0 / static_cast<double>(n));
}

}  // namespace orbitlab
