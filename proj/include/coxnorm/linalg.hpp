#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "coxnorm/errors.hpp"

namespace coxnorm {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// max_ij |a_ij|
template <class T>
double max_abs_entry(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

struct JacobiOptions {
  std::size_t max_sweeps = 100;
  double relative_tolerance = 1e-15;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Only the upper triangle is trusted to be symmetric
/// with the lower one; asymmetric input is symmetrized.
inline std::vector<double> jacobi_eigenvalues(Matrix<double> a, JacobiOptions opt = {}) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw DomainError("jacobi_eigenvalues needs a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  double total = 0.0;
  for (auto x : a.data()) total += x * x;
  const double floor = opt.relative_tolerance * opt.relative_tolerance * total;

  std::size_t sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= floor) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  if (sweep == opt.max_sweeps) throw NonConvergence("Jacobi sweeps exhausted", 0.0);

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues of a Hermitian matrix H = A + iB, read off the real
/// symmetric embedding [[A, -B], [B, A]] whose spectrum is that of H with
/// every eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const Matrix<std::complex<double>>& h) {
  const std::size_t n = h.rows();
  if (n != h.cols()) throw DomainError("hermitian_eigenvalues needs a square matrix");
  Matrix<double> e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = h(i, j);
      e(i, j) = e(n + i, n + j) = z.real();
      e(n + i, j) = z.imag();
      e(i, n + j) = -z.imag();
    }
  auto doubled = jacobi_eigenvalues(std::move(e));
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return ev;
}

/// M^dagger M
inline Matrix<std::complex<double>> gram(const Matrix<std::complex<double>>& m) {
  Matrix<std::complex<double>> g(m.cols(), m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::complex<double> acc{};
      for (std::size_t k = 0; k < m.rows(); ++k) acc += std::conj(m(k, i)) * m(k, j);
      g(i, j) = acc;
    }
  return g;
}

struct PowerOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_iterations = 10000;
};

struct PowerResult {
  double sigma = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value by power iteration on M^dagger M.
///
/// The start vector is deterministic: all ones plus an index-weighted
/// perturbation, normalized. Each step reports sigma = |M v| for a unit
/// v, which is non-decreasing and bounded by the true sigma_max. Stops
/// when two consecutive estimates agree to the relative tolerance.
inline PowerResult largest_singular_value(const Matrix<std::complex<double>>& m,
                                          PowerOptions opt = {}) {
  using C = std::complex<double>;
  const std::size_t n = m.cols();
  PowerResult r;
  if (n == 0 || m.rows() == 0) {
    r.converged = true;
    return r;
  }
  std::vector<C> v(n), w(m.rows()), u(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 1.0 + 0.5 * static_cast<double>(i + 1) / static_cast<double>(n);
    norm += std::norm(v[i]);
  }
  for (auto& x : v) x /= std::sqrt(norm);

  double previous = -1.0;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    double wn = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      C acc{};
      const auto row = m.row(i);
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
      w[i] = acc;
      wn += std::norm(acc);
    }
    r.sigma = std::sqrt(wn);
    r.iterations = it;
    if (wn == 0.0) {
      r.converged = true;
      return r;
    }
    double un = 0.0;
    std::fill(u.begin(), u.end(), C{});
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto row = m.row(i);
      for (std::size_t j = 0; j < n; ++j) u[j] += std::conj(row[j]) * w[i];
    }
    for (const auto& x : u) un += std::norm(x);
    un = std::sqrt(un);
    for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / un;
    if (previous >= 0.0 && std::abs(r.sigma - previous) <= opt.relative_tolerance * r.sigma) {
      r.converged = true;
      return r;
    }
    previous = r.sigma;
  }
  return r;
}

}  // namespace coxnorm
