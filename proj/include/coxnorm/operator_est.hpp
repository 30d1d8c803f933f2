#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "coxnorm/coxeter_group.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/group_function.hpp"
#include "coxnorm/linalg.hpp"

namespace coxnorm {

/// The ball B_N in ShortLex order together with the table z x^-1 for all
/// pairs of basis elements, so that several compressions over the same
/// radius share the group arithmetic.
class CompressionBasis {
public:
  CompressionBasis(GroupPtr group, std::size_t radius)
      : group_(std::move(group)), radius_(radius), elements_(group_->ball(radius).elements) {
    const std::size_t n = elements_.size();
    std::vector<GroupElement> inverses;
    inverses.reserve(n);
    for (const auto& x : elements_) inverses.push_back(group_->inverse(x));
    quotients_.reserve(n * n);
    for (const auto& z : elements_)
      for (const auto& xi : inverses) quotients_.push_back(group_->multiply(z, xi));
  }

  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }

  /// basis[z] * basis[x]^-1
  const GroupElement& quotient(std::size_t z, std::size_t x) const {
    return quotients_[z * elements_.size() + x];
  }

private:
  GroupPtr group_;
  std::size_t radius_;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> quotients_;
};

/// Matrix of P_N lambda(f) P_N in the delta basis of B_N:
/// entries(z, x) = <delta_z, f * delta_x> = f(z x^-1).
struct CompressionMatrix {
  std::size_t radius = 0;
  std::vector<GroupElement> basis;
  Matrix<Complex> entries;
};

inline CompressionMatrix compression(const GroupFunction& f, const CompressionBasis& basis) {
  if (!(f.group_ptr() == basis.group_ptr() ||
        f.group().matrix() == basis.group_ptr()->matrix()))
    throw ContextMismatch("compression basis belongs to another group");
  const std::size_t n = basis.size();
  CompressionMatrix m{basis.radius(), basis.elements(), Matrix<Complex>(n, n)};
  if (f.is_zero()) return m;
  const auto max_len = f.max_length();
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x) {
      const auto& q = basis.quotient(z, x);
      if (q.length() <= max_len) m.entries(z, x) = f(q);
    }
  return m;
}

inline CompressionMatrix compression(const GroupFunction& f, std::size_t radius) {
  return compression(f, CompressionBasis(f.group_ptr(), radius));
}

/// Compressions up to this many basis elements also get a dense
/// eigensolve of M^dagger M.
inline constexpr std::size_t kDenseSpectrumLimit = 256;

/// sigma_max of the compression.
///
/// Power iteration alone is not enough here: the deterministic start
/// vector can be orthogonal to the top singular subspace (on B2 it is
/// orthogonal to the parity character), and clustered top singular values
/// stall it. Up to kDenseSpectrumLimit the Jacobi spectrum of M^dagger M
/// decides; above it a non-converged power iteration throws
/// NonConvergence carrying the last iterate.
inline PowerResult compressed_norm_detail(const CompressionMatrix& m) {
  auto r = largest_singular_value(m.entries);
  if (m.entries.cols() > 0 && m.entries.cols() <= kDenseSpectrumLimit) {
    const auto ev = hermitian_eigenvalues(gram(m.entries));
    r.sigma = std::max(r.sigma, std::sqrt(std::max(0.0, ev.back())));
    r.converged = true;
  }
  if (!r.converged)
    throw NonConvergence("power iteration did not converge after " +
                             std::to_string(r.iterations) + " iterations",
                         r.sigma);
  return r;
}

inline double compressed_norm(const CompressionMatrix& m) {
  return compressed_norm_detail(m).sigma;
}

/// Certified bracket  l2(f) <= ... <= |lambda(f)| <= l1(f).
struct NormInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t radius = 0;
  double l2 = 0.0;
  double compressed = 0.0;
  std::size_t iterations = 0;
};

inline NormInterval norm_interval(const GroupFunction& f, const CompressionBasis& basis) {
  const auto n = norms(f, 0);
  const auto p = compressed_norm_detail(compression(f, basis));
  NormInterval r;
  r.radius = basis.radius();
  r.l2 = n.l2;
  r.compressed = p.sigma;
  r.iterations = p.iterations;
  r.upper = n.l1;
  r.lower = std::max(n.l2, p.sigma);
  // sigma_max <= l1 holds exactly; the power iterate can only overshoot it
  // by rounding.
  if (r.lower > r.upper) {
    if (r.lower - r.upper > 1e-12 * std::max(1.0, r.upper))
      throw InvariantViolation("compressed norm exceeds the l1 bound");
    r.lower = r.upper;
  }
  return r;
}

inline NormInterval norm_interval(const GroupFunction& f, std::size_t radius) {
  return norm_interval(f, CompressionBasis(f.group_ptr(), radius));
}

/// Default element limit of the dense whole-group oracle.
inline constexpr std::size_t kOracleMaxOrder = 2000;

/// All elements of a finite group, found by enumerating balls until a
/// sphere comes out empty.
inline std::vector<GroupElement> finite_group_elements(const CoxeterGroup& group,
                                                       std::size_t max_order = kOracleMaxOrder) {
  try {
    return group.whole_group(max_order).elements;
  } catch (const CapExceeded&) {
    throw GroupNotFinite("group not finite: balls keep growing past " +
                         std::to_string(max_order) + " elements");
  }
}

/// |lambda(f)| for a finite group, from the full regular representation:
/// the square root of the top eigenvalue of M^dagger M by Jacobi.
inline double exact_norm_finite_group(const GroupFunction& f,
                                      std::size_t max_order = kOracleMaxOrder) {
  const auto& G = f.group();
  const auto elements = finite_group_elements(G, max_order);
  const std::size_t n = elements.size();
  Matrix<Complex> m(n, n);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      m(z, x) = f(G.multiply(elements[z], G.inverse(elements[x])));
  const auto ev = hermitian_eigenvalues(gram(m));
  return std::sqrt(std::max(0.0, ev.back()));
}

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_entry = 0.0;
  std::size_t dimension = 0;
  bool verdict = false;
};

/// Gram matrix [exp(-t l(g^-1 h))] over B_N; positive semidefinite iff
/// exp(-t l) is a positive definite function on the ball.
inline PsdReport gram_psd(const CoxeterGroup& group, double t, std::size_t radius) {
  if (!(t > 0.0)) throw DomainError("gram_psd needs t > 0");
  const auto basis = group.ball(radius).elements;
  const std::size_t n = basis.size();
  Matrix<double> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto gi = group.inverse(basis[i]);
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = std::exp(-t * static_cast<double>(group.multiply(gi, basis[j]).length()));
  }
  PsdReport r;
  r.dimension = n;
  r.max_entry = max_abs_entry(g);
  r.min_eigenvalue = jacobi_eigenvalues(std::move(g)).front();
  r.verdict = r.min_eigenvalue >= -1e-8 * r.max_entry;
  return r;
}

struct NegdefReport {
  double max_eigenvalue = 0.0;  // on the mean-zero subspace
  double max_entry = 0.0;
  std::size_t dimension = 0;
  bool verdict = false;
};

/// Conditional negative definiteness of L = [l(g^-1 h)] over B_N: the
/// form restricted to mean-zero vectors must be <= 0. The restriction is
/// taken in the orthonormal Helmert basis of the mean-zero subspace. For
/// N = 0 that subspace is {0} and the reported maximum is 0.
inline NegdefReport negdef_check(const CoxeterGroup& group, std::size_t radius) {
  const auto basis = group.ball(radius).elements;
  const std::size_t n = basis.size();
  Matrix<double> l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto gi = group.inverse(basis[i]);
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = static_cast<double>(group.multiply(gi, basis[j]).length());
  }
  NegdefReport r;
  r.dimension = n;
  r.max_entry = max_abs_entry(l);
  if (n < 2) {
    r.verdict = true;
    return r;
  }
  // Helmert column k (1..n-1): (1,...,1,-k,0,...,0) / sqrt(k(k+1)).
  Matrix<double> q(n, n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) q(i, k - 1) = scale;
    q(k, k - 1) = -static_cast<double>(k) * scale;
  }
  Matrix<double> lq(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n - 1; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += l(i, j) * q(j, k);
      lq(i, k) = acc;
    }
  Matrix<double> projected(n - 1, n - 1);
  for (std::size_t a = 0; a < n - 1; ++a)
    for (std::size_t b = 0; b < n - 1; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += q(i, a) * lq(i, b);
      projected(a, b) = acc;
    }
  r.max_eigenvalue = jacobi_eigenvalues(std::move(projected)).back();
  r.verdict = r.max_eigenvalue <= 1e-8 * r.max_entry;
  return r;
}

struct SchurReport {
  double lhs = 0.0;  // |P_N lambda(phi_t f) P_N|
  double rhs = 0.0;  // |P_N lambda(f) P_N|
  bool verdict = false;
};

/// The compression of lambda(phi_t f) is the Schur product of the
/// unit-diagonal PSD matrix [phi_t(z x^-1)] with that of lambda(f), so its
/// norm cannot exceed the norm of the latter.
inline SchurReport schur_contraction_check(double t, const GroupFunction& f,
                                           const CompressionBasis& basis) {
  if (!(t > 0.0)) throw DomainError("schur_contraction_check needs t > 0");
  SchurReport r;
  r.lhs = compressed_norm(compression(pointwise_mul(HeatWeight{t}, f), basis));
  r.rhs = compressed_norm(compression(f, basis));
  r.verdict = r.lhs <= r.rhs + 1e-9;
  return r;
}

inline SchurReport schur_contraction_check(double t, const GroupFunction& f, std::size_t radius) {
  return schur_contraction_check(t, f, CompressionBasis(f.group_ptr(), radius));
}

}  // namespace coxnorm
