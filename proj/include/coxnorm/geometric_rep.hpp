#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "coxnorm/coxeter_matrix.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/group_element.hpp"

namespace coxnorm {

enum class ScalarMode { Exact, Float };

inline const char* to_string(ScalarMode mode) {
  return mode == ScalarMode::Exact ? "exact" : "float";
}

template <class Scalar>
struct ScalarTraits;

/// Exact mode: coordinates are integers and the form is stored doubled,
/// so 2B(a_s, a_t) lies in {2, 0, -1, -2}. Valid for m in {2, 3, inf}.
template <>
struct ScalarTraits<std::int64_t> {
  static constexpr ScalarMode mode = ScalarMode::Exact;

  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw NumericOverflow("root coordinate overflow");
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw NumericOverflow("root coordinate overflow");
    return r;
  }
  static double to_double(std::int64_t a) { return static_cast<double>(a); }
};

template <>
struct ScalarTraits<double> {
  static constexpr ScalarMode mode = ScalarMode::Float;
  static constexpr double sign_tolerance = 1e-9;
  static constexpr double equal_tolerance = 1e-6;
  static constexpr double distinct_tolerance = 1e-3;

  static double add(double a, double b) { return a + b; }
  static double mul(double a, double b) { return a * b; }
  static double to_double(double a) { return a; }
};

/// A vector of V in the simple-root basis.
template <class Scalar>
struct RootVector {
  std::vector<Scalar> coords;

  friend bool operator==(const RootVector&, const RootVector&) = default;
};

enum class Sign { Positive, Negative };

/// The bilinear form B on V together with the reflections
/// sigma_s(xi) = xi - 2 B(a_s, xi) a_s it defines.
template <class Scalar>
class BilinearForm {
public:
  using Traits = ScalarTraits<Scalar>;
  using Root = RootVector<Scalar>;

  explicit BilinearForm(const CoxeterMatrix& m) : rank_(m.rank()), twice_(rank_ * rank_) {
    if constexpr (Traits::mode == ScalarMode::Exact) {
      if (!m.crystallographic())
        throw DomainError("exact mode needs every m(s,t) in {2, 3, inf}");
    }
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) twice_[i * rank_ + j] = doubled_entry(m, i, j);
  }

  std::size_t rank() const noexcept { return rank_; }

  /// 2 B(a_i, a_j) in the scalar type.
  Scalar twice(std::size_t i, std::size_t j) const { return twice_[i * rank_ + j]; }

  /// B(a_i, a_j) as a double.
  double entry(std::size_t i, std::size_t j) const { return Traits::to_double(twice(i, j)) / 2.0; }

  Root simple_root(std::size_t s) const {
    Root r{std::vector<Scalar>(rank_, Scalar{0})};
    r.coords[s] = Scalar{1};
    return r;
  }

  /// 2 B(a_s, v).
  Scalar twice_pairing(std::size_t s, const Root& v) const {
    Scalar acc{0};
    for (std::size_t t = 0; t < rank_; ++t)
      if (twice(s, t) != Scalar{0}) acc = Traits::add(acc, Traits::mul(twice(s, t), v.coords[t]));
    return acc;
  }

  void reflect_in_place(std::size_t s, Root& v) const {
    v.coords[s] = Traits::add(v.coords[s], -twice_pairing(s, v));
  }

  Root reflect(std::size_t s, Root v) const {
    reflect_in_place(s, v);
    return v;
  }

  /// sigma(s_1 ... s_k) v, i.e. the rightmost letter acts first.
  Root apply_word(const Word& word, Root v) const {
    check_word(word);
    for (auto it = word.rbegin(); it != word.rend(); ++it) reflect_in_place(*it, v);
    return v;
  }

  /// B(v, w) evaluated in double precision.
  double form(const Root& v, const Root& w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j)
        acc += entry(i, j) * Traits::to_double(v.coords[i]) * Traits::to_double(w.coords[j]);
    return acc;
  }

  /// Sign of a root. Roots are sign-coherent; a vector with coordinates of
  /// both signs beyond tolerance is an invariant failure, and a vector
  /// whose coordinates all sit in the tolerance band is ambiguous.
  Sign sign(const Root& v) const {
    if constexpr (Traits::mode == ScalarMode::Exact) {
      bool pos = false, neg = false;
      for (auto c : v.coords) {
        pos |= c > 0;
        neg |= c < 0;
      }
      if (pos && neg) throw InvariantViolation("root is not sign-coherent: " + format_root(v));
      if (!pos && !neg) throw InvariantViolation("zero vector where a root was expected");
      return pos ? Sign::Positive : Sign::Negative;
    } else {
      const double tol = Traits::sign_tolerance;
      bool pos = false, neg = false;
      for (auto c : v.coords) {
        pos |= c > tol;
        neg |= c < -tol;
      }
      if (pos && neg) throw InvariantViolation("root is not sign-coherent: " + format_root(v));
      if (!pos && !neg) throw NumericAmbiguity("root sign inside tolerance band: " + format_root(v));
      return pos ? Sign::Positive : Sign::Negative;
    }
  }

  bool is_positive(const Root& v) const { return sign(v) == Sign::Positive; }

  /// Root equality. Float mode compares in max-norm: <= 1e-6 is equal,
  /// > 1e-3 is distinct, anything between is reported as ambiguous.
  bool same_root(const Root& a, const Root& b) const {
    if constexpr (Traits::mode == ScalarMode::Exact) {
      return a == b;
    } else {
      double diff = 0.0;
      for (std::size_t i = 0; i < rank_; ++i)
        diff = std::max(diff, std::abs(a.coords[i] - b.coords[i]));
      if (diff <= Traits::equal_tolerance) return true;
      if (diff > Traits::distinct_tolerance) return false;
      throw NumericAmbiguity("roots " + format_root(a) + " and " + format_root(b) +
                             " are neither equal nor separated");
    }
  }

  /// Hashable key: the coordinates themselves (exact) or coordinates
  /// quantized to the 1e-6 grid (float).
  std::vector<std::int64_t> key(const Root& v) const {
    std::vector<std::int64_t> k(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      if constexpr (Traits::mode == ScalarMode::Exact)
        k[i] = v.coords[i];
      else
        k[i] = std::llround(v.coords[i] / Traits::equal_tolerance);
    }
    return k;
  }

  void check_word(const Word& word) const {
    for (auto s : word)
      if (s >= rank_) throw DomainError("generator index out of range");
  }

private:
  static Scalar doubled_entry(const CoxeterMatrix& m, std::size_t i, std::size_t j) {
    if (i == j) return Scalar{2};
    const auto v = m.at(i, j);
    if (v == CoxeterMatrix::kInfinity) return Scalar{-2};
    if (v == 2) return Scalar{0};
    if constexpr (Traits::mode == ScalarMode::Exact) {
      return Scalar{-1};  // v == 3, guaranteed by the constructor
    } else {
      if (v == 3) return -1.0;
      return -2.0 * std::cos(std::numbers::pi / static_cast<double>(v));
    }
  }

  std::size_t rank_;
  std::vector<Scalar> twice_;
};

/// Exact roots print as integers; float roots with 17 significant digits.
template <class Scalar>
std::string format_root(const RootVector<Scalar>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) out += ' ';
    if constexpr (std::is_same_v<Scalar, double>) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.coords[i]);
      out += buf;
    } else {
      out += std::to_string(v.coords[i]);
    }
  }
  return out;
}

/// Columns of sigma(w): column t is sigma(w) a_t.
template <class Scalar>
std::vector<RootVector<Scalar>> sigma_columns(const BilinearForm<Scalar>& form, const Word& w) {
  std::vector<RootVector<Scalar>> cols;
  cols.reserve(form.rank());
  for (std::size_t t = 0; t < form.rank(); ++t)
    cols.push_back(form.apply_word(w, form.simple_root(t)));
  return cols;
}

/// Replaces the columns of M by those of M sigma_s.
template <class Scalar>
void right_multiply_by_reflection(const BilinearForm<Scalar>& form,
                                  std::vector<RootVector<Scalar>>& cols, std::size_t s) {
  using Traits = ScalarTraits<Scalar>;
  const auto col_s = cols[s];
  for (std::size_t t = 0; t < form.rank(); ++t) {
    const Scalar c = form.twice(s, t);
    if (c == Scalar{0}) continue;
    for (std::size_t i = 0; i < form.rank(); ++i)
      cols[t].coords[i] = Traits::add(cols[t].coords[i], -Traits::mul(c, col_s.coords[i]));
  }
}

/// True iff l(s g) < l(g) for the element spelled by the reduced word
/// `g`, i.e. sigma(g^-1) a_s is a negative root.
template <class Scalar>
bool is_left_descent(const BilinearForm<Scalar>& form, std::size_t s, const Word& g) {
  if (s >= form.rank()) throw DomainError("generator index out of range");
  Word inv(g.rbegin(), g.rend());
  return form.sign(form.apply_word(inv, form.simple_root(s))) == Sign::Negative;
}

/// True iff l(g s) < l(g): sigma(g) a_s is negative.
template <class Scalar>
bool is_right_descent(const BilinearForm<Scalar>& form, const Word& g, std::size_t s) {
  if (s >= form.rank()) throw DomainError("generator index out of range");
  return form.sign(form.apply_word(g, form.simple_root(s))) == Sign::Negative;
}

/// Left inversion set {beta > 0 : sigma(g^-1) beta < 0}, listed along the
/// reduced word s_1..s_k as beta_i = s_1 ... s_{i-1} (a_{s_i}).
///
/// The roots are checked to be positive and pairwise distinct; a
/// collision means the word was not reduced or float precision is gone.
template <class Scalar>
std::vector<RootVector<Scalar>> inversion_set(const BilinearForm<Scalar>& form,
                                              const Word& reduced) {
  form.check_word(reduced);
  std::vector<RootVector<Scalar>> roots;
  roots.reserve(reduced.size());
  Word prefix;
  for (auto s : reduced) {
    auto beta = form.apply_word(prefix, form.simple_root(s));
    if (!form.is_positive(beta))
      throw InvariantViolation("inversion root " + format_root(beta) + " is negative");
    for (const auto& other : roots)
      if (form.same_root(other, beta))
        throw InvariantViolation("duplicate inversion root " + format_root(beta));
    roots.push_back(std::move(beta));
    prefix.push_back(s);
  }
  return roots;
}

/// |A symmetric-difference B| for two root sets, each free of duplicates.
template <class Scalar>
std::size_t symmetric_difference_size(const BilinearForm<Scalar>& form,
                                      const std::vector<RootVector<Scalar>>& a,
                                      const std::vector<RootVector<Scalar>>& b) {
  std::size_t common = 0;
  for (const auto& x : a)
    for (const auto& y : b)
      if (form.same_root(x, y)) {
        ++common;
        break;
      }
  return a.size() + b.size() - 2 * common;
}

}  // namespace coxnorm
