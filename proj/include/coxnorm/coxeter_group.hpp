#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coxnorm/coxeter_matrix.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/geometric_rep.hpp"
#include "coxnorm/group_element.hpp"

namespace coxnorm {

/// Reduces an arbitrary word by a left-to-right scan that keeps a reduced
/// prefix r_1..r_k together with its crossing roots
/// beta_i = r_1 ... r_{i-1} (a_{r_i}). Appending s either extends the
/// prefix (sigma(prefix) a_s > 0) or, by the strong exchange condition,
/// deletes the unique r_i with beta_i = -sigma(prefix) a_s.
template <class Scalar>
Word reduced_word(const BilinearForm<Scalar>& form, const Word& input) {
  using Root = RootVector<Scalar>;
  form.check_word(input);
  const auto identity_columns = sigma_columns(form, Word{});

  Word prefix;
  std::vector<Root> betas;
  auto columns = identity_columns;
  for (auto s : input) {
    Root gamma = columns[s];
    if (form.sign(gamma) == Sign::Positive) {
      prefix.push_back(s);
      betas.push_back(std::move(gamma));
      right_multiply_by_reflection(form, columns, s);
      continue;
    }
    for (auto& c : gamma.coords) c = -c;
    std::size_t hit = betas.size();
    for (std::size_t i = 0; i < betas.size(); ++i)
      if (form.same_root(betas[i], gamma)) {
        hit = i;
        break;
      }
    if (hit == betas.size())
      throw InvariantViolation("exchange condition failed: no crossing root equals " +
                               format_root(gamma));
    prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(hit));
    betas.clear();
    columns = identity_columns;
    for (auto r : prefix) {
      betas.push_back(columns[r]);
      right_multiply_by_reflection(form, columns, r);
    }
  }
  return prefix;
}

/// ShortLex-least word of the element spelled by a reduced word: peel
/// off the smallest left descent until nothing is left. Keeps the
/// columns of sigma(g^-1) and right-multiplies them by sigma_s per step.
template <class Scalar>
Word shortlex_normal_form(const BilinearForm<Scalar>& form, const Word& reduced) {
  Word inverse(reduced.rbegin(), reduced.rend());
  auto columns = sigma_columns(form, inverse);
  Word out;
  out.reserve(reduced.size());
  for (std::size_t step = 0; step < reduced.size(); ++step) {
    std::size_t s = 0;
    while (s < form.rank() && form.sign(columns[s]) != Sign::Negative) ++s;
    if (s == form.rank())
      throw InvariantViolation("no left descent found for a non-identity element");
    out.push_back(static_cast<Generator>(s));
    right_multiply_by_reflection(form, columns, s);
  }
  for (std::size_t s = 0; s < form.rank(); ++s)
    if (form.sign(columns[s]) != Sign::Positive)
      throw InvariantViolation("input to shortlex_normal_form was not reduced");
  return out;
}

/// A Coxeter group with its geometric representation, in exact or
/// floating-point scalars. Immutable after construction.
class CoxeterGroup {
public:
  static constexpr std::size_t kDefaultBallCap = 200000;

  using Form = std::variant<BilinearForm<std::int64_t>, BilinearForm<double>>;

  /// Without an explicit mode the exact representation is used whenever
  /// the matrix is crystallographic.
  explicit CoxeterGroup(CoxeterMatrix matrix, std::optional<ScalarMode> mode = std::nullopt,
                        std::size_t ball_cap = kDefaultBallCap)
      : matrix_(std::move(matrix)), form_(make_form(matrix_, mode)), ball_cap_(ball_cap) {}

  const CoxeterMatrix& matrix() const noexcept { return matrix_; }
  std::size_t rank() const noexcept { return matrix_.rank(); }
  std::size_t ball_cap() const noexcept { return ball_cap_; }
  ScalarMode mode() const noexcept {
    return form_.index() == 0 ? ScalarMode::Exact : ScalarMode::Float;
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), form_);
  }

  GroupElement identity() const { return GroupElement{}; }

  GroupElement generator(std::size_t s) const {
    if (s >= rank()) throw DomainError("generator index out of range");
    return GroupElement{Word{static_cast<Generator>(s)}};
  }

  /// Canonical element of an arbitrary word.
  GroupElement reduce(const Word& word) const {
    return visit([&](const auto& form) {
      return GroupElement{shortlex_normal_form(form, reduced_word(form, word))};
    });
  }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
    Word w = a.word();
    w.insert(w.end(), b.word().begin(), b.word().end());
    return reduce(w);
  }

  /// The reversal of a reduced word is reduced, so only the normal form
  /// has to be recomputed.
  GroupElement inverse(const GroupElement& a) const {
    Word w(a.word().rbegin(), a.word().rend());
    return visit([&](const auto& form) { return GroupElement{shortlex_normal_form(form, w)}; });
  }

  /// l(s g) < l(g).
  bool is_left_descent(std::size_t s, const GroupElement& g) const {
    return visit([&](const auto& form) { return coxnorm::is_left_descent(form, s, g.word()); });
  }

  struct Ball {
    std::vector<GroupElement> elements;       // ShortLex order
    std::vector<std::size_t> cumulative_sizes;  // |B_0|, |B_1|, ..., |B_N|
  };

  /// Every element of length <= radius, in ShortLex order. Built sphere
  /// by sphere from right multiplications by generators.
  Ball ball(std::size_t radius) const { return ball(radius, ball_cap_); }

  Ball ball(std::size_t radius, std::size_t cap) const {
    return visit([&](const auto& form) { return enumerate_ball(form, radius, cap, false); });
  }

  /// Enumerates spheres until one is empty, i.e. the whole (finite) group.
  /// Throws CapExceeded when more than `cap` elements show up first.
  Ball whole_group(std::size_t cap) const {
    return visit([&](const auto& form) {
      return enumerate_ball(form, std::numeric_limits<std::size_t>::max(), cap, true);
    });
  }

  /// Number of walls crossed between the chambers gC and hC, computed as
  /// |N(g) symmetric-difference N(h)| and checked against l(g^-1 h).
  std::size_t crossing_distance(const GroupElement& g, const GroupElement& h) const {
    const std::size_t count = visit([&](const auto& form) {
      return symmetric_difference_size(form, inversion_set(form, g.word()),
                                       inversion_set(form, h.word()));
    });
    const std::size_t length = multiply(inverse(g), h).length();
    if (count != length)
      throw InvariantViolation("cut identity failed: |N(g) ^ N(h)| = " + std::to_string(count) +
                               " but l(g^-1 h) = " + std::to_string(length) + " for g = " +
                               format_element(g) + ", h = " + format_element(h));
    return count;
  }

  /// Printable inversion set of g, one root per entry.
  std::vector<std::string> inversion_set_text(const GroupElement& g) const {
    return visit([&](const auto& form) {
      std::vector<std::string> out;
      for (const auto& r : inversion_set(form, g.word())) out.push_back(format_root(r));
      return out;
    });
  }

private:
  static Form make_form(const CoxeterMatrix& m, std::optional<ScalarMode> mode) {
    const ScalarMode chosen =
        mode.value_or(m.crystallographic() ? ScalarMode::Exact : ScalarMode::Float);
    if (chosen == ScalarMode::Exact) return Form{std::in_place_index<0>, m};
    return Form{std::in_place_index<1>, m};
  }

  template <class Scalar>
  Ball enumerate_ball(const BilinearForm<Scalar>& form, std::size_t radius, std::size_t cap,
                      bool stop_when_stable) const {
    Ball b;
    b.elements.push_back(identity());
    b.cumulative_sizes.push_back(1);
    if (cap < 1) throw CapExceeded("ball cap is zero");
    std::vector<GroupElement> sphere{identity()};
    for (std::size_t r = 1; r <= radius; ++r) {
      std::set<GroupElement> next;
      for (const auto& g : sphere) {
        for (std::size_t s = 0; s < rank(); ++s) {
          if (coxnorm::is_right_descent(form, g.word(), s)) continue;
          Word w = g.word();
          w.push_back(static_cast<Generator>(s));
          next.insert(GroupElement{shortlex_normal_form(form, w)});
          if (b.elements.size() + next.size() > cap)
            throw CapExceeded("ball of radius " + std::to_string(r) + " exceeds the cap of " +
                              std::to_string(cap) + " elements");
        }
      }
      if (next.empty() && stop_when_stable) break;
      sphere.assign(next.begin(), next.end());
      b.elements.insert(b.elements.end(), sphere.begin(), sphere.end());
      b.cumulative_sizes.push_back(b.elements.size());
    }
    return b;
  }

  CoxeterMatrix matrix_;
  Form form_;
  std::size_t ball_cap_;
};

using GroupPtr = std::shared_ptr<const CoxeterGroup>;

inline GroupPtr make_group(CoxeterMatrix matrix, std::optional<ScalarMode> mode = std::nullopt,
                           std::size_t ball_cap = CoxeterGroup::kDefaultBallCap) {
  return std::make_shared<const CoxeterGroup>(std::move(matrix), mode, ball_cap);
}

}  // namespace coxnorm
