#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "coxnorm/coxeter_group.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/group_element.hpp"

namespace coxnorm {

using Complex = std::complex<double>;

/// A finitely supported function f: G -> C, the symbol of the
/// convolution operator lambda(f) on l^2(G).
///
/// Terms are kept in ShortLex order of their support points; no stored
/// coefficient is exactly zero.
class GroupFunction {
public:
  using Terms = std::map<GroupElement, Complex>;

  explicit GroupFunction(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw DomainError("group function needs a group");
  }

  static GroupFunction delta(GroupPtr group, const GroupElement& g, Complex c = 1.0) {
    GroupFunction f(std::move(group));
    f.add(g, c);
    return f;
  }

  const CoxeterGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex operator()(const GroupElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// f(g) += c, dropping the term if it cancels to exactly zero.
  void add(const GroupElement& g, Complex c) {
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) terms_.erase(it);
    }
  }

  /// Longest support word; 0 for the zero function.
  std::size_t max_length() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.length();
  }

  GroupFunction& operator+=(const GroupFunction& o) {
    check_same_group(o);
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  GroupFunction& operator-=(const GroupFunction& o) {
    check_same_group(o);
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  GroupFunction& operator*=(Complex c) {
    Terms scaled;
    for (const auto& [g, v] : terms_)
      if (auto p = v * c; p != Complex{}) scaled.emplace(g, p);
    terms_ = std::move(scaled);
    return *this;
  }

  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
  friend GroupFunction operator*(Complex c, GroupFunction f) { return f *= c; }

  /// Coefficientwise equality (same group, same support, same values).
  friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
    return a.same_group(b) && a.terms_ == b.terms_;
  }

  bool same_group(const GroupFunction& o) const {
    return group_ == o.group_ || group_->matrix() == o.group_->matrix();
  }

  void check_same_group(const GroupFunction& o) const {
    if (!same_group(o)) throw ContextMismatch("group functions live on different groups");
  }

private:
  GroupPtr group_;
  Terms terms_;
};

/// (f * h)(y) = sum_x f(x) h(x^-1 y). Terms are accumulated with the left
/// factor's support in ShortLex order, then the right factor's.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& h) {
  f.check_same_group(h);
  const auto& G = f.group();
  GroupFunction out(f.group_ptr());
  for (const auto& [x, a] : f.terms())
    for (const auto& [z, b] : h.terms()) out.add(G.multiply(x, z), a * b);
  return out;
}

/// f*(g) = conj(f(g^-1)), so that lambda(f)* = lambda(f*).
inline GroupFunction adjoint(const GroupFunction& f) {
  GroupFunction out(f.group_ptr());
  for (const auto& [g, c] : f.terms()) out.add(f.group().inverse(g), std::conj(c));
  return out;
}

/// (phi . f)(g) = phi(g) f(g) for any callable phi(const GroupElement&)
/// returning a real or complex scalar.
template <class Phi>
GroupFunction pointwise_mul(Phi&& phi, const GroupFunction& f) {
  GroupFunction out(f.group_ptr());
  for (const auto& [g, c] : f.terms()) out.add(g, Complex(phi(g)) * c);
  return out;
}

/// phi_t(g) = exp(-t l(g)).
struct HeatWeight {
  double t;
  double operator()(const GroupElement& g) const {
    return std::exp(-t * static_cast<double>(g.length()));
  }
};

/// phi(g) = l(g).
struct LengthWeight {
  double operator()(const GroupElement& g) const { return static_cast<double>(g.length()); }
};

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double sobolev = 0.0;  // (sum |f(g)|^2 (1 + l(g))^{2k})^{1/2}
};

inline Norms norms(const GroupFunction& f, unsigned k) {
  Norms n;
  double sq = 0.0, weighted = 0.0;
  for (const auto& [g, c] : f.terms()) {
    const double a = std::abs(c);
    n.l1 += a;
    sq += a * a;
    weighted += a * a * std::pow(1.0 + static_cast<double>(g.length()), 2.0 * k);
  }
  n.l2 = std::sqrt(sq);
  n.sobolev = std::sqrt(weighted);
  return n;
}

/// Parses the function file format, one term per line:
///
///     <word> <re> <im>       e.g. `1-2-1 0.5 0.0` or `e 1 0`
///
/// Words are reduced on load and coinciding terms are summed.
inline GroupFunction parse_group_function(std::istream& in, GroupPtr group) {
  GroupFunction f(group);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string word, re_text, im_text, extra;
    if (!(ls >> word >> re_text >> im_text) || (ls >> extra))
      throw ParseError("function file line " + std::to_string(lineno) +
                       ": expected `<word> <re> <im>`");
    auto number = [&](const std::string& t) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(t, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != t.size() || !std::isfinite(v))
        throw ParseError("function file line " + std::to_string(lineno) + ": bad number `" + t +
                         "`");
      return v;
    };
    const Complex c(number(re_text), number(im_text));
    Word w;
    try {
      w = parse_word(word, group->rank());
    } catch (const DomainError& e) {
      throw ParseError("function file line " + std::to_string(lineno) + ": " + e.what());
    }
    f.add(group->reduce(w), c);
  }
  return f;
}

inline GroupFunction parse_group_function(const std::string& text, GroupPtr group) {
  std::istringstream in(text);
  return parse_group_function(in, std::move(group));
}

}  // namespace coxnorm
