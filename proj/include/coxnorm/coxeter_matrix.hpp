#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coxnorm/errors.hpp"

namespace coxnorm {

/// Presentation data m(s,t) of a Coxeter system (G,S).
///
/// Generators are numbered 0..rank-1 internally and 1..rank in every
/// text format. The value 0 stands for m = infinity.
class CoxeterMatrix {
public:
  static constexpr std::uint32_t kInfinity = 0;

  explicit CoxeterMatrix(std::size_t rank) : rank_(rank), m_(rank * rank, 2) {
    if (rank == 0) throw DomainError("rank must be at least 1");
    if (rank > 255) throw DomainError("rank above 255 is not supported");
    for (std::size_t i = 0; i < rank; ++i) m_[i * rank + i] = 1;
  }

  std::size_t rank() const noexcept { return rank_; }

  /// m(i,j); 1 on the diagonal, kInfinity for an infinite bond.
  std::uint32_t at(std::size_t i, std::size_t j) const { return m_[i * rank_ + j]; }

  bool is_infinite(std::size_t i, std::size_t j) const { return at(i, j) == kInfinity; }

  /// Sets both m(i,j) and m(j,i).
  void set(std::size_t i, std::size_t j, std::uint32_t value) {
    if (i >= rank_ || j >= rank_) throw DomainError("generator index out of range");
    if (i == j) throw DomainError("diagonal of a Coxeter matrix is fixed to 1");
    if (value != kInfinity && value < 2) throw DomainError("m(s,t) must be >= 2 or infinity");
    m_[i * rank_ + j] = value;
    m_[j * rank_ + i] = value;
  }

  /// True iff every finite off-diagonal value is 2 or 3 (infinity allowed).
  bool crystallographic() const {
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i + 1; j < rank_; ++j) {
        auto v = at(i, j);
        if (v != kInfinity && v != 2 && v != 3) return false;
      }
    return true;
  }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

  /// Builds a rank-r matrix with every off-diagonal entry equal to `value`.
  static CoxeterMatrix uniform(std::size_t rank, std::uint32_t value) {
    CoxeterMatrix m(rank);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) m.set(i, j, value);
    return m;
  }

  static CoxeterMatrix dihedral(std::uint32_t value) { return uniform(2, value); }

private:
  std::size_t rank_;
  std::vector<std::uint32_t> m_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::optional<long long> parse_integer(const std::string& token) {
  if (token.empty()) return std::nullopt;
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &pos);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (pos != token.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses the group file format:
///
///     rank <r>
///     m <i> <j> <v>      one line per unordered pair, v >= 2 or `inf`
///
/// Blank lines and lines starting with '#' are ignored.
inline CoxeterMatrix parse_coxeter_matrix(std::istream& in) {
  std::optional<CoxeterMatrix> matrix;
  std::vector<bool> seen;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("group file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    std::vector<std::string> args;
    for (std::string tok; ls >> tok;) args.push_back(tok);
    if (keyword == "rank") {
      if (matrix) fail("duplicate rank statement");
      if (args.size() != 1) fail("expected `rank <r>`");
      auto r = detail::parse_integer(args[0]);
      if (!r || *r < 1 || *r > 255) fail("rank must be an integer in 1..255");
      matrix.emplace(static_cast<std::size_t>(*r));
      seen.assign(static_cast<std::size_t>(*r * *r), false);
    } else if (keyword == "m") {
      if (!matrix) fail("`m` statement before `rank`");
      if (args.size() != 3) fail("expected `m <i> <j> <v>`");
      auto i = detail::parse_integer(args[0]);
      auto j = detail::parse_integer(args[1]);
      const auto r = static_cast<long long>(matrix->rank());
      if (!i || !j || *i < 1 || *j < 1 || *i > r || *j > r) fail("generator index out of range");
      if (*i == *j) fail("m statement on the diagonal");
      std::uint32_t value = CoxeterMatrix::kInfinity;
      if (args[2] != "inf") {
        auto v = detail::parse_integer(args[2]);
        if (!v || *v < 2 || *v > 1000000) fail("m value must be an integer >= 2 or `inf`");
        value = static_cast<std::uint32_t>(*v);
      }
      auto a = static_cast<std::size_t>(std::min(*i, *j) - 1);
      auto b = static_cast<std::size_t>(std::max(*i, *j) - 1);
      if (seen[a * matrix->rank() + b]) fail("pair given twice");
      seen[a * matrix->rank() + b] = true;
      matrix->set(a, b, value);
    } else {
      fail("unknown statement `" + keyword + "`");
    }
  }
  if (!matrix) throw ParseError("group file has no rank statement");
  for (std::size_t a = 0; a < matrix->rank(); ++a)
    for (std::size_t b = a + 1; b < matrix->rank(); ++b)
      if (!seen[a * matrix->rank() + b])
        throw ParseError("group file is missing pair " + std::to_string(a + 1) + " " +
                         std::to_string(b + 1));
  return *matrix;
}

inline CoxeterMatrix parse_coxeter_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_coxeter_matrix(in);
}

}  // namespace coxnorm
