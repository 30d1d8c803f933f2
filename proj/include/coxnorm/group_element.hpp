#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coxnorm/coxeter_matrix.hpp"
#include "coxnorm/errors.hpp"

namespace coxnorm {

/// 0-based generator index.
using Generator = std::uint8_t;

/// A word in the generators; not necessarily reduced.
using Word = std::vector<Generator>;

/// A group element stored as its ShortLex-least reduced word.
///
/// Instances are only produced by CoxeterGroup, which guarantees the
/// canonical-form contract: two elements are equal iff their words are.
/// The ordering is ShortLex (length first, then lexicographic), which is
/// also the enumeration order of balls.
class GroupElement {
public:
  GroupElement() = default;

  const Word& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  bool is_identity() const noexcept { return word_.empty(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
    return a.word_ <=> b.word_;
  }

private:
  friend class CoxeterGroup;
  explicit GroupElement(Word w) : word_(std::move(w)) {}

  Word word_;
};

/// Formats a word as `e` or 1-based dash-separated indices (`1-2-1`).
inline std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(static_cast<unsigned>(w[i]) + 1);
  }
  return out;
}

inline std::string format_element(const GroupElement& g) { return format_word(g.word()); }

/// Parses `e`, the empty string, or dash-separated 1-based indices.
/// Indices are checked against `rank`.
inline Word parse_word(const std::string& text, std::size_t rank) {
  Word w;
  if (text.empty() || text == "e") return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto dash = text.find('-', pos);
    auto token = text.substr(pos, dash == std::string::npos ? std::string::npos : dash - pos);
    auto value = detail::parse_integer(token);
    if (!value) throw ParseError("bad word token `" + token + "` in `" + text + "`");
    if (*value < 1 || *value > static_cast<long long>(rank))
      throw DomainError("generator index " + token + " out of range 1.." + std::to_string(rank));
    w.push_back(static_cast<Generator>(*value - 1));
    if (dash == std::string::npos) break;
    pos = dash + 1;
  }
  return w;
}

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto s : g.word()) h = (h ^ s) * 1099511628211ull;
    return h ^ g.length();
  }
};

}  // namespace coxnorm
