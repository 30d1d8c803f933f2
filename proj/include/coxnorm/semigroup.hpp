#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coxnorm/coxeter_group.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/group_function.hpp"
#include "coxnorm/operator_est.hpp"

namespace coxnorm {

/// phi_t, optionally truncated to phi_{n,t} (zero beyond length n).
struct HeatParams {
  double t = 1.0;
  std::optional<std::size_t> truncation;

  void validate() const {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat parameter t must be > 0");
  }
};

/// Constants of the rapid-decay inequality
///   |lambda(f)| <= C (sum |f(g)|^2 (1 + l(g))^{2k})^{1/2}.
/// No values are known in closed form; these are assumptions supplied by
/// the caller.
struct RdConstants {
  double C = 1.0;
  unsigned k = 2;

  void validate() const {
    if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("RD constant C must be > 0");
  }
};

/// M_t(lambda(f)) = lambda(phi_t . f), or lambda(phi_{n,t} . f) when truncated.
inline GroupFunction heat_apply(const HeatParams& p, const GroupFunction& f) {
  p.validate();
  GroupFunction out(f.group_ptr());
  for (const auto& [g, c] : f.terms()) {
    if (p.truncation && g.length() > *p.truncation) continue;
    out.add(g, HeatWeight{p.t}(g) * c);
  }
  return out;
}

struct GeneratorCheck {
  double value = 0.0;  // |P_N lambda((phi_t f - f)/t + l f) P_N|
  double bound = 0.0;  // (t/2) max l^2 l1(f)
};

/// Distance between the difference quotient of the semigroup at t and
/// its generator D(lambda(f)) = -lambda(l . f), on the compression.
inline GeneratorCheck generator_check(const GroupFunction& f, double t, std::size_t radius) {
  if (!(t > 0.0)) throw DomainError("generator_check needs t > 0");
  GroupFunction residual(f.group_ptr());
  double max_len = 0.0;
  for (const auto& [g, c] : f.terms()) {
    const double l = static_cast<double>(g.length());
    max_len = std::max(max_len, l);
    residual.add(g, (std::expm1(-t * l) / t + l) * c);
  }
  GeneratorCheck r;
  r.value = compressed_norm(compression(residual, radius));
  r.bound = 0.5 * t * max_len * max_len * norms(f, 0).l1;
  return r;
}

/// sup over integers l > n of exp(-t l) (1 + l)^k.
inline double tail_sup(double t, unsigned k, std::uint64_t n) {
  auto log_h = [&](double l) { return -t * l + static_cast<double>(k) * std::log1p(l); };
  const double first = static_cast<double>(n) + 1.0;
  const double peak = static_cast<double>(k) / t - 1.0;  // maximizer over the reals
  if (k == 0 || first >= peak) return std::exp(log_h(first));
  return std::exp(std::max(log_h(std::floor(peak)), log_h(std::ceil(peak))));
}

/// Smallest n with C sup_{l>n} exp(-t l)(1+l)^k <= threshold. The left
/// side is non-increasing in n, so an exponential then binary search
/// finds it.
inline std::uint64_t minimal_truncation(double t, const RdConstants& rd, double threshold) {
  auto ok = [&](std::uint64_t n) { return rd.C * tail_sup(t, rd.k, n) <= threshold; };
  if (ok(0)) return 0;
  std::uint64_t hi = 1;
  while (!ok(hi)) {
    if (hi > (std::uint64_t{1} << 50)) throw DomainError("truncation length out of range");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // ok(lo) is false
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Parameters of psi_m = phi_{n,t}: t = 1/m and the least n whose tail
/// factor C sup_{l>n} exp(-t l)(1+l)^k is at most min(2, 1/m). The factor
/// <= 2 gives |lambda(psi_m f)| <= 3 |lambda(f)|; the 1/m makes the tail
/// vanish as m grows.
inline HeatParams psi_params(std::uint64_t m, const RdConstants& rd) {
  if (m < 1) throw DomainError("psi_params needs m >= 1");
  rd.validate();
  const double t = 1.0 / static_cast<double>(m);
  const double threshold = std::min(2.0, 1.0 / static_cast<double>(m));
  return HeatParams{t, static_cast<std::size_t>(minimal_truncation(t, rd, threshold))};
}

enum class KStatus { CertifiedIn, CertifiedOut, Undetermined };

inline const char* to_string(KStatus s) {
  switch (s) {
    case KStatus::CertifiedIn: return "CERTIFIED_IN";
    case KStatus::CertifiedOut: return "CERTIFIED_OUT";
    default: return "UNDETERMINED";
  }
}

/// Membership in K = { lambda(f) : |lambda(f)| <= 1, |lambda(l f)| <= 1 }.
struct KVerdict {
  KStatus status = KStatus::Undetermined;
  NormInterval norm;         // |lambda(f)|
  NormInterval length_norm;  // |lambda(l . f)|
};

inline KVerdict k_membership(const GroupFunction& f, const CompressionBasis& basis) {
  KVerdict v;
  v.norm = norm_interval(f, basis);
  v.length_norm = norm_interval(pointwise_mul(LengthWeight{}, f), basis);
  if (v.norm.lower > 1.0 || v.length_norm.lower > 1.0)
    v.status = KStatus::CertifiedOut;
  else if (v.norm.upper <= 1.0 && v.length_norm.upper <= 1.0)
    v.status = KStatus::CertifiedIn;
  else
    v.status = KStatus::Undetermined;
  return v;
}

inline KVerdict k_membership(const GroupFunction& f, std::size_t radius) {
  return k_membership(f, CompressionBasis(f.group_ptr(), radius));
}

/// Parameters of the finite-dimensional approximation of K: every member
/// lies within eps of some lambda(phi_{n,t} f), and those live in the
/// span of B_n inside a ball of radius `radius_bound`.
struct EpsNetParams {
  double t = 0.0;
  std::uint64_t n = 0;
  double tail = 0.0;  // sup_{l>n} exp(-t l)(1+l)^k
  double radius_bound = 0.0;
  std::optional<std::size_t> dimension;  // |B_n|, when enumerated
};

/// t = eps/2 handles |lambda(phi_t f) - lambda(f)| <= t |lambda(l f)| <= t;
/// n makes the truncation error C tail |lambda(f)| at most eps/2.
inline EpsNetParams epsnet_params(double eps, const RdConstants& rd) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be > 0");
  rd.validate();
  EpsNetParams p;
  p.t = eps / 2.0;
  p.n = minimal_truncation(p.t, rd, eps / 2.0);
  p.tail = tail_sup(p.t, rd.k, p.n);
  p.radius_bound = rd.C * (p.tail + 1.0);
  return p;
}

/// Same, with |B_n| enumerated in `group`.
inline EpsNetParams epsnet_params(const CoxeterGroup& group, double eps, const RdConstants& rd) {
  auto p = epsnet_params(eps, rd);
  try {
    p.dimension = group.ball(static_cast<std::size_t>(p.n)).elements.size();
  } catch (const CapExceeded& e) {
    throw CapExceeded(std::string(e.what()) + " (required n = " + std::to_string(p.n) + ")");
  }
  return p;
}

struct EpsNetReport {
  EpsNetParams params;
  KVerdict membership;
  GroupFunction approximant;     // phi_{n,t} . f
  double analytic_bound = 0.0;   // t upper|l f| + C tail upper|f|
  double empirical = 0.0;        // |P_N lambda(f - approximant) P_N|
  double tail_distance = 0.0;    // |P_N lambda(phi_t f - phi_{n,t} f) P_N|
  double tail_bound = 0.0;       // C tail upper|f|
  bool empirical_within_bound = false;
  bool bound_within_eps = false;  // vacuous unless CERTIFIED_IN
};

inline EpsNetReport epsnet_verify(const GroupFunction& f, double eps, const RdConstants& rd,
                                  std::size_t radius) {
  const CompressionBasis basis(f.group_ptr(), radius);
  auto membership = k_membership(f, basis);
  if (membership.status == KStatus::CertifiedOut)
    throw DomainError("epsnet_verify: input is certified outside K");
  const auto p = epsnet_params(eps, rd);
  const HeatParams truncated{p.t, static_cast<std::size_t>(p.n)};
  EpsNetReport r{p, membership, heat_apply(truncated, f)};
  r.tail_bound = rd.C * p.tail * membership.norm.upper;
  r.analytic_bound = p.t * membership.length_norm.upper + r.tail_bound;
  r.empirical = compressed_norm(compression(f - r.approximant, basis));
  r.tail_distance =
      compressed_norm(compression(heat_apply(HeatParams{p.t, std::nullopt}, f) - r.approximant, basis));
  r.empirical_within_bound = r.empirical <= r.analytic_bound + 1e-12;
  r.bound_within_eps = membership.status != KStatus::CertifiedIn || r.analytic_bound <= eps;
  return r;
}

/// h = m k + c delta_e with k in K.
struct Decomposition {
  std::uint64_t m = 0;
  Complex c{};
  GroupFunction k_part;
  KVerdict certificate;
  bool exact = false;  // m k + c delta_e == h coefficientwise
};

/// c = h(e) and m = ceil(max(upper|lambda(r)|, upper|lambda(l r)|)) for
/// r = h - c delta_e. If dividing by that m does not reconstruct r bit for
/// bit, or rounding pushes k over the K bounds, m is raised to the next
/// power of two, where both hold.
inline Decomposition decompose(const GroupFunction& h, std::size_t radius) {
  const CompressionBasis basis(h.group_ptr(), radius);
  const auto& G = h.group();
  const Complex c = h(G.identity());
  GroupFunction rest = h - GroupFunction::delta(h.group_ptr(), G.identity(), c);

  auto attempt = [&](std::uint64_t m) -> std::optional<Decomposition> {
    Decomposition d{m, c, GroupFunction(h.group_ptr()), {}, false};
    const double md = static_cast<double>(m);
    for (const auto& [g, v] : rest.terms()) d.k_part.add(g, v / md);
    GroupFunction rebuilt(h.group_ptr());
    for (const auto& [g, v] : d.k_part.terms()) rebuilt.add(g, v * md);
    rebuilt.add(G.identity(), c);
    d.exact = rebuilt == h;
    d.certificate = k_membership(d.k_part, basis);
    if (!d.exact || d.certificate.status != KStatus::CertifiedIn) return std::nullopt;
    return d;
  };

  if (rest.is_zero()) {
    Decomposition d{0, c, GroupFunction(h.group_ptr()), {}, false};
    d.certificate = k_membership(d.k_part, basis);
    d.exact = true;
    return d;
  }
  const double need = std::max(norms(rest, 0).l1, norms(pointwise_mul(LengthWeight{}, rest), 0).l1);
  const auto m0 = static_cast<std::uint64_t>(std::max(1.0, std::ceil(need)));
  if (auto d = attempt(m0)) return *d;
  std::uint64_t m = 1;
  while (m < m0) m *= 2;
  if (m == m0) m *= 2;
  for (int i = 0; i < 64; ++i, m *= 2)
    if (auto d = attempt(m)) return *d;
  throw InvariantViolation("decompose: no admissible multiplier found");
}

/// max over samples of lower|lambda(f)| / sobolev_k(f): a lower bound on
/// the best rapid-decay constant C for exponent k.
inline double rd_estimate(const std::vector<GroupFunction>& samples, unsigned k,
                          std::size_t radius) {
  if (samples.empty()) throw DomainError("rd_estimate needs at least one sample");
  double best = 0.0;
  std::optional<CompressionBasis> basis;
  for (const auto& f : samples) {
    if (f.is_zero()) continue;
    if (!basis || !(basis->group_ptr() == f.group_ptr() ||
                    basis->group_ptr()->matrix() == f.group().matrix()))
      basis.emplace(f.group_ptr(), radius);
    best = std::max(best, norm_interval(f, *basis).lower / norms(f, k).sobolev);
  }
  return best;
}

}  // namespace coxnorm
