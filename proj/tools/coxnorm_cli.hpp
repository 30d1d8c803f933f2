#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxnorm/coxnorm.hpp"

namespace coxnorm::cli {

inline std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline const char* boolean(bool b) { return b ? "true" : "false"; }

/// Flag values shared by all subcommands; each subcommand registers the
/// subset it understands.
struct Options {
  std::string group_path;
  std::vector<std::string> fn_paths;
  std::vector<std::string> words;
  std::size_t radius = 0;
  double t = 0.0;
  double eps = 0.0;
  double C = 1.0;
  unsigned k = 2;
  std::uint64_t m = 1;
  std::optional<std::size_t> truncation;
  std::string mode;
};

class Runner {
public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"coxnorm: Coxeter group arithmetic and certified norms in the reduced group "
                 "C*-algebra"};
    app.require_subcommand(1);
    register_commands(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, err_, err_);
      return 1;
    }

    try {
      return action_();
    } catch (const InvariantViolation& e) {
      err_ << "invariant violation: " << e.what() << "\n";
      return 2;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return 1;
    }
  }

private:
  using Action = std::function<int()>;

  CLI::App* command(CLI::App& app, const std::string& name, const std::string& help, Action act) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([this, act] { action_ = act; });
    return sub;
  }

  void add_group(CLI::App* sub) {
    sub->add_option("--group", opt_.group_path, "group file (`rank r` + `m i j v` lines)")
        ->required();
    sub->add_option("--mode", opt_.mode, "scalar mode of the geometric representation")
        ->check(CLI::IsMember({"exact", "float"}));
  }
  void add_fn(CLI::App* sub, std::size_t count = 1) {
    auto* o = sub->add_option("--fn", opt_.fn_paths, "function file (`<word> <re> <im>` lines)")
                  ->required();
    if (count) o->expected(static_cast<int>(count));
  }
  void add_words(CLI::App* sub, int count) {
    sub->add_option("--word", opt_.words, "word: `e` or dash-separated generator indices")
        ->required()
        ->expected(count);
  }
  void add_radius(CLI::App* sub) {
    sub->add_option("-N", opt_.radius, "compression / ball radius")->required();
  }
  void add_t(CLI::App* sub) {
    sub->add_option("--t", opt_.t, "heat parameter t > 0")->required();
  }
  void add_rd(CLI::App* sub) {
    sub->add_option("--C", opt_.C, "assumed rapid-decay constant C")->capture_default_str();
    sub->add_option("--k", opt_.k, "assumed rapid-decay exponent k")->capture_default_str();
  }

  GroupPtr group() const {
    std::ifstream in(opt_.group_path);
    if (!in) throw ParseError("cannot open group file " + opt_.group_path);
    auto matrix = parse_coxeter_matrix(in);
    std::optional<ScalarMode> mode;
    if (opt_.mode == "exact") mode = ScalarMode::Exact;
    if (opt_.mode == "float") mode = ScalarMode::Float;
    return make_group(std::move(matrix), mode);
  }

  GroupFunction function(const GroupPtr& g, std::size_t i = 0) const {
    std::ifstream in(opt_.fn_paths.at(i));
    if (!in) throw ParseError("cannot open function file " + opt_.fn_paths.at(i));
    return parse_group_function(in, g);
  }

  GroupElement element(const GroupPtr& g, std::size_t i = 0) const {
    return g->reduce(parse_word(opt_.words.at(i), g->rank()));
  }

  void print_function(const GroupFunction& f) {
    for (const auto& [g, c] : f.terms())
      out_ << format_element(g) << ' ' << real(c.real()) << ' ' << real(c.imag()) << '\n';
  }

  void print_interval(const std::string& prefix, const NormInterval& n) {
    out_ << prefix << "_lower = " << real(n.lower) << '\n'
         << prefix << "_upper = " << real(n.upper) << '\n';
  }

  void print_assumption() {
    out_ << "assumed_C = " << real(opt_.C) << '\n'
         << "assumed_k = " << opt_.k << '\n'
         << "note = C and k are assumptions, not known rapid-decay constants\n";
  }

  void register_commands(CLI::App& app) {
    auto* sub = command(app, "reduce", "ShortLex normal form of a word: the element g and l(g)",
                        [this] {
                          auto g = group();
                          auto e = element(g);
                          out_ << "nf = " << format_element(e) << "\nlength = " << e.length()
                               << '\n';
                          return 0;
                        });
    add_group(sub);
    add_words(sub, 1);

    sub = command(app, "mult", "group product g h in normal form", [this] {
      auto g = group();
      auto p = g->multiply(element(g, 0), element(g, 1));
      out_ << "product = " << format_element(p) << "\nlength = " << p.length() << '\n';
      return 0;
    });
    add_group(sub);
    add_words(sub, 2);

    sub = command(app, "inv", "inverse g^-1 in normal form", [this] {
      auto g = group();
      auto p = g->inverse(element(g));
      out_ << "inverse = " << format_element(p) << "\nlength = " << p.length() << '\n';
      return 0;
    });
    add_group(sub);
    add_words(sub, 1);

    sub = command(app, "ball", "the ball B_N of the word metric in ShortLex order", [this] {
      auto g = group();
      auto b = g->ball(opt_.radius);
      for (const auto& e : b.elements) out_ << format_element(e) << '\n';
      out_ << "sizes = ";
      for (std::size_t i = 0; i < b.cumulative_sizes.size(); ++i)
        out_ << (i ? "," : "") << b.cumulative_sizes[i];
      out_ << '\n';
      return 0;
    });
    add_group(sub);
    add_radius(sub);

    sub = command(app, "invset",
                  "inversion set N(g): positive roots made negative by g^-1 (walls between C "
                  "and gC)",
                  [this] {
                    auto g = group();
                    auto e = element(g);
                    auto roots = g->inversion_set_text(e);
                    out_ << "mode = " << to_string(g->mode()) << '\n';
                    for (const auto& r : roots) out_ << "root = " << r << '\n';
                    out_ << "count = " << roots.size() << "\nlength = " << e.length() << '\n';
                    return 0;
                  });
    add_group(sub);
    add_words(sub, 1);

    sub = command(app, "crossdist",
                  "number of walls between gC and hC, |N(g) ^ N(h)|, checked against l(g^-1 h)",
                  [this] {
                    auto g = group();
                    auto d = g->crossing_distance(element(g, 0), element(g, 1));
                    out_ << "distance = " << d << '\n';
                    return 0;
                  });
    add_group(sub);
    add_words(sub, 2);

    sub = command(app, "conv", "convolution f * h, the symbol of lambda(f) lambda(h)", [this] {
      auto g = group();
      print_function(convolve(function(g, 0), function(g, 1)));
      return 0;
    });
    add_group(sub);
    add_fn(sub, 2);

    sub = command(app, "adjoint", "involution f*(g) = conj f(g^-1), the symbol of lambda(f)*",
                  [this] {
                    auto g = group();
                    print_function(adjoint(function(g)));
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);

    sub = command(app, "norms",
                  "l1, l2 and the rapid-decay weighted norm (sum |f|^2 (1+l)^{2k})^{1/2}",
                  [this] {
                    auto g = group();
                    auto n = norms(function(g), opt_.k);
                    out_ << "l1 = " << real(n.l1) << "\nl2 = " << real(n.l2) << "\nk = " << opt_.k
                         << "\nsobolev = " << real(n.sobolev) << '\n';
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    sub->add_option("--k", opt_.k, "weight exponent k")->capture_default_str();

    sub = command(app, "compress",
                  "compression P_N lambda(f) P_N; rows printed as `re im` pairs", [this] {
                    auto g = group();
                    auto c = compression(function(g), opt_.radius);
                    out_ << "dimension = " << c.basis.size() << "\nbasis =";
                    for (const auto& e : c.basis) out_ << ' ' << format_element(e);
                    out_ << '\n';
                    for (std::size_t i = 0; i < c.entries.rows(); ++i) {
                      for (std::size_t j = 0; j < c.entries.cols(); ++j)
                        out_ << (j ? " " : "") << real(c.entries(i, j).real()) << ' '
                             << real(c.entries(i, j).imag());
                      out_ << '\n';
                    }
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_radius(sub);

    sub = command(app, "opnorm",
                  "certified bracket for the operator norm of lambda(f): "
                  "max(l2, compressed) <= |lambda(f)| <= l1",
                  [this] {
                    auto g = group();
                    auto n = norm_interval(function(g), opt_.radius);
                    out_ << "lower = " << real(n.lower) << "\nupper = " << real(n.upper)
                         << "\nl2 = " << real(n.l2) << "\ncompressed = " << real(n.compressed)
                         << "\nradius = " << n.radius << "\niterations = " << n.iterations << '\n';
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_radius(sub);

    sub = command(app, "oracle-norm",
                  "exact |lambda(f)| on a finite group from the full regular representation",
                  [this] {
                    auto g = group();
                    auto f = function(g);
                    out_ << "norm = " << real(exact_norm_finite_group(f))
                         << "\norder = " << finite_group_elements(*g).size() << '\n';
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);

    sub = command(app, "gram-psd",
                  "positive definiteness of phi_t = exp(-t l): min eigenvalue of "
                  "[exp(-t l(g^-1 h))] over B_N",
                  [this] {
                    auto g = group();
                    auto r = gram_psd(*g, opt_.t, opt_.radius);
                    out_ << "dimension = " << r.dimension
                         << "\nmin_eigenvalue = " << real(r.min_eigenvalue)
                         << "\nverdict = " << boolean(r.verdict) << '\n';
                    if (!r.verdict) throw InvariantViolation("Gram matrix is not PSD");
                    return 0;
                  });
    add_group(sub);
    add_t(sub);
    add_radius(sub);

    sub = command(app, "negdef",
                  "negative definiteness of the length kernel l(g^-1 h) on mean-zero vectors "
                  "over B_N",
                  [this] {
                    auto g = group();
                    auto r = negdef_check(*g, opt_.radius);
                    out_ << "dimension = " << r.dimension
                         << "\nmax_projected_eigenvalue = " << real(r.max_eigenvalue)
                         << "\nverdict = " << boolean(r.verdict) << '\n';
                    if (!r.verdict) throw InvariantViolation("length kernel is not negative definite");
                    return 0;
                  });
    add_group(sub);
    add_radius(sub);

    sub = command(app, "schur-check",
                  "contractivity of the multiplier phi_t on compressions: "
                  "|P lambda(phi_t f) P| <= |P lambda(f) P|",
                  [this] {
                    auto g = group();
                    auto r = schur_contraction_check(opt_.t, function(g), opt_.radius);
                    out_ << "lhs = " << real(r.lhs) << "\nrhs = " << real(r.rhs)
                         << "\nverdict = " << boolean(r.verdict) << '\n';
                    if (!r.verdict) throw InvariantViolation("multiplier is not contractive");
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_t(sub);
    add_radius(sub);

    sub = command(app, "heat",
                  "heat semigroup M_t(lambda(f)) = lambda(phi_t f), optionally truncated to "
                  "phi_{n,t}",
                  [this] {
                    auto g = group();
                    print_function(heat_apply(HeatParams{opt_.t, opt_.truncation}, function(g)));
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_t(sub);
    sub->add_option("--trunc", opt_.truncation, "truncation length n (phi_{n,t})");

    sub = command(app, "gen-check",
                  "generator D = -lambda(l .): |P ((M_t - 1)/t - D) lambda(f) P| against its "
                  "Taylor bound",
                  [this] {
                    auto g = group();
                    auto r = generator_check(function(g), opt_.t, opt_.radius);
                    out_ << "value = " << real(r.value) << "\nbound = " << real(r.bound)
                         << "\nwithin_bound = " << boolean(r.value <= r.bound + 1e-12) << '\n';
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_t(sub);
    add_radius(sub);

    sub = command(app, "psi",
                  "parameters (t, n) of the finitely supported approximate unit psi_m = "
                  "phi_{n,t}",
                  [this] {
                    auto p = psi_params(opt_.m, RdConstants{opt_.C, opt_.k});
                    out_ << "m = " << opt_.m << "\nt = " << real(p.t) << "\nn = " << *p.truncation
                         << "\ntail = " << real(tail_sup(p.t, opt_.k, *p.truncation)) << '\n';
                    print_assumption();
                    return 0;
                  });
    sub->add_option("--m", opt_.m, "index m >= 1")->required();
    add_rd(sub);

    sub = command(app, "k-member",
                  "membership of lambda(f) in K = {|lambda(f)| <= 1, |lambda(l f)| <= 1}",
                  [this] {
                    auto g = group();
                    auto v = k_membership(function(g), opt_.radius);
                    out_ << "status = " << to_string(v.status) << '\n';
                    print_interval("norm", v.norm);
                    print_interval("length_norm", v.length_norm);
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_radius(sub);

    sub = command(app, "epsnet",
                  "parameters (t, n, |B_n|, radius) of the finite-dimensional eps-approximation "
                  "of K",
                  [this] {
                    const RdConstants rd{opt_.C, opt_.k};
                    auto p = opt_.group_path.empty() ? epsnet_params(opt_.eps, rd)
                                                     : epsnet_params(*group(), opt_.eps, rd);
                    out_ << "eps = " << real(opt_.eps) << "\nt = " << real(p.t) << "\nn = " << p.n
                         << "\ntail = " << real(p.tail)
                         << "\nradius_bound = " << real(p.radius_bound) << '\n';
                    if (p.dimension) out_ << "dimension = " << *p.dimension << '\n';
                    print_assumption();
                    out_ << "net = parameters only; the net is the bounded part of span{delta_g : "
                            "l(g) <= n}\n";
                    return 0;
                  });
    sub->add_option("--eps", opt_.eps, "target distance eps > 0")->required();
    sub->add_option("--group", opt_.group_path, "group file; enables |B_n|");
    sub->add_option("--mode", opt_.mode)->check(CLI::IsMember({"exact", "float"}));
    add_rd(sub);

    sub = command(app, "epsnet-verify",
                  "distance from lambda(f) to its truncated heat approximant, analytic vs "
                  "compressed",
                  [this] {
                    auto g = group();
                    auto r = epsnet_verify(function(g), opt_.eps, RdConstants{opt_.C, opt_.k},
                                           opt_.radius);
                    out_ << "status = " << to_string(r.membership.status)
                         << "\nt = " << real(r.params.t) << "\nn = " << r.params.n
                         << "\nanalytic_bound = " << real(r.analytic_bound)
                         << "\nempirical_distance = " << real(r.empirical)
                         << "\ntail_distance = " << real(r.tail_distance)
                         << "\ntail_bound = " << real(r.tail_bound)
                         << "\nempirical_within_bound = " << boolean(r.empirical_within_bound)
                         << "\nbound_within_eps = " << boolean(r.bound_within_eps) << '\n';
                    print_assumption();
                    if (!r.empirical_within_bound || !r.bound_within_eps)
                      throw InvariantViolation("eps-net distance bound failed");
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    sub->add_option("--eps", opt_.eps, "target distance eps > 0")->required();
    add_rd(sub);
    add_radius(sub);

    sub = command(app, "decompose",
                  "h = m k + c delta_e with k in K (finitely supported h)", [this] {
                    auto g = group();
                    auto d = decompose(function(g), opt_.radius);
                    out_ << "m = " << d.m << "\nc_re = " << real(d.c.real())
                         << "\nc_im = " << real(d.c.imag())
                         << "\nstatus = " << to_string(d.certificate.status)
                         << "\nexact = " << boolean(d.exact) << "\nk_part:\n";
                    print_function(d.k_part);
                    return 0;
                  });
    add_group(sub);
    add_fn(sub);
    add_radius(sub);

    sub = command(app, "rd-estimate",
                  "lower bound on the rapid-decay constant C for exponent k from sample "
                  "functions",
                  [this] {
                    auto g = group();
                    std::vector<GroupFunction> samples;
                    for (std::size_t i = 0; i < opt_.fn_paths.size(); ++i)
                      samples.push_back(function(g, i));
                    out_ << "estimate = " << real(rd_estimate(samples, opt_.k, opt_.radius))
                         << "\nk = " << opt_.k << "\nsamples = " << samples.size() << '\n';
                    return 0;
                  });
    add_group(sub);
    add_fn(sub, 0);
    sub->add_option("--k", opt_.k, "weight exponent k")->capture_default_str();
    add_radius(sub);
  }

  std::ostream& out_;
  std::ostream& err_;
  Options opt_;
  Action action_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace coxnorm::cli
