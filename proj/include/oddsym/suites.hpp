#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "oddsym/decomposition.hpp"
#include "oddsym/errors.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/generate.hpp"
#include "oddsym/group.hpp"
#include "oddsym/io.hpp"
#include "oddsym/oracle.hpp"
#include "oddsym/symbol.hpp"

// Seeded property suites shared by the command-line runner and the
// acceptance tests.  Each suite draws its cases deterministically from the
// master seed, so a failure report pins down an exact reproducer.

namespace oddsym {

struct SuiteFailure {
  int case_index = 0;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_seconds = 0.0;

  bool ok() const { return failures.empty(); }
};

inline Json report_to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.name;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  Json f = Json::array();
  for (const auto& x : r.failures) f.push_back({{"case", x.case_index}, {"detail", x.detail}});
  j["failures"] = f;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

// Everything except the wall time; two runs with the same seed must agree on
// this string exactly.
inline std::string report_signature(const SuiteReport& r) {
  Json j = report_to_json(r);
  j.erase("wall_seconds");
  return j.dump();
}

namespace detail {

inline std::uint64_t case_seed(std::uint64_t seed, int i) {
  return seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1);
}

// componentwise equality on degrees >= floor
inline bool equal_above(const FormalSymbol& a, const FormalSymbol& b, int floor) {
  const int top = std::max(a.order(), b.order());
  for (int d = floor; d <= top; ++d)
    if (!(a.component(d) == b.component(d))) return false;
  return true;
}

// Relative closeness with an absolute fallback once both values are tiny.
inline bool close(Complex a, Complex b, double tol) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= (scale > 0.05 ? tol * scale : tol);
}

template <typename Fn>
SuiteReport run_cases(const char* name, std::uint64_t seed, int cases, Fn&& body) {
  SuiteReport r;
  r.name = name;
  r.seed = seed;
  r.cases = cases;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < cases; ++i) {
    try {
      body(i, case_seed(seed, i), r);
    } catch (const std::exception& e) {
      r.failures.push_back({i, std::string("exception: ") + e.what()});
    }
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// --- the suites -----------------------------------------------------------

inline SuiteReport suite_residue_odd(std::uint64_t seed, int cases) {
  return run_cases("residue-odd", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    for (int n : {1, 3}) {
      Rng rng(cs + n);
      int order = (n == 3 ? -3 : -1) + rng.below(5);
      int floor = order - rng.range(2, 5);
      FormalSymbol s =
          gen_random_symbol(cs + n, n, order, floor, 2, n == 3 ? 3 : 2, true);
      if (!is_odd_class(s)) {
        r.failures.push_back({i, "generator parity violated: " + symbol_to_json(s).dump()});
        return;
      }
      FunctionalValue res = residue(s);
      if (!res.value.is_zero())
        r.failures.push_back({i, "residue " + res.value.to_string() + " on " +
                                     symbol_to_json(s).dump()});
    }
  });
}

inline SuiteReport suite_residue_commutator(std::uint64_t seed, int cases) {
  return run_cases("residue-commutator", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    const int n = (i % 2 == 0) ? 3 : 1;
    Rng rng(cs);
    int a1 = rng.range(-1, 1), a2 = rng.range(-1, 1);
    int f = (n == 3) ? -4 : -3;
    FormalSymbol a = gen_random_symbol(cs + 1, n, a1, f, 2, n == 3 ? 2 : 1, false);
    FormalSymbol b = gen_random_symbol(cs + 2, n, a2, f, 2, n == 3 ? 2 : 1, false);
    FormalSymbol c = commutator(a, b);
    FunctionalValue res = residue(c);
    if (!res.value.is_zero())
      r.failures.push_back({i, "residue of commutator " + res.value.to_string() + " on " +
                                   symbol_to_json(a).dump() + " and " + symbol_to_json(b).dump()});
  });
}

inline SuiteReport suite_stokes(std::uint64_t seed, int cases) {
  return run_cases("stokes", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int order = -2 + rng.below(5);
    int floor = std::min(order, -2) - rng.below(3);
    FormalSymbol tau = gen_random_symbol(cs, 3, order, floor, 2, 3, true);
    for (int axis = 0; axis < 3; ++axis) {
      TrigPoly b = stokes_boundary(tau, axis);
      if (!b.is_zero()) {
        r.failures.push_back({i, "nonzero boundary term on axis " + std::to_string(axis) +
                                     ": " + symbol_to_json(tau).dump()});
        return;
      }
    }
  });
}

inline SuiteReport suite_decomposition(std::uint64_t seed, int cases) {
  return run_cases("decomposition", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int order = -4 + rng.below(8);  // -4..3
    int floor = std::max(-9, order - rng.range(2, 5));
    FormalSymbol s = gen_random_symbol(cs, 3, order, floor, 2, 3, true);
    DerivativeDecomposition dec = decompose(s);
    for (const auto& tau : dec.tau)
      if (!is_odd_class(tau)) {
        r.failures.push_back({i, "non-odd-class tau for " + symbol_to_json(s).dump()});
        return;
      }
    FormalSymbol rec = recompose(dec);
    if (!components_equal(rec, s))
      r.failures.push_back({i, "recomposition mismatch for " + symbol_to_json(s).dump()});
  });
}

inline SuiteReport suite_odd_closure(std::uint64_t seed, int cases) {
  return run_cases("odd-closure", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    const int n = (i % 2 == 0) ? 3 : 1;
    Rng rng(cs);
    int a1 = rng.range(-2, 1), a2 = rng.range(-2, 1);
    FormalSymbol a = gen_random_symbol(cs + 1, n, a1, a1 - rng.range(2, 4), 2, 3, true);
    FormalSymbol b = gen_random_symbol(cs + 2, n, a2, a2 - rng.range(2, 4), 2, 3, true);
    FormalSymbol p = star(a, b);
    if (!is_odd_class(p))
      r.failures.push_back({i, "product left the odd class: " + symbol_to_json(a).dump() +
                                   " and " + symbol_to_json(b).dump()});
  });
}

inline SuiteReport suite_parametrix(std::uint64_t seed, int cases) {
  return run_cases("parametrix", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int a = 2 * rng.range(-1, 1);  // -2, 0, 2
    FormalSymbol s = gen_random_symbol(cs, 3, a, a - 3, 1, 2, true);
    // force an invertible leading part: u(x) |xi|^a with monomial-unit u
    Freq k{rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1)};
    HomogeneousComponent lead =
        HomogeneousComponent::radial(3, a, TrigPoly::mode(3, k, random_scalar(rng)));
    s.set_component(a, lead);
    FormalSymbol b = parametrix(s, -a - 4);
    if (!is_odd_class(b)) {
      r.failures.push_back({i, "parametrix left the odd class: " + symbol_to_json(s).dump()});
      return;
    }
    FormalSymbol prod = star(s, b);
    if (!equal_above(prod, FormalSymbol::one(3), prod.floor()))
      r.failures.push_back({i, "star(symbol, parametrix) differs from 1: " +
                                   symbol_to_json(s).dump()});
  });
}

inline SuiteReport suite_cutoff_convergent(std::uint64_t seed, int cases) {
  return run_cases("cutoff-convergent", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int order = -4 - rng.below(3);
    int floor = order - rng.range(1, 3);
    Point x{2 * M_PI * rng.below(997) / 997.0, 2 * M_PI * rng.below(997) / 997.0,
            2 * M_PI * rng.below(997) / 997.0};
    FormalSymbol s = gen_random_symbol(cs, 3, order, floor, 1, 2, false);
    Complex exact = eval_trig(cutoff_integral(s), x);
    for (int attempt = 1; attempt < 50 && std::abs(exact) <= 0.05; ++attempt) {
      s = gen_random_symbol(cs + 7919u * attempt, 3, order, floor, 1, 2, false);
      exact = eval_trig(cutoff_integral(s), x);
    }
    SphereRule rule = sphere_rule(3, 12);
    std::vector<double> radii;
    for (int j = 0; j < 14; ++j) radii.push_back(2.0 * std::pow(1.22, j));
    RadialFit fit = radial_fp(s, x, radii, rule);
    if (!close(fit.finite_part, exact, 1e-8))
      r.failures.push_back({i, "extrapolated annulus integral mismatch: fit " +
                                   std::to_string(fit.finite_part.real()) + "+" +
                                   std::to_string(fit.finite_part.imag()) + "i on " +
                                   symbol_to_json(s).dump()});
  });
}

inline SuiteReport suite_radial_fit(std::uint64_t seed, int cases) {
  return run_cases("radial-fit", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int order = -2 + rng.below(4);
    int floor = -4 - rng.below(2);
    Point x{2 * M_PI * rng.below(997) / 997.0, 2 * M_PI * rng.below(997) / 997.0,
            2 * M_PI * rng.below(997) / 997.0};
    FormalSymbol s = gen_random_symbol(cs, 3, order, floor, 1, 2, false);
    Complex exact_fp = eval_trig(cutoff_integral(s), x);
    Complex exact_log = eval_trig(sphere_integral(s.component(-3)), x);
    for (int attempt = 1;
         attempt < 50 && (std::abs(exact_fp) <= 0.05 || std::abs(exact_log) <= 0.05); ++attempt) {
      s = gen_random_symbol(cs + 7919u * attempt, 3, order, floor, 1, 2, false);
      exact_fp = eval_trig(cutoff_integral(s), x);
      exact_log = eval_trig(sphere_integral(s.component(-3)), x);
    }
    SphereRule rule = sphere_rule(3, 12);
    std::vector<double> radii;
    for (int j = 0; j < 14; ++j) radii.push_back(2.0 * std::pow(1.22, j));
    RadialFit fit = radial_fp(s, x, radii, rule);
    if (!close(fit.finite_part, exact_fp, 1e-6))
      r.failures.push_back({i, "finite part mismatch on " + symbol_to_json(s).dump()});
    else if (!close(fit.log_coefficient, exact_log, 1e-6))
      r.failures.push_back({i, "log coefficient mismatch on " + symbol_to_json(s).dump()});
  });
}

inline SuiteReport suite_four_bracket(std::uint64_t seed, int cases) {
  return run_cases("four-bracket", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int aa = rng.range(-2, 0), ab = rng.range(-2, 0);
    int a = rng.chance(1, 2) ? rng.range(1, 2) : -rng.range(1, 2);
    FormalSymbol A = gen_random_symbol(cs + 1, 3, aa, aa - 2, 1, 2, false);
    FormalSymbol B = gen_random_symbol(cs + 2, 3, ab, ab - 2, 1, 2, false);
    FormalSymbol La = FormalSymbol::radial_power(3, a);
    FormalSymbol Lma = FormalSymbol::radial_power(3, -a);
    FormalSymbol t1 = commutator(star(A, La), star(Lma, B));
    FormalSymbol t2 = commutator(star(La, A), star(B, Lma));
    FormalSymbol t3 = commutator(star(star(A, B), Lma), La);
    FormalSymbol t4 = commutator(star(Lma, star(B, A)), La);
    FormalSymbol lhs = sym_add(sym_add(t1, t2), sym_add(t3, t4));
    FormalSymbol rhs = commutator(A, B) * ExactScalar(2);
    int f = std::max(lhs.floor(), rhs.floor());
    if (!equal_above(lhs, rhs, f))
      r.failures.push_back({i, "bracket sum differs from twice the commutator: " +
                                   symbol_to_json(A).dump() + " and " + symbol_to_json(B).dump()});
  });
}

inline SuiteReport suite_exp_log(std::uint64_t seed, int cases) {
  return run_cases("exp-log", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int n = (i % 2 == 0) ? 3 : 1;
    int order = -rng.range(1, 3);
    int floor = order - rng.range(1, 3);
    FormalSymbol A = gen_random_symbol(cs, n, order, floor, 1, 2, false);
    FormalSymbol back = log_symbol(exp_symbol(A));
    if (!components_equal(back, A))
      r.failures.push_back({i, "Log(Exp(A)) differs from A: " + symbol_to_json(A).dump()});
  });
}

inline SuiteReport suite_det_mult(std::uint64_t seed, int cases) {
  return run_cases("det-mult", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    int a = -rng.range(1, 2);
    FormalSymbol A = gen_random_symbol(cs + 1, 3, a, 2 * a, 1, 2, false);
    FormalSymbol B = gen_random_symbol(cs + 2, 3, a, 2 * a, 1, 2, false);
    RhoSpec rho = gen_random_rho(cs + 3, 3, a, 1, 2);
    GroupElement g1(A), g2(B);
    DeterminantResult d1 = determinant(g1, ExactScalar(1), ExactScalar(0), rho);
    DeterminantResult d2 = determinant(g2, ExactScalar(1), ExactScalar(0), rho);
    GroupElement g12(group_mul(g1, g2).base.with_floor(2 * a));
    DeterminantResult d12 = determinant(g12, ExactScalar(1), ExactScalar(0), rho);
    if (!(d12.exponent.value == d1.exponent.value + d2.exponent.value))
      r.failures.push_back({i, "leading determinant not multiplicative: " +
                                   symbol_to_json(A).dump() + " and " + symbol_to_json(B).dump()});
  });
}

inline SuiteReport suite_det_tr_mult(std::uint64_t seed, int cases) {
  return run_cases("det-tr-mult", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int n = (i % 2 == 0) ? 3 : 1;
    int a = -rng.range(1, 2);
    int fa = a - rng.range(1, 3), fb = a - rng.range(1, 3);
    int F = std::min(fa, fb);
    // x-independent symbols commute under composition
    FormalSymbol A = gen_random_symbol(cs + 1, n, a, fa, 0, 2, false).with_floor(F);
    FormalSymbol B = gen_random_symbol(cs + 2, n, a, fb, 0, 2, false).with_floor(F);
    RhoSpec rho = default_rho(n, a);
    GroupElement g1(A), g2(B);
    DeterminantResult d1 = determinant(g1, ExactScalar(0), ExactScalar(1), rho);
    DeterminantResult d2 = determinant(g2, ExactScalar(0), ExactScalar(1), rho);
    GroupElement g12(group_mul(g1, g2).base.with_floor(F));
    DeterminantResult d12 = determinant(g12, ExactScalar(0), ExactScalar(1), rho);
    if (!(d12.exponent.value == d1.exponent.value + d2.exponent.value))
      r.failures.push_back({i, "canonical-trace determinant not multiplicative: " +
                                   symbol_to_json(A).dump() + " and " + symbol_to_json(B).dump()});
  });
}

inline SuiteReport suite_det_family(std::uint64_t seed, int cases) {
  return run_cases("det-family", seed, cases, [](int i, std::uint64_t, SuiteReport& r) {
    Rational alpha(i % 2 == 0 ? i / 2 + 1 : -(i / 2 + 1), i % 3 + 1);
    FormalSymbol s(3, -4, -4, true);
    s.set_component(-4, HomogeneousComponent::radial(3, -4,
                                                     TrigPoly::constant(3, ExactScalar(alpha))));
    RhoSpec rho = default_rho(3, -4);
    DeterminantResult det = determinant(GroupElement(s), ExactScalar(0), ExactScalar(1), rho);
    ExactScalar expected = ExactScalar::term(GaussRational(alpha * 4), 1);  // 4*pi*alpha
    if (!(det.exponent.value == expected)) {
      r.failures.push_back({i, "exponent " + det.exponent.value.to_string() + " expected " +
                                   expected.to_string()});
      return;
    }
    double want = std::exp(4.0 * M_PI * alpha.convert_to<double>());
    if (std::abs(det.value - Complex(want)) > 1e-9 * std::abs(want))
      r.failures.push_back({i, "float value drifted from exp(4 pi alpha)"});
  });
}

inline SuiteReport suite_path_endpoint(std::uint64_t seed, int cases) {
  return run_cases("path-endpoint", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int n = (i % 2 == 0) ? 3 : 1;
    int a = -rng.range(1, 2);
    int f = 2 * a - rng.below(2);
    FormalSymbol A = gen_random_symbol(cs, n, a, f, 1, 2, false);
    PolynomialPath path{{FormalSymbol(n, a, f, true), A}};
    RhoSpec rho = gen_random_rho(cs + 1, n, a, 1, n == 1 ? 1 : 2);
    PathDeterminantResult pd = path_determinant(path, ExactScalar(1), ExactScalar(0), rho);
    DeterminantResult direct = determinant(path_endpoint(path), ExactScalar(1), ExactScalar(0), rho);
    if (!(pd.result.exponent.value == direct.exponent.value)) {
      r.failures.push_back({i, "path exponent " + pd.result.exponent.value.to_string() +
                                   " differs from endpoint " + direct.exponent.value.to_string() +
                                   " for " + symbol_to_json(A).dump()});
      return;
    }
    // the constant integrand coefficient is the derivative at the identity
    ExactScalar at_identity = leading_trace(A, rho).value;
    if (pd.integrand_coefficients.empty() ||
        !(pd.integrand_coefficients.front() == at_identity))
      r.failures.push_back({i, "integrand constant term is not lambda(velocity) for " +
                                   symbol_to_json(A).dump()});
  });
}

inline SuiteReport suite_path_independence(std::uint64_t seed, int cases) {
  return run_cases("path-independence", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int n = (i % 2 == 0) ? 3 : 1;
    int a = -rng.range(1, 2);
    FormalSymbol A = gen_random_symbol(cs + 1, n, a, 2 * a, 1, 2, false);
    FormalSymbol B = gen_random_symbol(cs + 2, n, a, 2 * a, 1, 2, false);
    PolynomialPath quadratic{{FormalSymbol(n, a, 2 * a, true), A, B}};
    PolynomialPath straight{{FormalSymbol(n, a, 2 * a, true), sym_add(A, B)}};
    RhoSpec rho = gen_random_rho(cs + 3, n, a, 1, n == 1 ? 1 : 2);
    PathDeterminantResult p1 = path_determinant(quadratic, ExactScalar(1), ExactScalar(0), rho);
    PathDeterminantResult p2 = path_determinant(straight, ExactScalar(1), ExactScalar(0), rho);
    if (!(p1.result.exponent.value == p2.result.exponent.value))
      r.failures.push_back({i, "paths with equal endpoints disagree: " +
                                   p1.result.exponent.value.to_string() + " vs " +
                                   p2.result.exponent.value.to_string() + " for " +
                                   symbol_to_json(A).dump() + " and " + symbol_to_json(B).dump()});
  });
}

inline SuiteReport suite_fd_check(std::uint64_t seed, int cases) {
  return run_cases("fd-check", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    Rng rng(cs);
    const int n = (i % 2 == 0) ? 3 : 1;
    int a = -rng.range(1, 2);
    FormalSymbol u = gen_random_symbol(cs, n, a, a - rng.range(1, 2), 1, 1, false);
    RhoSpec rho = default_rho(n, a);
    FdCheck fd = fd_derivative_check(u, ExactScalar(1), ExactScalar(1), rho, Rational(1, 10000));
    if (std::abs(fd.numeric - fd.exact) > 1e-6 * std::max(1.0, std::abs(fd.exact)))
      r.failures.push_back({i, "finite difference drifted from lambda(u): numeric " +
                                   std::to_string(fd.numeric.real()) + "+" +
                                   std::to_string(fd.numeric.imag()) + "i on " +
                                   symbol_to_json(u).dump()});
  });
}

inline SuiteReport suite_mode_trace(std::uint64_t seed, int cases) {
  return run_cases("mode-trace", seed, cases, [](int i, std::uint64_t cs, SuiteReport& r) {
    FormalSymbol a = gen_random_symbol(cs + 1, 1, -1, -4, 2, 1, false);
    FormalSymbol b = gen_random_symbol(cs + 2, 1, -2, -5, 2, 1, false);
    double prev = 0.0;
    double last = 0.0;
    bool first = true;
    for (int K : {32, 64, 128}) {
      ModeMatrix ma = mode_matrix(a, K);
      ModeMatrix mb = mode_matrix(b, K);
      last = std::abs(numeric_commutator_trace(ma, mb));
      if (!first && last > prev + 1e-12) {
        r.failures.push_back({i, "commutator trace grew with the cutoff: " +
                                     symbol_to_json(a).dump() + " and " + symbol_to_json(b).dump()});
        return;
      }
      prev = last;
      first = false;
    }
    if (last >= 1e-3)
      r.failures.push_back({i, "commutator trace too large at K=128: " + std::to_string(last)});
  });
}

}  // namespace detail

struct SuiteInfo {
  const char* name;
  int default_cases;
  SuiteReport (*fn)(std::uint64_t, int);
};

inline const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> suites = {
      {"residue-odd", 500, detail::suite_residue_odd},
      {"residue-commutator", 100, detail::suite_residue_commutator},
      {"stokes", 200, detail::suite_stokes},
      {"decomposition", 200, detail::suite_decomposition},
      {"odd-closure", 200, detail::suite_odd_closure},
      {"parametrix", 50, detail::suite_parametrix},
      {"cutoff-convergent", 50, detail::suite_cutoff_convergent},
      {"radial-fit", 50, detail::suite_radial_fit},
      {"four-bracket", 100, detail::suite_four_bracket},
      {"exp-log", 100, detail::suite_exp_log},
      {"det-mult", 100, detail::suite_det_mult},
      {"det-tr-mult", 100, detail::suite_det_tr_mult},
      {"det-family", 10, detail::suite_det_family},
      {"path-endpoint", 100, detail::suite_path_endpoint},
      {"path-independence", 50, detail::suite_path_independence},
      {"fd-check", 20, detail::suite_fd_check},
      {"mode-trace", 20, detail::suite_mode_trace},
  };
  return suites;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, int cases = -1) {
  for (const auto& s : suite_registry())
    if (name == s.name) return s.fn(seed, cases > 0 ? cases : s.default_cases);
  throw precondition_error("unknown suite: " + name);
}

}  // namespace oddsym
