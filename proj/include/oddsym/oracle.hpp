#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/group.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"
#include "oddsym/trigpoly.hpp"

// Floating-point cross-checks for the exact layer.  Everything here consumes
// exact objects and produces floats; nothing feeds back.

namespace oddsym {

using Point = std::array<double, 3>;
using Complex = std::complex<double>;

struct Quadrature1D {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre nodes by Newton iteration on the recurrence.
inline Quadrature1D gauss_legendre(int m) {
  if (m < 1) throw precondition_error("quadrature needs at least one node");
  Quadrature1D q;
  q.nodes.resize(m);
  q.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[m - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[m - 1 - i] = w;
  }
  return q;
}

// Quadrature rule on the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform azimuthal grid for S^2; the two points for S^0.  Exact for
// polynomial integrands of degree below the resolution.
struct SphereRule {
  int n = 3;
  std::vector<Point> points;
  std::vector<double> weights;
};

inline SphereRule sphere_rule(int n, int resolution) {
  check_dimension(n);
  SphereRule r;
  r.n = n;
  if (n == 1) {
    r.points = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
    r.weights = {1.0, 1.0};
    return r;
  }
  Quadrature1D gl = gauss_legendre(resolution);
  const int mphi = 2 * resolution + 1;
  for (int i = 0; i < resolution; ++i) {
    double c = gl.nodes[i];
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < mphi; ++j) {
      double phi = 2.0 * M_PI * j / mphi;
      r.points.push_back({s * std::cos(phi), s * std::sin(phi), c});
      r.weights.push_back(gl.weights[i] * 2.0 * M_PI / mphi);
    }
  }
  return r;
}

// Uniform tensor grid on the torus; the trapezoid rule on it integrates trig
// polynomials exactly as long as no frequency reaches the grid size.
struct TorusGrid {
  int n = 3;
  int size = 0;
  std::vector<Point> points;
  double weight = 0.0;
};

inline TorusGrid torus_grid(int n, int size) {
  check_dimension(n);
  if (size < 1) throw precondition_error("torus grid needs at least one node per axis");
  TorusGrid g;
  g.n = n;
  g.size = size;
  const double h = 2.0 * M_PI / size;
  if (n == 1) {
    for (int i = 0; i < size; ++i) g.points.push_back({h * i, 0.0, 0.0});
    g.weight = h;
  } else {
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        for (int k = 0; k < size; ++k) g.points.push_back({h * i, h * j, h * k});
    g.weight = h * h * h;
  }
  return g;
}

inline Complex eval_trig(const TrigPoly& p, const Point& x, int digits = 15) {
  Complex total = 0.0;
  for (const auto& [k, c] : p.coeffs()) {
    double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
    total += c.eval(digits) * std::exp(Complex(0.0, phase));
  }
  return total;
}

inline Complex eval_component(const HomogeneousComponent& c, const Point& x, const Point& xi,
                              int digits = 15) {
  double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  double r = std::sqrt(r2);
  Complex total = 0.0;
  for (const auto& [l, h] : c.layers()) {
    Complex layer = 0.0;
    for (const auto& [b, t] : h.monomials()) {
      double mono = 1.0;
      for (int j = 0; j < 3; ++j)
        for (int e = 0; e < b[j]; ++e) mono *= xi[j];
      layer += eval_trig(t, x, digits) * mono;
    }
    total += layer * std::pow(r, static_cast<double>(c.degree() - l));
  }
  return total;
}

// Value of the sharp-convention function at a point with |xi| >= 1.
inline Complex eval_symbol(const FormalSymbol& s, const Point& x, const Point& xi,
                           int digits = 15) {
  double norm = 0.0;
  for (int j = 0; j < s.dim(); ++j) norm += xi[j] * xi[j];
  for (int j = s.dim(); j < 3; ++j)
    if (xi[j] != 0.0) throw precondition_error("evaluation point beyond dimension");
  if (norm < 1.0 - 1e-12) throw precondition_error("evaluation point inside the unit ball");
  Complex total = 0.0;
  for (const auto& [d, c] : s.components()) total += eval_component(c, x, xi, digits);
  return total;
}

inline Complex sphere_integral_numeric(const HomogeneousComponent& c, const Point& x,
                                       const SphereRule& rule, int digits = 15) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i)
    total += eval_component(c, x, rule.points[i], digits) * rule.weights[i];
  return total;
}

inline Complex torus_integral_numeric(const TrigPoly& p, const TorusGrid& grid, int digits = 15) {
  Complex total = 0.0;
  for (const auto& x : grid.points) total += eval_trig(p, x, digits);
  return total * grid.weight;
}

// Numeric integral of r^s over [1, R], by composite Gauss-Legendre after the
// substitution r = e^t (so the integrand is a smooth exponential).
inline double radial_integral_numeric(int s, double R, const Quadrature1D& gl) {
  if (R <= 1.0) throw precondition_error("annulus outer radius must exceed 1");
  const double L = std::log(R);
  const int panels = std::max(2, static_cast<int>(std::ceil(L / 0.4)));
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double t0 = L * p / panels, t1 = L * (p + 1) / panels;
    double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      double t = mid + half * gl.nodes[i];
      total += gl.weights[i] * half * std::exp((s + 1.0) * t);
    }
  }
  return total;
}

// Integral of the sharp function over the annulus 1 <= |xi| <= R at fixed x.
// Homogeneity splits each component into (numeric radial) x (numeric sphere);
// both factors stay quadrature-based.
inline Complex annulus_integral_numeric(const FormalSymbol& s, const Point& x, double R,
                                        const SphereRule& rule, int digits = 15) {
  Quadrature1D gl = gauss_legendre(24);
  Complex total = 0.0;
  for (const auto& [d, c] : s.components())
    total += sphere_integral_numeric(c, x, rule, digits) *
             radial_integral_numeric(d + s.dim() - 1, R, gl);
  return total;
}

struct RadialFit {
  std::map<int, Complex> power_coefficients;  // keyed by the exponent of R
  Complex log_coefficient;
  Complex finite_part;
};

namespace detail {

// Householder least squares with a crude condition estimate from the R
// diagonal.  Columns should be pre-scaled by the caller.
inline std::vector<Complex> householder_solve(std::vector<std::vector<double>>& a,
                                              std::vector<Complex>& b, double max_condition) {
  const std::size_t rows = a.size(), cols = a.front().size();
  std::vector<double> diag(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double norm = 0.0;
    for (std::size_t r = c; r < rows; ++r) norm += a[r][c] * a[r][c];
    norm = std::sqrt(norm);
    double alpha = a[c][c] > 0 ? -norm : norm;
    diag[c] = alpha;
    double vhead = a[c][c] - alpha;
    double vnorm2 = vhead * vhead;
    for (std::size_t r = c + 1; r < rows; ++r) vnorm2 += a[r][c] * a[r][c];
    if (vnorm2 == 0.0) throw precondition_error("condition-number error: degenerate fit basis");
    a[c][c] = vhead;
    for (std::size_t j = c + 1; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t r = c; r < rows; ++r) dot += a[r][c] * a[r][j];
      double f = 2.0 * dot / vnorm2;
      for (std::size_t r = c; r < rows; ++r) a[r][j] -= f * a[r][c];
    }
    Complex dotb = 0.0;
    for (std::size_t r = c; r < rows; ++r) dotb += a[r][c] * b[r];
    Complex fb = 2.0 * dotb / vnorm2;
    for (std::size_t r = c; r < rows; ++r) b[r] -= fb * a[r][c];
  }
  double dmax = 0.0, dmin = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double v = std::abs(diag[c]);
    dmax = std::max(dmax, v);
    dmin = (c == 0) ? v : std::min(dmin, v);
  }
  if (dmin == 0.0 || dmax / dmin > max_condition)
    throw precondition_error("condition-number error: radial fit is ill-conditioned");
  std::vector<Complex> x(cols);
  for (int c = static_cast<int>(cols) - 1; c >= 0; --c) {
    Complex acc = b[c];
    for (std::size_t j = c + 1; j < cols; ++j) {
      // reconstruct R entries: after reflection, a[c][j] holds R(c,j)
      acc -= a[c][j] * x[j];
    }
    x[c] = acc / diag[c];
  }
  return x;
}

}  // namespace detail

// Fit the annulus integrals at the given radii against the basis
// {R^{d+n} (d+n != 0), log R, 1} with exponents read off the symbol's stored
// degrees, and report the fitted coefficients.  The constant column is the
// finite part.
inline RadialFit radial_fp(const FormalSymbol& s, const Point& x, const std::vector<double>& radii,
                           const SphereRule& rule, int digits = 15) {
  if (!s.exact()) throw precondition_error("radial fit needs an exact symbol");
  const int n = s.dim();
  std::vector<int> exponents;
  for (const auto& [d, c] : s.components())
    if (d + n != 0) exponents.push_back(d + n);
  const std::size_t unknowns = exponents.size() + 2;
  if (radii.size() < unknowns + 2)
    throw precondition_error("need at least two more radii than fit unknowns");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw precondition_error("radii must increase strictly");
  if (radii.front() <= 1.0) throw precondition_error("annulus outer radius must exceed 1");

  std::vector<std::vector<double>> a(radii.size(), std::vector<double>(unknowns));
  std::vector<Complex> b(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double R = radii[i];
    for (std::size_t j = 0; j < exponents.size(); ++j) a[i][j] = std::pow(R, exponents[j]);
    a[i][unknowns - 2] = std::log(R);
    a[i][unknowns - 1] = 1.0;
    b[i] = annulus_integral_numeric(s, x, R, rule, digits);
  }
  // column scaling for a sane condition number
  std::vector<double> scale(unknowns, 0.0);
  for (std::size_t j = 0; j < unknowns; ++j) {
    for (std::size_t i = 0; i < radii.size(); ++i) scale[j] = std::max(scale[j], std::abs(a[i][j]));
    if (scale[j] == 0.0) scale[j] = 1.0;
    for (std::size_t i = 0; i < radii.size(); ++i) a[i][j] /= scale[j];
  }
  std::vector<Complex> sol = detail::householder_solve(a, b, 1e12);
  RadialFit fit;
  for (std::size_t j = 0; j < exponents.size(); ++j)
    fit.power_coefficients[exponents[j]] = sol[j] / scale[j];
  fit.log_coefficient = sol[unknowns - 2] / scale[unknowns - 2];
  fit.finite_part = sol[unknowns - 1] / scale[unknowns - 1];
  return fit;
}

// Dense matrix model of the operator on Fourier modes of T^1, indexed by
// -K..K.  Column k holds the modes of sigma(., k) e^{ikx}; the sharp
// convention makes sigma(., 0) identically zero.
struct ModeMatrix {
  int K = 0;
  int band = 0;
  std::vector<Complex> entries;  // (2K+1)^2 row-major

  Complex at(int row, int col) const {
    return entries[static_cast<std::size_t>(row + K) * (2 * K + 1) + (col + K)];
  }
  Complex& at(int row, int col) {
    return entries[static_cast<std::size_t>(row + K) * (2 * K + 1) + (col + K)];
  }
};

namespace detail {

inline Rational integer_power(long long base, int e) {
  if (e >= 0) return Rational(boost::multiprecision::pow(Integer(base), static_cast<unsigned>(e)));
  if (base == 0) throw precondition_error("zero base with negative exponent");
  return Rational(Integer(1), boost::multiprecision::pow(Integer(base), static_cast<unsigned>(-e)));
}

}  // namespace detail

inline ModeMatrix mode_matrix(const FormalSymbol& s, int K, int digits = 15) {
  if (s.dim() != 1) throw precondition_error("unsupported-dimension: mode matrices need n = 1");
  const int band = symbol_max_freq(s);
  if (K < band + 1) throw precondition_error("mode cutoff must exceed the symbol's top frequency");
  ModeMatrix m;
  m.K = K;
  m.band = band;
  m.entries.assign(static_cast<std::size_t>(2 * K + 1) * (2 * K + 1), Complex(0.0));
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;  // sharp convention: the |xi| < 1 region is zeroed
    std::map<int, ExactScalar> modes;  // trig frequency -> exact value at xi = k
    for (const auto& [d, c] : s.components()) {
      for (const auto& [l, h] : c.layers()) {
        const TrigPoly t = h.coeff({l, 0, 0});
        if (t.is_zero()) continue;
        Rational factor = detail::integer_power(k, l) *
                          detail::integer_power(std::abs(static_cast<long long>(k)), d - l);
        for (const auto& [freq, sc] : t.coeffs()) modes[freq[0]] += sc * factor;
      }
    }
    for (const auto& [kappa, sc] : modes) {
      int row = k + kappa;
      if (row >= -K && row <= K) m.at(row, k) = sc.eval(digits);
    }
  }
  return m;
}

// Trace of AB - BA over the modes |k| <= K - bandA - bandB.  On that window
// every inner sum is complete (nothing escapes the cutoff), so the result
// equals the same window-trace of the untruncated commutator; it tends to 0
// as K grows when the combined order makes the commutator trace-class.
inline Complex numeric_commutator_trace(const ModeMatrix& a, const ModeMatrix& b) {
  if (a.K != b.K) throw precondition_error("mode matrices have different cutoffs");
  const int K = a.K;
  const int w = K - a.band - b.band;
  const int reach = a.band + b.band;
  Complex tr = 0.0;
  for (int k = -w; k <= w; ++k) {
    for (int j = k - reach; j <= k + reach; ++j) {
      if (j < -K || j > K) continue;
      tr += a.at(k, j) * b.at(j, k) - b.at(k, j) * a.at(j, k);
    }
  }
  return tr;
}

// Dense exp by scaling and squaring with a Taylor core.
inline std::vector<Complex> matrix_exp(const std::vector<Complex>& m, int dim) {
  auto mul = [dim](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> r(static_cast<std::size_t>(dim) * dim, Complex(0.0));
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        Complex aik = a[static_cast<std::size_t>(i) * dim + k];
        if (aik == Complex(0.0)) continue;
        for (int j = 0; j < dim; ++j)
          r[static_cast<std::size_t>(i) * dim + j] += aik * b[static_cast<std::size_t>(k) * dim + j];
      }
    return r;
  };
  double norm = 0.0;
  for (int j = 0; j < dim; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < dim; ++i) colsum += std::abs(m[static_cast<std::size_t>(i) * dim + j]);
    norm = std::max(norm, colsum);
  }
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled /= 2.0;
    ++squarings;
  }
  std::vector<Complex> a = m;
  double factor = std::ldexp(1.0, -squarings);
  for (auto& v : a) v *= factor;

  std::vector<Complex> result(static_cast<std::size_t>(dim) * dim, Complex(0.0));
  for (int i = 0; i < dim; ++i) result[static_cast<std::size_t>(i) * dim + i] = 1.0;
  std::vector<Complex> term = result;
  for (int k = 1; k <= 40; ++k) {
    term = mul(term, a);
    for (auto& v : term) v /= static_cast<double>(k);
    double tnorm = 0.0;
    for (const auto& v : term) tnorm = std::max(tnorm, std::abs(v));
    for (std::size_t i = 0; i < term.size(); ++i) result[i] += term[i];
    if (tnorm < 1e-20) break;
  }
  for (int sq = 0; sq < squarings; ++sq) result = mul(result, result);
  return result;
}

struct FdCheck {
  Complex numeric;
  Complex exact;
};

// Central difference at t = 0 of log Det(Exp(t u)) (modulus in the real
// part, argument in the imaginary part) against the exact derivative
// lambda(u) = c1 rho(u) + c2 TR(u).
inline FdCheck fd_derivative_check(const FormalSymbol& u, const ExactScalar& c1,
                                   const ExactScalar& c2, const RhoSpec& rho, const Rational& h,
                                   int digits = 15) {
  if (u.order() > -1)
    throw precondition_error("unsupported-order: derivative check needs order <= -1");
  if (h <= 0) throw precondition_error("step must be positive");
  auto logdet = [&](const Rational& t) {
    GroupElement g = exp_symbol(u * ExactScalar(t));
    DeterminantResult d = determinant(g, c1, c2, rho, digits);
    return Complex(std::log(std::abs(d.value)), std::arg(d.value));
  };
  Complex fp = logdet(h), fm = logdet(-h);
  double hd = h.convert_to<double>();
  Complex numeric = (fp - fm) / (2.0 * hd);
  ExactScalar lambda = c1 * leading_trace(u, rho).value + c2 * canonical_trace(u).value;
  return {numeric, lambda.eval(digits)};
}

}  // namespace oddsym
