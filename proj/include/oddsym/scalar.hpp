#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oddsym/errors.hpp"

namespace oddsym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// a + b*i with exact rational a, b.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  explicit GaussRational(Rational r) : re(std::move(r)) {}
  explicit GaussRational(long long r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  // 1/(a+bi) = (a-bi)/(a^2+b^2)
  GaussRational inverse() const {
    if (is_zero()) throw precondition_error("unsupported-inverse: zero scalar");
    Rational norm = re * re + im * im;
    return {re / norm, -im / norm};
  }
};

// Element of Q(i)[pi, pi^-1]: a Laurent polynomial in pi with Gaussian
// rational coefficients.  Every constant produced by the exact functionals in
// this library lives here: sphere areas contribute single powers of pi, torus
// volumes contribute 2^n pi^n, and the rational weights of the calculus never
// leave Q(i).  The term map never stores zero coefficients, so the empty map
// is the canonical zero and operator== is structural equality.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long long v) {  // NOLINT: implicit by design, mirrors integer literals
    if (v != 0) terms_[0] = GaussRational(v);
  }
  ExactScalar(const Rational& v) {  // NOLINT: implicit rational embedding
    if (v != 0) terms_[0] = GaussRational(v);
  }

  // c * pi^s
  static ExactScalar term(GaussRational c, int s = 0) {
    ExactScalar r;
    if (!c.is_zero()) r.terms_[s] = std::move(c);
    return r;
  }
  static ExactScalar i() { return term(GaussRational(Rational(0), Rational(1))); }
  static ExactScalar pi(int s = 1) { return term(GaussRational(1), s); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, GaussRational>& terms() const { return terms_; }

  ExactScalar operator-() const {
    ExactScalar r;
    for (const auto& [s, c] : terms_) r.terms_[s] = -c;
    return r;
  }
  ExactScalar& operator+=(const ExactScalar& o) {
    for (const auto& [s, c] : o.terms_) {
      auto it = terms_.find(s);
      if (it == terms_.end()) {
        terms_.emplace(s, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    for (const auto& [s1, c1] : a.terms_)
      for (const auto& [s2, c2] : b.terms_) {
        GaussRational p = c1 * c2;
        if (p.is_zero()) continue;
        auto it = r.terms_.find(s1 + s2);
        if (it == r.terms_.end()) {
          r.terms_.emplace(s1 + s2, std::move(p));
        } else {
          it->second += p;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  // Defined only for single-term scalars c*pi^s: the units of the ring are
  // exactly these monomials, so anything else is refused.
  ExactScalar inverse() const {
    if (terms_.size() != 1)
      throw precondition_error("unsupported-inverse: not a single-term scalar");
    const auto& [s, c] = *terms_.begin();
    return term(c.inverse(), -s);
  }

  // Floats the scalar at 50 internal decimal digits, so the double result is
  // correct to full double precision for any requested digit count.
  std::complex<double> eval(int digits = 15) const {
    if (digits < 1) throw precondition_error("digits must be >= 1");
    using F50 = boost::multiprecision::cpp_bin_float_50;
    static const F50 kPi("3.14159265358979323846264338327950288419716939937510582097494459");
    F50 re = 0, im = 0;
    for (const auto& [s, c] : terms_) {
      F50 p = 1;
      for (int k = 0; k < (s < 0 ? -s : s); ++k) p *= kPi;
      if (s < 0) p = 1 / p;
      re += F50(c.re) * p;
      im += F50(c.im) * p;
    }
    return {re.convert_to<double>(), im.convert_to<double>()};
  }

  // Canonical text: terms sorted by (pi exponent, real before imaginary),
  // each rendered as p[/q][*i][*pi[^s]], joined with signed " + " / " - ".
  std::string to_string() const;
  static ExactScalar parse(std::string_view text);

 private:
  std::map<int, GaussRational> terms_;
};

inline ExactScalar operator*(const ExactScalar& a, const GaussRational& c) {
  return a * ExactScalar::term(c);
}
inline ExactScalar operator*(const ExactScalar& a, const Rational& c) {
  return a * ExactScalar(c);
}
inline ExactScalar operator*(const ExactScalar& a, long long c) { return a * ExactScalar(c); }

namespace detail {

inline void append_scalar_piece(std::string& out, const Rational& q, bool imag, int s) {
  Rational mag = q < 0 ? Rational(-q) : q;
  if (out.empty()) {
    if (q < 0) out += "-";
  } else {
    out += q < 0 ? " - " : " + ";
  }
  // a unit coefficient is implicit when another factor carries the term
  bool wrote_factor = false;
  if (mag != 1 || (!imag && s == 0)) {
    std::ostringstream os;
    os << mag;
    out += os.str();
    wrote_factor = true;
  }
  if (imag) {
    if (wrote_factor) out += "*";
    out += "i";
    wrote_factor = true;
  }
  if (s != 0) {
    if (wrote_factor) out += "*";
    out += "pi";
    if (s != 1) out += "^" + std::to_string(s);
  }
}

}  // namespace detail

inline std::string ExactScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (c.re != 0) detail::append_scalar_piece(out, c.re, false, s);
    if (c.im != 0) detail::append_scalar_piece(out, c.im, true, s);
  }
  return out;
}

namespace detail {

// One signed term of the scalar grammar: [sign] f1 * f2 * ... where each
// factor is an integer, integer/integer, i, or pi[^int].  At most one
// rational, one i and one pi factor are accepted per term.
struct ScalarTermParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return text[pos]; }

  Integer parse_integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) throw parse_error("scalar: expected integer");
    return Integer(std::string(text.substr(start, pos - start)));
  }

  // Parses one term and accumulates it.
  void parse_term(ExactScalar& acc, bool negate) {
    Rational coeff(1);
    bool saw_rational = false, saw_i = false;
    int pi_exp = 0;
    bool saw_pi = false;
    bool first_factor = true;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      if (!first_factor) {
        if (text[pos] != '*') break;
        ++pos;
        skip_ws();
      }
      if (pos < text.size() && text.compare(pos, 2, "pi") == 0) {
        if (saw_pi) throw parse_error("scalar: repeated pi factor");
        saw_pi = true;
        pos += 2;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          Integer e = parse_integer();
          if (e > 1000 || e < -1000) throw parse_error("scalar: pi exponent out of range");
          pi_exp = e.convert_to<int>();
        } else {
          pi_exp = 1;
        }
      } else if (pos < text.size() && text[pos] == 'i') {
        if (saw_i) throw parse_error("scalar: repeated i factor");
        saw_i = true;
        ++pos;
      } else if (pos < text.size() &&
                 (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '+' ||
                  text[pos] == '-')) {
        if (saw_rational) throw parse_error("scalar: repeated rational factor");
        saw_rational = true;
        Integer num = parse_integer();
        Integer den = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          den = parse_integer();
          if (den == 0) throw parse_error("scalar: zero denominator");
        }
        coeff = Rational(num, den);
      } else {
        throw parse_error("scalar: unexpected character '" + std::string(1, text[pos]) + "'");
      }
      first_factor = false;
    }
    if (first_factor) throw parse_error("scalar: empty term");
    if (negate) coeff = -coeff;
    GaussRational g = saw_i ? GaussRational(Rational(0), coeff) : GaussRational(coeff);
    acc += ExactScalar::term(std::move(g), pi_exp);
  }
};

}  // namespace detail

inline ExactScalar ExactScalar::parse(std::string_view text) {
  detail::ScalarTermParser p{text};
  p.skip_ws();
  if (p.eof()) throw parse_error("scalar: empty text");
  ExactScalar acc;
  bool negate = false;
  if (p.peek() == '-') {
    negate = true;
    ++p.pos;
  } else if (p.peek() == '+') {
    ++p.pos;
  }
  // "0" is the canonical zero; accept it alone.
  for (;;) {
    p.parse_term(acc, negate);
    if (p.eof()) break;
    char op = p.peek();
    if (op != '+' && op != '-') throw parse_error("scalar: expected + or - between terms");
    negate = op == '-';
    ++p.pos;
    if (p.eof()) throw parse_error("scalar: trailing operator");
  }
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) {
  return os << s.to_string();
}

}  // namespace oddsym
