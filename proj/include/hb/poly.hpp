#pragma once

#include "hb/field.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hb {

// Element of A = F_q[T]; coefficients low to high, no trailing zeros.
class Poly {
 public:
  const GF* F = nullptr;
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(const GF& f) : F(&f) {}
  Poly(const GF& f, std::vector<Elem> coeffs) : F(&f), c(std::move(coeffs)) { trim(); }

  static Poly constant(const GF& f, Elem a) { return Poly(f, {a}); }
  static Poly one(const GF& f) { return constant(f, 1); }
  static Poly T(const GF& f) { return Poly(f, {0, 1}); }
  static Poly monomial(const GF& f, Elem a, int k) {
    std::vector<Elem> v(k + 1, 0);
    v[k] = a;
    return Poly(f, std::move(v));
  }

  bool isZero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : 0; }
  bool isMonic() const { return !c.empty() && c.back() == 1; }
  bool isOne() const { return c.size() == 1 && c[0] == 1; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  Poly operator+(const Poly& o) const {
    const GF& f = field(o);
    std::vector<Elem> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return Poly(f, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    const GF& f = field(o);
    std::vector<Elem> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return Poly(f, std::move(r));
  }
  Poly operator-() const {
    Poly r(*F);
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = F->neg(c[i]);
    return r;
  }
  Poly operator*(const Poly& o) const {
    const GF& f = field(o);
    if (isZero() || o.isZero()) return Poly(f);
    std::vector<Elem> r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(c[i], o.c[j]));
    }
    return Poly(f, std::move(r));
  }
  Poly scale(Elem a) const {
    Poly r(*F);
    r.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = F->mul(a, c[i]);
    r.trim();
    return r;
  }
  Poly shift(int k) const {  // times T^k, k >= 0
    if (isZero()) return *this;
    Poly r(*F);
    r.c.assign(k, 0);
    r.c.insert(r.c.end(), c.begin(), c.end());
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // quotient and remainder; divisor nonzero
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.isZero()) throw MathError("polynomial division by zero");
    const GF& f = field(d);
    Poly r = *this;
    if (r.deg() < d.deg()) return {Poly(f), r};
    std::vector<Elem> qc(r.deg() - d.deg() + 1, 0);
    Elem il = f.inv(d.lead());
    while (!r.isZero() && r.deg() >= d.deg()) {
      int k = r.deg() - d.deg();
      Elem t = f.mul(r.lead(), il);
      qc[k] = t;
      for (size_t j = 0; j < d.c.size(); ++j) r.c[j + k] = f.sub(r.c[j + k], f.mul(t, d.c[j]));
      r.trim();
    }
    return {Poly(f, std::move(qc)), r};
  }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& a) const { return (a % *this).isZero(); }

  Poly monic() const {
    if (isZero()) return *this;
    return scale(F->inv(lead()));
  }

  Elem eval(Elem x) const {
    Elem r = 0;
    for (int i = deg(); i >= 0; --i) r = F->add(F->mul(r, x), c[i]);
    return r;
  }

  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
  // (degree, then coefficients from the top down by code)
  bool operator<(const Poly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }

  // |a| = q^deg a as an exact rational; |0| = 0
  Rational absValue() const { return isZero() ? Rational(0) : qpow(static_cast<long>(F->q()), deg()); }

  std::string str() const {
    if (isZero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
      if (!c[i]) continue;
      if (!s.empty()) s += "+";
      std::string mono = i == 0 ? "" : (i == 1 ? "T" : "T^" + std::to_string(i));
      std::string co = F->str(c[i]);
      if (mono.empty())
        s += co;
      else if (c[i] == 1)
        s += mono;
      else
        s += co + "*" + mono;
    }
    return s;
  }

  // Enumerate all polynomials of degree <= d in increasing order (including 0).
  static std::vector<Poly> allUpToDegree(const GF& f, int d) {
    std::vector<Poly> out;
    if (d < 0) {
      out.emplace_back(f);
      return out;
    }
    unsigned long total = 1;
    for (int i = 0; i <= d; ++i) total *= f.q();
    out.reserve(total);
    std::vector<Elem> digits(d + 1, 0);
    for (unsigned long k = 0; k < total; ++k) {
      unsigned long t = k;
      for (int i = 0; i <= d; ++i) {
        digits[i] = static_cast<Elem>(t % f.q());
        t /= f.q();
      }
      out.emplace_back(f, digits);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::vector<Poly> monicOfDegree(const GF& f, int d) {
    std::vector<Poly> out;
    for (auto& lower : allUpToDegree(f, d - 1)) out.push_back(lower + monomial(f, 1, d));
    return out;
  }

 private:
  const GF& field(const Poly& o) const {
    const GF* f = F ? F : o.F;
    if (!f) throw MathError("polynomial without field");
    if (F && o.F && F != o.F) throw MathError("polynomials over different fields");
    return *f;
  }
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.isZero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  const GF& f = a.F ? *a.F : *b.F;
  Poly r0 = a, r1 = b, s0 = Poly::one(f), s1(f), t0(f), t1 = Poly::one(f);
  while (!r1.isZero()) {
    auto [qq, rr] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(rr);
    Poly s2 = s0 - qq * s1, t2 = t0 - qq * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.isZero()) return {r0, s0, t0};
  Elem il = f.inv(r0.lead());
  return {r0.scale(il), s0.scale(il), t0.scale(il)};
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly(a.F ? *a.F : *b.F);
  return (a * b / gcd(a, b)).monic();
}

// Parse "c*T^k+..." with c an integer mod p, u, u^j or c*u^j; '-' is accepted
// as negation of the following term.
inline Poly parsePoly(const GF& f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw MathError("empty polynomial");
  Poly result(f);
  size_t i = 0;
  auto fail = [&](const std::string& why) { throw MathError("cannot parse polynomial '" + text + "': " + why); };
  auto readInt = [&](long& out) {
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected integer");
    out = std::stol(s.substr(i, j - i));
    i = j;
  };
  bool first = true;
  while (i < s.size()) {
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Elem coef = 1;
    int tdeg = 0;
    while (true) {
      if (i >= s.size()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        long v;
        readInt(v);
        coef = f.mul(coef, f.fromInt(v));
      } else if (s[i] == 'u') {
        ++i;
        long j = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          readInt(j);
        }
        coef = f.mul(coef, f.expOf(j));
      } else if (s[i] == 'T') {
        ++i;
        long j = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          readInt(j);
        }
        tdeg += static_cast<int>(j);
      } else if (s[i] == '(') {
        size_t depth = 0, j = i;
        for (; j < s.size(); ++j) {
          if (s[j] == '(') ++depth;
          if (s[j] == ')' && --depth == 0) break;
        }
        if (j >= s.size()) fail("unbalanced parenthesis");
        Poly inner = parsePoly(f, s.substr(i + 1, j - i - 1));
        if (inner.deg() > 0) fail("parenthesized coefficient must be constant");
        coef = f.mul(coef, inner.coeff(0));
        i = j + 1;
      } else {
        fail(std::string("unexpected character '") + s[i] + "'");
      }
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (negate) coef = f.neg(coef);
    result += Poly::monomial(f, coef, tdeg);
  }
  return result;
}

// Factorization into monic irreducibles with multiplicity, by trial division.
inline std::vector<std::pair<Poly, int>> factor(const Poly& a) {
  if (a.isZero()) throw MathError("cannot factor zero");
  const GF& f = *a.F;
  std::vector<std::pair<Poly, int>> out;
  Poly rest = a.monic();
  for (int d = 1; 2 * d <= rest.deg(); ++d) {
    for (auto& cand : Poly::monicOfDegree(f, d)) {
      if (2 * d > rest.deg()) break;
      int mult = 0;
      while (true) {
        auto [qq, rr] = rest.divmod(cand);
        if (!rr.isZero()) break;
        rest = qq;
        ++mult;
      }
      if (mult) out.push_back({cand, mult});
    }
  }
  if (rest.deg() > 0) {
    bool merged = false;
    for (auto& pr : out)
      if (pr.first == rest) {
        ++pr.second;
        merged = true;
      }
    if (!merged) out.push_back({rest, 1});
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
  return out;
}

inline bool isIrreducible(const Poly& a) {
  if (a.deg() < 1) return false;
  auto fs = factor(a);
  return fs.size() == 1 && fs[0].second == 1;
}

inline bool isSquarefree(const Poly& a) {
  for (auto& pr : factor(a))
    if (pr.second > 1) return false;
  return true;
}

}  // namespace hb
