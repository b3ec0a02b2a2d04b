#pragma once

#include "hb/poly.hpp"

#include <climits>
#include <string>
#include <vector>

namespace hb {

// Exact element of F = F_q(T), viewed inside F_inf = F_q((pi)), pi = 1/T.
// den is monic and coprime to num.
class RatFunc {
 public:
  static constexpr int kInfOrd = INT_MAX;

  Poly num, den;

  RatFunc() = default;
  explicit RatFunc(const GF& f) : num(f), den(Poly::one(f)) {}
  RatFunc(const Poly& n) : num(n), den(Poly::one(*n.F)) {}
  RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  static RatFunc constant(const GF& f, Elem a) { return RatFunc(Poly::constant(f, a)); }
  static RatFunc zero(const GF& f) { return RatFunc(f); }
  static RatFunc one(const GF& f) { return constant(f, 1); }
  // c * T^k for any integer k (k < 0 gives c pi^{-k})
  static RatFunc monomialT(const GF& f, Elem c, int k) {
    if (k >= 0) return RatFunc(Poly::monomial(f, c, k));
    return RatFunc(Poly::constant(f, c), Poly::monomial(f, 1, -k));
  }
  static RatFunc pi(const GF& f, int k = 1) { return monomialT(f, 1, -k); }

  const GF& field() const { return *num.F; }
  RatFunc zeroLike() const { return zero(field()); }
  RatFunc oneLike() const { return one(field()); }

  bool isZero() const { return num.isZero(); }
  bool isNonzero() const { return !num.isZero(); }
  bool isOne() const { return num.isOne() && den.isOne(); }
  bool isPoly() const { return den.isOne(); }
  // valuation at infinity
  int ord() const { return isZero() ? kInfOrd : den.deg() - num.deg(); }
  // finite Laurent polynomial in pi: den is a power of T
  bool isLaurentPoly() const {
    for (int i = 0; i < den.deg(); ++i)
      if (den.c[i]) return false;
    return true;
  }

  void normalize() {
    if (den.isZero()) throw MathError("rational function with zero denominator");
    if (num.isZero()) {
      den = Poly::one(*den.F);
      return;
    }
    Poly g = gcd(num, den);
    if (!g.isOne()) {
      num = num / g;
      den = den / g;
    }
    Elem l = den.lead();
    if (l != 1) {
      Elem il = den.F->inv(l);
      num = num.scale(il);
      den = den.scale(il);
    }
  }

  RatFunc operator+(const RatFunc& o) const {
    if (den == o.den) return RatFunc(num + o.num, den);
    return RatFunc(num * o.den + o.num * den, den * o.den);
  }
  RatFunc operator-(const RatFunc& o) const {
    if (den == o.den) return RatFunc(num - o.num, den);
    return RatFunc(num * o.den - o.num * den, den * o.den);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
  }
  RatFunc operator*(const RatFunc& o) const {
    if (isZero() || o.isZero()) return zeroLike();
    return RatFunc(num * o.num, den * o.den);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.isZero()) throw MathError("division by zero in F_q(T)");
    return RatFunc(num * o.den, den * o.num);
  }
  RatFunc inverse() const { return oneLike() / *this; }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc scale(Elem a) const { return RatFunc(num.scale(a), den); }

  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // coefficients of pi^k for k in [from, to)
  std::vector<Elem> expand(int from, int to) const {
    std::vector<Elem> out(to > from ? to - from : 0, 0);
    if (isZero() || to <= from) return out;
    const GF& f = field();
    int v = ord();
    if (to <= v) return out;
    int n = to - v;  // number of series terms needed
    int dn = num.deg(), dd = den.deg();
    // reversed polynomials: N(pi) = sum num_{dn-i} pi^i, D(pi) = sum den_{dd-i} pi^i
    std::vector<Elem> s(n, 0);
    for (int k = 0; k < n; ++k) {
      Elem acc = k <= dn ? num.c[dn - k] : 0;
      for (int j = 1; j <= std::min(k, dd); ++j) acc = f.sub(acc, f.mul(den.c[dd - j], s[k - j]));
      s[k] = acc;  // D_0 = 1
    }
    for (int k = std::max(from, v); k < to; ++k) out[k - from] = s[k - v];
    return out;
  }
  Elem coeff(int k) const { return expand(k, k + 1)[0]; }

  // Sum of the terms c_k pi^k with k < d: the reduction modulo pi^d O.
  RatFunc principalPart(int d) const {
    if (isZero() || ord() >= d) return zeroLike();
    int v = ord();
    auto cs = expand(v, d);
    return laurentPoly(field(), v, cs);
  }

  // sum_{i} cs[i] pi^{v+i}
  static RatFunc laurentPoly(const GF& f, int v, const std::vector<Elem>& cs) {
    // pi^v * sum cs[i] pi^i = T^{-v-L+1} * sum cs[i] T^{L-1-i}
    int L = static_cast<int>(cs.size());
    if (L == 0) return zero(f);
    std::vector<Elem> rev(L);
    for (int i = 0; i < L; ++i) rev[L - 1 - i] = cs[i];
    Poly p(f, rev);
    int shift = -v - (L - 1);
    if (shift >= 0) return RatFunc(p.shift(shift));
    return RatFunc(p, Poly::monomial(f, 1, -shift));
  }

  std::string str() const {
    if (isZero()) return "0";
    if (!isLaurentPoly()) return "(" + num.str() + ")/(" + den.str() + ")";
    int v = ord();
    auto cs = expand(v, den.deg() + 1);
    std::string s;
    const GF& f = field();
    // decreasing T-degree, i.e. increasing pi-exponent
    for (size_t i = 0; i < cs.size(); ++i) {
      Elem c = cs[i];
      if (!c) continue;
      int k = v + static_cast<int>(i);  // exponent of pi
      std::string mono;
      if (k < 0)
        mono = k == -1 ? "T" : "T^" + std::to_string(-k);
      else if (k > 0)
        mono = k == 1 ? "pi" : "pi^" + std::to_string(k);
      if (!s.empty()) s += "+";
      if (mono.empty())
        s += f.str(c);
      else if (c == 1)
        s += mono;
      else
        s += f.str(c) + "*" + mono;
    }
    return s;
  }
};

// Parses a finite Laurent polynomial: terms c*T^k, c*pi^k, c (k may be
// negative on T), or "(P)/(Q)" for a general rational function.
inline RatFunc parseRatFunc(const GF& f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw MathError("empty field element");
  auto fail = [&](const std::string& why) { throw MathError("cannot parse element '" + text + "': " + why); };
  // rational function form
  if (s[0] == '(') {
    size_t depth = 0, j = 0;
    for (; j < s.size(); ++j) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')' && --depth == 0) break;
    }
    if (j + 1 < s.size() && s[j + 1] == '/') {
      Poly n = parsePoly(f, s.substr(1, j - 1));
      std::string rest = s.substr(j + 2);
      if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
      Poly d = parsePoly(f, rest);
      if (d.isZero()) fail("zero denominator");
      return RatFunc(n, d);
    }
  }
  RatFunc result = RatFunc::zero(f);
  size_t i = 0;
  auto readInt = [&](long& out) {
    size_t j = i;
    if (j < s.size() && s[j] == '-') ++j;
    size_t st = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == st) fail("expected integer");
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
    long texp = 0;
    while (true) {
      if (i >= s.size()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        long v;
        readInt(v);
        coef = f.mul(coef, f.fromInt(v));
      } else if (s.compare(i, 2, "pi") == 0) {
        i += 2;
        long j = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          readInt(j);
        }
        texp -= j;
      } else if (s[i] == 'T') {
        ++i;
        long j = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          readInt(j);
        }
        texp += j;
      } else if (s[i] == 'u') {
        ++i;
        long j = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          readInt(j);
        }
        coef = f.mul(coef, f.expOf(j));
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
    result += RatFunc::monomialT(f, coef, static_cast<int>(texp));
  }
  return result;
}

}  // namespace hb
