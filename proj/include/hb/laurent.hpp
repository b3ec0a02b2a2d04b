#pragma once

#include "hb/cyclo.hpp"
#include "hb/ratfunc.hpp"

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

namespace hb {

inline constexpr int kDefaultPrecision = 40;

// Element of F_Q((pi)) known modulo pi^prec. Exact values are finite Laurent
// polynomials and carry no precision bound.
// Invariants: exact -> c trimmed on both ends (empty means 0);
// inexact -> c spans exponents [v, prec) and c[0] != 0 unless c is empty, in
// which case v == prec and the value is O(pi^prec).
class Laurent {
 public:
  static constexpr long kInf = LONG_MAX / 4;

  const GF* F = nullptr;
  long v = 0;
  std::vector<Elem> c;
  long prec = kInf;
  bool exact = true;

  Laurent() = default;
  explicit Laurent(const GF& f) : F(&f) {}

  static Laurent zero(const GF& f) { return Laurent(f); }
  static Laurent constant(const GF& f, Elem a) { return monomial(f, a, 0); }
  static Laurent one(const GF& f) { return constant(f, 1); }
  static Laurent monomial(const GF& f, Elem a, long k) {
    Laurent x(f);
    if (a) {
      x.v = k;
      x.c = {a};
    }
    return x;
  }
  static Laurent bigO(const GF& f, long k) {
    Laurent x(f);
    x.exact = false;
    x.v = x.prec = k;
    return x;
  }
  // sum cs[i] pi^{v0+i}, known modulo pi^p (p = kInf means exact)
  static Laurent fromCoeffs(const GF& f, long v0, std::vector<Elem> cs, long p = kInf) {
    Laurent x(f);
    x.v = v0;
    x.c = std::move(cs);
    x.exact = p >= kInf;
    if (!x.exact) {
      x.prec = p;
      long need = p - v0;
      if (need < 0) {
        x.c.clear();
        x.v = p;
      } else {
        x.c.resize(need, 0);
      }
    }
    x.normalize();
    return x;
  }

  Laurent zeroLike() const { return zero(*F); }
  Laurent oneLike() const { return one(*F); }

  void normalize() {
    size_t lead = 0;
    while (lead < c.size() && c[lead] == 0) ++lead;
    if (lead) {
      c.erase(c.begin(), c.begin() + static_cast<long>(lead));
      v += static_cast<long>(lead);
    }
    if (exact) {
      while (!c.empty() && c.back() == 0) c.pop_back();
      if (c.empty()) v = 0;
    } else if (c.empty()) {
      v = prec;
    }
  }

  bool isExactZero() const { return exact && c.empty(); }
  bool isZero() const { return isExactZero(); }
  // certified nonzero: a nonzero coefficient is known
  bool isNonzero() const { return !c.empty(); }
  long absPrec() const { return exact ? kInf : prec; }
  long relPrec() const { return exact ? kInf : prec - v; }

  long ord() const {
    if (isExactZero()) return kInf;
    if (c.empty()) throw PrecisionError("valuation not certified: value is O(pi^" + std::to_string(prec) + ")");
    return v;
  }
  // ord, or the precision floor for an uncertified zero
  long ordLowerBound() const { return c.empty() ? absPrec() : v; }

  Elem coeff(long k) const {
    if (k >= absPrec()) throw PrecisionError("coefficient of pi^" + std::to_string(k) + " beyond precision " + std::to_string(prec));
    if (k < v || k >= v + static_cast<long>(c.size())) return 0;
    return c[k - v];
  }

  Laurent operator+(const Laurent& o) const { return addImpl(o, false); }
  Laurent operator-(const Laurent& o) const { return addImpl(o, true); }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& x : r.c) x = F->neg(x);
    return r;
  }

  Laurent operator*(const Laurent& o) const {
    const GF& f = *F;
    if (isExactZero() || o.isExactZero()) return zero(f);
    long lo = ordLowerBound() + o.ordLowerBound();
    long p = kInf;
    if (!exact) p = std::min(p, prec + o.ordLowerBound());
    if (!o.exact) p = std::min(p, o.prec + ordLowerBound());
    if (p >= kInf) {
      std::vector<Elem> r(c.size() + o.c.size() - 1, 0);
      for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(c[i], o.c[j]));
      }
      return fromCoeffs(f, v + o.v, std::move(r));
    }
    if (c.empty() || o.c.empty()) return bigO(f, p);
    long n = p - lo;
    std::vector<Elem> r(n > 0 ? n : 0, 0);
    long na = std::min<long>(static_cast<long>(c.size()), n);
    long nb = std::min<long>(static_cast<long>(o.c.size()), n);
    for (long i = 0; i < na; ++i) {
      Elem a = c[i];
      if (!a) continue;
      long lim = std::min(nb, n - i);
      Elem* out = r.data() + i;
      const Elem* b = o.c.data();
      for (long j = 0; j < lim; ++j)
        if (b[j]) out[j] = f.add(out[j], f.mul(a, b[j]));
    }
    return fromCoeffs(f, lo, std::move(r), p);
  }

  Laurent scale(Elem a) const {
    if (a == 0) return exact ? zero(*F) : bigO(*F, prec);
    Laurent r = *this;
    for (auto& x : r.c) x = F->mul(a, x);
    return r;
  }
  // times pi^k
  Laurent shift(long k) const {
    Laurent r = *this;
    if (!r.c.empty() || !exact) r.v += k;
    if (!exact) r.prec += k;
    return r;
  }

  // 1/x; exact inputs expand to relCap coefficients
  Laurent inverse(long relCap = kDefaultPrecision) const {
    const GF& f = *F;
    if (c.empty()) throw PrecisionError("inverse of a value not certified nonzero");
    long n = exact ? relCap : prec - v;
    if (exact && c.size() == 1) return monomial(f, f.inv(c[0]), -v);
    std::vector<Elem> s(n, 0);
    Elem i0 = f.inv(c[0]);
    for (long k = 0; k < n; ++k) {
      Elem acc = k == 0 ? 1 : 0;
      long lim = std::min<long>(k, static_cast<long>(c.size()) - 1);
      for (long j = 1; j <= lim; ++j)
        if (c[j] && s[k - j]) acc = f.sub(acc, f.mul(c[j], s[k - j]));
      s[k] = f.mul(acc, i0);
    }
    return fromCoeffs(f, -v, std::move(s), -v + n);
  }
  Laurent operator/(const Laurent& o) const { return *this * o.inverse(); }

  // x^(p^i): coefficientwise Frobenius and exponent scaling
  Laurent frobPow(unsigned i) const {
    long Q = 1;
    for (unsigned j = 0; j < i; ++j) Q *= F->p;
    if (Q == 1) return *this;
    Laurent r(*F);
    r.exact = exact;
    if (c.empty()) {
      if (!exact) {
        r.prec = r.v = prec * Q;
      }
      return r;
    }
    r.v = v * Q;
    long len = exact ? (static_cast<long>(c.size()) - 1) * Q + 1 : (prec - v) * Q;
    r.c.assign(len, 0);
    for (size_t k = 0; k < c.size(); ++k) r.c[k * Q] = F->frob(c[k], i);
    if (!exact) r.prec = prec * Q;
    r.normalize();
    return r;
  }

  // drop knowledge beyond pi^p
  Laurent truncate(long p) const {
    if (p >= absPrec()) return *this;
    std::vector<Elem> cs;
    for (long k = v; k < p && k - v < static_cast<long>(c.size()); ++k) cs.push_back(c[k - v]);
    return fromCoeffs(*F, v, std::move(cs), p);
  }

  bool operator==(const Laurent& o) const {
    return exact == o.exact && c == o.c && (c.empty() || v == o.v) && (exact || prec == o.prec);
  }
  // equal on the common window of knowledge
  bool agrees(const Laurent& o) const {
    Laurent d = *this - o;
    return d.c.empty();
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
      Elem a = c[i];
      if (!a) continue;
      long k = v + static_cast<long>(i);
      std::string mono;
      if (k < 0)
        mono = k == -1 ? "T" : "T^" + std::to_string(-k);
      else if (k > 0)
        mono = k == 1 ? "pi" : "pi^" + std::to_string(k);
      if (!s.empty()) s += "+";
      if (mono.empty())
        s += F->str(a);
      else if (a == 1)
        s += mono;
      else
        s += F->str(a) + "*" + mono;
    }
    if (!exact) {
      std::string big = "O(pi^" + std::to_string(prec) + ")";
      if (prec == 0) big = "O(1)";
      if (prec < 0) big = "O(T^" + std::to_string(-prec) + ")";
      return s.empty() ? big : s + " + " + big;
    }
    return s.empty() ? "0" : s;
  }

 private:
  Laurent addImpl(const Laurent& o, bool subtract) const {
    const GF& f = *F;
    long p = std::min(absPrec(), o.absPrec());
    if (exact && o.exact) {
      if (c.empty()) return subtract ? -o : o;
      if (o.c.empty()) return *this;
      long lo = std::min(v, o.v);
      long hi = std::max(v + static_cast<long>(c.size()), o.v + static_cast<long>(o.c.size()));
      std::vector<Elem> r(hi - lo, 0);
      for (size_t i = 0; i < c.size(); ++i) r[v - lo + i] = c[i];
      for (size_t i = 0; i < o.c.size(); ++i) {
        Elem& t = r[o.v - lo + i];
        t = subtract ? f.sub(t, o.c[i]) : f.add(t, o.c[i]);
      }
      return fromCoeffs(f, lo, std::move(r));
    }
    long lo = std::min(ordLowerBound(), o.ordLowerBound());
    if (lo >= p) return bigO(f, p);
    std::vector<Elem> r(p - lo, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      long k = v + static_cast<long>(i);
      if (k < p) r[k - lo] = c[i];
    }
    for (size_t i = 0; i < o.c.size(); ++i) {
      long k = o.v + static_cast<long>(i);
      if (k >= p) break;
      Elem& t = r[k - lo];
      t = subtract ? f.sub(t, o.c[i]) : f.add(t, o.c[i]);
    }
    return fromCoeffs(f, lo, std::move(r), p);
  }
};

// Embeds an element of F_q(T) into F_Q((pi)) through an embedding of the
// coefficient fields; exact when the input is a finite Laurent polynomial.
inline Laurent toLaurent(const RatFunc& x, const FieldEmbedding& emb, long relPrec = kDefaultPrecision) {
  const GF& big = *emb.big;
  if (x.isZero()) return Laurent::zero(big);
  long v = x.ord();
  if (x.isLaurentPoly()) {
    auto cs = x.expand(static_cast<int>(v), x.den.deg() + 1);
    for (auto& e : cs) e = emb(e);
    return Laurent::fromCoeffs(big, v, std::move(cs));
  }
  auto cs = x.expand(static_cast<int>(v), static_cast<int>(v + relPrec));
  for (auto& e : cs) e = emb(e);
  return Laurent::fromCoeffs(big, v, std::move(cs), v + relPrec);
}

inline Laurent toLaurent(const RatFunc& x, long relPrec = kDefaultPrecision) {
  FieldEmbedding id(x.field(), x.field());
  return toLaurent(x, id, relPrec);
}

// psi(x) = psi0(Tr(a_1)) for x = sum a_i pi^i
inline CycRat psi(const Laurent& x, unsigned k = 1) {
  Elem a1 = x.coeff(1);
  return psi0(x.F->p, x.F->trace(a1), k);
}

inline CycRat psi(const RatFunc& x, unsigned k = 1) {
  return psi0(x.field().p, x.field().trace(x.coeff(1)), k);
}

// Parses "T^2+1+3*pi^4 + O(pi^9)"; without an O-term the value is exact.
inline Laurent parseLaurent(const GF& f, const std::string& text) {
  std::string s = text;
  long p = Laurent::kInf;
  auto pos = s.find("O(");
  if (pos != std::string::npos) {
    auto close = s.find(')', pos);
    if (close == std::string::npos) throw MathError("unbalanced O-term in '" + text + "'");
    std::string inner = s.substr(pos + 2, close - pos - 2);
    RatFunc m = parseRatFunc(f, inner);
    if (!m.isLaurentPoly() || m.num.c.size() != 1 || (m.num.deg() != 0 && m.den.deg() != 0)) throw MathError("O-term must be a monomial");
    p = m.ord();
    s = s.substr(0, pos);
    while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '+')) s.pop_back();
  }
  if (s.empty()) return p >= Laurent::kInf ? Laurent::zero(f) : Laurent::bigO(f, p);
  RatFunc x = parseRatFunc(f, s);
  if (!x.isLaurentPoly()) throw MathError("Laurent text must be a finite Laurent polynomial");
  Laurent r = toLaurent(x);
  return p >= Laurent::kInf ? r : r.truncate(p);
}

}  // namespace hb
