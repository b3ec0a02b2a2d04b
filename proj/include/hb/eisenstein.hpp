#pragma once

#include "hb/discriminant.hpp"

#include <string>
#include <vector>

namespace hb {

// Polynomial in X with rational coefficients, ascending.
class QPoly {
 public:
  std::vector<Rational> c;

  QPoly() = default;
  QPoly(Rational a) {  // NOLINT: constants promote
    if (a != 0) c.push_back(std::move(a));
  }
  static QPoly monomial(Rational a, int k) {
    QPoly p;
    if (a == 0) return p;
    p.c.assign(k + 1, Rational(0));
    p.c[k] = std::move(a);
    return p;
  }

  bool isZero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }
  Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : Rational(0); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  QPoly operator+(const QPoly& o) const {
    QPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    r.trim();
    return r;
  }
  QPoly operator-() const {
    QPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  QPoly operator-(const QPoly& o) const { return *this + (-o); }
  QPoly operator*(const QPoly& o) const {
    QPoly r;
    if (isZero() || o.isZero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
    if (d.isZero()) throw MathError("polynomial division by zero");
    QPoly quo, rem = *this;
    while (!rem.isZero() && rem.deg() >= d.deg()) {
      QPoly t = monomial(rem.lead() / d.lead(), rem.deg() - d.deg());
      quo = quo + t;
      rem = rem - t * d;
    }
    return {quo, rem};
  }
  QPoly monic() const {
    QPoly r = *this;
    if (r.isZero()) return r;
    Rational l = r.lead();
    for (auto& x : r.c) x /= l;
    return r;
  }
  Rational eval(const Rational& x) const {
    Rational s = 0;
    for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
    return s;
  }
  bool operator==(const QPoly& o) const { return c == o.c; }

  std::string str() const {
    if (isZero()) return "0";
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Rational a = c[i];
      bool neg = a < 0;
      if (neg) a = -a;
      s += s.empty() ? (neg ? "-" : "") : (neg ? "-" : "+");
      if (i == 0 || a != 1) s += toString(a) + (i ? "*" : "");
      if (i) s += i == 1 ? "X" : "X^" + std::to_string(i);
    }
    return s;
  }
};

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.isZero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Rational function of X = q^{-s}; gcd-reduced, monic denominator.
class RatX {
 public:
  QPoly num, den{Rational(1)};

  RatX() = default;
  RatX(Rational a) : num(std::move(a)) {}  // NOLINT
  RatX(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  // a X^k for any integer k
  static RatX monomial(Rational a, int k) {
    return k >= 0 ? RatX(QPoly::monomial(std::move(a), k), QPoly(1)) : RatX(QPoly(std::move(a)), QPoly::monomial(1, -k));
  }

  void normalize() {
    if (den.isZero()) throw MathError("rational function with zero denominator");
    if (num.isZero()) {
      den = QPoly(1);
      return;
    }
    QPoly g = gcd(num, den);
    num = num.divmod(g).first;
    den = den.divmod(g).first;
    Rational l = den.lead();
    for (auto& x : num.c) x /= l;
    for (auto& x : den.c) x /= l;
  }

  bool isZero() const { return num.isZero(); }
  RatX operator+(const RatX& o) const { return {num * o.den + o.num * den, den * o.den}; }
  RatX operator-() const { return {-num, den}; }
  RatX operator-(const RatX& o) const { return *this + (-o); }
  RatX operator*(const RatX& o) const { return {num * o.num, den * o.den}; }
  RatX operator/(const RatX& o) const {
    if (o.isZero()) throw MathError("division by zero rational function");
    return {num * o.den, den * o.num};
  }
  bool operator==(const RatX& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatX& o) const { return !(*this == o); }

  Rational eval(const Rational& x) const {
    Rational d = den.eval(x);
    if (d == 0) throw MathError("evaluation at a pole X=" + toString(x));
    return num.eval(x) / d;
  }
  // X = q^{-s} for integer s
  Rational evalAtS(long q, long s) const { return eval(qpow(q, -s)); }

  // positive rational roots of the denominator
  std::vector<Rational> positivePoles(long q, int searchRange = 8) const {
    std::vector<Rational> out;
    for (int k = -searchRange; k <= searchRange; ++k) {
      Rational x = qpow(q, k);
      if (den.eval(x) == 0) out.push_back(x);
    }
    return out;
  }

  std::string str() const {
    if (den == QPoly(1)) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

// sum_{k >= k0} (a q^{rk} X^{rk} - X^{rk}) in closed form, a a rational constant
inline RatX geometricTail(long q, int r, int k0, const Rational& a) {
  RatX qrX(QPoly::monomial(qpow(q, r), r), QPoly(1));
  RatX Xr = RatX::monomial(1, r);
  RatX first = RatX::monomial(a * qpow(q, static_cast<long>(r) * k0), r * k0) / (RatX(1) - qrX);
  RatX second = RatX::monomial(1, r * k0) / (RatX(1) - Xr);
  return first - second;
}

// Number of nonzero c in A^r with alpha c diag(T^n) in O^r, alpha of valuation k.
inline Integer eisensteinCount(long q, const std::vector<int>& n, long k) {
  Integer prod = 1;
  for (int ni : n)
    if (k - ni + 1 > 0) prod *= ipow(Integer(q), static_cast<unsigned long>(k - ni + 1));
  return prod - 1;
}

// E_r(diag(T^{n_1}, ..., T^{n_r}), s) as a function of X = q^{-s}:
// |det g|^s sum_k count_k(n) q^{-rks}
inline RatX eisensteinDiagonal(long q, const std::vector<int>& n) {
  int r = static_cast<int>(n.size());
  if (r < 1) throw MathError("need at least one exponent");
  int lo = *std::min_element(n.begin(), n.end()), hi = *std::max_element(n.begin(), n.end());
  long sum = 0;
  for (int ni : n) sum += ni;
  RatX total;
  // partial range: some coordinates forced to zero
  for (int k = lo; k < hi; ++k) {
    Integer cnt = eisensteinCount(q, n, k);
    if (cnt != 0) total = total + RatX::monomial(Rational(cnt), r * k);
  }
  // k >= hi: count is q^{rk - sum + r} - 1
  total = total + geometricTail(q, r, hi, qpow(q, r - sum));
  return total * RatX::monomial(1, -static_cast<int>(sum));
}

struct TruncatedSum {
  Rational value;
  Rational tailBound;  // |E - value| <= tailBound
};

// Partial sum over the first N + 1 nonvanishing shells, at integer s0 > 1.
inline TruncatedSum eisensteinTruncatedSum(long q, const std::vector<int>& n, long s0, long N) {
  if (s0 <= 1) throw MathError("series diverges for s <= 1");
  if (N < 0) throw MathError("term count must be nonnegative");
  int r = static_cast<int>(n.size());
  long sum = 0;
  for (int ni : n) sum += ni;
  long lo = *std::min_element(n.begin(), n.end());
  Rational detS = qpow(q, sum * s0);
  TruncatedSum out;
  for (long k = lo; k <= lo + N; ++k) out.value += Rational(eisensteinCount(q, n, k)) * qpow(q, -r * k * s0);
  out.value *= detS;
  // omitted shells below max n_i are summed exactly; from there count_k <= q^{rk - sum + r}
  // and the tail is geometric with ratio q^{r(1 - s0)}
  long hi = *std::max_element(n.begin(), n.end());
  long k = lo + N + 1;
  Rational exactPart = 0;
  for (; k < hi; ++k) exactPart += Rational(eisensteinCount(q, n, k)) * qpow(q, -r * k * s0);
  Rational firstOmitted = qpow(q, r * k - sum + r) * qpow(q, -r * k * s0);
  out.tailBound = (exactPart + firstOmitted / (1 - qpow(q, r * (1 - s0)))) * detS;
  return out;
}

// sum over c2 in A^{r-1}/c A^{r-1} of psi(a . c2 / c)
inline CycRat characterSum(const PolyVec& a, const Poly& c) {
  const GF& f = *c.F;
  if (c.isZero()) throw MathError("modulus must be nonzero");
  int k = static_cast<int>(a.size());
  CycRat sum(f.p);
  RatFunc cinv = RatFunc(Poly::one(f)) / RatFunc(c);
  std::vector<Poly> residues = c.deg() > 0 ? Poly::allUpToDegree(f, c.deg() - 1) : std::vector<Poly>{Poly(f)};
  std::vector<size_t> idx(k, 0);
  while (true) {
    RatFunc s = RatFunc::zero(f);
    for (int i = 0; i < k; ++i) s += RatFunc(a[i] * residues[idx[i]]) * cinv;
    sum += psi(s);
    int t = k - 1;
    while (t >= 0 && ++idx[t] == residues.size()) idx[t--] = 0;
    if (t < 0) break;
  }
  return sum;
}

// Fourier coefficient of E_r at (a, diag(T^n)). For a = 0 the recursive
// term |det y|^{s/(1-r)} E_{r-1}(y, rs/(r-1)) is kept symbolic.
struct EisensteinCoefficient {
  bool hasRecursiveTerm = false;
  RatX explicitTerm;
  std::string str() const {
    std::string e = explicitTerm.str();
    return hasRecursiveTerm ? "|det y|^{s/(1-r)} E_{r-1}(y, rs/(r-1)) + " + e : e;
  }
};

inline EisensteinCoefficient eisensteinFourier(const GF& f, const PolyVec& a, const std::vector<int>& n) {
  long q = static_cast<long>(f.q());
  int r = static_cast<int>(n.size()) + 1;
  if (a.size() != n.size()) throw MathError("coefficient vector must have r-1 entries");
  long sum = 0;
  for (int ni : n) sum += ni;
  // |det y|^{s-1} (q^r - q^{r-1})
  RatX prefactor = RatX::monomial(qpow(q, -sum) * (qpow(q, r) - qpow(q, r - 1)), -static_cast<int>(sum));
  // q^{r-1-rs} = q^{r-1} X^r
  RatX u(QPoly::monomial(qpow(q, r - 1), r), QPoly(1));
  EisensteinCoefficient out;
  if (isZeroVec(a)) {
    // sigma(r-1-rs, 0) = 1/(1 - q^r X^r)
    RatX sig = RatX(1) / (RatX(1) - RatX(QPoly::monomial(qpow(q, r), r), QPoly(1)));
    out.hasRecursiveTerm = true;
    out.explicitTerm = prefactor * sig / (RatX(1) - u);
    return out;
  }
  int m = mval(a, n);
  if (m <= 1) return out;
  // sigma(r-1-rs, a) = sum_{c | a} q^{(r-1) deg c} X^{r deg c}
  RatX sig;
  for (auto& c : monicDivisors(content(a, f))) sig = sig + RatX::monomial(qpow(q, (r - 1) * c.deg()), r * c.deg());
  RatX um(QPoly::monomial(qpow(q, static_cast<long>(r - 1) * (m - 1)), r * (m - 1)), QPoly(1));
  out.explicitTerm = prefactor * sig * (RatX(1) - um) / (RatX(1) - u);
  return out;
}

// constant + symbolCoeff * log Delta_{r-1}(y)
struct LogDeltaAffine {
  Rational constant;
  Rational symbolCoeff;
  std::string str() const {
    if (symbolCoeff == 0) return toString(constant);
    return toString(symbolCoeff) + "*logDelta_{r-1}(y) + " + toString(constant);
  }
};

inline LogDeltaAffine logDeltaFourier(const GF& f, int r, const PolyVec& a, const std::vector<int>& n) {
  if (static_cast<int>(a.size()) != r - 1 || n.size() != a.size()) throw MathError("a and y must have r-1 entries");
  long q = static_cast<long>(f.q());
  Rational invDet = 1 / absDetDiag(f, n);
  Rational qr1 = qpow(q, r - 1) - 1;
  LogDeltaAffine out;
  if (isZeroVec(a)) {
    out.symbolCoeff = (qpow(q, r) - 1) / qr1;
    out.constant = -(qpow(q, r) - qpow(q, r - 1)) / qr1 * invDet;
    return out;
  }
  int m = mval(a, n);
  if (m <= 1) return out;
  out.constant = (qpow(q, r) - 1) * (qpow(q, r) - qpow(q, r - 1)) / qr1 *
                 (1 - qpow(q, static_cast<long>(r - 1) * (m - 1))) * invDet * sigma(r - 1, a, f);
  return out;
}

struct ChainCase {
  long q = 0;
  int r = 0;
  PolyVec a;
  std::vector<int> n;
  Rational viaLogDelta;
  Rational viaFormula;
};

struct ChainReport {
  size_t checked = 0;
  std::vector<ChainCase> failures;
  bool pass() const { return failures.empty(); }
};

// log Delta*(a, y T^{-1}) - log Delta*(a, y) - (q^r - 1)[a = 0], with the
// symbol shifted by log Delta_{r-1}(y T^{-1}) = log Delta_{r-1}(y) + (q^{r-1} - 1)
inline Rational chainDifference(const GF& f, int r, const PolyVec& a, const std::vector<int>& n) {
  long q = static_cast<long>(f.q());
  std::vector<int> shifted = n;
  for (auto& k : shifted) --k;
  LogDeltaAffine at = logDeltaFourier(f, r, a, n), below = logDeltaFourier(f, r, a, shifted);
  if (at.symbolCoeff != below.symbolCoeff) throw MathError("symbol coefficients differ; elimination impossible");
  Rational d = below.constant + below.symbolCoeff * (qpow(q, r - 1) - 1) - at.constant;
  if (isZeroVec(a)) d -= qpow(q, r) - 1;
  return d;
}

inline ChainReport klfChainCheck(const std::vector<unsigned>& qs, const std::vector<int>& rs, int maxDegA, int nLo,
                                 int nHi) {
  ChainReport rep;
  for (unsigned q : qs) {
    const GF& f = GF::ofOrder(q);
    for (int r : rs) {
      int k = r - 1;
      std::vector<PolyVec> as{PolyVec{}};
      std::vector<Poly> polys = Poly::allUpToDegree(f, maxDegA);
      for (int i = 0; i < k; ++i) {
        std::vector<PolyVec> next;
        for (auto& pre : as)
          for (auto& p : polys) {
            auto v = pre;
            v.push_back(p);
            next.push_back(std::move(v));
          }
        as = std::move(next);
      }
      std::vector<std::vector<int>> ns{{}};
      for (int i = 0; i < k; ++i) {
        std::vector<std::vector<int>> next;
        for (auto& pre : ns)
          for (int v = nLo; v <= nHi; ++v) {
            auto w = pre;
            w.push_back(v);
            next.push_back(std::move(w));
          }
        ns = std::move(next);
      }
      for (auto& a : as)
        for (auto& n : ns) {
          Rational lhs = chainDifference(f, r, a, n), rhs = pDeltaCoefficient(f, r, a, n);
          ++rep.checked;
          if (lhs != rhs) rep.failures.push_back({static_cast<long>(q), r, a, n, lhs, rhs});
        }
    }
  }
  return rep;
}

}  // namespace hb
