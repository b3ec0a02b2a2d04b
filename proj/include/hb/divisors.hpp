#pragma once

#include "hb/poly.hpp"

#include <map>
#include <vector>

namespace hb {

using PolyVec = std::vector<Poly>;

inline std::vector<Poly> monicDivisors(const Poly& a) {
  if (a.isZero()) throw MathError("divisors of zero undefined");
  const GF& f = *a.F;
  std::vector<Poly> out{Poly::one(f)};
  for (auto& [prime, mult] : factor(a)) {
    std::vector<Poly> next;
    for (auto& d : out) {
      Poly pw = d;
      for (int k = 0; k <= mult; ++k) {
        next.push_back(pw);
        pw = pw * prime;
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool isZeroVec(const PolyVec& a) {
  for (auto& x : a)
    if (!x.isZero()) return false;
  return true;
}

// monic gcd of the entries; zero for the zero vector
inline Poly content(const PolyVec& a, const GF& f) {
  Poly g(f);
  for (auto& x : a) g = g.isZero() ? x.monic() : gcd(g, x);
  return g;
}

// sigma(s, a) = sum over monic common divisors c of |c|^s; for a = 0 the
// regularized value 1/(1 - q^{1+s}).
inline Rational sigma(long s, const PolyVec& a, const GF& f) {
  long q = static_cast<long>(f.q());
  if (isZeroVec(a)) {
    if (s == -1) throw MathError("sigma(-1, 0) is a pole");
    return 1 / (1 - qpow(q, 1 + s));
  }
  Rational sum = 0;
  for (auto& c : monicDivisors(content(a, f))) sum += qpow(q, s * c.deg());
  return sum;
}

// sigma_n(s, a): divisors not divisible by n; (1 - |n|^s) sigma(s, 0) at a = 0.
inline Rational sigmaRestricted(const Poly& n, long s, const PolyVec& a, const GF& f) {
  if (n.isZero()) throw MathError("level must be nonzero");
  long q = static_cast<long>(f.q());
  if (isZeroVec(a)) return (1 - qpow(q, s * n.deg())) * sigma(s, a, f);
  Rational sum = 0;
  Poly nm = n.monic();
  for (auto& c : monicDivisors(content(a, f)))
    if (!nm.divides(c)) sum += qpow(q, s * c.deg());
  return sum;
}

// Memoizes sigma by content; not thread-safe, use one per worker.
class SigmaCache {
 public:
  SigmaCache(const GF& f, long s) : f_(&f), s_(s) {}
  const Rational& operator()(const PolyVec& a) {
    Poly c = content(a, *f_);
    auto key = c.c;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_[key] = sigma(s_, {c}, *f_);
  }

 private:
  const GF* f_;
  long s_;
  std::map<std::vector<Elem>, Rational> memo_;
};

}  // namespace hb
