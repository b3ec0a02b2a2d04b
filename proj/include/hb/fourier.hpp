#pragma once

#include "hb/building.hpp"
#include "hb/cyclo.hpp"
#include "hb/divisors.hpp"
#include "hb/laurent.hpp"

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hb {

inline constexpr int kInfM = INT_MAX;

// m(a, y) for y = diag(T^{n_i}): min_i (n_i - deg a_i), infinite for a = 0
inline int mval(const PolyVec& a, const std::vector<int>& n) {
  if (a.size() != n.size()) throw MathError("vector and matrix sizes differ");
  int m = kInfM;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].isZero()) m = std::min(m, n[i] - a[i].deg());
  return m;
}

// m(a, y) for general invertible y: valuation of a (y^t)^{-1}
inline int mval(const PolyVec& a, const FMat& y) {
  const GF& f = y.proto().field();
  FMat yti = y.transpose().inverse();
  int m = kInfM;
  for (int j = 0; j < y.cols; ++j) {
    RatFunc s = RatFunc::zero(f);
    for (int i = 0; i < y.rows; ++i) s += RatFunc(a.at(i)) * yti(i, j);
    if (!s.isZero()) m = std::min(m, s.ord());
  }
  return m;
}

inline Rational absDetDiag(const GF& f, const std::vector<int>& n) {
  long sum = 0;
  for (int k : n) sum += k;
  return qpow(static_cast<long>(f.q()), sum);
}

// all a with deg a_i <= n_i - 2, the support of a harmonic function's expansion at diag(T^n)
inline std::vector<PolyVec> supportVectors(const GF& f, const std::vector<int>& n) {
  std::vector<PolyVec> out{PolyVec{}};
  for (int ni : n) {
    std::vector<Poly> choices = ni >= 2 ? Poly::allUpToDegree(f, ni - 2) : std::vector<Poly>{Poly(f)};
    std::vector<PolyVec> next;
    for (auto& pre : out)
      for (auto& c : choices) {
        PolyVec v = pre;
        v.push_back(c);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

// psi(a . x) with x in F^{r-1}
inline CycRat psiDot(const PolyVec& a, const FVec& x, unsigned k = 1) {
  const GF& f = x.at(0).field();
  RatFunc s = RatFunc::zero(f);
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].isZero()) s += RatFunc(a[i]) * x[i];
  return psi(s, k);
}

// A function of (x, diag(T^n)) on P(F_inf).
using PFunction = std::function<CycRat(const FVec& x, const std::vector<int>& n)>;
// A Fourier coefficient family (a, diag(T^n)) -> h*(a, y).
using CoefficientFn = std::function<CycRat(const PolyVec& a, const std::vector<int>& n)>;

// The grid (pi O / pi^m O)^{k}: each coordinate sum_{j=1}^{m-1} c_j pi^j.
inline std::vector<FVec> residueGrid(const GF& f, int k, int m) {
  std::vector<FVec> out;
  for (auto& digits : allVectors(f, k * (m - 1))) {
    FVec u;
    for (int i = 0; i < k; ++i) {
      RatFunc x = RatFunc::zero(f);
      for (int j = 1; j < m; ++j) x += RatFunc::monomialT(f, digits[i * (m - 1) + j - 1], -j);
      u.push_back(x);
    }
    out.push_back(std::move(u));
  }
  return out;
}

// h*(a, y) = q^{(1-m)(r-1)} sum_{u in (pi O/pi^m O)^{r-1}} h(u, y) psi(-a . u), m = max n_i
inline CycRat fourierCoefficient(const PFunction& h, const PolyVec& a, const std::vector<int>& n, const GF& f) {
  int m = *std::max_element(n.begin(), n.end());
  if (m < 1) throw MathError("fourier coefficients need max n_i >= 1");
  int k = static_cast<int>(n.size());
  unsigned p = f.p;
  PolyVec neg;
  for (auto& x : a) neg.push_back(-x);
  CycRat sum(p);
  for (auto& u : residueGrid(f, k, m)) sum += h(u, n) * psiDot(neg, u);
  return sum * qpow(static_cast<long>(f.q()), static_cast<long>(1 - m) * k);
}

class FourierTable {
 public:
  std::vector<int> n;
  std::map<PolyVec, CycRat> entries;

  // h(x, y) = sum over deg a_i <= n_i - 2 of h*(a, y) psi(a . x)
  CycRat expand(const FVec& x, const GF& f) const {
    std::string missing;
    CycRat sum(f.p);
    for (auto& a : supportVectors(f, n)) {
      auto it = entries.find(a);
      if (it == entries.end()) {
        missing += (missing.empty() ? "" : ", ") + vecString(a);
        continue;
      }
      sum += it->second * psiDot(a, x);
    }
    if (!missing.empty()) throw MathError("fourier table incomplete, missing " + missing);
    return sum;
  }

  static std::string vecString(const PolyVec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].str();
    return s + ")";
  }
};

inline FourierTable tabulate(const CoefficientFn& hstar, const std::vector<int>& n, const GF& f) {
  FourierTable t;
  t.n = n;
  for (auto& a : supportVectors(f, n)) t.entries.emplace(a, hstar(a, n));
  return t;
}

// c_a(h) = |det y_a| q^{2(1-r)} h*(a, y_a), y_a = diag(T^{max(2, deg a_i + 2)})
inline CycRat normalizedCoefficient(const CoefficientFn& hstar, const PolyVec& a, const GF& f) {
  std::vector<int> ya;
  for (auto& x : a) ya.push_back(std::max(2, x.deg() + 2));
  long r = static_cast<long>(a.size()) + 1;
  return hstar(a, ya) * (absDetDiag(f, ya) * qpow(static_cast<long>(f.q()), 2 * (1 - r)));
}

struct LawReport {
  bool pass = true;
  size_t checked = 0;
  std::string witness;  // first violation
};

// h*(a, y d_i(T)) = q^{-1} h*(a, y) for all a supported at y and all i
inline LawReport coefficientHarmonicityCheck(const CoefficientFn& hstar, const std::vector<int>& n, const GF& f) {
  LawReport rep;
  Rational qinv = Rational(1, static_cast<long>(f.q()));
  for (auto& a : supportVectors(f, n)) {
    CycRat base = hstar(a, n);
    for (size_t i = 0; i < n.size(); ++i) {
      auto m = n;
      ++m[i];
      CycRat up = hstar(a, m);
      ++rep.checked;
      if (up != base * qinv && rep.pass) {
        rep.pass = false;
        rep.witness = "a=" + FourierTable::vecString(a) + " i=" + std::to_string(i + 2) + ": " + up.str() +
                      " != " + (base * qinv).str();
      }
    }
  }
  return rep;
}

}  // namespace hb
