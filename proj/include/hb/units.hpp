#pragma once

#include "hb/discriminant.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace hb {

// ---------------------------------------------------------------------------
// Divisor-sum determinants

// Fraction-free elimination; exact for integer matrices, valid over Q.
inline Rational bareissDet(std::vector<std::vector<Rational>> m) {
  size_t n = m.size();
  if (n == 0) return 1;
  Rational prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct SigmaDetReport {
  std::vector<Poly> divisors;  // row/column order
  std::vector<std::vector<Rational>> matrix;
  Rational det;
  Rational expectedMagnitude;  // |n|^{s(2^{k-1}-1)}
  Rational statedValue;        // -|n|^{s(2^{k-1}-1)}
  bool magnitudeMatches = false;
  int sign = 0;
  bool signMatchesStated = false;
};

// det(sigma_{m'}(s, (m, ..., m)))_{m, m'} over monic divisors m != 1 of n = prod primes
inline SigmaDetReport sigmaDetCheck(const std::vector<Poly>& primes, long s) {
  size_t k = primes.size();
  if (k < 1 || k > 3) throw MathError("sigma determinant needs 1 to 3 primes");
  const GF& f = *primes[0].F;
  for (size_t i = 0; i < k; ++i) {
    if (!primes[i].isMonic() || !isIrreducible(primes[i])) throw MathError(primes[i].str() + " is not monic irreducible");
    for (size_t j = 0; j < i; ++j)
      if (primes[i] == primes[j]) throw MathError("repeated prime " + primes[i].str());
  }
  SigmaDetReport rep;
  // subsets in lexicographic order of the monomials x_{i1} ... x_{it}
  std::vector<std::vector<size_t>> subsets;
  for (size_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<size_t> sub;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) sub.push_back(i);
    subsets.push_back(sub);
  }
  std::sort(subsets.begin(), subsets.end());
  Poly n = Poly::one(f);
  for (auto& p : primes) n = n * p;
  for (auto& sub : subsets) {
    Poly d = Poly::one(f);
    for (size_t i : sub) d = d * primes[i];
    rep.divisors.push_back(d);
  }
  for (auto& m : rep.divisors) {
    std::vector<Rational> row;
    for (auto& mp : rep.divisors) row.push_back(sigmaRestricted(mp, s, {m}, f));
    rep.matrix.push_back(row);
  }
  rep.det = bareissDet(rep.matrix);
  long q = static_cast<long>(f.q());
  rep.expectedMagnitude = qpow(q, s * n.deg() * ((1L << (k - 1)) - 1));
  rep.statedValue = -rep.expectedMagnitude;
  rep.magnitudeMatches = abs(rep.det) == rep.expectedMagnitude;
  rep.sign = rep.det > 0 ? 1 : rep.det < 0 ? -1 : 0;
  rep.signMatchesStated = rep.det == rep.statedValue;
  return rep;
}

// ---------------------------------------------------------------------------
// Root orders

struct DeltaRootDatum {
  long maxRoot = 0;        // q - 1
  Rational witnessValue;   // P_1(Delta)(0, T I)
};

inline DeltaRootDatum rootOrderDelta(const GF& f, int r) {
  long q = static_cast<long>(f.q());
  DeltaRootDatum d;
  d.maxRoot = q - 1;
  d.witnessValue = pDeltaEval(f, r, std::vector<int>(r - 1, 1));
  return d;
}

struct RootDatum {
  Poly n;
  int r = 2;
  int kappa = 0;  // gcd(deg n, r)
  Integer maxRoot;
  Integer witnessIdentity;  // P_1(Theta_n)(0, T I) = (q-1)(|n|^{r-1}-1)
  Integer witnessShifted;   // P_1(Theta_n)((0,...,0,1/T), T^2 I) = (q-1)(q^{(d-1)(r-1)} - q)
  Integer witnessGcd;
  bool consistent = false;  // witnessGcd == maxRoot
};

inline RootDatum rootOrderTheta(const Poly& n, int r) {
  if (n.isZero() || !n.isMonic()) throw MathError("level must be monic and nonzero");
  if (r < 2) throw MathError("rank must be at least 2");
  const GF& f = *n.F;
  Integer q = f.q();
  int d = n.deg();
  RootDatum rd;
  rd.n = n;
  rd.r = r;
  rd.kappa = std::gcd(d, r);
  rd.maxRoot = (q - 1) * (ipow(q, rd.kappa) - 1);
  rd.witnessIdentity = (q - 1) * (ipow(q, static_cast<unsigned long>(d) * (r - 1)) - 1);
  rd.witnessShifted = (q - 1) * (ipow(q, static_cast<unsigned long>(d - 1) * (r - 1)) - q);
  rd.witnessGcd = igcd(rd.witnessIdentity, rd.witnessShifted);
  rd.consistent = rd.witnessGcd == rd.maxRoot;
  return rd;
}

// gcd((q-1)(q^d-1), q(q-1)(q^{(d-1)(r-1)-1}-1)) against (q-1)(q^{gcd(d,r)}-1);
// exponent -1 reads as the rational q^{-1}, scaled by the leading q
struct GcdSweepFailure {
  long q;
  int d, r;
  Integer lhs, rhs;
};

inline std::vector<GcdSweepFailure> gcdIdentitySweep(const std::vector<long>& qs, int maxD, int maxR, bool displayedForm) {
  std::vector<GcdSweepFailure> out;
  for (long qv : qs)
    for (int d = 1; d <= maxD; ++d)
      for (int r = 2; r <= maxR; ++r) {
        Integer q = qv;
        Integer a = displayedForm ? (q - 1) * (ipow(q, d) - 1) : (q - 1) * (ipow(q, static_cast<unsigned long>(d) * (r - 1)) - 1);
        Integer b = (q - 1) * (ipow(q, static_cast<unsigned long>(d - 1) * (r - 1)) - q);
        Integer lhs = igcd(a, b), rhs = (q - 1) * (ipow(q, std::gcd(d, r)) - 1);
        if (lhs != rhs) out.push_back({qv, d, r, lhs, rhs});
      }
  return out;
}

// o(omega_n) = (q-1)/gcd(q-1, m_1, ..., m_s, (r-1) deg n / kappa)
inline long characterOrder(const Poly& n, int r) {
  if (n.isZero() || n.deg() < 1) throw MathError("level must have positive degree");
  long q = static_cast<long>(n.F->q());
  int d = n.deg();
  long kappa = std::gcd(d, r);
  long g = q - 1;
  for (auto& [p, m] : factor(n)) g = std::gcd(g, static_cast<long>(m));
  g = std::gcd(g, static_cast<long>(r - 1) * d / kappa);
  return (q - 1) / g;
}

// ---------------------------------------------------------------------------
// Cusps of X_0(n)

struct OrbitReport {
  size_t total = 0;     // |(A/n)^r_prim / F_q^x|
  size_t expectedTotal = 0;
  std::vector<size_t> sizes;  // descending
  std::vector<std::string> representatives;
  size_t orbitCount() const { return sizes.size(); }
};

// Column action of the image of Gamma_0(n) on primitive vectors mod n, up to F_q^x.
class CuspOrbitProblem {
 public:
  static constexpr size_t kMaxSet = 1u << 20;

  CuspOrbitProblem(const Poly& n, int r) : f_(n.F), n_(n.monic()), r_(r) {
    if (n_.deg() < 1) throw MathError("level must have positive degree");
    if (!isSquarefree(n_)) throw MathError("level must be squarefree");
    if (r < 2) throw MathError("rank must be at least 2");
    for (auto& [p, m] : factor(n_)) primes_.push_back(p);
    residues_ = Poly::allUpToDegree(*f_, n_.deg() - 1);
    for (size_t i = 0; i < residues_.size(); ++i) index_[residues_[i].c] = i;
    double size = std::pow(static_cast<double>(residues_.size()), r);
    if (size > kMaxSet) throw MathError("orbit problem too large (|n|^r > 2^20); use smaller n or r");
  }

  OrbitReport run() const {
    size_t R = residues_.size();
    size_t total = 1;
    for (int i = 0; i < r_; ++i) total *= R;
    // canonical id per vector; -1 for non-primitive
    std::vector<long> canon(total, -1);
    std::vector<size_t> reps;
    for (size_t id = 0; id < total; ++id) {
      auto v = decode(id);
      if (!primitive(v)) continue;
      canon[id] = static_cast<long>(canonical(v));
      if (canon[id] == static_cast<long>(id)) reps.push_back(id);
    }
    auto gens = generators();
    std::unordered_map<size_t, size_t> seen;  // canonical id -> orbit index
    OrbitReport rep;
    rep.total = reps.size();
    long q = static_cast<long>(f_->q());
    double expected = 1;
    for (auto& p : primes_) expected *= std::pow(static_cast<double>(f_->q()), p.deg() * r_) - 1;
    rep.expectedTotal = static_cast<size_t>(expected / (q - 1));
    for (size_t start : reps) {
      if (seen.count(start)) continue;
      size_t orbit = rep.sizes.size();
      std::vector<size_t> frontier{start};
      seen[start] = orbit;
      size_t count = 1;
      while (!frontier.empty()) {
        size_t cur = frontier.back();
        frontier.pop_back();
        auto v = decode(cur);
        for (auto& g : gens) {
          size_t nid = static_cast<size_t>(canon[encode(apply(g, v))]);
          if (seen.emplace(nid, orbit).second) {
            frontier.push_back(nid);
            ++count;
          }
        }
      }
      rep.sizes.push_back(count);
      rep.representatives.push_back(vecString(decode(start)));
    }
    std::vector<size_t> order(rep.sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return rep.sizes[a] > rep.sizes[b]; });
    OrbitReport sorted = rep;
    for (size_t i = 0; i < order.size(); ++i) {
      sorted.sizes[i] = rep.sizes[order[i]];
      sorted.representatives[i] = rep.representatives[order[i]];
    }
    return sorted;
  }

 private:
  using Vec = std::vector<Poly>;
  using Mat = std::vector<std::vector<Poly>>;
  const GF* f_;
  Poly n_;
  int r_;
  std::vector<Poly> primes_;
  std::vector<Poly> residues_;
  std::map<std::vector<Elem>, size_t> index_;

  Vec decode(size_t id) const {
    Vec v(r_);
    for (int i = r_ - 1; i >= 0; --i) {
      v[i] = residues_[id % residues_.size()];
      id /= residues_.size();
    }
    return v;
  }
  size_t encode(const Vec& v) const {
    size_t id = 0;
    for (auto& x : v) id = id * residues_.size() + index_.at(x.c);
    return id;
  }
  bool primitive(const Vec& v) const {
    for (auto& p : primes_) {
      bool nonzero = false;
      for (auto& x : v) nonzero = nonzero || !(x % p).isZero();
      if (!nonzero) return false;
    }
    return true;
  }
  size_t canonical(const Vec& v) const {
    size_t best = encode(v);
    for (Elem c = 2; c < f_->q(); ++c) {
      Vec w = v;
      for (auto& x : w) x = x * Poly::constant(*f_, c);
      best = std::min(best, encode(w));
    }
    return best;
  }
  Vec apply(const Mat& g, const Vec& v) const {
    Vec out(r_, Poly(*f_));
    for (int i = 0; i < r_; ++i) {
      Poly s(*f_);
      for (int j = 0; j < r_; ++j) s = s + g[i][j] * v[j];
      out[i] = s % n_;
    }
    return out;
  }
  Mat identity() const {
    Mat m(r_, std::vector<Poly>(r_, Poly(*f_)));
    for (int i = 0; i < r_; ++i) m[i][i] = Poly::one(*f_);
    return m;
  }
  // Transvections e_ij(T^k) off the (i >= 2, j = 1) block, det-one torus
  // elements diag(u, 1, ..., u^{-1}) and diag(c, 1, ..., 1), c in F_q^x.
  std::vector<Mat> generators() const {
    std::vector<Mat> gens;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) {
        if (i == j || (j == 0 && i > 0)) continue;
        for (int k = 0; k < n_.deg(); ++k) {
          Mat m = identity();
          m[i][j] = Poly::monomial(*f_, 1, k);
          gens.push_back(m);
        }
      }
    for (auto& u : residues_) {
      if (u.isZero() || !gcd(u, n_).isOne()) continue;
      auto [g, s, t] = xgcd(u, n_);
      Poly inv = s % n_;
      Mat m = identity();
      m[0][0] = u;
      m[r_ - 1][r_ - 1] = r_ > 1 ? inv : u;
      gens.push_back(m);
    }
    for (Elem c = 2; c < f_->q(); ++c) {
      Mat m = identity();
      m[0][0] = Poly::constant(*f_, c);
      gens.push_back(m);
    }
    return gens;
  }
  static std::string vecString(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
  }
};

inline OrbitReport cuspOrbits(const Poly& n, int r) { return CuspOrbitProblem(n, r).run(); }

struct CuspidalOrder {
  Integer order;                // (|p|^{r-1}-1)/gcd(|p|-1, q^r-1)
  Integer poleOrderAtInfinity;  // ord_[inf](Theta_p), quoted constant
  bool divisible = false;
};

inline CuspidalOrder cuspidalOrder(const Poly& p, int r) {
  if (!p.isMonic() || !isIrreducible(p)) throw MathError(p.str() + " is not monic irreducible");
  if (r < 2) throw MathError("rank must be at least 2");
  Integer q = p.F->q();
  Integer absP = ipow(q, p.deg());
  Integer top = ipow(absP, r - 1) - 1;
  Integer g = igcd(absP - 1, ipow(q, r) - 1);
  CuspidalOrder out;
  out.divisible = top % g == 0;
  out.order = top / g;
  out.poleOrderAtInfinity = -top;
  return out;
}

}  // namespace hb
