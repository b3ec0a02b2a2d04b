#pragma once

#include "hb/fourier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hb {

// P_1(Delta_r) when level is empty, P_1(Theta_n) otherwise.
struct UnitFamily {
  const GF* field = nullptr;
  int r = 2;
  std::optional<Poly> level;

  static UnitFamily delta(const GF& f, int r) { return {&f, r, std::nullopt}; }
  static UnitFamily theta(const GF& f, int r, const Poly& n) {
    if (n.isZero()) throw MathError("level must be nonzero");
    return {&f, r, n.monic()};
  }
  bool isTheta() const { return level.has_value(); }
  long q() const { return static_cast<long>(field->q()); }
  std::string name() const { return isTheta() ? "theta(" + level->str() + ")" : "delta"; }
};

// (q^r - 1)(q - 1) q^{r-1}
inline Rational coefficientConstant(long q, int r) { return (qpow(q, r) - 1) * (q - 1) * qpow(q, r - 1); }

// Fourier coefficient of P_1(Delta_r) at (a, diag(T^n)); zero off the support m >= 2
inline Rational pDeltaCoefficient(const GF& f, int r, const PolyVec& a, const std::vector<int>& n) {
  if (static_cast<int>(a.size()) != r - 1) throw MathError("coefficient vector must have r-1 entries");
  if (mval(a, n) <= 1) return 0;
  long q = static_cast<long>(f.q());
  Rational invDet = 1 / absDetDiag(f, n);
  if (isZeroVec(a)) return -(q - 1) * qpow(q, r - 1) * invDet;
  return coefficientConstant(q, r) * invDet * sigma(r - 1, a, f);
}

// Fourier coefficient of P_1(Theta_n): sigma replaced by sigma_n
inline Rational pThetaCoefficient(const GF& f, int r, const Poly& level, const PolyVec& a, const std::vector<int>& n) {
  if (static_cast<int>(a.size()) != r - 1) throw MathError("coefficient vector must have r-1 entries");
  if (mval(a, n) <= 1) return 0;
  long q = static_cast<long>(f.q());
  return coefficientConstant(q, r) / absDetDiag(f, n) * sigmaRestricted(level.monic(), r - 1, a, f);
}

inline Rational familyCoefficient(const UnitFamily& fam, const PolyVec& a, const std::vector<int>& n) {
  return fam.isTheta() ? pThetaCoefficient(*fam.field, fam.r, *fam.level, a, n)
                       : pDeltaCoefficient(*fam.field, fam.r, a, n);
}

// P_1(Delta_r)(x, diag(T^n)) when every n_i <= 1; only a = 0 contributes
inline Rational pDeltaEval(const GF& f, int r, const std::vector<int>& n) {
  if (static_cast<int>(n.size()) != r - 1) throw MathError("y must have r-1 diagonal exponents");
  long sum = 0;
  for (int k : n) {
    if (k > 1) throw MathError("closed form needs all n_i <= 1");
    sum += k;
  }
  long q = static_cast<long>(f.q());
  return -(q - 1) * qpow(q, r - 1 - sum);
}

// P(Delta_r) on the chamber edge (L_k, L_{k + (1,0,...,0)})
inline Rational weylEdgeValue(long q, const std::vector<int>& k) {
  int r = static_cast<int>(k.size());
  if (r < 2) throw MathError("chamber vector needs r >= 2 entries");
  for (int i = 1; i < r; ++i)
    if (k[i] > k[i - 1]) throw MathError("chamber vector must be weakly decreasing");
  if (k.back() != 0) throw MathError("chamber vector must end in 0");
  long rest = 0;
  for (int i = 1; i < r; ++i) rest += k[i];
  return -(q - 1) * qpow(q, static_cast<long>(r - 1) * (k[0] + 1) - rest);
}

// sum over deg a_i <= n_i - 2 of coefficient(a) psi(a . x); the cyclotomic
// total must be rational
inline Rational seriesEval(const UnitFamily& fam, const FVec& x, const std::vector<int>& n, unsigned psiTwist = 1) {
  const GF& f = *fam.field;
  int k = fam.r - 1;
  if (static_cast<int>(x.size()) != k || static_cast<int>(n.size()) != k) throw MathError("x and y must have r-1 entries");
  // xi[i][j] = coefficient of pi^{1+j} in x_i, so psi(a . x) reads sum a_{ij} xi[i][j]
  std::vector<std::vector<Elem>> xi(k);
  for (int i = 0; i < k; ++i)
    if (n[i] >= 2) xi[i] = x[i].expand(1, n[i]);
  std::map<Poly, Rational> byContent;
  auto coefficientOf = [&](const PolyVec& a) -> const Rational& {
    Poly c = content(a, f);
    auto it = byContent.find(c);
    if (it != byContent.end()) return it->second;
    return byContent[c] = familyCoefficient(fam, a, n);
  };
  CycAccumulator acc(f.p);
  for (auto& a : supportVectors(f, n)) {
    Elem s = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= a[i].deg(); ++j) s = f.add(s, f.mul(a[i].c[j], xi[i][j]));
    acc.add(static_cast<unsigned>((static_cast<unsigned long>(f.trace(s)) * psiTwist) % f.p), coefficientOf(a));
  }
  CycRat v = acc.value();
  if (!v.isRational())
    throw MathError("internal consistency: character sum " + v.str() + " is not rational (psi convention bug)");
  return v.c[0];
}

// (x, n) with g in P(F) F^x I^1 equivalent, up to Gamma_inf, to [[1, x y],[0, y]], y = diag(T^n)
struct PPointForm {
  FVec x;
  std::vector<int> n;
};

inline PPointForm parabolicForm(const FMat& g) {
  int r = g.rows;
  Iwasawa dec = iwasawaDecompose(g);
  if (dec.flip) throw Unevaluable("argument lies in the flip coset P w F^x I^1");
  FMat d = dec.p.block(1, 1, r - 1, r - 1);
  FMat b = dec.p.block(0, 1, 1, r - 1);
  DiagonalReduction red = reduceToDiagonal(d);
  FMat x = b * d.inverse() * red.gamma.inverse();
  return {x.row(0), red.exponents};
}

inline Rational evalOnParabolic(const UnitFamily& fam, const FMat& g, unsigned psiTwist = 1) {
  PPointForm pf = parabolicForm(g);
  return seriesEval(fam, pf.x, pf.n, psiTwist);
}

// ---------------------------------------------------------------------------
// Witnesses gamma in Gamma_0(n) moving g into the parabolic coset

// E in GL_r(A) and a unit u with E c = u e_1, for primitive c
inline FMat unimodularCompletion(const std::vector<Poly>& c) {
  const GF& f = *c.at(0).F;
  int r = static_cast<int>(c.size());
  std::vector<Poly> v = c;
  FMat E = identityMat(f, r);
  while (true) {
    int piv = -1;
    for (int i = 0; i < r; ++i)
      if (!v[i].isZero() && (piv < 0 || v[i].deg() < v[piv].deg())) piv = i;
    if (piv < 0) throw MathError("zero column cannot be completed");
    bool done = true;
    for (int i = 0; i < r; ++i) {
      if (i == piv || v[i].isZero()) continue;
      done = false;
      Poly t = v[i] / v[piv];
      v[i] = v[i] - t * v[piv];
      RatFunc tt(t);
      for (int j = 0; j < r; ++j) E(i, j) = E(i, j) - tt * E(piv, j);
    }
    if (done) {
      if (v[piv].deg() != 0) throw MathError("column is not primitive");
      if (piv != 0) {
        E.swapRows(0, piv);
        std::swap(v[0], v[piv]);
      }
      // M = E^{-1} diag(u, 1, ...) has first column c
      FMat M = E.inverse();
      RatFunc u(v[0]);
      for (int i = 0; i < r; ++i) M(i, 0) = M(i, 0) * u;
      return M;
    }
  }
}

struct Witness {
  FMat gamma;        // in Gamma_0(n), gamma g in P F^x I^1
  std::vector<Poly> column;  // first column of gamma^{-1}
  std::string str() const {
    return gamma.str();
  }
};

// Up to `count` witnesses, in order of (max degree, then lexicographic) of
// the first column (c_1, n t_2, ..., n t_r) of gamma^{-1}, entries of degree <= bound.
inline std::vector<Witness> findWitnesses(const FMat& g, const Poly& level, int bound, size_t count = 1) {
  const GF& f = g.proto().field();
  int r = g.rows;
  FMat gi = g.inverse();
  Poly n = level.monic();
  std::vector<Witness> out;
  int tBound = bound - n.deg();
  if (tBound < 0) return out;
  for (int d = 0; d <= bound && out.size() < count; ++d) {
    // coordinates: c_1 (deg <= d), t_i (deg <= d - deg n); max degree of the column exactly d
    std::vector<std::vector<Poly>> choices(r);
    choices[0] = Poly::allUpToDegree(f, d);
    for (int i = 1; i < r; ++i) choices[i] = d - n.deg() >= 0 ? Poly::allUpToDegree(f, d - n.deg()) : std::vector<Poly>{Poly(f)};
    std::vector<size_t> idx(r, 0);
    while (out.size() < count) {
      std::vector<Poly> col(r);
      col[0] = choices[0][idx[0]];
      int maxDeg = col[0].deg();
      for (int i = 1; i < r; ++i) {
        col[i] = n * choices[i][idx[i]];
        maxDeg = std::max(maxDeg, col[i].deg());
      }
      if (maxDeg == d) {
        Poly gc = content(col, f);
        if (gc.isOne()) {
          // first column of (gamma g)^{-1} = g^{-1} c
          std::vector<RatFunc> w(r, RatFunc::zero(f));
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
              if (!col[j].isZero()) w[i] += gi(i, j) * RatFunc(col[j]);
          bool ok = !w[0].isZero();
          for (int i = 1; i < r && ok; ++i) ok = w[i].isZero() || w[i].ord() > w[0].ord();
          if (ok) {
            FMat M = unimodularCompletion(col);
            out.push_back({M.inverse(), col});
          }
        }
      }
      int k = r - 1;
      while (k >= 0 && ++idx[k] == choices[k].size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  return out;
}

struct EdgeEvaluation {
  Rational value;
  bool usedWitness = false;
  std::optional<Witness> witness;
};

// P_1(Theta_n)(g) for any g, through Gamma_0(n)-invariance on the flip coset
inline EdgeEvaluation evalThetaOnEdge(const UnitFamily& fam, const FMat& g, int witnessBound = -1,
                                      size_t witnessIndex = 0, unsigned psiTwist = 1) {
  if (!fam.isTheta()) throw MathError("edge evaluation needs a level");
  EdgeEvaluation out;
  if (inParabolicCoset(g)) {
    out.value = evalOnParabolic(fam, g, psiTwist);
    return out;
  }
  int bound = witnessBound >= 0 ? witnessBound : fam.level->deg() + 2;
  auto ws = findWitnesses(g, *fam.level, bound, witnessIndex + 1);
  if (ws.size() <= witnessIndex)
    throw MathError("unreachable within bound D=" + std::to_string(bound) + " (raise --witness-bound)");
  out.usedWitness = true;
  out.witness = ws[witnessIndex];
  out.value = evalOnParabolic(fam, out.witness->gamma * g, psiTwist);
  return out;
}

// h_1 for the family: Theta everywhere, Delta on the parabolic coset only
inline GLFunction familyFunction(const UnitFamily& fam, int witnessBound = -1) {
  if (fam.isTheta()) return [fam, witnessBound](const FMat& g) { return evalThetaOnEdge(fam, g, witnessBound).value; };
  return [fam](const FMat& g) { return evalOnParabolic(fam, g); };
}

}  // namespace hb
