#include "hb/discriminant.hpp"
#include "hb/eisenstein.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hb;

namespace {

Poly P(const GF& f, const std::string& s) { return parsePoly(f, s); }

// #{v != 0 in A^r : deg v_i + n_i <= k}, by enumeration
long countDiagonal(const GF& f, const std::vector<int>& n, int k) {
  long total = 1;
  for (int ni : n) total *= static_cast<long>(k - ni >= 0 ? Poly::allUpToDegree(f, k - ni).size() : 1);
  return total - 1;
}

// #{v != 0 in A^2 : |v g(x)| <= q^k}, g(x) = [[1, x T^n], [0, T^n]], |x| < 1
long countParabolic(const GF& f, const RatFunc& x, int n, int k) {
  long c = 0;
  RatFunc y = RatFunc::monomialT(f, 1, n);
  // |v2| <= max(|v1 x|, |v1 x + v2|) < q^k
  auto v1s = Poly::allUpToDegree(f, k), v2s = Poly::allUpToDegree(f, k - 1);
  for (auto& v1 : v1s)
    for (auto& v2 : v2s) {
      if (v1.isZero() && v2.isZero()) continue;
      RatFunc w = (RatFunc(v1) * x + RatFunc(v2)) * y;
      if (v1.deg() <= k && (w.isZero() || -w.ord() <= k)) ++c;
    }
  return c;
}

// power series coefficients of X^shift F(X), j = 0..count-1
std::vector<Rational> series(const RatX& F, int shift, int count) {
  int e = 0;
  while (F.den.coeff(e) == 0) ++e;
  if (shift < e) throw MathError("pole of order above the shift");
  std::vector<Rational> d;
  for (int i = e; i <= F.den.deg(); ++i) d.push_back(F.den.coeff(i));
  std::vector<Rational> out(count);
  int off = shift - e;
  // out = X^off num / d
  std::vector<Rational> quo(count);
  for (int j = 0; j < count; ++j) {
    Rational acc = F.num.coeff(j - off);
    for (int i = 1; i < static_cast<int>(d.size()) && i <= j; ++i) acc -= d[i] * quo[j - i];
    quo[j] = acc / d[0];
  }
  return quo;
}

// F(X) -> F(X^k)
RatX substitutePower(const RatX& F, int k) {
  auto spread = [k](const QPoly& p) {
    QPoly out;
    for (int i = 0; i <= p.deg(); ++i) out = out + QPoly::monomial(p.coeff(i), i * k);
    return out;
  };
  return RatX(spread(F.num), spread(F.den));
}

}  // namespace

TEST(EisensteinDiagonal, IdentityExample) {
  RatX e = eisensteinDiagonal(2, {0, 0});
  EXPECT_EQ(e.evalAtS(2, 2), Rational(64, 15));
  RatX expected = RatX(4) / (RatX(1) - RatX::monomial(4, 2)) - RatX(1) / (RatX(1) - RatX::monomial(1, 2));
  EXPECT_EQ(e, expected);
}

TEST(EisensteinDiagonal, PermutationAndShiftInvariance) {
  for (long q : {2, 3})
    for (auto n : {std::vector<int>{0, 2}, std::vector<int>{1, 3, 4}, std::vector<int>{-1, 0, 2}}) {
      RatX base = eisensteinDiagonal(q, n);
      auto m = n;
      std::reverse(m.begin(), m.end());
      EXPECT_EQ(eisensteinDiagonal(q, m), base);
      for (int c : {-2, 1, 5}) {
        auto s = n;
        for (auto& x : s) x += c;
        EXPECT_EQ(eisensteinDiagonal(q, s), base) << "shift " << c;
      }
    }
}

TEST(EisensteinDiagonal, PolesAtZeroAndOne) {
  for (long q : {2, 3, 4})
    for (auto n : {std::vector<int>{0, 0}, std::vector<int>{0, 1}, std::vector<int>{0, 1, 3}}) {
      auto poles = eisensteinDiagonal(q, n).positivePoles(q);
      std::sort(poles.begin(), poles.end());
      EXPECT_EQ(poles, (std::vector<Rational>{Rational(1, q), Rational(1)})) << "q=" << q;
    }
}

TEST(EisensteinDiagonal, SeriesMatchesLatticeCounts) {
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    for (auto n : {std::vector<int>{0, 0}, std::vector<int>{0, 2}, std::vector<int>{0, 1, 1}}) {
      int r = static_cast<int>(n.size()), sum = 0;
      for (int x : n) sum += x;
      auto coeffs = series(eisensteinDiagonal(q, n), sum, r * 5);
      for (int k = 0; k < 5; ++k) {
        EXPECT_EQ(Integer(countDiagonal(f, n, k)), eisensteinCount(q, n, k));
        EXPECT_EQ(coeffs[r * k], Rational(countDiagonal(f, n, k))) << "q=" << q << " k=" << k;
      }
    }
  }
}

TEST(EisensteinTruncatedSum, Examples) {
  EXPECT_EQ(eisensteinTruncatedSum(2, {0, 0}, 2, 0).value, 3);
  auto t = eisensteinTruncatedSum(2, {0, 0}, 2, 8);
  Rational exact(64, 15);
  EXPECT_LE(abs(exact - t.value), t.tailBound);
  EXPECT_LT(abs(exact - t.value), Rational(1, 1000));
  EXPECT_THROW(eisensteinTruncatedSum(2, {0, 0}, 1, 4), MathError);
}

TEST(EisensteinTruncatedSum, WithinTailBoundOfClosedForm) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ni(-2, 3), si(2, 4), Ni(0, 10), ri(2, 3);
  for (int t = 0; t < 20; ++t) {
    long q = t % 2 ? 2 : 3;
    std::vector<int> n(ri(rng));
    for (auto& x : n) x = ni(rng);
    long s = si(rng), N = Ni(rng);
    Rational exact = eisensteinDiagonal(q, n).evalAtS(q, s);
    auto ts = eisensteinTruncatedSum(q, n, s, N);
    EXPECT_GE(exact - ts.value, 0);
    EXPECT_LE(exact - ts.value, ts.tailBound);
  }
}

TEST(EisensteinFourier, VanishesOffSupport) {
  const GF& f = GF::ofOrder(2);
  EXPECT_TRUE(eisensteinFourier(f, {P(f, "T")}, {2}).explicitTerm.isZero());
  EXPECT_TRUE(eisensteinFourier(f, {P(f, "T^2+1")}, {2}).explicitTerm.isZero());
}

TEST(EisensteinFourier, Example) {
  const GF& f = GF::ofOrder(2);
  auto c = eisensteinFourier(f, {P(f, "1")}, {2});
  EXPECT_FALSE(c.hasRecursiveTerm);
  EXPECT_EQ(c.explicitTerm, RatX::monomial(Rational(1, 2), -2));
}

// the defining integral over the residue grid, with lattice counts enumerated shell by shell
TEST(EisensteinFourier, MatchesLatticeCountBruteForce) {
  struct Case {
    unsigned q;
    const char* a;
    int n;
  };
  const int K = 5;
  for (auto& cs : {Case{2, "1", 2}, Case{2, "T", 3}, Case{2, "T+1", 4}, Case{3, "1", 2}, Case{2, "0", 2}, Case{3, "0", 3}}) {
    const GF& f = GF::ofOrder(cs.q);
    PolyVec a{P(f, cs.a)};
    auto c = eisensteinFourier(f, a, {cs.n});
    RatX total = c.explicitTerm;
    if (c.hasRecursiveTerm) {
      // |det y|^{-s} E_1(y, 2s): X^n times E_1 in X^2
      total = total + RatX::monomial(1, cs.n) * substitutePower(eisensteinDiagonal(cs.q, {cs.n}), 2);
    }
    auto coeffs = series(total, cs.n, 2 * K);
    for (int k = 0; k < K; ++k) {
      PFunction h = [&](const FVec& x, const std::vector<int>&) { return CycRat(f.p, countParabolic(f, x[0], cs.n, k)); };
      CycRat brute = fourierCoefficient(h, a, {cs.n}, f);
      EXPECT_EQ(brute, CycRat(f.p, coeffs[2 * k])) << "q=" << cs.q << " a=" << cs.a << " n=" << cs.n << " k=" << k;
      EXPECT_EQ(coeffs[2 * k + 1], 0);
    }
  }
}

TEST(CharacterSum, DivisibilityLemma) {
  // sum over c2 in A^k / c A^k of psi(a . c2 / c) is |c|^k if c | a, else 0
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    for (int dc = 0; dc <= 2; ++dc)
      for (auto& c : Poly::monicOfDegree(f, dc))
        for (int k : {1, 2}) {
          auto entries = Poly::allUpToDegree(f, k == 1 ? 3 : 1);
          std::vector<PolyVec> as;
          for (auto& x : entries) {
            if (k == 1) {
              as.push_back({x});
            } else {
              for (auto& y : entries) as.push_back({x, y});
            }
          }
          for (auto& a : as) {
            bool divides = true;
            for (auto& x : a) divides = divides && c.divides(x);
            Rational want = divides ? rpow(c.absValue(), k) : Rational(0);
            EXPECT_EQ(characterSum(a, c), CycRat(f.p, want)) << "c=" << c.str() << " a=" << FourierTable::vecString(a);
          }
        }
  }
}

TEST(LogDelta, Examples) {
  const GF& f = GF::ofOrder(2);
  EXPECT_EQ(logDeltaFourier(f, 2, {P(f, "1")}, {2}).constant, Rational(-3, 2));
  EXPECT_EQ(logDeltaFourier(f, 2, {P(f, "1")}, {2}).symbolCoeff, 0);
  EXPECT_EQ(logDeltaFourier(f, 2, {Poly(f)}, {2}).symbolCoeff, 3);
  auto z = logDeltaFourier(f, 2, {P(f, "T")}, {2});  // m = 1
  EXPECT_EQ(z.constant, 0);
  EXPECT_EQ(z.symbolCoeff, 0);
}

TEST(LogDelta, SymbolCoefficientAtZero) {
  for (unsigned q : {2u, 3u, 4u})
    for (int r : {2, 3}) {
      const GF& f = GF::ofOrder(q);
      Rational want = (qpow(q, r) - 1) / (qpow(q, r - 1) - 1);
      EXPECT_EQ(logDeltaFourier(f, r, PolyVec(r - 1, Poly(f)), std::vector<int>(r - 1, 2)).symbolCoeff, want);
    }
}

TEST(KlfChain, Examples) {
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(chainDifference(f2, 2, {Poly(f2)}, {2}), Rational(-1, 2));
  EXPECT_EQ(chainDifference(f2, 2, {Poly(f2)}, {2}), pDeltaCoefficient(f2, 2, {Poly(f2)}, {2}));
  const GF& f3 = GF::ofOrder(3);
  PolyVec a{P(f3, "1"), P(f3, "1")};
  Rational want = Rational(26 * 2 * 9, 81);
  EXPECT_EQ(chainDifference(f3, 3, a, {2, 2}), want);
  EXPECT_EQ(pDeltaCoefficient(f3, 3, a, {2, 2}), want);
  // boundary m = 2
  EXPECT_EQ(chainDifference(f2, 2, {P(f2, "T")}, {3}), pDeltaCoefficient(f2, 2, {P(f2, "T")}, {3}));
}

TEST(KlfChain, FullGrid) {
  auto rep = klfChainCheck({2, 3}, {2, 3}, 2, -1, 4);
  EXPECT_GT(rep.checked, 10000u);
  EXPECT_TRUE(rep.failures.empty()) << rep.failures.size() << " failures";
}
