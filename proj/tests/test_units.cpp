#include "hb/units.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hb;

namespace {

Poly P(const GF& f, const std::string& s) { return parsePoly(f, s); }

Rational cofactorDet(const std::vector<std::vector<Rational>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational d = 0;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    d += (j % 2 ? -1 : 1) * m[0][j] * cofactorDet(minor);
  }
  return d;
}

std::vector<Poly> firstIrreducibles(const GF& f, size_t k) {
  std::vector<Poly> out;
  for (int d = 1; out.size() < k; ++d)
    for (auto& p : Poly::monicOfDegree(f, d))
      if (out.size() < k && isIrreducible(p)) out.push_back(p);
  return out;
}

}  // namespace

TEST(Bareiss, MatchesCofactorExpansion) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  for (size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 10; ++t) {
      std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
      for (auto& row : m)
        for (auto& x : row) x = t % 3 == 0 && num(rng) > 2 ? Rational(0) : Rational(num(rng), den(rng));
      EXPECT_EQ(bareissDet(m), cofactorDet(m));
    }
}

TEST(SigmaDet, SinglePrime) {
  const GF& f = GF::ofOrder(3);
  auto rep = sigmaDetCheck({P(f, "T+1")}, 2);
  EXPECT_EQ(rep.det, 1);
  EXPECT_EQ(rep.statedValue, -1);
  EXPECT_TRUE(rep.magnitudeMatches);
  EXPECT_FALSE(rep.signMatchesStated);
}

TEST(SigmaDet, TwoPrimesOverF2) {
  const GF& f = GF::ofOrder(2);
  auto rep = sigmaDetCheck({P(f, "T"), P(f, "T+1")}, 1);
  EXPECT_EQ(rep.divisors.size(), 3u);
  EXPECT_EQ(abs(rep.det), 4);
}

TEST(SigmaDet, MagnitudeLawAndSignPattern) {
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    auto primes = firstIrreducibles(f, 3);
    for (size_t k = 1; k <= 3; ++k)
      for (long s = 1; s <= 3; ++s) {
        auto rep = sigmaDetCheck({primes.begin(), primes.begin() + k}, s);
        EXPECT_TRUE(rep.magnitudeMatches) << "q=" << q << " k=" << k << " s=" << s;
        EXPECT_EQ(rep.sign, k % 2 ? 1 : -1) << "q=" << q << " k=" << k << " s=" << s;
      }
  }
}

TEST(SigmaDet, RejectsRepeatedPrimes) {
  const GF& f = GF::ofOrder(2);
  EXPECT_THROW(sigmaDetCheck({P(f, "T"), P(f, "T")}, 1), MathError);
  EXPECT_THROW(sigmaDetCheck({P(f, "T^2")}, 1), MathError);
}

TEST(RootOrder, Delta) {
  for (unsigned q : {2u, 3u, 4u})
    for (int r : {2, 3}) {
      const GF& f = GF::ofOrder(q);
      auto d = rootOrderDelta(f, r);
      EXPECT_EQ(d.maxRoot, static_cast<long>(q) - 1);
      FVec zero(r - 1, RatFunc::zero(f));
      EXPECT_EQ(d.witnessValue, seriesEval(UnitFamily::delta(f, r), zero, std::vector<int>(r - 1, 1)));
      EXPECT_EQ(boost::multiprecision::denominator(d.witnessValue), 1);
      EXPECT_EQ(boost::multiprecision::numerator(d.witnessValue) % d.maxRoot, 0) << "q=" << q << " r=" << r;
    }
  EXPECT_EQ(rootOrderDelta(GF::ofOrder(2), 3).witnessValue, -1);
}

TEST(RootOrder, ThetaExamples) {
  const GF& f = GF::ofOrder(2);
  EXPECT_EQ(rootOrderTheta(P(f, "T"), 2).maxRoot, 1);
  EXPECT_EQ(rootOrderTheta(P(f, "T^2+T+1"), 2).maxRoot, 3);
}

TEST(RootOrder, WitnessesComeFromTheSeries) {
  for (unsigned q : {2u, 3u})
    for (int r : {2, 3}) {
      const GF& f = GF::ofOrder(q);
      for (const char* level : {"T", "T^2+1", "T^3+T+1"}) {
        Poly n = P(f, level);
        auto rd = rootOrderTheta(n, r);
        auto fam = UnitFamily::theta(f, r, n);
        FVec x(r - 1, RatFunc::zero(f));
        EXPECT_EQ(Rational(rd.witnessIdentity), seriesEval(fam, x, std::vector<int>(r - 1, 1)));
        x.back() = RatFunc::pi(f);
        EXPECT_EQ(Rational(rd.witnessShifted), seriesEval(fam, x, std::vector<int>(r - 1, 2)));
        EXPECT_EQ(rd.witnessIdentity % rd.maxRoot, 0);
        EXPECT_EQ(rd.witnessShifted % rd.maxRoot, 0);
        EXPECT_TRUE(rd.consistent) << "q=" << q << " r=" << r << " n=" << level;
      }
    }
}

TEST(RootOrder, GcdSweeps) {
  EXPECT_TRUE(gcdIdentitySweep({2, 3, 4, 5}, 8, 5, true).empty());
  EXPECT_TRUE(gcdIdentitySweep({2, 3, 4, 5}, 8, 5, false).empty());
}

TEST(CharacterOrder, Examples) {
  const GF& f3 = GF::ofOrder(3);
  EXPECT_EQ(characterOrder(P(f3, "T^2"), 2), 2);
  EXPECT_EQ(characterOrder(P(f3, "T^2+1"), 2), 2);
  EXPECT_EQ(characterOrder(P(f3, "T^2+T"), 3), 2);
  const GF& f5 = GF::ofOrder(5);
  EXPECT_EQ(characterOrder(P(f5, "T"), 2), 4);
  const GF& f2 = GF::ofOrder(2);
  for (const char* level : {"T", "T^2", "T^3+T"}) EXPECT_EQ(characterOrder(P(f2, level), 3), 1);
}

TEST(Cusps, OrbitExamples) {
  const GF& f = GF::ofOrder(2);
  auto a = cuspOrbits(P(f, "T"), 2);
  EXPECT_EQ(a.orbitCount(), 2u);
  EXPECT_EQ(a.sizes, (std::vector<size_t>{2, 1}));
  auto b = cuspOrbits(P(f, "T"), 3);
  EXPECT_EQ(b.sizes, (std::vector<size_t>{6, 1}));
  EXPECT_EQ(cuspOrbits(P(f, "T^2+T"), 2).orbitCount(), 4u);
}

TEST(Cusps, OrbitCountIsTwoToTheS) {
  for (unsigned q : {2u, 3u})
    for (int r : {2, 3}) {
      const GF& f = GF::ofOrder(q);
      for (const char* level : {"T", "T+1", "T^2+T", "T^2+1"}) {
        Poly n = P(f, level);
        if (!isSquarefree(n)) continue;
        auto rep = cuspOrbits(n, r);
        size_t sum = 0;
        for (auto s : rep.sizes) sum += s;
        EXPECT_EQ(sum, rep.total);
        EXPECT_EQ(rep.total, rep.expectedTotal);
        EXPECT_EQ(rep.orbitCount(), 1u << factor(n).size()) << "q=" << q << " r=" << r << " n=" << level;
      }
    }
}

TEST(Cusps, RejectsNonSquarefreeLevels) {
  const GF& f = GF::ofOrder(2);
  EXPECT_THROW(cuspOrbits(P(f, "T^2"), 2), MathError);
}

TEST(CuspidalOrder, Examples) {
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(cuspidalOrder(P(f2, "T"), 3).order, 3);
  EXPECT_EQ(cuspidalOrder(P(f2, "T"), 2).order, 1);
  const GF& f3 = GF::ofOrder(3);
  for (auto& p : Poly::monicOfDegree(f3, 3)) {
    if (!isIrreducible(p)) continue;
    EXPECT_EQ(cuspidalOrder(p, 2).order, 13) << p.str();
  }
  EXPECT_THROW(cuspidalOrder(P(f2, "T^2"), 2), MathError);
}

TEST(CuspidalOrder, PositiveAndDivisible) {
  for (unsigned q : {2u, 3u, 4u})
    for (int r : {2, 3, 4}) {
      const GF& f = GF::ofOrder(q);
      for (int d = 1; d <= 3; ++d)
        for (auto& p : Poly::monicOfDegree(f, d)) {
          if (!isIrreducible(p)) continue;
          auto c = cuspidalOrder(p, r);
          EXPECT_GT(c.order, 0);
          EXPECT_TRUE(c.divisible);
          Integer absP = ipow(Integer(q), d);
          EXPECT_EQ(c.order * igcd(absP - 1, ipow(Integer(q), r) - 1), ipow(absP, r - 1) - 1);
          break;
        }
    }
}
