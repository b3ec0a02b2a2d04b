#include "hb/discriminant.hpp"
#include "hb/oracle.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace hb;

namespace {

Poly P(const GF& f, const std::string& s) { return parsePoly(f, s); }
RatFunc R(const GF& f, const std::string& s) { return parseRatFunc(f, s); }

// [[1, x y], [0, y]], y = T^n
FMat point(const GF& f, const std::string& x, int n) {
  FMat g = identityMat(f, 2);
  RatFunc y = RatFunc::monomialT(f, 1, n);
  g(0, 1) = R(f, x) * y;
  g(1, 1) = y;
  return g;
}

// one oracle per field, shared so the memo carries across tests
DeltaOracle& oracle(unsigned q) {
  static DeltaOracle two(GF::ofOrder(2), 2, [] {
    OracleOptions o;
    o.degBound = 6;
    return o;
  }());
  static DeltaOracle three(GF::ofOrder(3), 2, [] {
    OracleOptions o;
    o.degBound = 4;
    return o;
  }());
  return q == 2 ? two : three;
}

}  // namespace

TEST(Oracle, ProductIsNormalized) {
  const GF& f = GF::ofOrder(2);
  auto& orc = oracle(2);
  auto u = orc.reduceBasis(orc.latticeBasis(identityMat(f, 2)));
  auto e = orc.expCoefficients(u, 2, 0, 4).second;
  ASSERT_FALSE(e.alpha.empty());
  EXPECT_TRUE((e.alpha[0] - Laurent::one(orc.bigField())).ordLowerBound() >= e.alpha[0].absPrec());
}

TEST(Oracle, FunctionalEquationResidual) {
  const GF& f = GF::ofOrder(2);
  auto& orc = oracle(2);
  auto u = orc.reduceBasis(orc.latticeBasis(point(f, "pi", 2)));
  auto d = orc.drinfeldCoeffs(orc.expCoefficients(u, 2, 0, 6).second);
  EXPECT_GT(d.residualOrd, d.g[2].ord() + 10);
}

TEST(Oracle, WeylValues) {
  const GF& f = GF::ofOrder(2);
  EXPECT_EQ(oracle(2).pDeltaDirect(identityMat(f, 2)), -2);
  EXPECT_EQ(oracle(2).pDeltaDirect(diagT(f, {1, 0})), -4);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(oracle(2).pDeltaDirect(diagT(f, {k, 0})), weylEdgeValue(2, {k, 0})) << k;
}

TEST(Oracle, MatchesSeriesOnParabolicPoints) {
  const GF& f = GF::ofOrder(2);
  auto fam = UnitFamily::delta(f, 2);
  for (const char* x : {"pi", "pi^2", "pi+pi^3"})
    for (int n : {2, 3}) {
      FMat g = point(f, x, n);
      EXPECT_EQ(oracle(2).pDeltaDirect(g), evalOnParabolic(fam, g)) << g.str();
    }
}

TEST(Oracle, MatchesSeriesAtQThree) {
  const GF& f = GF::ofOrder(3);
  auto fam = UnitFamily::delta(f, 2);
  for (auto& g : {identityMat(f, 2), diagT(f, {1, 0}), point(f, "pi", 2), point(f, "2*pi+pi^2", 2)})
    EXPECT_EQ(oracle(3).pDeltaDirect(g), evalOnParabolic(fam, g)) << g.str();
}

TEST(Oracle, ThetaAtTheIdentityWitness) {
  const GF& f = GF::ofOrder(2);
  FMat g = diagT(f, {0, 1});  // (x, y) = (0, T)
  for (const char* level : {"T", "T+1", "T^2+T+1"}) {
    Poly n = P(f, level);
    EXPECT_EQ(oracle(2).pThetaDirect(n, g), Rational(1) * (n.absValue() - 1)) << level;
  }
  for (auto& h : {identityMat(f, 2), point(f, "pi", 2), flipMatrix(f, 2)}) EXPECT_EQ(oracle(2).pThetaDirect(P(f, "1"), h), 0);
}

TEST(Oracle, ThetaMatchesSeriesIncludingFlipCoset) {
  const GF& f = GF::ofOrder(2);
  Poly n = P(f, "T");
  auto fam = UnitFamily::theta(f, 2, n);
  for (auto& g : {point(f, "pi", 2), point(f, "pi^2", 3), flipMatrix(f, 2)})
    EXPECT_EQ(oracle(2).pThetaDirect(n, g), evalThetaOnEdge(fam, g).value) << g.str();
}

TEST(Oracle, HomothetyCovariance) {
  // g_i(c L) = c^{1-q^i} g_i(L)
  const GF& f = GF::ofOrder(2);
  auto& orc = oracle(2);
  const GF& B = orc.bigField();
  FieldEmbedding emb(f, B);
  for (auto& h : {identityMat(f, 2), point(f, "pi", 2)})
    for (const char* cs : {"T", "T+1"}) {
      Laurent c = toLaurent(R(f, cs), emb);
      auto u = orc.reduceBasis(orc.latticeBasis(h));
      std::vector<Laurent> cu;
      for (auto& x : u) cu.push_back(x * c);
      auto g = orc.drinfeldCoeffs(orc.expCoefficients(u, 2, 0, 5).second).g;
      auto gc = orc.drinfeldCoeffs(orc.expCoefficients(orc.reduceBasis(cu), 2, 0, 5).second).g;
      Laurent cinv = c.inverse(80), power = Laurent::one(B);
      long qi = 1;
      for (int i = 1; i <= 2; ++i) {
        for (long k = qi; k < 2 * qi; ++k) power = power * cinv;  // c^{1 - q^i}
        qi *= 2;
        Laurent rhs = g[i] * power;
        long certified = std::min(gc[i].absPrec(), rhs.absPrec());
        EXPECT_GE((gc[i] - rhs).ordLowerBound(), certified) << "c=" << cs << " i=" << i;
      }
      EXPECT_GE(gc[2].absPrec() - gc[2].ord(), 20);
    }
}

TEST(Oracle, StableAcrossDegreeBounds) {
  const GF& f = GF::ofOrder(2);
  for (auto& h : {identityMat(f, 2), point(f, "pi", 2), diagT(f, {2, 0})}) {
    std::vector<long> ords;
    for (int D : {4, 5, 6}) {
      OracleOptions o;
      o.degBound = D;
      ords.push_back(DeltaOracle(f, 2, o).ordDelta(h).ord);
    }
    EXPECT_EQ(ords[0], ords[1]) << h.str();
    EXPECT_EQ(ords[1], ords[2]) << h.str();
  }
}

TEST(Oracle, IndependentOfBasePoint) {
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    OracleOptions o;
    o.degBound = q == 2 ? 6 : 4;
    o.generatorPower = q == 2 ? 2 : 3;
    DeltaOracle second(f, 2, o);
    for (auto& g : {identityMat(f, 2), point(f, "pi", 2)})
      EXPECT_EQ(second.pDeltaDirect(g), oracle(q).pDeltaDirect(g)) << "q=" << q << " " << g.str();
  }
}

TEST(Oracle, CacheRoundTrip) {
  const GF& f = GF::ofOrder(2);
  auto path = std::filesystem::temp_directory_path() / "hb_oracle_cache_test.jsonl";
  std::filesystem::remove(path);
  OracleOptions o;
  o.degBound = 4;
  o.cachePath = path.string();
  FMat g = point(f, "pi", 2);
  long first = DeltaOracle(f, 2, o).ordDelta(g).ord;
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(static_cast<bool>(std::getline(in, line)));
  EXPECT_NE(line.find("\"ord\""), std::string::npos);
  EXPECT_EQ(DeltaOracle(f, 2, o).ordDelta(g).ord, first);
  std::filesystem::remove(path);
}

TEST(Oracle, Gates) {
  const GF& f = GF::ofOrder(2);
  EXPECT_THROW(DeltaOracle(f, 3), MathError);
  OracleOptions o;
  o.allowRank3 = true;
  EXPECT_THROW(DeltaOracle(f, 4, o), MathError);
  OracleOptions sub;
  sub.generatorPower = 5;  // order 3 in F_16^x, inside F_4
  EXPECT_THROW(DeltaOracle(GF::ofOrder(4), 2, sub), MathError);
}
