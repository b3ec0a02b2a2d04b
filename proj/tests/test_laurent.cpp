#include "hb/laurent.hpp"
#include "hb/matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hb;

namespace {

// random finite Laurent polynomial with exponents in [lo, hi]
Laurent randomLaurent(const GF& f, std::mt19937& rng, long lo, long hi) {
  std::uniform_int_distribution<Elem> coef(0, static_cast<Elem>(f.q() - 1));
  std::vector<Elem> c(hi - lo + 1);
  for (auto& x : c) x = coef(rng);
  return Laurent::fromCoeffs(f, lo, c);
}

RatFunc R(const GF& f, const std::string& s) { return parseRatFunc(f, s); }

}  // namespace

TEST(Laurent, TextRoundTrip) {
  const GF& f3 = GF::ofOrder(3);
  Laurent x = parseLaurent(f3, "T^2+1+2*pi^4 + O(pi^9)");
  EXPECT_EQ(x.str(), "T^2+1+2*pi^4 + O(pi^9)");
  EXPECT_FALSE(x.exact);
  EXPECT_EQ(x.ord(), -2);
  Laurent y = parseLaurent(f3, "T+2*pi");
  EXPECT_TRUE(y.exact);
  EXPECT_EQ(parseLaurent(f3, y.str()), y);
  std::mt19937 rng(1);
  for (int t = 0; t < 100; ++t) {
    Laurent z = randomLaurent(f3, rng, -3, 4);
    EXPECT_EQ(parseLaurent(f3, z.str()), z) << z.str();
  }
}

TEST(Laurent, PsiExamples) {
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(psi(Laurent::monomial(f2, 1, 1)), CycRat(2, -1));
  EXPECT_EQ(psi(Laurent::monomial(f2, 1, 2)), CycRat(2, 1));
  EXPECT_EQ(psi(parseLaurent(f2, "T^3+T+1")), CycRat(2, 1));
  EXPECT_THROW(psi(Laurent::bigO(f2, 1)), PrecisionError);
}

TEST(Laurent, PsiIsCharacter) {
  for (unsigned q : {2u, 3u, 4u}) {
    const GF& f = GF::ofOrder(q);
    std::mt19937 rng(q);
    for (int t = 0; t < 200; ++t) {
      Laurent x = randomLaurent(f, rng, -3, 5), y = randomLaurent(f, rng, -2, 6);
      EXPECT_EQ(psi(x + y), psi(x) * psi(y));
    }
  }
}

TEST(Laurent, PsiKernelIsAPlusPiSquared) {
  // psi(x) = 1 iff the pi^1 coefficient has trace zero; for q = p that means
  // x lies in A + pi^2 O
  const GF& f3 = GF::ofOrder(3);
  std::mt19937 rng(9);
  for (int t = 0; t < 200; ++t) {
    Laurent x = randomLaurent(f3, rng, -3, 4);
    bool inKernel = x.coeff(1) == 0;
    EXPECT_EQ(psi(x) == CycRat(3, 1), inKernel) << x.str();
  }
}

TEST(Laurent, Ultrametric) {
  const GF& f = GF::ofOrder(3);
  std::mt19937 rng(4);
  for (int t = 0; t < 200; ++t) {
    Laurent x = randomLaurent(f, rng, -2, 3), y = randomLaurent(f, rng, -4, 2);
    if (x.isExactZero() || y.isExactZero()) continue;
    EXPECT_EQ((x * y).ord(), x.ord() + y.ord());
    Laurent s = x + y;
    if (x.ord() != y.ord()) {
      EXPECT_EQ(s.ord(), std::min(x.ord(), y.ord()));
    } else if (!s.isExactZero()) {
      EXPECT_GE(s.ord(), x.ord());
    }
  }
}

TEST(Laurent, InverseAndPrecision) {
  const GF& f = GF::ofOrder(2);
  Laurent x = parseLaurent(f, "1+pi");
  Laurent inv = x.inverse(20);
  EXPECT_EQ(inv.absPrec(), 20);
  EXPECT_TRUE((x * inv - Laurent::one(f)).c.empty());
  Laurent y = parseLaurent(f, "T+1 + O(pi^5)");
  Laurent yi = y.inverse();
  EXPECT_EQ(yi.ord(), 1);
  EXPECT_EQ(yi.absPrec(), 7);  // relative precision 6 carried over
  EXPECT_THROW(Laurent::bigO(f, 3).inverse(), PrecisionError);
  // products lose absolute precision by the other factor's valuation
  Laurent a = parseLaurent(f, "pi + O(pi^10)");
  Laurent b = parseLaurent(f, "T^2");
  EXPECT_EQ((a * b).absPrec(), 8);
}

TEST(Laurent, RationalEmbedding) {
  const GF& f = GF::ofOrder(3);
  RatFunc x = R(f, "(1)/(T-1)");  // pi + pi^2 + ...
  Laurent l = toLaurent(x, 10);
  EXPECT_FALSE(l.exact);
  EXPECT_EQ(l.ord(), 1);
  for (long k = 1; k < 11; ++k) EXPECT_EQ(l.coeff(k), 1u);
  EXPECT_TRUE(toLaurent(R(f, "T^2+2*pi")).exact);
}

TEST(Laurent, FrobeniusPower) {
  const GF& f = GF::ofOrder(4);
  std::mt19937 rng(2);
  for (int t = 0; t < 50; ++t) {
    Laurent x = randomLaurent(f, rng, -2, 3);
    EXPECT_EQ(x.frobPow(1), x * x);
    EXPECT_EQ(x.frobPow(2), x * x * x * x);
  }
}

TEST(LocalMatrix, InverseExamples) {
  const GF& f = GF::ofOrder(2);
  using M = Matrix<RatFunc>;
  RatFunc one = RatFunc::one(f), zero = RatFunc::zero(f), T = R(f, "T");
  M id = M::identity(3, one);
  EXPECT_EQ(id.inverse(), id);
  M d = M::diagonal({T, one, one});
  EXPECT_EQ(d.inverse(), M::diagonal({RatFunc::pi(f), one, one}));
  RatFunc x = R(f, "T^3+pi");
  M u(2, 2, zero);
  u(0, 0) = u(1, 1) = one;
  u(0, 1) = x;
  M ui = u.inverse();
  EXPECT_EQ(ui(0, 1), -x);
  M s(2, 2, one);
  s(0, 0) = s(1, 1) = T;
  EXPECT_EQ(s.det().ord(), -2);  // |T^2 - 1| = 4
  s(0, 0) = s(1, 1) = one;
  EXPECT_THROW(s.inverse(), MathError);
}

TEST(LocalMatrix, InverseRandom) {
  const GF& f = GF::ofOrder(3);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> e(-2, 2);
  std::uniform_int_distribution<Elem> c(0, 2);
  using M = Matrix<RatFunc>;
  for (int t = 0; t < 50; ++t) {
    M m(3, 3, RatFunc::zero(f));
    for (auto& x : m.a) x = RatFunc::monomialT(f, c(rng), e(rng)) + RatFunc::monomialT(f, c(rng), e(rng));
    if (m.det().isZero()) continue;
    EXPECT_EQ(m * m.inverse(), M::identity(3, RatFunc::one(f)));
  }
}

TEST(LocalMatrix, LaurentEntriesTrackPrecision) {
  const GF& f = GF::ofOrder(2);
  using M = Matrix<Laurent>;
  M m(2, 2, Laurent::zero(f));
  m(0, 0) = parseLaurent(f, "T+1");
  m(0, 1) = parseLaurent(f, "1");
  m(1, 0) = parseLaurent(f, "pi");
  m(1, 1) = parseLaurent(f, "T");
  M inv = m.inverse();
  M prod = m * inv;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Laurent d = prod(i, j) - (i == j ? Laurent::one(f) : Laurent::zero(f));
      EXPECT_TRUE(d.c.empty()) << d.str();
    }
}
