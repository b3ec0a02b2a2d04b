#include "hb/cyclo.hpp"
#include "hb/divisors.hpp"
#include "hb/field.hpp"
#include "hb/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hb;

namespace {

Poly P(const GF& f, const std::string& s) { return parsePoly(f, s); }

Poly randomPoly(const GF& f, std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> deg(0, maxDeg);
  std::uniform_int_distribution<Elem> coef(0, static_cast<Elem>(f.q() - 1));
  std::vector<Elem> c(deg(rng) + 1);
  for (auto& x : c) x = coef(rng);
  return Poly(f, c);
}

// every monic polynomial of degree <= d dividing all entries, by brute force
Rational bruteSigma(long s, const PolyVec& a, const GF& f) {
  int d = 0;
  for (auto& x : a) d = std::max(d, x.deg());
  Rational sum = 0;
  for (int k = 0; k <= d; ++k)
    for (auto& c : Poly::monicOfDegree(f, k)) {
      bool all = true;
      for (auto& x : a) all = all && c.divides(x);
      if (all) sum += qpow(static_cast<long>(f.q()), s * k);
    }
  return sum;
}

}  // namespace

TEST(Field, PrimePowerParsing) {
  unsigned p, e;
  EXPECT_TRUE(splitPrimePower(9, p, e));
  EXPECT_EQ(p, 3u);
  EXPECT_EQ(e, 2u);
  EXPECT_FALSE(splitPrimePower(6, p, e));
  EXPECT_FALSE(splitPrimePower(1, p, e));
}

TEST(Field, AxiomsExhaustive) {
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const GF& f = GF::ofOrder(q);
    for (Elem a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (Elem c = 0; c < q; ++c) EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
    // the generator has full multiplicative order
    Elem g = f.generator(), x = g;
    unsigned order = 1;
    while (x != 1) x = f.mul(x, g), ++order;
    EXPECT_EQ(order, q - 1);
  }
}

TEST(Field, TraceToPrimeField) {
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(f2.trace(1), 1u);
  const GF& f5 = GF::ofOrder(5);
  for (Elem x = 0; x < 5; ++x) EXPECT_EQ(f5.trace(x), x);
  const GF& f4 = GF::ofOrder(4);
  Elem u = f4.expOf(1);
  EXPECT_EQ(f4.add(u, f4.mul(u, u)), 1u);  // u^2 + u + 1 = 0
  EXPECT_EQ(f4.trace(u), 1u);
  EXPECT_EQ(f4.trace(0), 0u);
  // trace is additive and lands in F_p, checked against x + x^p + ...
  const GF& f9 = GF::ofOrder(9);
  for (Elem x = 0; x < 9; ++x) {
    Elem t = f9.add(x, f9.pow(x, 3));
    EXPECT_EQ(f9.trace(x), t);
    EXPECT_LT(t, 3u);
  }
}

TEST(Field, EmbeddingIsHomomorphism) {
  const GF& small = GF::ofOrder(2);
  const GF& big = GF::ofOrder(16);
  FieldEmbedding e(small, big);
  EXPECT_EQ(e(0), 0u);
  EXPECT_EQ(e(1), 1u);
  const GF& f3 = GF::ofOrder(3);
  const GF& f27 = GF::ofOrder(27);
  FieldEmbedding e3(f3, f27);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      EXPECT_EQ(e3(f3.add(a, b)), f27.add(e3(a), e3(b)));
      EXPECT_EQ(e3(f3.mul(a, b)), f27.mul(e3(a), e3(b)));
    }
  const GF& f4 = GF::ofOrder(4);
  const GF& f16 = GF::ofOrder(16);
  FieldEmbedding e4(f4, f16);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      EXPECT_EQ(e4(f4.add(a, b)), f16.add(e4(a), e4(b)));
      EXPECT_EQ(e4(f4.mul(a, b)), f16.mul(e4(a), e4(b)));
    }
}

TEST(Poly, ParsePrintRoundTrip) {
  for (unsigned q : {2u, 3u, 4u}) {
    const GF& f = GF::ofOrder(q);
    std::mt19937 rng(q);
    for (int t = 0; t < 200; ++t) {
      Poly a = randomPoly(f, rng, 6);
      EXPECT_EQ(parsePoly(f, a.str()), a) << a.str();
    }
  }
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(P(f2, "T^2+T").str(), "T^2+T");
  EXPECT_EQ(P(f2, "T*T+1"), P(f2, "T^2+1"));
  EXPECT_THROW(P(f2, "T^"), MathError);
}

TEST(Poly, DivisionIdentity) {
  const GF& f = GF::ofOrder(3);
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Poly a = randomPoly(f, rng, 7), b = randomPoly(f, rng, 4);
    if (b.isZero()) continue;
    auto [qt, rm] = a.divmod(b);
    EXPECT_EQ(qt * b + rm, a);
    EXPECT_LT(rm.deg(), b.deg());
    auto [g, s, u] = xgcd(a, b);
    EXPECT_EQ(s * a + u * b, g);
    EXPECT_TRUE(g.divides(a) && g.divides(b));
  }
}

TEST(Divisors, MonicDivisors) {
  const GF& f2 = GF::ofOrder(2);
  auto d = monicDivisors(P(f2, "T^2+T"));
  std::vector<std::string> got;
  for (auto& x : d) got.push_back(x.str());
  EXPECT_EQ(got, (std::vector<std::string>{"1", "T", "T+1", "T^2+T"}));
  EXPECT_EQ(monicDivisors(Poly::one(f2)).size(), 1u);
  const GF& f3 = GF::ofOrder(3);
  got.clear();
  for (auto& x : monicDivisors(P(f3, "T^2"))) got.push_back(x.str());
  EXPECT_EQ(got, (std::vector<std::string>{"1", "T", "T^2"}));
  try {
    monicDivisors(Poly(f2));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_STREQ(e.what(), "divisors of zero undefined");
  }
}

TEST(Divisors, SigmaExamples) {
  const GF& f2 = GF::ofOrder(2);
  EXPECT_EQ(sigma(1, {P(f2, "T^2+T")}, f2), 9);
  EXPECT_EQ(sigma(1, {Poly(f2)}, f2), Rational(-1, 3));
  EXPECT_EQ(sigma(3, {Poly::one(f2), Poly(f2), Poly(f2)}, f2), 1);
  EXPECT_THROW(sigma(-1, {Poly(f2)}, f2), MathError);
  Poly n = P(f2, "T");
  EXPECT_EQ(sigmaRestricted(n, 1, {P(f2, "T^2+T")}, f2), 3);
  EXPECT_EQ(sigmaRestricted(n, 1, {Poly(f2)}, f2), Rational(1, 3));
  EXPECT_EQ(sigmaRestricted(n, 2, {Poly::one(f2)}, f2), 1);
}

TEST(Divisors, SigmaMatchesBruteForce) {
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    std::mt19937 rng(11 * q);
    for (int t = 0; t < 60; ++t) {
      PolyVec a{randomPoly(f, rng, 4), randomPoly(f, rng, 4)};
      if (isZeroVec(a)) continue;
      for (long s : {1L, 2L, -2L}) EXPECT_EQ(sigma(s, a, f), bruteSigma(s, a, f));
    }
  }
}

TEST(Divisors, RestrictedSubtractionIdentity) {
  for (unsigned q : {2u, 3u}) {
    const GF& f = GF::ofOrder(q);
    std::mt19937 rng(5 * q);
    int checked = 0;
    while (checked < 200) {
      Poly n = randomPoly(f, rng, 2);
      if (n.isZero()) continue;
      n = n.monic();
      PolyVec a{randomPoly(f, rng, 4), randomPoly(f, rng, 3)};
      // occasionally force divisibility by n
      if (checked % 3 == 0)
        for (auto& x : a) x = x * n;
      long s = 1 + checked % 3;
      Rational lhs = sigmaRestricted(n, s, a, f);
      Rational rhs = sigma(s, a, f);
      if (isZeroVec(a)) {
        rhs -= qpow(static_cast<long>(q), s * n.deg()) * sigma(s, a, f);
      } else {
        bool all = true;
        for (auto& x : a) all = all && n.divides(x);
        if (all) {
          PolyVec b;
          for (auto& x : a) b.push_back(x / n);
          rhs -= qpow(static_cast<long>(q), s * n.deg()) * sigma(s, b, f);
        }
      }
      EXPECT_EQ(lhs, rhs);
      ++checked;
    }
  }
}

TEST(Cyclo, CharacterBasics) {
  EXPECT_EQ(psi0(2, 1), CycRat(2, -1));
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    EXPECT_EQ(psi0(p, 0), CycRat(p, 1));
    CycRat sum(p);
    for (unsigned x = 0; x < p; ++x) {
      sum += psi0(p, x);
      for (unsigned y = 0; y < p; ++y) EXPECT_EQ(psi0(p, (x + y) % p), psi0(p, x) * psi0(p, y));
    }
    EXPECT_TRUE(sum.isZero());
  }
  CycRat z = psi0(3, 1), z2 = psi0(3, 2);
  EXPECT_TRUE((CycRat(3, 1) + z + z2).isZero());
  EXPECT_EQ(z * z, z2);
}

TEST(Cyclo, RingLaws) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  for (unsigned p : {3u, 5u}) {
    auto rnd = [&] {
      std::vector<Rational> s(p);
      for (auto& x : s) x = Rational(d(rng), 1 + (d(rng) + 5) % 4);
      return CycRat::fromSlots(p, s);
    };
    for (int t = 0; t < 50; ++t) {
      CycRat a = rnd(), b = rnd(), c = rnd();
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
  EXPECT_THROW(psi0(3, 1).toRational(), MathError);
}
