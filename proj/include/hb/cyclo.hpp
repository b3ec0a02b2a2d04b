#pragma once

#include "hb/rational.hpp"

#include <string>
#include <vector>

namespace hb {

// Element of Q(zeta_p) as sum_{t<p} c_t zeta^t, normalized so c_{p-1} = 0.
// With that normalization the coordinates are unique, so equality is
// coordinatewise.
class CycRat {
 public:
  unsigned p = 2;
  std::vector<Rational> c;

  CycRat() : c(2) {}
  explicit CycRat(unsigned p_, const Rational& v = 0) : p(p_), c(p_) { c[0] = v; }

  static CycRat zetaPow(unsigned p, long t) {
    CycRat r(p);
    long k = ((t % static_cast<long>(p)) + p) % p;
    r.c[0] = 0;
    r.c[k] = 1;
    r.normalize();
    return r;
  }

  // from coefficients of zeta^0..zeta^{p-1}
  static CycRat fromSlots(unsigned p, std::vector<Rational> slots) {
    CycRat r(p);
    r.c = std::move(slots);
    r.c.resize(p);
    r.normalize();
    return r;
  }

  void normalize() {
    Rational top = c[p - 1];
    if (top != 0)
      for (auto& x : c) x -= top;
  }

  bool isZero() const {
    for (auto& x : c)
      if (x != 0) return false;
    return true;
  }
  bool isRational() const {
    for (unsigned t = 1; t < p; ++t)
      if (c[t] != 0) return false;
    return true;
  }
  Rational toRational() const {
    if (!isRational()) throw MathError("cyclotomic value " + str() + " is not rational");
    return c[0];
  }

  CycRat operator+(const CycRat& o) const {
    check(o);
    CycRat r(*this);
    for (unsigned t = 0; t < p; ++t) r.c[t] += o.c[t];
    return r;
  }
  CycRat operator-(const CycRat& o) const {
    check(o);
    CycRat r(*this);
    for (unsigned t = 0; t < p; ++t) r.c[t] -= o.c[t];
    return r;
  }
  CycRat operator-() const {
    CycRat r(*this);
    for (auto& x : r.c) x = -x;
    return r;
  }
  CycRat operator*(const CycRat& o) const {
    check(o);
    std::vector<Rational> s(p);
    for (unsigned i = 0; i < p; ++i) {
      if (c[i] == 0) continue;
      for (unsigned j = 0; j < p; ++j)
        if (o.c[j] != 0) s[(i + j) % p] += c[i] * o.c[j];
    }
    return fromSlots(p, std::move(s));
  }
  CycRat operator*(const Rational& k) const {
    CycRat r(*this);
    for (auto& x : r.c) x *= k;
    return r;
  }
  CycRat& operator+=(const CycRat& o) { return *this = *this + o; }
  CycRat& operator-=(const CycRat& o) { return *this = *this - o; }
  CycRat& operator*=(const CycRat& o) { return *this = *this * o; }

  bool operator==(const CycRat& o) const { return p == o.p && c == o.c; }
  bool operator!=(const CycRat& o) const { return !(*this == o); }

  std::string str() const {
    std::string s;
    for (unsigned t = 0; t < p; ++t) {
      if (c[t] == 0) continue;
      if (!s.empty()) s += " + ";
      std::string v = toString(c[t]);
      if (t == 0)
        s += v;
      else
        s += "(" + v + ")*z^" + std::to_string(t);
    }
    return s.empty() ? "0" : s;
  }

  std::vector<std::string> coordStrings() const {
    std::vector<std::string> out;
    for (unsigned t = 0; t + 1 < p; ++t) out.push_back(toString(c[t]));
    return out;
  }

 private:
  void check(const CycRat& o) const {
    if (p != o.p) throw MathError("cyclotomic values of different conductors");
  }
};

inline CycRat operator*(const Rational& k, const CycRat& x) { return x * k; }

// Accumulates sum_t w_t zeta^t without intermediate normalization.
class CycAccumulator {
 public:
  explicit CycAccumulator(unsigned p) : p_(p), slots_(p) {}
  void add(unsigned t, const Rational& w) { slots_[t % p_] += w; }
  void add(const CycAccumulator& o) {
    for (unsigned t = 0; t < p_; ++t) slots_[t] += o.slots_[t];
  }
  CycRat value() const { return CycRat::fromSlots(p_, slots_); }

 private:
  unsigned p_;
  std::vector<Rational> slots_;
};

// Additive character of F_p: psi0(x) = zeta_p^(k x). k = 1 is the fixed
// convention; other k are used only to check convention independence.
inline CycRat psi0(unsigned p, unsigned x, unsigned k = 1) {
  return CycRat::zetaPow(p, static_cast<long>((static_cast<unsigned long>(x) * k) % p));
}

}  // namespace hb
