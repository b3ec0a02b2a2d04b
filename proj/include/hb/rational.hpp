#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrecisionError : MathError {
  using MathError::MathError;
};

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r = 1, x = b;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// b^e for any integer e; b must be nonzero when e < 0.
inline Rational rpow(const Rational& b, long e) {
  if (e >= 0) {
    Rational r = 1, x = b;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
      if (k & 1) r *= x;
      x *= x;
      k >>= 1;
    }
    return r;
  }
  if (b == 0) throw MathError("division by zero in power");
  return 1 / rpow(b, -e);
}

inline Rational qpow(long q, long e) { return rpow(Rational(q), e); }

inline std::string toString(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string toString(const Integer& x) { return x.str(); }

inline Rational parseRational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw MathError("zero denominator in '" + s + "'");
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    throw MathError("cannot parse rational '" + s + "'");
  }
}

inline bool isInteger(const Rational& x) { return denominator(x) == 1; }

inline Integer igcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace hb
