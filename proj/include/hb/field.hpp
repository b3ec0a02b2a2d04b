#pragma once

#include "hb/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace hb {

using Elem = std::uint32_t;

inline bool isPrime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q = p^e with p prime, or returns false.
inline bool splitPrimePower(unsigned long q, unsigned& p, unsigned& e) {
  if (q < 2) return false;
  unsigned long d = 2;
  while (q % d) ++d;
  p = static_cast<unsigned>(d);
  e = 0;
  while (q % d == 0) {
    q /= d;
    ++e;
  }
  return q == 1 && isPrime(p);
}

// F_{p^e} = F_p[u]/(modulus). Elements are encoded as sum c_i p^i over the
// coordinate vector (c_0..c_{e-1}) in the basis 1, u, ..., u^{e-1}; the prime
// subfield is exactly the codes below p. The modulus is the first monic
// primitive polynomial of degree e in increasing code order, so u generates
// the multiplicative group.
class GF {
 public:
  unsigned p = 0, e = 0;
  Elem size = 0;
  std::vector<unsigned> modulus;  // low to high, monic, length e+1

  static const GF& get(unsigned p, unsigned e) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<GF>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[{p, e}];
    if (!slot) slot.reset(new GF(p, e));
    return *slot;
  }

  static const GF& ofOrder(unsigned long q) {
    unsigned p, e;
    if (!splitPrimePower(q, p, e)) throw MathError("q = " + std::to_string(q) + " is not a prime power");
    return get(p, e);
  }

  unsigned long q() const { return size; }

  Elem add(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    if (!addTab_.empty()) return addTab_[a * size + b];
    return digitwise(a, b, 1);
  }
  Elem sub(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    return add(a, neg(b));
  }
  Elem neg(Elem a) const {
    if (p == 2) return a;
    return negTab_[a];
  }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw MathError("inverse of zero in F_" + std::to_string(size));
    return exp_[(size - 1 - log_[a]) % (size - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    long long m = size - 1;
    long long t = (static_cast<long long>(log_[a]) * (k % m)) % m;
    if (t < 0) t += m;
    return exp_[t];
  }
  // a^(p^i)
  Elem frob(Elem a, unsigned i = 1) const {
    if (a == 0) return 0;
    unsigned long long t = log_[a];
    for (unsigned j = 0; j < i; ++j) t = (t * p) % (size - 1);
    return exp_[t];
  }
  Elem fromInt(long long c) const {
    long long r = c % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }
  Elem generator() const { return exp_[size > 2 ? 1 : 0]; }
  unsigned logOf(Elem a) const { return log_[a]; }
  Elem expOf(long long k) const {
    long long m = size - 1;
    long long t = k % m;
    if (t < 0) t += m;
    return exp_[t];
  }
  bool inPrimeField(Elem a) const { return a < p; }

  // Tr_{F_q/F_p}(a) = sum_{i<e} a^{p^i}
  unsigned trace(Elem a) const {
    Elem s = 0;
    Elem x = a;
    for (unsigned i = 0; i < e; ++i) {
      s = add(s, x);
      x = frob(x);
    }
    return s;
  }

  std::vector<unsigned> coords(Elem a) const {
    std::vector<unsigned> c(e);
    for (unsigned i = 0; i < e; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  }

  // canonical text: integer for prime-field elements, else u or u^j
  std::string str(Elem a) const {
    if (a < p) return std::to_string(a);
    unsigned j = log_[a];
    return j == 1 ? "u" : "u^" + std::to_string(j);
  }

  std::string modulusString() const {
    std::string s;
    for (int i = static_cast<int>(e); i >= 0; --i) {
      unsigned c = modulus[i];
      if (!c) continue;
      if (!s.empty()) s += "+";
      std::string mono = i == 0 ? "" : (i == 1 ? "u" : "u^" + std::to_string(i));
      if (mono.empty())
        s += std::to_string(c);
      else
        s += (c == 1 ? "" : std::to_string(c) + "*") + mono;
    }
    return s;
  }

 private:
  std::vector<unsigned> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> addTab_;
  std::vector<Elem> negTab_;

  Elem digitwise(Elem a, Elem b, int sign) const {
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < e; ++i) {
      int da = a % p, db = b % p;
      a /= p;
      b /= p;
      int d = ((da + sign * db) % static_cast<int>(p) + p) % p;
      r += d * scale;
      scale *= p;
    }
    return r;
  }

  // multiply a code by u modulo the modulus
  Elem timesU(Elem a, const std::vector<unsigned>& mod) const {
    auto c = coords(a);
    unsigned top = c[e - 1];
    for (int i = static_cast<int>(e) - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    for (unsigned i = 0; i < e; ++i) c[i] = (c[i] + (p - top) * mod[i]) % p;
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < e; ++i) {
      r += c[i] * scale;
      scale *= p;
    }
    return r;
  }

  // true iff u has multiplicative order p^e - 1 modulo mod (implies irreducible)
  bool primitive(const std::vector<unsigned>& mod) const {
    Elem x = 1;
    for (Elem k = 1; k < size; ++k) {
      x = timesU(x, mod);
      if (x == 1) return k == size - 1;
      if (x == 0) return false;
    }
    return false;
  }

  GF(unsigned p_, unsigned e_) : p(p_), e(e_) {
    if (!isPrime(p) || e == 0) throw MathError("invalid field parameters");
    unsigned long sz = 1;
    for (unsigned i = 0; i < e; ++i) sz *= p;
    if (sz > (1u << 22)) throw MathError("field too large");
    size = static_cast<Elem>(sz);
    if (e == 1) {
      // prime field: "u" is the least primitive root g, modulus u - g
      unsigned g = 1;
      if (p > 2) {
        for (g = 2;; ++g) {
          unsigned long x = 1, k = 0;
          do {
            x = x * g % p;
            ++k;
          } while (x != 1);
          if (k == p - 1) break;
        }
      }
      modulus = {(p - g) % p, 1};
      exp_.assign(2 * size, 0);
      log_.assign(size, 0);
      Elem x = 1;
      for (Elem k = 0; k + 1 < size; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = static_cast<Elem>((static_cast<unsigned long>(x) * g) % p);
      }
    } else {
      bool found = false;
      for (Elem code = 0; code < size && !found; ++code) {
        std::vector<unsigned> mod(e + 1);
        Elem c = code;
        for (unsigned i = 0; i < e; ++i) {
          mod[i] = c % p;
          c /= p;
        }
        mod[e] = 1;
        if (mod[0] == 0) continue;
        if (primitive(mod)) {
          modulus = mod;
          found = true;
        }
      }
      if (!found) throw MathError("no primitive modulus found");
      exp_.assign(2 * size, 0);
      log_.assign(size, 0);
      Elem x = 1;
      for (Elem k = 0; k + 1 < size; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = timesU(x, modulus);
      }
    }
    for (Elem k = size - 1; k < 2 * size; ++k) exp_[k] = exp_[k - (size - 1)];
    if (p != 2) {
      negTab_.resize(size);
      for (Elem a = 0; a < size; ++a) negTab_[a] = digitwise(0, a, -1);
      if (size <= 1024) {
        addTab_.resize(static_cast<size_t>(size) * size);
        for (Elem a = 0; a < size; ++a)
          for (Elem b = 0; b < size; ++b) addTab_[a * size + b] = digitwise(a, b, 1);
      }
    }
  }
};

// Embedding F_{p^e} -> F_{p^{e m}}: the small generator maps to the least
// root (by code) of its modulus in the big field.
class FieldEmbedding {
 public:
  const GF* small;
  const GF* big;
  std::vector<Elem> image;

  FieldEmbedding(const GF& s, const GF& b) : small(&s), big(&b) {
    if (s.p != b.p || b.e % s.e) throw MathError("no embedding between these fields");
    Elem root = 0;
    bool found = false;
    if (s.e == 1) {
      found = true;
    } else {
      for (Elem x = 0; x < b.size && !found; ++x) {
        Elem acc = 0, pw = 1;
        for (unsigned i = 0; i <= s.e; ++i) {
          acc = b.add(acc, b.mul(b.fromInt(s.modulus[i]), pw));
          pw = b.mul(pw, x);
        }
        if (acc == 0) {
          root = x;
          found = true;
        }
      }
    }
    if (!found) throw MathError("embedding root not found");
    image.resize(s.size);
    for (Elem a = 0; a < s.size; ++a) {
      auto c = s.coords(a);
      Elem acc = 0, pw = 1;
      for (unsigned i = 0; i < s.e; ++i) {
        acc = b.add(acc, b.mul(b.fromInt(c[i]), pw));
        pw = b.mul(pw, root);
      }
      image[a] = acc;
    }
  }

  Elem operator()(Elem a) const { return image[a]; }
};

}  // namespace hb
