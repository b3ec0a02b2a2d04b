#pragma once

#include "hb/matrix.hpp"
#include "hb/ratfunc.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hb {

using FMat = Matrix<RatFunc>;
using FVec = std::vector<RatFunc>;

// Thrown by partial cochains when an argument lies outside their domain.
struct Unevaluable : MathError {
  using MathError::MathError;
};

inline FMat identityMat(const GF& f, int r) { return FMat::identity(r, RatFunc::one(f)); }

inline FMat constantMat(const GF& f, const std::vector<std::vector<Elem>>& rows) {
  int n = static_cast<int>(rows.size());
  FMat m(n, static_cast<int>(rows.at(0).size()), RatFunc::zero(f));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = RatFunc::constant(f, rows[i][j]);
  return m;
}

inline FMat diagMat(const FVec& d) { return FMat::diagonal(d); }

// diag(T^{n_1}, ..., T^{n_k})
inline FMat diagT(const GF& f, const std::vector<int>& n) {
  FVec d;
  for (int k : n) d.push_back(RatFunc::monomialT(f, 1, k));
  return diagMat(d);
}

// diag(pi I_s, I_{r-s}); the base type-s edge is ([L], [L diag(pi I_s, I)])
inline FMat diagPi(const GF& f, int r, int s) {
  FMat m = identityMat(f, r);
  for (int i = 0; i < s; ++i) m(i, i) = RatFunc::pi(f);
  return m;
}

// [[0, I_{r-s}], [c I_s, 0]] with c = pi (rotation) or c = 1 (block swap)
inline FMat blockAntiDiag(const GF& f, int r, int s, bool withPi) {
  FMat m = FMat::zero(r, r, RatFunc::zero(f));
  for (int i = 0; i < r - s; ++i) m(i, s + i) = RatFunc::one(f);
  for (int i = 0; i < s; ++i) m(r - s + i, i) = withPi ? RatFunc::pi(f) : RatFunc::one(f);
  return m;
}
inline FMat rotation(const GF& f, int r, int s) { return blockAntiDiag(f, r, s, true); }

// [[0, I_{r-1}], [1, 0]]
inline FMat flipMatrix(const GF& f, int r) { return blockAntiDiag(f, r, 1, false); }

// element of T_i: rows (0 | 0 | I_{r-i}), (pi | u | 0), (0 | I_{i-1} | 0)
inline FMat tSetElement(const GF& f, int r, int i, const std::vector<Elem>& u) {
  FMat m = FMat::zero(r, r, RatFunc::zero(f));
  for (int k = 0; k < r - i; ++k) m(k, i + k) = RatFunc::one(f);
  m(r - i, 0) = RatFunc::pi(f);
  for (int k = 0; k < i - 1; ++k) {
    m(r - i, 1 + k) = RatFunc::constant(f, u[k]);
    m(r - i + 1 + k, 1 + k) = RatFunc::one(f);
  }
  return m;
}

// all vectors of F_q^n in increasing code order (first coordinate slowest)
inline std::vector<std::vector<Elem>> allVectors(const GF& f, int n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> v(n, 0);
  auto q = static_cast<Elem>(f.q());
  while (true) {
    out.push_back(v);
    int k = n - 1;
    while (k >= 0 && ++v[k] == q) v[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

inline std::vector<FMat> tSet(const GF& f, int r, int i) {
  std::vector<FMat> out;
  for (auto& u : allVectors(f, i - 1)) out.push_back(tSetElement(f, r, i, u));
  return out;
}

// [[pi, u, 0], [0, I_{s-1}, 0], [0, 0, I_{r-s}]]
inline FMat upperPiElement(const GF& f, int r, int s, const std::vector<Elem>& u) {
  FMat m = identityMat(f, r);
  m(0, 0) = RatFunc::pi(f);
  for (int k = 0; k < s - 1; ++k) m(0, 1 + k) = RatFunc::constant(f, u[k]);
  return m;
}

// ---------------------------------------------------------------------------
// Vertices

// Column Hermite form of g under right GL_r(O): lower triangular, diagonal
// pi^{d_i}, entry (i, j < i) reduced modulo pi^{d_i}, shifted so min d_i = 0.
inline FMat hermiteForm(const FMat& g) {
  int r = g.rows;
  FMat h = g;
  const GF& f = g.proto().field();
  std::vector<int> d(r);
  for (int i = 0; i < r; ++i) {
    int piv = -1, best = 0;
    for (int j = i; j < r; ++j) {
      if (h(i, j).isZero()) continue;
      int o = h(i, j).ord();
      if (piv < 0 || o < best) piv = j, best = o;
    }
    if (piv < 0) throw MathError("matrix is singular (no pivot in row " + std::to_string(i) + ")");
    h.swapCols(i, piv);
    d[i] = best;
    // unit u with h(i,i) = u pi^{d_i}
    RatFunc unitInv = RatFunc::pi(f, best) / h(i, i);
    for (int k = i; k < r; ++k) h(k, i) = h(k, i) * unitInv;
    for (int j = i + 1; j < r; ++j) {
      if (h(i, j).isZero()) continue;
      RatFunc t = h(i, j) / h(i, i);
      for (int k = i; k < r; ++k) h(k, j) = h(k, j) - t * h(k, i);
    }
  }
  for (int i = 1; i < r; ++i)
    for (int j = 0; j < i; ++j) {
      const RatFunc& x = h(i, j);
      if (x.isZero()) continue;
      RatFunc t = (x - x.principalPart(d[i])) / h(i, i);
      if (t.isZero()) continue;
      for (int k = i; k < r; ++k) h(k, j) = h(k, j) - t * h(k, i);
    }
  int m = *std::min_element(d.begin(), d.end());
  if (m != 0) {
    RatFunc s = RatFunc::pi(f, -m);
    for (auto& x : h.a) x = x * s;
  }
  return h;
}

inline std::string matrixKey(const FMat& m) {
  std::string k;
  for (auto& x : m.a) k += x.str() + ";";
  return k;
}

// The class [L0 g^{-1}], stored as the canonical representative of g K^x GL_r(O).
struct Vertex {
  FMat rep;
  std::string key;
  bool operator==(const Vertex& o) const { return key == o.key; }
  bool operator!=(const Vertex& o) const { return key != o.key; }
  bool operator<(const Vertex& o) const { return key < o.key; }
};

inline Vertex canonicalVertex(const FMat& g) {
  Vertex v;
  v.rep = hermiteForm(g);
  v.key = matrixKey(v.rep);
  return v;
}

// ---------------------------------------------------------------------------
// Oriented edges: e^s_g = ([L0 g^{-1}], [L0 diag(pi I_s, I) g^{-1}])

struct OrientedEdge {
  FMat g;
  int s = 1;

  int rank() const { return g.rows; }
  const GF& field() const { return g.proto().field(); }
  Vertex origin() const { return canonicalVertex(g); }
  Vertex terminus() const { return canonicalVertex(g * diagPi(field(), rank(), s).inverse()); }
  // an oriented edge is determined by its endpoints
  std::string key() const { return origin().key + "|" + terminus().key; }
  OrientedEdge reverse() const {
    const GF& f = field();
    int r = rank();
    FMat h = g * diagPi(f, r, s).inverse() * blockAntiDiag(f, r, s, false).inverse();
    return {h, r - s};
  }
};

// type-1 edges e^1_{g alpha}, alpha in T_1, ..., T_r, all terminating at [L0 g^{-1}]
inline std::vector<OrientedEdge> typeOneInNeighbors(const FMat& g) {
  const GF& f = g.proto().field();
  std::vector<OrientedEdge> out;
  for (int i = 1; i <= g.rows; ++i)
    for (auto& a : tSet(f, g.rows, i)) out.push_back({g * a, 1});
  return out;
}

// Ed_1^triangle of e^s_{g J_s}, given g (J_s = rotation(s))
inline std::vector<OrientedEdge> triangleSet(const FMat& g, int s) {
  const GF& f = g.proto().field();
  if (s < 1 || s >= g.rows) throw MathError("edge type must lie in [1, r-1]");
  std::vector<OrientedEdge> out;
  for (int i = 1; i <= s; ++i)
    for (auto& a : tSet(f, g.rows, i)) out.push_back({g * a, 1});
  return out;
}

// ---------------------------------------------------------------------------
// Iwasawa decomposition g = p w beta kappa

struct Iwasawa {
  FMat p;
  bool flip = false;
  RatFunc scalar;
  FMat kappa;
};

// first column of g^{-1}; g lies in P F^x I^1 iff its first entry has
// strictly smallest valuation
inline bool inParabolicCoset(const FMat& g) {
  FMat gi = g.inverse();
  int o1 = gi(0, 0).ord();
  for (int i = 1; i < g.rows; ++i)
    if (gi(i, 0).ord() <= o1) return false;
  return true;
}

inline Iwasawa iwasawaDecompose(const FMat& g) {
  const GF& f = g.proto().field();
  int r = g.rows;
  FMat gi = g.inverse();
  FVec v = gi.column(0);
  Iwasawa out;
  out.flip = !inParabolicCoset(g);
  FMat kinv = identityMat(f, r);
  if (!out.flip) {
    for (int i = 1; i < r; ++i) kinv(i, 0) = v[i] / v[0];
    out.scalar = v[0].inverse();
    out.p = (g * kinv).scaled(v[0]);
  } else {
    int j = 1;
    for (int i = 2; i < r; ++i)
      if (v[i].ord() < v[j].ord()) j = i;
    out.scalar = v[j].inverse();
    if (j != 1) kinv.swapCols(1, j);
    for (int i = 0; i < r; ++i) kinv(i, 1) = v[i] * out.scalar;
    FMat w = flipMatrix(f, r);
    out.p = (g * kinv * w.inverse()).scaled(v[j]);
  }
  out.kappa = kinv.inverse();
  return out;
}

// ---------------------------------------------------------------------------
// Row reduction over A = F_q[T]

// nonzero c with sum_i c_i rows[i] = 0, if the rows are dependent
inline std::optional<std::vector<Elem>> leftKernelVector(const GF& f, const std::vector<std::vector<Elem>>& rows) {
  int n = static_cast<int>(rows.size());
  int m = n ? static_cast<int>(rows[0].size()) : 0;
  // augment with identity to track combinations
  std::vector<std::vector<Elem>> a(n, std::vector<Elem>(m + n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = rows[i][j];
    a[i][m + i] = 1;
  }
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (a[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    Elem inv = f.inv(a[row][col]);
    for (auto& x : a[row]) x = f.mul(x, inv);
    for (int i = 0; i < n; ++i) {
      if (i == row || !a[i][col]) continue;
      Elem t = a[i][col];
      for (int j = 0; j < m + n; ++j) a[i][j] = f.sub(a[i][j], f.mul(t, a[row][j]));
    }
    ++row;
  }
  if (row == n) return std::nullopt;
  return std::vector<Elem>(a[row].begin() + m, a[row].end());
}

struct RowReduced {
  FMat transform;  // U in GL(A) with U M = R
  FMat reduced;    // R, with invertible leading coefficient matrix
  std::vector<int> degrees;
};

// Iterated leading-term cancellation; M must have polynomial entries and be invertible.
inline RowReduced rowReduce(const FMat& m) {
  const GF& f = m.proto().field();
  int n = m.rows, c = m.cols;
  FMat R = m, U = identityMat(f, n);
  auto rowDeg = [&](int i) {
    int d = -1;
    for (int j = 0; j < c; ++j) d = std::max(d, R(i, j).num.deg());
    return d;
  };
  while (true) {
    std::vector<int> d(n);
    std::vector<std::vector<Elem>> lead(n, std::vector<Elem>(c, 0));
    for (int i = 0; i < n; ++i) {
      d[i] = rowDeg(i);
      if (d[i] < 0) throw MathError("row reduction of a singular matrix");
      for (int j = 0; j < c; ++j) lead[i][j] = R(i, j).num.coeff(d[i]);
    }
    auto ker = leftKernelVector(f, lead);
    if (!ker) return {U, R, d};
    int i0 = -1;
    for (int i = 0; i < n; ++i)
      if ((*ker)[i] && (i0 < 0 || d[i] > d[i0])) i0 = i;
    Elem inv = f.inv((*ker)[i0]);
    for (int i = 0; i < n; ++i) {
      if (i == i0 || !(*ker)[i]) continue;
      RatFunc t = RatFunc::monomialT(f, f.mul((*ker)[i], inv), d[i0] - d[i]);
      for (int j = 0; j < c; ++j) R(i0, j) = R(i0, j) + t * R(i, j);
      for (int j = 0; j < n; ++j) U(i0, j) = U(i0, j) + t * U(i, j);
    }
  }
}

// monic lcm of the denominators of all entries
inline Poly commonDenominator(const FMat& m) {
  const GF& f = m.proto().field();
  Poly c = Poly::one(f);
  for (auto& x : m.a) c = lcm(c, x.den);
  return c;
}

// gamma d kappa = diag(T^{n_i}) with gamma in GL(A), kappa in GL(O)
struct DiagonalReduction {
  FMat gamma;
  std::vector<int> exponents;
};

inline DiagonalReduction reduceToDiagonal(const FMat& d) {
  Poly c = commonDenominator(d);
  FMat M = d.scaled(RatFunc(c));
  RowReduced rr = rowReduce(M);
  DiagonalReduction out{rr.transform, {}};
  for (int k : rr.degrees) out.exponents.push_back(k - c.deg());
  return out;
}

// The chamber k (k_1 >= ... >= k_r = 0) of GL_r(A) g F^x GL_r(O).
inline std::vector<int> weylReduce(const FMat& g) {
  auto red = reduceToDiagonal(g);
  std::vector<int> k = red.exponents;
  std::sort(k.rbegin(), k.rend());
  int last = k.back();
  for (auto& x : k) x -= last;
  return k;
}

// ---------------------------------------------------------------------------
// Cochains

// Edge function with an optional memo keyed by the canonical edge.
class Cochain {
 public:
  using Fn = std::function<Rational(const OrientedEdge&)>;

  Cochain() = default;
  explicit Cochain(Fn fn, bool memo = true) : state_(std::make_shared<State>()) {
    state_->fn = std::move(fn);
    state_->memo = memo;
  }

  Rational operator()(const OrientedEdge& e) const {
    if (!state_->memo) return state_->fn(e);
    std::string k = e.key();
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->cache.find(k);
      if (it != state_->cache.end()) return it->second;
    }
    Rational v = state_->fn(e);
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->cache.emplace(k, v);
    return v;
  }
  size_t cacheSize() const {
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->cache.size();
  }

 private:
  struct State {
    Fn fn;
    bool memo = true;
    std::mutex mu;
    std::unordered_map<std::string, Rational> cache;
  };
  std::shared_ptr<State> state_;
};

// A function on GL_r / K^x I^1, read as a function of type-1 edges.
using GLFunction = std::function<Rational(const FMat&)>;

// h(e^s_G) = sum_{i<=s} f(g J_i) where G = g J_s
inline Cochain extendCochain(GLFunction f1, bool memo = true) {
  return Cochain(
      [f1 = std::move(f1)](const OrientedEdge& e) {
        const GF& f = e.field();
        int r = e.rank();
        if (e.s == 1) return f1(e.g);
        FMat g = e.g * rotation(f, r, e.s).inverse();
        Rational sum = 0;
        for (int i = 1; i <= e.s; ++i) sum += f1(g * rotation(f, r, i));
        return sum;
      },
      memo);
}

// ---------------------------------------------------------------------------
// Harmonicity reports

struct ConditionResult {
  std::string name;
  bool evaluable = true;
  bool pass = false;
  Rational lhs = 0, rhs = 0;
  std::string detail;
  Rational residual() const { return lhs - rhs; }
};

struct HarmonicReport {
  std::vector<ConditionResult> conditions;
  bool pass() const {
    for (auto& c : conditions)
      if (!c.evaluable || !c.pass) return false;
    return !conditions.empty();
  }
  bool evaluable() const {
    for (auto& c : conditions)
      if (!c.evaluable) return false;
    return true;
  }
  size_t failures() const {
    size_t n = 0;
    for (auto& c : conditions) n += c.evaluable && !c.pass;
    return n;
  }
};

inline ConditionResult compareSums(std::string name, const std::function<Rational()>& lhs,
                                   const std::function<Rational()>& rhs) {
  ConditionResult c;
  c.name = std::move(name);
  try {
    c.lhs = lhs();
    c.rhs = rhs();
    c.pass = c.lhs == c.rhs;
  } catch (const Unevaluable& e) {
    c.evaluable = false;
    c.detail = e.what();
  }
  return c;
}

// Coset-sum conditions on GL_r:
//   sum_u h1(g [[pi,u,0],[0,I,0],[0,0,I]]) = h1(g diag(pi I_s, I))  (1 <= s <= r)
//   sum_s h1(g J_s) = 0
inline HarmonicReport checkHarmonicGL(const GLFunction& h1, const FMat& g) {
  const GF& f = g.proto().field();
  int r = g.rows;
  HarmonicReport rep;
  for (int s = 1; s <= r; ++s) {
    rep.conditions.push_back(compareSums(
        "coset-sum s=" + std::to_string(s),
        [&] {
          Rational sum = 0;
          for (auto& u : allVectors(f, s - 1)) sum += h1(g * upperPiElement(f, r, s, u));
          return sum;
        },
        [&] { return h1(g * diagPi(f, r, s)); }));
  }
  rep.conditions.push_back(compareSums(
      "rotation-sum",
      [&] {
        Rational sum = 0;
        for (int s = 1; s <= r; ++s) sum += h1(g * rotation(f, r, s));
        return sum;
      },
      [] { return Rational(0); }));
  return rep;
}

// Subspace of F_q^r in reduced row echelon form plus the standard complement.
struct Subspace {
  std::vector<std::vector<Elem>> basis;  // dim rows of length r
  std::vector<int> pivots;
};

// all s-dimensional subspaces of F_q^n, deterministic order
inline std::vector<Subspace> subspaces(const GF& f, int n, int s) {
  std::vector<Subspace> out;
  std::vector<int> piv(s);
  std::function<void(int, int)> choose = [&](int k, int start) {
    if (k == s) {
      // free positions: (row i, col j) with j > piv[i], j not a pivot
      std::vector<std::pair<int, int>> freePos;
      for (int i = 0; i < s; ++i)
        for (int j = piv[i] + 1; j < n; ++j)
          if (std::find(piv.begin(), piv.end(), j) == piv.end()) freePos.push_back({i, j});
      for (auto& vals : allVectors(f, static_cast<int>(freePos.size()))) {
        Subspace U;
        U.pivots = piv;
        U.basis.assign(s, std::vector<Elem>(n, 0));
        for (int i = 0; i < s; ++i) U.basis[i][piv[i]] = 1;
        for (size_t t = 0; t < freePos.size(); ++t) U.basis[freePos[t].first][freePos[t].second] = vals[t];
        out.push_back(std::move(U));
      }
      return;
    }
    for (int j = start; j < n; ++j) {
      piv[k] = j;
      choose(k + 1, j + 1);
    }
  };
  choose(0, 0);
  return out;
}

// rows: the given vectors then unit vectors completing them to a basis
inline FMat completedBasis(const GF& f, int r, const std::vector<std::vector<Elem>>& rows) {
  std::vector<std::vector<Elem>> all = rows;
  // greedy completion by unit vectors, checked through rank growth
  for (int j = 0; j < r && static_cast<int>(all.size()) < r; ++j) {
    std::vector<Elem> e(r, 0);
    e[j] = 1;
    auto trial = all;
    trial.push_back(e);
    if (!leftKernelVector(f, trial)) all = std::move(trial);
  }
  return constantMat(f, all);
}

// span of the rows of coef * basis
inline std::vector<std::vector<Elem>> combineRows(const GF& f, const std::vector<std::vector<Elem>>& coef,
                                                  const std::vector<std::vector<Elem>>& basis) {
  std::vector<std::vector<Elem>> out;
  for (auto& c : coef) {
    std::vector<Elem> row(basis.at(0).size(), 0);
    for (size_t k = 0; k < c.size(); ++k)
      for (size_t j = 0; j < row.size(); ++j) row[j] = f.add(row[j], f.mul(c[k], basis[k][j]));
    out.push_back(row);
  }
  return out;
}

// rows of big not in the span of small, chosen greedily
inline std::vector<std::vector<Elem>> relativeComplement(const GF& f, const std::vector<std::vector<Elem>>& small,
                                                         const std::vector<std::vector<Elem>>& big) {
  auto all = small;
  std::vector<std::vector<Elem>> out;
  for (auto& b : big) {
    auto trial = all;
    trial.push_back(b);
    if (!leftKernelVector(f, trial)) {
      all = std::move(trial);
      out.push_back(b);
    }
  }
  return out;
}

// The type-s edge (L + pi^{-1} U g^{-1}, L) into v = [L0 g^{-1}], where the
// first s rows of K span U.
inline OrientedEdge edgeFromBasis(const FMat& g, const FMat& K, int s) {
  const GF& f = g.proto().field();
  return {g * K.inverse() * diagPi(f, g.rows, s), s};
}

struct DefCheckOptions {
  // cap on the number of flags U1 < U0 examined for condition (4); 0 = all
  size_t maxFlags = 0;
};

// Def. 2.1 conditions (1)-(4) at the vertex [L0 g^{-1}]
inline HarmonicReport checkHarmonicDef(const Cochain& h, const FMat& g, DefCheckOptions opt = {}) {
  const GF& f = g.proto().field();
  int r = g.rows;
  HarmonicReport rep;
  auto inEdge = [&](const std::vector<std::vector<Elem>>& rows) {
    return edgeFromBasis(g, completedBasis(f, r, rows), static_cast<int>(rows.size()));
  };
  for (int s = 1; s < r; ++s) {
    Rational inSum = 0;
    bool inOk = true;
    std::string inDetail;
    for (auto& U : subspaces(f, r, s)) {
      OrientedEdge e = inEdge(U.basis);
      auto anti = compareSums(
          "antisymmetry s=" + std::to_string(s), [&] { return h(e) + h(e.reverse()); }, [] { return Rational(0); });
      rep.conditions.push_back(anti);
      try {
        inSum += h(e);
      } catch (const Unevaluable& ex) {
        inOk = false;
        inDetail = ex.what();
      }
      if (s >= 2) {
        rep.conditions.push_back(compareSums(
            "triangle s=" + std::to_string(s),
            [&] {
              Rational sum = 0;
              for (auto& line : subspaces(f, s, 1)) sum += h(inEdge(combineRows(f, line.basis, U.basis)));
              return sum;
            },
            [&] { return h(e); }));
      }
    }
    ConditionResult c;
    c.name = "in-sum s=" + std::to_string(s);
    c.evaluable = inOk;
    c.detail = inDetail;
    c.lhs = inSum;
    c.pass = inOk && inSum == 0;
    rep.conditions.push_back(c);
  }
  // pointed 2-simplices (v0, v1, v) with v0 = L + pi^{-1}U0, v1 = L + pi^{-1}U1, U1 < U0
  size_t flags = 0;
  for (int t0 = 2; t0 < r; ++t0)
    for (auto& U0 : subspaces(f, r, t0))
      for (int t1 = 1; t1 < t0; ++t1)
        for (auto& sub : subspaces(f, t0, t1)) {
          if (opt.maxFlags && flags >= opt.maxFlags) return rep;
          ++flags;
          auto U1 = combineRows(f, sub.basis, U0.basis);
          auto C = relativeComplement(f, U1, U0.basis);
          OrientedEdge e1v = inEdge(U1);     // (v1, v)
          OrientedEdge e0v = inEdge(U0.basis);  // (v0, v)
          auto ordered = C;
          ordered.insert(ordered.end(), U1.begin(), U1.end());
          OrientedEdge e01{g * completedBasis(f, r, ordered).inverse() * diagPi(f, r, t0), t0 - t1};
          std::string tag = " t=(" + std::to_string(t0) + "," + std::to_string(t1) + ")";
          // the three rotations of the simplex
          rep.conditions.push_back(compareSums(
              "simplex (v0,v1,v)" + tag, [&] { return h(e01) + h(e1v); }, [&] { return h(e0v); }));
          rep.conditions.push_back(compareSums(
              "simplex (v1,v,v0)" + tag, [&] { return h(e1v) + h(e0v.reverse()); },
              [&] { return h(e01.reverse()); }));
          rep.conditions.push_back(compareSums(
              "simplex (v,v0,v1)" + tag, [&] { return h(e0v.reverse()) + h(e01); },
              [&] { return h(e1v.reverse()); }));
        }
  return rep;
}

}  // namespace hb
