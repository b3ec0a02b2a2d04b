#pragma once

#include "hb/building.hpp"
#include "hb/laurent.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hb {

struct OracleOptions {
  int degBound = 6;       // enumerate lattice points sum a_i u_i with deg a_i <= degBound
  int maxDegBound = 0;    // unstable products retry at D + 1 up to this; 0 disables
  long prec = kDefaultPrecision;  // relative precision of each 1/lambda
  long maxPrec = 8 * kDefaultPrecision;  // uncertified valuations retry at doubled precision up to this
  bool allowRank3 = false;
  long generatorPower = 1;  // z0 uses eps = (primitive element)^generatorPower
  unsigned threads = 1;
  std::string cachePath;  // line-delimited JSON records; empty disables the file
};

// Coefficients alpha_k of x^{q^k} in the truncated product x prod (1 - x/lambda),
// plus convergence diagnostics.
struct ExpData {
  std::vector<Laurent> alpha;  // k = 0..K
  long nonLinearOrd = Laurent::kInf;  // least valuation among non-q-power coefficients
  size_t points = 0;          // lattice points in the product
};

struct DrinfeldData {
  std::vector<Laurent> g;  // g_1..g_r (index 0 unused)
  ExpData exp;
  long residualOrd = Laurent::kInf;  // functional-equation residual valuation
};

struct DeltaValuation {
  long ord = 0;            // ord Delta_r(h z0)
  long stableDepth = 0;    // g_r at D-1 and D agree modulo pi^stableDepth
  long precision = 0;      // working precision that certified the valuation
  int degBound = 0;        // truncation degree that passed the stability check
  long nonLinearOrd = 0;
  size_t points = 0;
};

// Independent evaluation of |Delta_r| on z0-translates through lattice products.
class DeltaOracle {
 public:
  DeltaOracle(const GF& f, int r, OracleOptions opt = {})
      : f_(&f), r_(r), opt_(std::move(opt)), big_(&GF::get(f.p, f.e * r)), emb_(f, *big_) {
    if (r < 1) throw MathError("rank must be positive");
    if (r > 2 && !opt_.allowRank3) throw MathError("rank " + std::to_string(r) + " oracle is gated behind --allow-rank3");
    if (r > 3) throw MathError("oracle supports rank <= 3");
    if (opt_.degBound < 1) throw MathError("degree bound must be at least 1");
    eps_ = big_->expOf(opt_.generatorPower);
    // eps must generate F_{q^r} over F_q
    for (int d = 1; d < r; ++d)
      if (r % d == 0 && big_->frob(eps_, f.e * d) == eps_)
        throw MathError("z0 generator lies in a proper subfield");
    loadCache();
  }

  const GF& bigField() const { return *big_; }
  const OracleOptions& options() const { return opt_; }

  // u_i = sum_j h_ij z_j, z0 = (eps^{r-1}, ..., eps, 1)
  std::vector<Laurent> latticeBasis(const FMat& h, long prec = 0) const {
    if (prec <= 0) prec = opt_.prec;
    std::vector<Laurent> z(r_);
    for (int j = 0; j < r_; ++j) z[j] = Laurent::constant(*big_, big_->pow(eps_, r_ - 1 - j));
    std::vector<Laurent> u;
    for (int i = 0; i < r_; ++i) {
      Laurent s = Laurent::zero(*big_);
      for (int j = 0; j < r_; ++j)
        if (!h(i, j).isZero()) s = s + toLaurent(h(i, j), emb_, prec) * z[j];
      u.push_back(s);
    }
    return u;
  }

  // Basis of the same A-lattice with F_q-independent leading coefficients, so
  // |sum a_i w_i| = max |a_i| |w_i| and degree-truncated products are balls.
  std::vector<Laurent> reduceBasis(std::vector<Laurent> w) const {
    const GF& B = *big_;
    long q = static_cast<long>(f_->q());
    FieldEmbedding emb = emb_;
    for (int guard = 0; guard < 100000; ++guard) {
      for (auto& x : w)
        if (x.c.empty()) throw PrecisionError("lattice basis element not certified nonzero; increase --prec");
      std::stable_sort(w.begin(), w.end(), [](const Laurent& a, const Laurent& b) { return a.ord() > b.ord(); });
      bool changed = false;
      for (size_t k = 1; k < w.size() && !changed; ++k) {
        // brute force c in F_q^k with lc(w_k) = sum c_j lc(w_j)
        std::vector<Elem> c(k, 0);
        while (true) {
          Elem s = 0;
          for (size_t j = 0; j < k; ++j) s = B.add(s, B.mul(emb(c[j]), w[j].c[0]));
          if (s == w[k].c[0]) {
            for (size_t j = 0; j < k; ++j)
              if (c[j]) w[k] = w[k] - w[j].shift(w[k].ord() - w[j].ord()).scale(emb(c[j]));
            changed = true;
            break;
          }
          size_t t = 0;
          while (t < k && ++c[t] == static_cast<Elem>(q)) c[t++] = 0;
          if (t == k) break;
        }
      }
      if (!changed) return w;
    }
    throw MathError("lattice reduction did not terminate");
  }

  // exp coefficients of sum A u_i at truncation degrees D-1 and D
  std::pair<ExpData, ExpData> expCoefficients(const std::vector<Laurent>& u, int K, long prec = 0, int D = 0) const {
    if (prec <= 0) prec = opt_.prec;
    if (D <= 0) D = opt_.degBound;
    const GF& B = *big_;
    long q = static_cast<long>(f_->q());
    long top = 1;
    for (int k = 0; k < K; ++k) top *= q;  // polynomial P(x) with e(x) = x P(x), degree < q^K
    std::vector<std::vector<std::vector<Elem>>> shells(D + 1);
    // projective representatives: first nonzero a_i has leading coefficient 1
    std::vector<Poly> polys = Poly::allUpToDegree(*f_, D);
    std::vector<size_t> idx(r_, 0);
    while (true) {
      int maxDeg = -1, first = -1;
      for (int i = 0; i < r_; ++i) {
        const Poly& a = polys[idx[i]];
        maxDeg = std::max(maxDeg, a.deg());
        if (first < 0 && !a.isZero()) first = i;
      }
      if (first >= 0 && polys[idx[first]].lead() == 1) {
        std::vector<Elem> flat;
        for (int i = 0; i < r_; ++i) {
          std::vector<Elem> c = polys[idx[i]].c;
          c.resize(D + 1, 0);
          flat.insert(flat.end(), c.begin(), c.end());
        }
        shells[maxDeg].push_back(std::move(flat));
      }
      int k = r_ - 1;
      while (k >= 0 && ++idx[k] == polys.size()) idx[k--] = 0;
      if (k < 0) break;
    }
    // T^k u_i, exact
    std::vector<Laurent> basis;
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k <= D; ++k) basis.push_back(u[i].shift(-k));
    FieldEmbedding emb = emb_;
    auto partial = [&, top](const std::vector<std::vector<Elem>>& pts, size_t lo, size_t hi) {
      std::vector<Laurent> P(top, Laurent::zero(B));
      P[0] = Laurent::one(B);
      for (size_t t = lo; t < hi; ++t) {
        Laurent lam = Laurent::zero(B);
        for (size_t j = 0; j < pts[t].size(); ++j)
          if (pts[t][j]) lam = lam + basis[j].scale(emb(pts[t][j]));
        if (lam.isExactZero()) throw MathError("lattice basis is degenerate");
        Laurent inv = lam.inverse(prec);
        Laurent mu = inv;
        for (long e = 1; e < q - 1; ++e) mu = mu * inv;
        // P *= (1 - mu x^{q-1})
        for (long k = top - 1; k >= q - 1; --k) {
          const Laurent& src = P[k - (q - 1)];
          if (src.isExactZero()) continue;
          P[k] = P[k] - mu * src;
        }
      }
      return P;
    };
    auto product = [&](const std::vector<std::vector<Elem>>& pts) {
      unsigned nt = std::max(1u, opt_.threads);
      if (nt == 1 || pts.size() < 64) return partial(pts, 0, pts.size());
      std::vector<std::vector<Laurent>> parts(nt);
      std::vector<std::thread> workers;
      size_t chunk = (pts.size() + nt - 1) / nt;
      for (unsigned w = 0; w < nt; ++w)
        workers.emplace_back([&, w] {
          size_t lo = std::min(pts.size(), w * chunk), hi = std::min(pts.size(), lo + chunk);
          parts[w] = partial(pts, lo, hi);
        });
      for (auto& th : workers) th.join();
      std::vector<Laurent> acc = parts[0];
      for (unsigned w = 1; w < nt; ++w) acc = multiplyTruncated(acc, parts[w]);
      return acc;
    };
    std::vector<std::vector<Elem>> inner, outer;
    for (int d = 0; d < D; ++d) inner.insert(inner.end(), shells[d].begin(), shells[d].end());
    outer = shells[D];
    std::vector<Laurent> Pin = product(inner);
    std::vector<Laurent> Pall = multiplyTruncated(Pin, product(outer));
    size_t nIn = inner.size() * (q - 1), nAll = nIn + outer.size() * (q - 1);
    return {summarize(Pin, K, nIn), summarize(Pall, K, nAll)};
  }

  // g_k = alpha_k (T^{q^k} - T) - sum_{i<k} g_i alpha_{k-i}^{q^i}
  DrinfeldData drinfeldCoeffs(const ExpData& e) const {
    const GF& B = *big_;
    int K = static_cast<int>(e.alpha.size()) - 1;
    long q = static_cast<long>(f_->q());
    DrinfeldData d;
    d.exp = e;
    d.g.assign(K + 1, Laurent::zero(B));
    Laurent T = Laurent::monomial(B, 1, -1);
    long qk = 1;
    for (int k = 1; k <= K; ++k) {
      qk *= q;
      Laurent s = e.alpha[k] * (Laurent::monomial(B, 1, -qk) - T);
      for (int i = 1; i < k; ++i) s = s - d.g[i] * e.alpha[k - i].frobPow(f_->e * i);
      d.g[k] = s;
    }
    // residual of exp(Tx) = phi_T(exp x) at x^{q^j}, j <= K, is zero by construction;
    // report the precision floor instead
    d.residualOrd = d.g[K].absPrec();
    return d;
  }

  // ord Delta_r(h z0), normalized through the last coordinate of z0 h^t
  DeltaValuation ordDelta(const FMat& h) {
    std::string key = cacheKey(h);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    std::vector<Laurent> u;
    ExpData hi;
    Laurent grHi = Laurent::zero(*big_), grLo = Laurent::zero(*big_);
    long prec = opt_.prec, depth = 0;
    int D = opt_.degBound;
    for (;; ++D) {
      for (;; prec *= 2) {
        u = latticeBasis(h, prec);
        auto [lo, top] = expCoefficients(reduceBasis(u), r_, prec, D);
        hi = top;
        grHi = drinfeldCoeffs(hi).g[r_];
        grLo = drinfeldCoeffs(lo).g[r_];
        if (!grHi.c.empty()) break;
        if (prec * 2 > std::max(opt_.maxPrec, opt_.prec))
          throw PrecisionError("discriminant valuation not certified at precision " + std::to_string(prec) +
                               "; increase --prec/--deg-bound");
      }
      depth = (grHi - grLo).ordLowerBound();
      if (depth > grHi.ord()) break;
      if (D + 1 > opt_.maxDegBound)
        throw MathError("lattice product unstable between D=" + std::to_string(D - 1) + " and D=" + std::to_string(D) +
                        "; increase --deg-bound");
    }
    long q = static_cast<long>(f_->q());
    long qr = 1;
    for (int k = 0; k < r_; ++k) qr *= q;
    DeltaValuation v;
    v.ord = grHi.ord() + (qr - 1) * u[r_ - 1].ord();
    v.stableDepth = depth;
    v.precision = prec;
    v.degBound = D;
    v.nonLinearOrd = hi.nonLinearOrd;
    v.points = hi.points;
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, v);
    appendCache(key, v);
    return v;
  }

  // P_1(Delta_r)(g) = ord Delta(g z0) - ord Delta(g S z0), S = diag(T, 1, ..., 1)
  Rational pDeltaDirect(const FMat& g) {
    FMat S = identityMat(*f_, r_);
    S(0, 0) = RatFunc::monomialT(*f_, 1, 1);
    return ordDelta(g).ord - ordDelta(g * S).ord;
  }

  // P_1(Theta_n)(g) = P_1(Delta)(g) - P_1(Delta)(diag(n, 1, ..., 1) g)
  Rational pThetaDirect(const Poly& n, const FMat& g) {
    FMat N = identityMat(*f_, r_);
    N(0, 0) = RatFunc(n);
    return pDeltaDirect(g) - pDeltaDirect(N * g);
  }

 private:
  const GF* f_;
  int r_;
  OracleOptions opt_;
  const GF* big_;
  FieldEmbedding emb_;
  Elem eps_ = 0;
  std::mutex mu_;
  std::map<std::string, DeltaValuation> memo_;

  std::vector<Laurent> multiplyTruncated(const std::vector<Laurent>& a, const std::vector<Laurent>& b) const {
    size_t top = a.size();
    std::vector<Laurent> out(top, Laurent::zero(*big_));
    for (size_t i = 0; i < top; ++i) {
      if (a[i].isExactZero()) continue;
      for (size_t j = 0; i + j < top; ++j)
        if (!b[j].isExactZero()) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
  }

  ExpData summarize(const std::vector<Laurent>& P, int K, size_t points) const {
    long q = static_cast<long>(f_->q());
    ExpData e;
    e.points = points;
    long qk = 1;
    std::vector<bool> isPower(P.size(), false);
    for (int k = 0; k <= K; ++k) {
      // alpha_k = coefficient of x^{q^k} in x P(x)
      if (qk - 1 < static_cast<long>(P.size())) {
        e.alpha.push_back(P[qk - 1]);
        isPower[qk - 1] = true;
      } else {
        e.alpha.push_back(Laurent::zero(*big_));
      }
      qk *= q;
    }
    for (size_t j = 0; j < P.size(); ++j)
      if (!isPower[j]) e.nonLinearOrd = std::min(e.nonLinearOrd, P[j].ordLowerBound());
    return e;
  }

  std::string cacheKey(const FMat& h) const {
    return std::to_string(f_->q()) + "|" + std::to_string(r_) + "|" + matrixKey(h) + "|" + std::to_string(opt_.degBound) +
           "|" + std::to_string(opt_.prec) + "|" + big_->modulusString() + "|" + std::to_string(opt_.generatorPower);
  }

  // one JSON object per line: key, ord, depth, nonlinear, points, prec_used, deg_used
  void loadCache() {
    if (opt_.cachePath.empty()) return;
    std::ifstream in(opt_.cachePath);
    std::string line;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;  // skip malformed records
      try {
        DeltaValuation v;
        v.ord = j.at("ord").get<long>();
        v.stableDepth = j.at("depth").get<long>();
        v.nonLinearOrd = j.at("nonlinear").get<long>();
        v.points = j.at("points").get<size_t>();
        v.precision = j.at("prec_used").get<long>();
        v.degBound = j.at("deg_used").get<int>();
        memo_[j.at("key").get<std::string>()] = v;
      } catch (const nlohmann::json::exception&) {
        continue;
      }
    }
  }

  void appendCache(const std::string& key, const DeltaValuation& v) const {
    if (opt_.cachePath.empty()) return;
    nlohmann::json j = {{"key", key},           {"ord", v.ord},       {"depth", v.stableDepth},
                        {"nonlinear", v.nonLinearOrd}, {"points", v.points}, {"prec_used", v.precision},
                        {"deg_used", v.degBound}};
    std::ofstream out(opt_.cachePath, std::ios::app);
    out << j.dump() << "\n";
  }
};

}  // namespace hb
