#include "gcensus/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "gcensus/rng.hpp"

namespace gcensus {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void check_ctx(const FqElem& a, const FqElem& b) {
  if (a.ctx != b.ctx) throw std::invalid_argument("field context mismatch");
}

// ---- polynomial helpers over F_p (plain residue vectors) ----------------
// Used only by the irreducibility test in make_field.

using PPoly = std::vector<uint32_t>;  // coeff of X^i at index i

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& mod, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j];
  }
  // reduce by the monic modulus
  size_t k = mod.size() - 1;
  for (size_t i = acc.size(); i-- > k;) {
    uint64_t v = acc[i] % p;
    if (!v) continue;
    uint64_t c = p - v;  // subtract v * X^{i-k} * mod
    for (size_t j = 0; j < k; ++j) acc[i - k + j] += c * mod[j] % p * 1ull;
    acc[i] = 0;
  }
  PPoly r(k);
  for (size_t i = 0; i < k; ++i) r[i] = uint32_t(acc[i] % p);
  ptrim(r);
  return r;
}

PPoly ppowp(const PPoly& a, uint32_t p, const PPoly& mod) {
  // a^p mod `mod` by square and multiply on the exponent p.
  PPoly result{1}, base = a;
  uint32_t e = p;
  while (e) {
    if (e & 1) result = pmulmod(result, base, mod, p);
    base = pmulmod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

PPoly pgcd(PPoly a, PPoly b, uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // a mod b
    uint32_t lcinv = 1;
    {  // inverse of b's leading coeff mod p
      uint32_t lc = b.back();
      uint32_t t = 1, e = p - 2, base = lc;
      while (e) {
        if (e & 1) t = uint32_t(uint64_t(t) * base % p);
        base = uint32_t(uint64_t(base) * base % p);
        e >>= 1;
      }
      lcinv = t;
    }
    while (a.size() >= b.size() && !a.empty()) {
      uint64_t q = uint64_t(a.back()) * lcinv % p;
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t sub = q * b[i] % p;
        a[shift + i] = uint32_t((a[shift + i] + p - sub) % p);
      }
      ptrim(a);
    }
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible_mod_p(const PPoly& f, uint32_t p) {
  // Distinct-degree test: X^{p^k} = X mod f, and gcd(X^{p^{k/r}} - X, f) = 1
  // for every prime r | k.
  size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  PPoly x{0, 1};
  std::vector<PPoly> frob(k + 1);  // frob[j] = X^{p^j} mod f
  frob[0] = x;
  for (size_t j = 1; j <= k; ++j) frob[j] = ppowp(frob[j - 1], p, f);
  PPoly top = frob[k];
  PPoly diff = top;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  ptrim(diff);
  if (!diff.empty()) return false;
  for (size_t r = 2; r <= k; ++r) {
    if (k % r) continue;
    bool rp = true;
    for (size_t d = 2; d * d <= r; ++d)
      if (r % d == 0) rp = false;
    if (!rp) continue;
    PPoly g = frob[k / r];
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    ptrim(g);
    PPoly c = pgcd(g, f, p);
    if (c.size() != 1) return false;
  }
  return true;
}

// ---- polynomial helpers over an arbitrary FieldCtx ----------------------
// Used only for embedding roots (find a root of the source defining
// polynomial inside the target field).

using QPoly = std::vector<FqElem>;

void qtrim(QPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

QPoly qmulmod(const QPoly& a, const QPoly& b, const QPoly& mod, const FieldCtx* F) {
  if (a.empty() || b.empty()) return {};
  QPoly acc(a.size() + b.size() - 1, F->zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      acc[i + j] = acc[i + j] + a[i] * b[j];
  }
  size_t k = mod.size() - 1;
  FqElem lcinv = F->inv(mod.back());
  for (size_t i = acc.size(); i-- > k;) {
    if (acc[i].is_zero()) continue;
    FqElem q = acc[i] * lcinv;
    for (size_t j = 0; j < k; ++j) acc[i - k + j] = acc[i - k + j] - q * mod[j];
    acc[i] = F->zero();
  }
  acc.resize(k, F->zero());
  qtrim(acc);
  return acc;
}

QPoly qgcd(QPoly a, QPoly b, const FieldCtx* F) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    FqElem lcinv = F->inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      FqElem q = a.back() * lcinv;
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = a[shift + i] - q * b[i];
      qtrim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    FqElem lcinv = F->inv(a.back());
    for (auto& c : a) c = c * lcinv;
  }
  return a;
}

QPoly qpow_u64(QPoly base, uint64_t e, const QPoly& mod, const FieldCtx* F) {
  QPoly result{F->one()};
  while (e) {
    if (e & 1) result = qmulmod(result, base, mod, F);
    base = qmulmod(base, base, mod, F);
    e >>= 1;
  }
  return result;
}

// All roots in F of a squarefree polynomial that splits completely in F.
void qcollect_roots(const QPoly& g, const FieldCtx* F, Rng& rng,
                    std::vector<FqElem>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(F->neg(g[0] * F->inv(g[1])));
    return;
  }
  uint64_t Q = F->order();
  for (int tries = 0; tries < 256; ++tries) {
    QPoly shift = g;
    FqElem a = F->from_int(int64_t(rng.below(Q)));
    // random element with full coordinates rather than only F_p shifts
    {
      std::vector<uint32_t> cs(size_t(F->degree()));
      for (auto& c : cs) c = uint32_t(rng.below(F->p()));
      a = F->make(cs);
    }
    QPoly lin{a, F->one()};  // X + a
    QPoly h;
    if (F->p() == 2) {
      // trace splitting: sum of (X+a)^{2^i}
      QPoly t = qmulmod(lin, {F->one()}, g, F);
      h = t;
      for (int i = 1; i < F->degree(); ++i) {
        t = qmulmod(t, t, g, F);
        h.resize(std::max(h.size(), t.size()), F->zero());
        for (size_t j = 0; j < t.size(); ++j) h[j] = h[j] + t[j];
        qtrim(h);
      }
    } else {
      h = qpow_u64(lin, (Q - 1) / 2, g, F);
      if (h.empty())
        h = QPoly{F->neg(F->one())};
      else
        h[0] = h[0] - F->one();
      qtrim(h);
    }
    QPoly d = qgcd(h, g, F);
    if (d.size() > 1 && d.size() < g.size()) {
      // split and recurse on both halves
      QPoly q = g;
      // q = g / d  (exact division, d monic)
      {
        QPoly quo(q.size() - d.size() + 1, F->zero());
        QPoly rem = q;
        while (rem.size() >= d.size() && !rem.empty()) {
          FqElem c = rem.back();
          size_t sh = rem.size() - d.size();
          quo[sh] = c;
          for (size_t i = 0; i < d.size(); ++i)
            rem[sh + i] = rem[sh + i] - c * d[i];
          qtrim(rem);
        }
        q = quo;
      }
      qcollect_roots(d, F, rng, out);
      qcollect_roots(q, F, rng, out);
      return;
    }
  }
  throw std::runtime_error("root splitting failed (retry limit)");
}

struct EmbedData {
  FqElem root;                        // image of source generator
  std::vector<std::vector<uint32_t>>  // row-echelon data for retract
      basis_cols;                     // root^i coordinates, i < src degree
};

struct Registry {
  std::mutex mu;
  std::map<std::tuple<uint32_t, int, uint64_t>, std::unique_ptr<FieldCtx>> fields;
  std::map<std::vector<uint32_t>, FieldCtx*> by_poly;  // keyed (p, defining...)
  std::map<std::pair<uint64_t, uint64_t>, EmbedData> embeds;
  uint64_t next_id = 1;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

}  // namespace

// ---- FieldCtx ------------------------------------------------------------

FqElem FieldCtx::zero() const {
  FqElem e;
  e.ctx = this;
  return e;
}

FqElem FieldCtx::one() const { return from_int(1); }

FqElem FieldCtx::from_int(int64_t v) const {
  FqElem e = zero();
  int64_t r = v % int64_t(p_);
  if (r < 0) r += p_;
  e.c[0] = uint32_t(r);
  return e;
}

FqElem FieldCtx::gen() const {
  FqElem e = zero();
  if (k_ > 1) e.c[1] = 1;
  return e;
}

FqElem FieldCtx::make(const std::vector<uint32_t>& coeffs) const {
  if (int(coeffs.size()) > k_)
    throw std::invalid_argument("coefficient vector longer than field degree");
  FqElem e = zero();
  for (size_t i = 0; i < coeffs.size(); ++i) e.c[i] = coeffs[i] % p_;
  return e;
}

FqElem FieldCtx::add(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (int i = 0; i < k_; ++i) {
    uint32_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FqElem FieldCtx::sub(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (int i = 0; i < k_; ++i) {
    uint32_t s = a.c[i] + p_ - b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FqElem FieldCtx::neg(const FqElem& a) const {
  FqElem r = zero();
  for (int i = 0; i < k_; ++i) r.c[i] = a.c[i] ? p_ - a.c[i] : 0;
  return r;
}

void FieldCtx::reduce_product(uint64_t* acc, FqElem& out) const {
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    uint64_t v = acc[i] % p_;
    if (!v) continue;
    const auto& row = red_[size_t(i - k_)];
    for (int j = 0; j < k_; ++j) acc[j] += v * row[size_t(j)];
  }
  for (int i = 0; i < k_; ++i) out.c[size_t(i)] = uint32_t(acc[i] % p_);
}

FqElem FieldCtx::mul(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  if (k_ == 1) {
    r.c[0] = uint32_t(uint64_t(a.c[0]) * b.c[0] % p_);
    return r;
  }
  uint64_t acc[2 * kMaxExtDegree - 1] = {0};
  for (int i = 0; i < k_; ++i) {
    if (!a.c[size_t(i)]) continue;
    uint64_t ai = a.c[size_t(i)];
    for (int j = 0; j < k_; ++j) acc[i + j] += ai * b.c[size_t(j)];
  }
  reduce_product(acc, r);
  return r;
}

FqElem FieldCtx::inv(const FqElem& a) const {
  if (a.is_zero()) throw std::domain_error("division by zero");
  if (k_ == 1) {
    // Fermat in the prime field
    uint32_t t = 1, base = a.c[0], e = p_ - 2;
    while (e) {
      if (e & 1) t = uint32_t(uint64_t(t) * base % p_);
      base = uint32_t(uint64_t(base) * base % p_);
      e >>= 1;
    }
    FqElem r = zero();
    r.c[0] = t;
    return r;
  }
  // extended Euclid in F_p[X] against the defining polynomial
  PPoly r0(defining_.begin(), defining_.end());
  PPoly r1(a.c.begin(), a.c.begin() + k_);
  ptrim(r1);
  PPoly s0{}, s1{1};
  while (!r1.empty()) {
    // divide r0 by r1
    PPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    uint32_t lc = r1.back();
    uint32_t lcinv;
    {
      uint32_t t = 1, base = lc, e = p_ - 2;
      while (e) {
        if (e & 1) t = uint32_t(uint64_t(t) * base % p_);
        base = uint32_t(uint64_t(base) * base % p_);
        e >>= 1;
      }
      lcinv = t;
    }
    PPoly rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      uint64_t c = uint64_t(rem.back()) * lcinv % p_;
      size_t sh = rem.size() - r1.size();
      q[sh] = uint32_t(c);
      for (size_t i = 0; i < r1.size(); ++i) {
        uint64_t sub = c * r1[i] % p_;
        rem[sh + i] = uint32_t((rem[sh + i] + p_ - sub) % p_);
      }
      ptrim(rem);
    }
    // s2 = s0 - q*s1
    PPoly qs(q.size() + s1.size(), 0);
    if (!q.empty() && !s1.empty()) {
      qs.assign(q.size() + s1.size() - 1, 0);
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < s1.size(); ++j)
          qs[i + j] = uint32_t((qs[i + j] + uint64_t(q[i]) * s1[j]) % p_);
    } else {
      qs.clear();
    }
    PPoly s2(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s2.size(); ++i) {
      uint32_t x = i < s0.size() ? s0[i] : 0;
      uint32_t y = i < qs.size() ? qs[i] : 0;
      s2[i] = (x + p_ - y) % p_;
    }
    ptrim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd (a nonzero constant since defining is irreducible), s0 its Bezout
  uint32_t g = r0.empty() ? 0 : r0[0];
  if (r0.size() != 1 || g == 0) throw std::logic_error("inverse failed");
  uint32_t ginv;
  {
    uint32_t t = 1, base = g, e = p_ - 2;
    while (e) {
      if (e & 1) t = uint32_t(uint64_t(t) * base % p_);
      base = uint32_t(uint64_t(base) * base % p_);
      e >>= 1;
    }
    ginv = t;
  }
  FqElem out = zero();
  for (size_t i = 0; i < s0.size() && int(i) < k_; ++i)
    out.c[i] = uint32_t(uint64_t(s0[i]) * ginv % p_);
  return out;
}

FqElem FieldCtx::div(const FqElem& a, const FqElem& b) const {
  return mul(a, inv(b));
}

FqElem FieldCtx::pow(const FqElem& a, uint64_t e) const {
  FqElem result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FqElem FieldCtx::frobenius(const FqElem& a, uint64_t m) const {
  FqElem r = a;
  m %= uint64_t(k_);  // Frobenius has order k
  for (uint64_t i = 0; i < m; ++i) r = pow(r, p_);
  return r;
}

FqElem FieldCtx::pth_root(const FqElem& a) const {
  return frobenius(a, uint64_t(k_ - 1));
}

bool FieldCtx::in_subfield(const FqElem& a, int kprime) const {
  if (kprime <= 0 || k_ % kprime != 0)
    throw std::invalid_argument("subfield degree must divide field degree");
  return frobenius(a, uint64_t(kprime)) == a;
}

std::vector<FqElem> FieldCtx::all_elements(uint64_t limit) const {
  if (order_ > limit) throw std::length_error("field too large to enumerate");
  std::vector<FqElem> out;
  out.reserve(size_t(order_));
  for (uint64_t n = 0; n < order_; ++n) {
    FqElem e = zero();
    uint64_t t = n;
    for (int i = k_ - 1; i >= 0; --i) {
      e.c[size_t(i)] = uint32_t(t % p_);
      t /= p_;
    }
    out.push_back(e);
  }
  return out;
}

std::string FieldCtx::to_string(const FqElem& a) const {
  std::string s = "[";
  for (int i = 0; i < k_; ++i) {
    if (i) s += ",";
    s += std::to_string(a.c[size_t(i)]);
  }
  s += "]";
  return s;
}

// ---- free operators --------------------------------------------------------

FqElem operator+(const FqElem& a, const FqElem& b) {
  check_ctx(a, b);
  return a.ctx->add(a, b);
}
FqElem operator-(const FqElem& a, const FqElem& b) {
  check_ctx(a, b);
  return a.ctx->sub(a, b);
}
FqElem operator*(const FqElem& a, const FqElem& b) {
  check_ctx(a, b);
  return a.ctx->mul(a, b);
}
FqElem operator/(const FqElem& a, const FqElem& b) {
  check_ctx(a, b);
  return a.ctx->div(a, b);
}
FqElem operator-(const FqElem& a) { return a.ctx->neg(a); }

// ---- FieldRegistry ---------------------------------------------------------

struct FieldCtxBuilder {
  static std::unique_ptr<FieldCtx> build(uint32_t p, const std::vector<uint32_t>& defining,
                                         uint64_t seed);
  static void set_id(FieldCtx& ctx, uint64_t id) { ctx.id_ = id; }
};

std::unique_ptr<FieldCtx> FieldCtxBuilder::build(uint32_t p,
                                                 const std::vector<uint32_t>& defining,
                                                 uint64_t seed) {
  auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->k_ = int(defining.size()) - 1;
  ctx->seed_ = seed;
  ctx->defining_ = defining;
  uint64_t order = 1;
  for (int i = 0; i < ctx->k_; ++i) order *= p;
  ctx->order_ = order;
  // reduction rows X^{k+j} mod defining
  int k = ctx->k_;
  if (k > 1) {
    ctx->red_.resize(size_t(k - 1));
    std::vector<uint32_t> cur(size_t(k), 0u);  // X^k mod f = -f[0..k-1]
    for (int i = 0; i < k; ++i) cur[size_t(i)] = defining[size_t(i)] ? p - defining[size_t(i)] : 0;
    for (int j = 0; j < k - 1; ++j) {
      auto& row = ctx->red_[size_t(j)];
      row.fill(0);
      for (int i = 0; i < k; ++i) row[size_t(i)] = cur[size_t(i)];
      if (j + 1 < k - 1) {
        // cur = X * cur mod f
        std::vector<uint32_t> nxt(size_t(k), 0);
        uint32_t top = cur[size_t(k - 1)];
        for (int i = k - 1; i > 0; --i) nxt[size_t(i)] = cur[size_t(i - 1)];
        if (top) {
          for (int i = 0; i < k; ++i) {
            uint64_t sub = uint64_t(top) * defining[size_t(i)] % p;
            nxt[size_t(i)] = uint32_t((nxt[size_t(i)] + p - sub) % p);
          }
        }
        cur = nxt;
      }
    }
  }
  return ctx;
}

const FieldCtx* FieldRegistry::make_field(uint32_t p, int k, uint64_t seed) {
  if (!is_prime_u32(p)) throw std::invalid_argument("characteristic must be prime");
  if (k < 1 || k > kMaxExtDegree)
    throw std::invalid_argument("extension degree out of supported range");
  if (p >= (1u << 20)) throw std::invalid_argument("characteristic too large");
  {
    long double ord = 1;
    for (int i = 0; i < k; ++i) ord *= p;
    if (ord > 4.0e18L) throw std::invalid_argument("field order too large");
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_tuple(p, k, seed);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();

  std::vector<uint32_t> defining;
  if (k == 1) {
    defining = {0, 1};  // X - 0 convention for prime fields
  } else {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + p * 1000003ULL + uint64_t(k));
    bool found = false;
    for (int tries = 0; tries < 20000 && !found; ++tries) {
      PPoly f(size_t(k + 1), 0);
      f[size_t(k)] = 1;
      for (int i = 0; i < k; ++i) f[size_t(i)] = uint32_t(rng.below(p));
      if (is_irreducible_mod_p(f, p)) {
        defining = f;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("irreducible polynomial search hit retry limit");
  }
  auto ctx = FieldCtxBuilder::build(p, defining, seed);
  FieldCtxBuilder::set_id(*ctx, reg.next_id++);
  const FieldCtx* out = ctx.get();
  reg.fields.emplace(key, std::move(ctx));
  return out;
}

const FieldCtx* FieldRegistry::make_field_with_poly(uint32_t p,
                                                    const std::vector<uint32_t>& defining) {
  if (!is_prime_u32(p)) throw std::invalid_argument("characteristic must be prime");
  if (defining.size() < 2 || defining.back() != 1)
    throw std::invalid_argument("defining polynomial must be monic of degree >= 1");
  int k = int(defining.size()) - 1;
  if (k > kMaxExtDegree) throw std::invalid_argument("extension degree out of supported range");
  if (k > 1 && !is_irreducible_mod_p(defining, p))
    throw std::invalid_argument("defining polynomial is reducible");
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  std::vector<uint32_t> key;
  key.push_back(p);
  for (auto c : defining) key.push_back(c % p);
  auto it = reg.by_poly.find(key);
  if (it != reg.by_poly.end()) return it->second;
  auto ctx = FieldCtxBuilder::build(p, defining, 0);
  FieldCtxBuilder::set_id(*ctx, reg.next_id++);
  FieldCtx* out = ctx.get();
  reg.fields.emplace(std::make_tuple(p, k, uint64_t(0xffff0000u) + reg.next_id), std::move(ctx));
  reg.by_poly.emplace(std::move(key), out);
  return out;
}

namespace {

EmbedData& embedding_data(const FieldCtx* src, const FieldCtx* dst) {
  if (src->p() != dst->p()) throw std::invalid_argument("embedding requires equal characteristic");
  if (dst->degree() % src->degree() != 0)
    throw std::invalid_argument("source degree must divide target degree");
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(src->id(), dst->id());
  auto it = reg.embeds.find(key);
  if (it != reg.embeds.end()) return it->second;

  // Find all roots of the source defining polynomial in dst, keep the
  // canonical (lexicographically smallest) one.
  QPoly f;
  for (uint32_t c : src->defining_poly()) f.push_back(dst->from_int(int64_t(c)));
  qtrim(f);
  Rng rng(src->id() * 0x100000001b3ULL ^ dst->id() * 0xc6a4a7935bd1e995ULL ^ 0x51ed2701);
  std::vector<FqElem> roots;
  if (src->degree() == 1) {
    roots.push_back(dst->zero());  // prime field: generator convention is 0 (class of X - 0)
  } else {
    qcollect_roots(f, dst, rng, roots);
  }
  if (roots.empty()) throw std::runtime_error("no embedding root found");
  std::sort(roots.begin(), roots.end());
  EmbedData data;
  data.root = roots.front();

  // Precompute root powers as F_p columns for retract.
  int ks = src->degree(), kd = dst->degree();
  data.basis_cols.assign(size_t(ks), std::vector<uint32_t>(size_t(kd), 0));
  FqElem pw = dst->one();
  for (int i = 0; i < ks; ++i) {
    for (int j = 0; j < kd; ++j) data.basis_cols[size_t(i)][size_t(j)] = pw.c[size_t(j)];
    pw = dst->mul(pw, data.root);
  }
  auto res = reg.embeds.emplace(key, std::move(data));
  return res.first->second;
}

}  // namespace

FqElem FieldRegistry::embed(const FqElem& a, const FieldCtx* target) {
  const FieldCtx* src = a.ctx;
  if (src == target) return a;
  const EmbedData& data = embedding_data(src, target);
  FqElem out = target->zero();
  FqElem pw = target->one();
  for (int i = 0; i < src->degree(); ++i) {
    if (a.c[size_t(i)]) {
      FqElem term = target->mul(pw, target->from_int(int64_t(a.c[size_t(i)])));
      out = target->add(out, term);
    }
    pw = target->mul(pw, data.root);
  }
  return out;
}

FqElem FieldRegistry::embedding_root(const FieldCtx* source, const FieldCtx* target) {
  if (source == target) return target->gen();
  return embedding_data(source, target).root;
}

FqElem FieldRegistry::retract(const FqElem& a, const FieldCtx* target) {
  const FieldCtx* src = a.ctx;  // big field
  if (src == target) return a;
  const EmbedData& data = embedding_data(target, src);
  // Solve basis_cols * x = a over F_p by Gaussian elimination.
  uint32_t p = src->p();
  int rows = src->degree(), cols = target->degree();
  std::vector<std::vector<uint32_t>> m(size_t(rows), std::vector<uint32_t>(size_t(cols) + 1, 0));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m[size_t(i)][size_t(j)] = data.basis_cols[size_t(j)][size_t(i)];
  for (int i = 0; i < rows; ++i) m[size_t(i)][size_t(cols)] = a.c[size_t(i)];
  int rank = 0;
  std::vector<int> pivot_col(size_t(rows), -1);
  for (int j = 0; j < cols && rank < rows; ++j) {
    int pr = -1;
    for (int i = rank; i < rows; ++i)
      if (m[size_t(i)][size_t(j)]) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[size_t(pr)], m[size_t(rank)]);
    uint32_t lc = m[size_t(rank)][size_t(j)];
    uint32_t lcinv = 1;
    {
      uint32_t t = 1, base = lc, e = p - 2;
      while (e) {
        if (e & 1) t = uint32_t(uint64_t(t) * base % p);
        base = uint32_t(uint64_t(base) * base % p);
        e >>= 1;
      }
      lcinv = t;
    }
    for (int jj = j; jj <= cols; ++jj)
      m[size_t(rank)][size_t(jj)] = uint32_t(uint64_t(m[size_t(rank)][size_t(jj)]) * lcinv % p);
    for (int i = 0; i < rows; ++i) {
      if (i == rank || !m[size_t(i)][size_t(j)]) continue;
      uint32_t f = m[size_t(i)][size_t(j)];
      for (int jj = j; jj <= cols; ++jj) {
        uint64_t sub = uint64_t(f) * m[size_t(rank)][size_t(jj)] % p;
        m[size_t(i)][size_t(jj)] = uint32_t((m[size_t(i)][size_t(jj)] + p - sub) % p);
      }
    }
    pivot_col[size_t(rank)] = j;
    ++rank;
  }
  // consistency: rows beyond rank must have zero rhs
  for (int i = rank; i < rows; ++i)
    if (m[size_t(i)][size_t(cols)])
      throw std::domain_error("element does not lie in the requested subfield");
  std::vector<uint32_t> x(size_t(cols), 0);
  for (int i = 0; i < rank; ++i) x[size_t(pivot_col[size_t(i)])] = m[size_t(i)][size_t(cols)];
  FqElem out = target->make(x);
  // verify (guards against a non-canonical solution when the system is underdetermined)
  if (embed(out, src) != a)
    throw std::domain_error("element does not lie in the requested subfield");
  return out;
}

}  // namespace gcensus
