#include "gcensus/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcensus {

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly::UniPoly(const FieldCtx* F, std::vector<FqElem> coeffs) : F_(F), c_(std::move(coeffs)) {
  for (auto& x : c_)
    if (x.ctx != F_) throw std::invalid_argument("coefficient from wrong field");
  trim();
}

UniPoly UniPoly::constant(const FieldCtx* F, const FqElem& c) {
  return UniPoly(F, std::vector<FqElem>{c});
}

UniPoly UniPoly::x(const FieldCtx* F) {
  return UniPoly(F, std::vector<FqElem>{F->zero(), F->one()});
}

UniPoly UniPoly::monomial(const FieldCtx* F, const FqElem& c, int e) {
  std::vector<FqElem> v(size_t(e) + 1, F->zero());
  v.back() = c;
  return UniPoly(F, std::move(v));
}

UniPoly UniPoly::from_ints(const FieldCtx* F, const std::vector<int64_t>& coeffs) {
  std::vector<FqElem> v;
  v.reserve(coeffs.size());
  for (int64_t x : coeffs) v.push_back(F->from_int(x));
  return UniPoly(F, std::move(v));
}

FqElem UniPoly::at(int i) const {
  if (i < 0 || i >= int(c_.size())) return F_->zero();
  return c_[size_t(i)];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  if (F_ != o.F_) throw std::invalid_argument("field context mismatch");
  std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), F_->zero());
  for (size_t i = 0; i < v.size(); ++i) {
    FqElem a = i < c_.size() ? c_[i] : F_->zero();
    FqElem b = i < o.c_.size() ? o.c_[i] : F_->zero();
    v[i] = a + b;
  }
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  if (F_ != o.F_) throw std::invalid_argument("field context mismatch");
  std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), F_->zero());
  for (size_t i = 0; i < v.size(); ++i) {
    FqElem a = i < c_.size() ? c_[i] : F_->zero();
    FqElem b = i < o.c_.size() ? o.c_[i] : F_->zero();
    v[i] = a - b;
  }
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (F_ != o.F_) throw std::invalid_argument("field context mismatch");
  if (is_zero() || o.is_zero()) return UniPoly(F_);
  std::vector<FqElem> v(c_.size() + o.c_.size() - 1, F_->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
  }
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::operator-() const {
  std::vector<FqElem> v = c_;
  for (auto& x : v) x = -x;
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::scaled(const FqElem& s) const {
  std::vector<FqElem> v = c_;
  for (auto& x : v) x = x * s;
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::shifted_exp(int e) const {
  if (is_zero()) return *this;
  std::vector<FqElem> v(size_t(e), F_->zero());
  v.insert(v.end(), c_.begin(), c_.end());
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(F_->inv(lc()));
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return UniPoly(F_);
  std::vector<FqElem> v(c_.size() - 1, F_->zero());
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F_->from_int(int64_t(i));
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::pow(uint64_t e) const {
  UniPoly result = UniPoly::constant(F_, F_->one());
  UniPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FqElem UniPoly::eval(const FqElem& v) const {
  FqElem acc = F_->zero();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
  return acc;
}

UniPoly UniPoly::compose_affine(const FqElem& a, const FqElem& b) const {
  // Horner on a*X + b
  UniPoly arg(F_, std::vector<FqElem>{b, a});
  UniPoly acc(F_);
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * arg;
    acc = acc + UniPoly::constant(F_, c_[i]);
  }
  return acc;
}

UniPoly UniPoly::reversed(int deg_bound) const {
  std::vector<FqElem> v(size_t(deg_bound) + 1, F_->zero());
  for (size_t i = 0; i < c_.size(); ++i) v[size_t(deg_bound) - i] = c_[i];
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::map_field(const FieldCtx* target) const {
  if (F_ == target) return *this;
  std::vector<FqElem> v;
  v.reserve(c_.size());
  bool up = target->degree() % F_->degree() == 0 && target->degree() >= F_->degree();
  for (const auto& x : c_)
    v.push_back(up ? FieldRegistry::embed(x, target) : FieldRegistry::retract(x, target));
  return UniPoly(target, std::move(v));
}

bool UniPoly::operator<(const UniPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string UniPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += F_->to_string(c_[i]);
    if (i >= 1) {
      s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldCtx* F = a.field();
  if (F != b.field()) throw std::invalid_argument("field context mismatch");
  if (a.degree() < b.degree()) return {UniPoly(F), a};
  std::vector<FqElem> rem(a.coeffs());
  std::vector<FqElem> quo(size_t(a.degree() - b.degree()) + 1, F->zero());
  FqElem lcinv = F->inv(b.lc());
  for (int i = a.degree(); i >= b.degree(); --i) {
    FqElem c = rem[size_t(i)];
    if (c.is_zero()) continue;
    FqElem q = c * lcinv;
    quo[size_t(i - b.degree())] = q;
    for (int j = 0; j <= b.degree(); ++j)
      rem[size_t(i - b.degree() + j)] = rem[size_t(i - b.degree() + j)] - q * b.at(j);
  }
  return {UniPoly(F, std::move(quo)), UniPoly(F, std::move(rem))};
}

UniPoly divide_exact(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.field() != b.field()) throw std::invalid_argument("field context mismatch");
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divrem(x, y).second;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

XgcdResult uni_xgcd(const UniPoly& a, const UniPoly& b) {
  const FieldCtx* F = a.field();
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(F, F->one()), s1 = UniPoly(F);
  UniPoly t0 = UniPoly(F), t1 = UniPoly::constant(F, F->one());
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    UniPoly s2 = s0 - q * s1;
    UniPoly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) return {r0, s0, t0};
  FqElem inv = F->inv(r0.lc());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

bool is_separable(const UniPoly& h) {
  if (h.is_zero()) throw std::invalid_argument("separability of the zero polynomial");
  UniPoly d = h.derivative();
  if (d.is_zero()) return h.degree() == 0;
  return uni_gcd(h, d).degree() == 0;
}

UniPoly UniFactorList::product() const {
  if (factors.empty()) {
    return UniPoly::constant(unit.ctx, unit);
  }
  const FieldCtx* F = factors.front().poly.field();
  UniPoly acc = UniPoly::constant(F, unit);
  for (const auto& f : factors) acc = acc * f.poly.pow(uint64_t(f.multiplicity));
  return acc;
}

namespace {

// p-th root of a polynomial all of whose exponents are multiples of p.
UniPoly poly_pth_root(const UniPoly& f) {
  const FieldCtx* F = f.field();
  uint32_t p = F->p();
  std::vector<FqElem> v;
  v.reserve(size_t(f.degree() / int(p)) + 1);
  for (int i = 0; i <= f.degree(); i += int(p)) v.push_back(F->pth_root(f.at(i)));
  return UniPoly(F, std::move(v));
}

void sqfree_rec(const UniPoly& f, int outer_mult, std::vector<UniFactor>& out) {
  const FieldCtx* F = f.field();
  if (f.degree() <= 0) return;
  UniPoly d = f.derivative();
  if (d.is_zero()) {
    sqfree_rec(poly_pth_root(f), outer_mult * int(F->p()), out);
    return;
  }
  UniPoly g = uni_gcd(f, d);
  UniPoly w = divide_exact(f, g);
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = uni_gcd(w, g);
    UniPoly z = divide_exact(w, y);
    if (z.degree() > 0) out.push_back({z.monic(), i * outer_mult});
    g = divide_exact(g, y);
    w = y;
    ++i;
  }
  if (g.degree() > 0) sqfree_rec(poly_pth_root(g.monic()), outer_mult * int(F->p()), out);
}

UniPoly powmod(const UniPoly& a, uint64_t e, const UniPoly& mod) {
  UniPoly result = UniPoly::constant(a.field(), a.field()->one());
  UniPoly base = divrem(a, mod).second;
  while (e) {
    if (e & 1) result = divrem(result * base, mod).second;
    base = divrem(base * base, mod).second;
    e >>= 1;
  }
  return result;
}

// X^{q^j} mod f, stepping one q-power at a time (q = field order).
UniPoly frob_power_mod(const UniPoly& start, const UniPoly& mod, int steps) {
  UniPoly h = start;
  uint64_t q = mod.field()->order();
  for (int i = 0; i < steps; ++i) h = powmod(h, q, mod);
  return h;
}

// Equal-degree splitting of a monic squarefree product of irreducibles of
// degree d.
void edf(const UniPoly& f, int d, Rng& rng, std::vector<UniPoly>& out) {
  const FieldCtx* F = f.field();
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  uint64_t q = F->order();
  for (int tries = 0; tries < 512; ++tries) {
    // random polynomial of degree < deg f
    std::vector<FqElem> rc(size_t(f.degree()), F->zero());
    for (auto& x : rc) {
      std::vector<uint32_t> cs(size_t(F->degree()));
      for (auto& cc : cs) cc = uint32_t(rng.below(F->p()));
      x = F->make(cs);
    }
    UniPoly r(F, std::move(rc));
    if (r.is_zero()) continue;
    UniPoly s(F);
    if (F->p() == 2) {
      // trace map over F_2
      UniPoly t = divrem(r, f).second;
      s = t;
      int n = F->degree() * d;
      for (int i = 1; i < n; ++i) {
        t = divrem(t * t, f).second;
        s = s + t;
      }
    } else {
      // norm to F_q then (q-1)/2 power
      UniPoly nrm = divrem(r, f).second;
      UniPoly t = nrm;
      for (int i = 1; i < d; ++i) {
        t = frob_power_mod(t, f, 1);
        nrm = divrem(nrm * t, f).second;
      }
      s = powmod(nrm, (q - 1) / 2, f);
      s = s - UniPoly::constant(F, F->one());
    }
    UniPoly g = uni_gcd(s, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(divide_exact(f, g), d, rng, out);
      return;
    }
  }
  throw std::runtime_error("equal-degree splitting hit retry limit");
}

}  // namespace

UniFactorList squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot decompose the zero polynomial");
  UniFactorList out;
  out.unit = f.is_zero() ? f.field()->zero() : f.lc();
  sqfree_rec(f.monic(), 1, out.factors);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const UniFactor& a, const UniFactor& b) { return a.poly < b.poly; });
  return out;
}

UniFactorList uni_factor(const UniPoly& f, uint64_t seed) {
  if (f.degree() < 1) throw std::invalid_argument("cannot factor a constant");
  const FieldCtx* F = f.field();
  UniFactorList sq = squarefree_decomposition(f);
  UniFactorList out;
  out.unit = sq.unit;
  Rng rng(seed ^ 0x5bf03635ULL);
  for (const auto& part : sq.factors) {
    // distinct-degree sieve on the squarefree part
    UniPoly rem = part.poly;
    UniPoly h = UniPoly::x(F);
    int d = 0;
    while (rem.degree() > 0) {
      ++d;
      if (2 * d > rem.degree()) {
        out.factors.push_back({rem.monic(), part.multiplicity});
        break;
      }
      h = frob_power_mod(h, rem, 1);
      UniPoly g = uni_gcd(h - UniPoly::x(F), rem);
      if (g.degree() > 0) {
        std::vector<UniPoly> pieces;
        edf(g, d, rng, pieces);
        for (auto& piece : pieces) out.factors.push_back({piece, part.multiplicity});
        rem = divide_exact(rem, g);
        h = divrem(h, rem).second;
      }
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const UniFactor& a, const UniFactor& b) { return a.poly < b.poly; });
  return out;
}

bool is_irreducible(const UniPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FieldCtx* F = f.field();
  UniPoly fm = f.monic();
  if (!is_separable(fm) && fm.derivative().is_zero()) return false;
  // X^{q^n} = X mod f and gcd(X^{q^{n/r}} - X, f) = 1 for prime r | n
  int n = fm.degree();
  UniPoly x = UniPoly::x(F);
  UniPoly h = x;
  std::vector<UniPoly> frob(size_t(n) + 1, UniPoly(F));
  frob[0] = x;
  for (int j = 1; j <= n; ++j) frob[size_t(j)] = frob_power_mod(frob[size_t(j - 1)], fm, 1);
  if (!(divrem(frob[size_t(n)] - x, fm).second.is_zero())) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r) continue;
    bool isp = true;
    for (int dd = 2; dd * dd <= r; ++dd)
      if (r % dd == 0) isp = false;
    if (!isp) continue;
    if (uni_gcd(frob[size_t(n / r)] - x, fm).degree() != 0) return false;
  }
  return true;
}

std::vector<std::pair<FqElem, int>> roots_in_field(const UniPoly& f, const FieldCtx* F,
                                                   uint64_t seed) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has every root");
  UniPoly g = f.map_field(F);
  std::vector<std::pair<FqElem, int>> out;
  if (g.degree() < 1) return out;
  UniFactorList fl = uni_factor(g, seed);
  for (const auto& fac : fl.factors) {
    if (fac.poly.degree() == 1) {
      FqElem root = -(fac.poly.at(0));  // monic: X + c -> root -c
      out.emplace_back(root, fac.multiplicity);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

UniPoly interpolate(const FieldCtx* F, const std::vector<FqElem>& xs,
                    const std::vector<FqElem>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolation size mismatch");
  size_t n = xs.size();
  // Newton form
  std::vector<FqElem> dd = ys;
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = n; i-- > j;) {
      FqElem denom = xs[i] - xs[i - j];
      dd[i] = (dd[i] - dd[i - 1]) / denom;
    }
  }
  UniPoly acc = UniPoly(F);
  for (size_t i = n; i-- > 0;) {
    UniPoly lin(F, std::vector<FqElem>{-xs[i], F->one()});
    acc = acc * lin + UniPoly::constant(F, dd[i]);
  }
  return acc;
}

}  // namespace gcensus
