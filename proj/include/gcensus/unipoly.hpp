#ifndef GCENSUS_UNIPOLY_HPP
#define GCENSUS_UNIPOLY_HPP

#include <utility>
#include <vector>

#include "gcensus/fq.hpp"
#include "gcensus/rng.hpp"

namespace gcensus {

// Dense exact univariate polynomials over a FieldCtx. Coefficient of X^i is
// stored at index i; the representation is always trimmed, so a nonzero
// polynomial has nonzero leading coefficient and degree() == size-1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const FieldCtx* F) : F_(F) {}
  UniPoly(const FieldCtx* F, std::vector<FqElem> coeffs);

  static UniPoly zero(const FieldCtx* F) { return UniPoly(F); }
  static UniPoly constant(const FieldCtx* F, const FqElem& c);
  static UniPoly x(const FieldCtx* F);
  // c * X^e
  static UniPoly monomial(const FieldCtx* F, const FqElem& c, int e);
  static UniPoly from_ints(const FieldCtx* F, const std::vector<int64_t>& coeffs);

  const FieldCtx* field() const { return F_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
  const FqElem& lc() const { return c_.back(); }
  FqElem at(int i) const;
  const std::vector<FqElem>& coeffs() const { return c_; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(const FqElem& s) const;
  UniPoly shifted_exp(int e) const;  // multiply by X^e
  UniPoly monic() const;
  UniPoly derivative() const;
  UniPoly pow(uint64_t e) const;
  FqElem eval(const FqElem& v) const;
  // composition with an affine argument: this(a*X + b)
  UniPoly compose_affine(const FqElem& a, const FqElem& b) const;
  // reverse coefficients relative to a declared degree bound
  UniPoly reversed(int deg_bound) const;

  // Coefficient-wise embedding into a larger field (or retract into a
  // smaller one when every coefficient lies in it).
  UniPoly map_field(const FieldCtx* target) const;

  bool operator==(const UniPoly& o) const { return F_ == o.F_ && c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }
  bool operator<(const UniPoly& o) const;  // canonical order for reports

  std::string to_string(const char* var = "x") const;

 private:
  const FieldCtx* F_ = nullptr;
  std::vector<FqElem> c_;
  void trim();
};

// Division with remainder: a = q*b + r, deg r < deg b. b nonzero.
std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
// Exact division; throws if the remainder is nonzero.
UniPoly divide_exact(const UniPoly& a, const UniPoly& b);

// Monic gcd. gcd(f, 0) is the monic scaling of f.
UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);
// g = gcd = s*a + t*b, g monic.
struct XgcdResult {
  UniPoly g, s, t;
};
XgcdResult uni_xgcd(const UniPoly& a, const UniPoly& b);

// True iff gcd(h, h') is constant. h must be nonzero.
bool is_separable(const UniPoly& h);

struct UniFactor {
  UniPoly poly;
  int multiplicity = 1;
};
struct UniFactorList {
  FqElem unit;
  std::vector<UniFactor> factors;  // monic irreducible, canonically sorted
  UniPoly product() const;         // unit * prod poly^mult
};

// Squarefree decomposition over F_{p^k} (handles vanishing derivatives by
// p-th root extraction). Factors are monic, pairwise coprime, squarefree.
UniFactorList squarefree_decomposition(const UniPoly& f);

// Complete factorization into monic irreducibles: squarefree decomposition,
// distinct-degree sieve, then seeded Cantor-Zassenhaus equal-degree splits.
UniFactorList uni_factor(const UniPoly& f, uint64_t seed);

// Independent irreducibility check (distinct-degree only, no splitting).
bool is_irreducible(const UniPoly& f);

// All roots of f lying in F (with multiplicities). f's coefficients must be
// embeddable into F.
std::vector<std::pair<FqElem, int>> roots_in_field(const UniPoly& f, const FieldCtx* F,
                                                   uint64_t seed = 0x9aa5);

// Lagrange interpolation through distinct points.
UniPoly interpolate(const FieldCtx* F, const std::vector<FqElem>& xs,
                    const std::vector<FqElem>& ys);

}  // namespace gcensus

#endif
