#ifndef GCENSUS_FQ_HPP
#define GCENSUS_FQ_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcensus {

// Exact arithmetic in F_p and F_{p^k}, presented by a monic irreducible
// defining polynomial over the prime field. Extensions are built directly
// over F_p; embeddings between compatible extensions are computed on demand
// (a root of the smaller defining polynomial in the larger field) and cached
// in the field registry.
//
// Elements are fixed-capacity coefficient vectors in the power basis of the
// defining polynomial, always fully reduced: two elements are equal iff
// their coefficient vectors are equal.

inline constexpr int kMaxExtDegree = 12;

class FieldCtx;

struct FqElem {
  std::array<uint32_t, kMaxExtDegree> c{};
  const FieldCtx* ctx = nullptr;

  bool is_zero() const {
    for (uint32_t x : c)
      if (x) return false;
    return true;
  }
  bool operator==(const FqElem& o) const { return ctx == o.ctx && c == o.c; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }
  // Canonical total order inside one field (used for deterministic output).
  bool operator<(const FqElem& o) const { return c < o.c; }
};

FqElem operator+(const FqElem& a, const FqElem& b);
FqElem operator-(const FqElem& a, const FqElem& b);
FqElem operator*(const FqElem& a, const FqElem& b);
FqElem operator/(const FqElem& a, const FqElem& b);
FqElem operator-(const FqElem& a);

class FieldCtx {
 public:
  uint32_t p() const { return p_; }
  int degree() const { return k_; }
  uint64_t order() const { return order_; }
  uint64_t id() const { return id_; }
  // Monic defining polynomial, coefficient of X^i at index i, length k+1.
  const std::vector<uint32_t>& defining_poly() const { return defining_; }
  uint64_t seed() const { return seed_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(int64_t v) const;  // image of v under Z -> F_p -> this
  FqElem gen() const;                // class of X (zero in a prime field)
  FqElem make(const std::vector<uint32_t>& coeffs) const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem div(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem inv(const FqElem& a) const;
  FqElem pow(const FqElem& a, uint64_t e) const;

  // a^(p^m), by repeated p-th powering.
  FqElem frobenius(const FqElem& a, uint64_t m) const;
  // Inverse of the Frobenius automorphism (unique p-th root).
  FqElem pth_root(const FqElem& a) const;

  // True iff a lies in the subfield F_{p^kprime}. Requires kprime | degree.
  bool in_subfield(const FqElem& a, int kprime) const;

  // Enumeration in a fixed canonical order (lexicographic coefficients).
  // Guarded: throws if the field order exceeds `limit`.
  std::vector<FqElem> all_elements(uint64_t limit = 1u << 20) const;

  std::string to_string(const FqElem& a) const;

 private:
  friend class FieldRegistry;
  friend struct FieldCtxBuilder;
  FieldCtx() = default;

  uint32_t p_ = 0;
  int k_ = 0;
  uint64_t order_ = 0;
  uint64_t id_ = 0;
  uint64_t seed_ = 0;
  std::vector<uint32_t> defining_;
  // X^{k+j} mod defining, j = 0..k-2, each of length k.
  std::vector<std::array<uint32_t, kMaxExtDegree>> red_;

  void reduce_product(uint64_t* acc, FqElem& out) const;
};

// Owns every constructed field for the lifetime of the process, so raw
// FieldCtx pointers in elements stay valid. Also caches embedding roots.
class FieldRegistry {
 public:
  // Deterministic for fixed (p, k, seed): the defining polynomial is found
  // by seeded random search plus an irreducibility test.
  static const FieldCtx* make_field(uint32_t p, int k, uint64_t seed);

  // Field with an explicitly given monic defining polynomial (validated).
  static const FieldCtx* make_field_with_poly(uint32_t p,
                                              const std::vector<uint32_t>& defining);

  // Ring-homomorphic embedding fixing F_p. Requires a.ctx->degree() | target->degree().
  static FqElem embed(const FqElem& a, const FieldCtx* target);

  // Image of the source generator in target (the cached embedding root).
  static FqElem embedding_root(const FieldCtx* source, const FieldCtx* target);

  // Pulls a back to `target` when a actually lies in that subfield
  // (checked; throws otherwise). Inverse of embed on its image.
  static FqElem retract(const FqElem& a, const FieldCtx* target);
};

bool is_prime_u32(uint32_t n);

}  // namespace gcensus

#endif
