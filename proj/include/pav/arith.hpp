#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pav::arith {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  a += b;
  if (a >= m || a < b) a -= m;
  return a;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) {
  return a >= b ? a - b : a + m - b;
}

// Reduces a signed value into [0, m).
inline uint64_t mod_i64(int64_t v, uint64_t m) {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);
uint64_t invmod(uint64_t a, uint64_t m);  // gcd(a, m) = 1 assumed
uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t isqrt_u64(uint64_t n);

// Square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues.
std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p);

struct PrimeTable {
  uint64_t limit = 0;
  std::vector<uint64_t> primes;
};

// Segmented sieve of Eratosthenes. Throws resource_error when the estimated
// table size exceeds the memory budget (PAV_MEMORY_BUDGET bytes, default 8 GiB).
PrimeTable sieve_primes(uint64_t limit, std::size_t segment_size = 1u << 18);

struct Factorization {
  uint64_t n = 1;
  std::vector<std::pair<uint64_t, unsigned>> factors;  // ascending primes
};

Factorization factorize(uint64_t n);

bool is_prime(uint64_t n);  // trial division

int mobius(uint64_t n);

// Legendre symbol (a/p) for odd prime p, values in {-1, 0, 1}.
int legendre(uint64_t a, uint64_t p);

// F_{p^2} = F_p(t), t^2 = d with d the smallest positive non-residue mod p.
// Elements are a + b*t.
class QuadExtField {
 public:
  struct Elt {
    uint64_t a = 0, b = 0;
    bool operator==(const Elt&) const = default;
  };

  explicit QuadExtField(uint64_t p);

  uint64_t p() const { return p_; }
  uint64_t d() const { return d_; }

  Elt add(Elt x, Elt y) const;
  Elt sub(Elt x, Elt y) const;
  Elt mul(Elt x, Elt y) const;
  Elt sq(Elt x) const;
  Elt pow(Elt x, uint64_t e) const;

  bool is_zero(Elt x) const { return x.a == 0 && x.b == 0; }

  // Quadratic character of F_{p^2}: 0 on zero, else z^((p^2-1)/2) as +/-1.
  int chi(Elt z) const;

  static uint64_t smallest_nonresidue(uint64_t p);

 private:
  uint64_t p_, d_;
};

}  // namespace pav::arith
