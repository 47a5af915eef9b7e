#include "pav/arith.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "pav/errors.hpp"

namespace pav::arith {

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

uint64_t invmod(uint64_t a, uint64_t m) {
  // extended Euclid; m need not be prime but gcd(a, m) must be 1
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  if (r > 0xffffffffull) r = 0xffffffffull;
  // overflow-safe: r * r <= n  <=>  r <= n / r
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);

  // Tonelli-Shanks
  uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t m = s;
  uint64_t c = powmod(z, q, p);
  uint64_t t = powmod(a, q, p);
  uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    uint64_t b = c;
    for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

static uint64_t memory_budget_bytes() {
  if (const char* env = std::getenv("PAV_MEMORY_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 8ull << 30;
}

PrimeTable sieve_primes(uint64_t limit, std::size_t segment_size) {
  if (limit < 2) return PrimeTable{limit, {}};
  // primes list dominates memory: ~ limit/ln(limit) entries of 8 bytes
  double est = 8.0 * static_cast<double>(limit) / std::max(2.0, std::log(static_cast<double>(limit)));
  if (est > static_cast<double>(memory_budget_bytes()))
    throw resource_error("sieve_primes: limit " + std::to_string(limit) +
                         " exceeds the memory budget");

  PrimeTable table;
  table.limit = limit;

  uint64_t root = isqrt_u64(limit);
  std::vector<char> small(root + 1, 1);
  for (uint64_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  std::vector<uint64_t> base;
  for (uint64_t i = 2; i <= root; ++i)
    if (small[i]) base.push_back(i);

  table.primes.reserve(static_cast<std::size_t>(est / 8.0 * 1.2) + 16);
  std::vector<char> seg(segment_size);
  std::vector<uint64_t> next(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) next[k] = base[k] * base[k];

  for (uint64_t lo = 2; lo <= limit; lo += segment_size) {
    uint64_t hi = std::min(limit, lo + segment_size - 1);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 1);
    for (std::size_t k = 0; k < base.size(); ++k) {
      uint64_t p = base[k];
      if (p * p > hi) break;
      uint64_t j = next[k];
      if (j < lo) j = lo + (p - lo % p) % p;
      for (; j <= hi; j += p) seg[j - lo] = 0;
      next[k] = j;
    }
    for (uint64_t v = lo; v <= hi; ++v)
      if (seg[v - lo] && v >= 2) table.primes.push_back(v);
  }
  return table;
}

Factorization factorize(uint64_t n) {
  if (n == 0) throw input_error("factorize: n must be >= 1");
  Factorization f;
  f.n = n;
  for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

int mobius(uint64_t n) {
  Factorization f = factorize(n);
  for (auto& [p, e] : f.factors)
    if (e > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

int legendre(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  uint64_t v = powmod(a, (p - 1) / 2, p);
  return v == 1 ? 1 : -1;
}

uint64_t QuadExtField::smallest_nonresidue(uint64_t p) {
  for (uint64_t d = 2; d < p; ++d)
    if (legendre(d, p) == -1) return d;
  throw input_error("no quadratic non-residue mod " + std::to_string(p));
}

QuadExtField::QuadExtField(uint64_t p) : p_(p), d_(smallest_nonresidue(p)) {
  if (p < 3 || (p & 1) == 0) throw input_error("QuadExtField: p must be an odd prime");
}

QuadExtField::Elt QuadExtField::add(Elt x, Elt y) const {
  return {addmod(x.a, y.a, p_), addmod(x.b, y.b, p_)};
}

QuadExtField::Elt QuadExtField::sub(Elt x, Elt y) const {
  return {submod(x.a, y.a, p_), submod(x.b, y.b, p_)};
}

QuadExtField::Elt QuadExtField::mul(Elt x, Elt y) const {
  // (a + bt)(c + et) = (ac + d be) + (ae + bc) t
  uint64_t ac = mulmod(x.a, y.a, p_);
  uint64_t be = mulmod(x.b, y.b, p_);
  uint64_t ae = mulmod(x.a, y.b, p_);
  uint64_t bc = mulmod(x.b, y.a, p_);
  return {addmod(ac, mulmod(d_, be, p_), p_), addmod(ae, bc, p_)};
}

QuadExtField::Elt QuadExtField::sq(Elt x) const { return mul(x, x); }

QuadExtField::Elt QuadExtField::pow(Elt x, uint64_t e) const {
  Elt r{1, 0};
  while (e) {
    if (e & 1) r = mul(r, x);
    x = sq(x);
    e >>= 1;
  }
  return r;
}

int QuadExtField::chi(Elt z) const {
  if (is_zero(z)) return 0;
  uint64_t e = (p_ * p_ - 1) / 2;
  Elt v = pow(z, e);
  return (v.a == 1 && v.b == 0) ? 1 : -1;
}

}  // namespace pav::arith
