#include "pav/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>

#include "pav/arith.hpp"
#include "pav/errors.hpp"
#include "pav/parallel.hpp"

namespace pav::counting {

using arith::addmod;
using arith::legendre;
using arith::mod_i64;
using arith::mulmod;
using arith::powmod;
using arith::submod;

namespace {

uint64_t splitmix64(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// ---- polynomial helpers mod p (ascending coefficients) ----

std::vector<uint64_t> trim(std::vector<uint64_t> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<uint64_t> poly_mod(std::vector<uint64_t> a, const std::vector<uint64_t>& b,
                               uint64_t p) {
  uint64_t binv = arith::invmod(b.back(), p);
  while (a.size() >= b.size()) {
    uint64_t c = mulmod(a.back(), binv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = submod(a[i + shift], mulmod(c, b[i], p), p);
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

std::vector<uint64_t> poly_gcd(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// ---- b-invariants of the long Weierstrass model, mod p ----

struct BInv {
  uint64_t b2, b4, b6, b8;
};

BInv b_invariants(const CurveSpec& c, uint64_t p) {
  uint64_t a1 = mod_i64(c.ec[0], p), a2 = mod_i64(c.ec[1], p), a3 = mod_i64(c.ec[2], p),
           a4 = mod_i64(c.ec[3], p), a6 = mod_i64(c.ec[4], p);
  BInv b;
  b.b2 = addmod(mulmod(a1, a1, p), mulmod(4 % p, a2, p), p);
  b.b4 = addmod(mulmod(2 % p, a4, p), mulmod(a1, a3, p), p);
  b.b6 = addmod(mulmod(a3, a3, p), mulmod(4 % p, a6, p), p);
  uint64_t t = addmod(mulmod(mulmod(a1, a1, p), a6, p), mulmod(mulmod(4 % p, a2, p), a6, p), p);
  t = submod(t, mulmod(mulmod(a1, a3, p), a4, p), p);
  t = addmod(t, mulmod(a2, mulmod(a3, a3, p), p), p);
  b.b8 = submod(t, mulmod(a4, a4, p), p);
  return b;
}

uint64_t ec_disc_mod(const CurveSpec& c, uint64_t p) {
  BInv b = b_invariants(c, p);
  uint64_t d = submod(0, mulmod(mulmod(b.b2, b.b2, p), b.b8, p), p);
  d = submod(d, mulmod(8 % p, mulmod(b.b4, mulmod(b.b4, b.b4, p), p), p), p);
  d = submod(d, mulmod(27 % p, mulmod(b.b6, b.b6, p), p), p);
  d = addmod(d, mulmod(9 % p, mulmod(b.b2, mulmod(b.b4, b.b6, p), p), p), p);
  return d;
}

// g = h^2 + 4f reduced mod p, nominal degree 6
std::array<uint64_t, 7> genus2_g(const CurveSpec& c, uint64_t p) {
  std::array<int64_t, 7> g{};
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) g[static_cast<std::size_t>(i + j)] += c.h[static_cast<std::size_t>(i)] * c.h[static_cast<std::size_t>(j)];
  for (int i = 0; i <= 6; ++i) g[static_cast<std::size_t>(i)] += 4 * c.f[static_cast<std::size_t>(i)];
  std::array<uint64_t, 7> out{};
  for (int i = 0; i <= 6; ++i) out[static_cast<std::size_t>(i)] = mod_i64(g[static_cast<std::size_t>(i)], p);
  return out;
}

// ---- F_4 tables (elements encoded b0 + 2*b1, w^2 = w + 1) ----

inline unsigned f4_add(unsigned a, unsigned b) { return a ^ b; }

inline unsigned f4_mul(unsigned a, unsigned b) {
  unsigned a0 = a & 1, a1 = (a >> 1) & 1, b0 = b & 1, b1 = (b >> 1) & 1;
  unsigned r0 = (a0 & b0) ^ (a1 & b1);
  unsigned r1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
  return r0 | (r1 << 1);
}

unsigned f4_eval(const std::vector<int64_t>& coeffs, unsigned x) {
  unsigned acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = f4_mul(acc, x);
    acc = f4_add(acc, static_cast<unsigned>(mod_i64(coeffs[i], 2)));
  }
  return acc;
}

void require_usable_genus2_char2(const CurveSpec& c) {
  // affine singular point needs h(x0) = 0 and h'(x0) y0 = f'(x0), y0^2 = f(x0)
  std::vector<int64_t> fd(6), hd(2);
  for (int i = 1; i <= 6; ++i) fd[static_cast<std::size_t>(i - 1)] = i * c.f[static_cast<std::size_t>(i)];
  for (int i = 1; i <= 2; ++i) hd[static_cast<std::size_t>(i - 1)] = i * c.h[static_cast<std::size_t>(i)];
  for (unsigned x = 0; x < 4; ++x) {
    if (f4_eval(c.h, x) != 0) continue;
    unsigned fx = f4_eval(c.f, x);
    unsigned y0 = f4_mul(fx, fx);  // sqrt in F_4
    if (f4_add(f4_mul(f4_eval(hd, x), y0), f4_eval(fd, x)) == 0)
      throw unusable_model_error("curve " + c.label + ": model singular mod 2");
  }
  // point at infinity: v^2 = f6 at u = 0, singular iff h2 f6 = f5 in F_2
  uint64_t f6 = mod_i64(c.f[6], 2), f5 = mod_i64(c.f[5], 2), h2 = mod_i64(c.h[2], 2);
  if ((h2 & f6) == f5)
    throw unusable_model_error("curve " + c.label + ": model singular at infinity mod 2");
}

}  // namespace

void require_usable(const CurveSpec& curve, uint64_t p) {
  if (curve.bad_at(p))
    throw bad_reduction_error("curve " + curve.label + " has bad reduction at " +
                              std::to_string(p));
  if (curve.is_elliptic()) {
    if (ec_disc_mod(curve, p) == 0)
      throw unusable_model_error("curve " + curve.label + ": model singular mod " +
                                 std::to_string(p) + " but p does not divide the conductor");
    return;
  }
  if (p == 2) {
    require_usable_genus2_char2(curve);
    return;
  }
  auto g = genus2_g(curve, p);
  std::vector<uint64_t> gv(g.begin(), g.end());
  gv = trim(std::move(gv));
  if (gv.size() < 6)  // degree <= 4: not a genus-2 model mod p
    throw unusable_model_error("curve " + curve.label + ": model degenerates mod " +
                               std::to_string(p));
  std::vector<uint64_t> gd(gv.size() - 1);
  for (std::size_t i = 1; i < gv.size(); ++i)
    gd[i - 1] = mulmod(gv[i], i % p, p);
  auto gcd = poly_gcd(gv, gd, p);
  if (gcd.size() > 1)
    throw unusable_model_error("curve " + curve.label + ": model singular mod " +
                               std::to_string(p) + " but p does not divide the conductor");
}

namespace {

LocalFrobeniusData make_ec_data(uint64_t p, uint64_t n) {
  int64_t a = static_cast<int64_t>(p) + 1 - static_cast<int64_t>(n);
  double bound = 2.0 * std::sqrt(static_cast<double>(p));
  if (std::llabs(a) > static_cast<int64_t>(bound) + 1)
    throw std::logic_error("Hasse bound violated at p=" + std::to_string(p));
  LocalFrobeniusData d;
  d.p = p;
  d.count1 = n;
  d.charpoly = {static_cast<int64_t>(p), -a, 1};  // T^2 - a T + p
  d.group_order = n;
  return d;
}

uint64_t ec_count_small_char(const CurveSpec& c, uint64_t p) {
  // full (x, y) enumeration of the long model; avoids char-2/3 formulas
  uint64_t n = 1;  // point at infinity
  uint64_t a1 = mod_i64(c.ec[0], p), a2 = mod_i64(c.ec[1], p), a3 = mod_i64(c.ec[2], p),
           a4 = mod_i64(c.ec[3], p), a6 = mod_i64(c.ec[4], p);
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t rhs = addmod(mulmod(addmod(addmod(mulmod(x, x, p), mulmod(a2, x, p), p), a4, p), x, p), a6, p);
    // rhs = x^3 + a2 x^2 + a4 x + a6
    for (uint64_t y = 0; y < p; ++y) {
      uint64_t lhs = addmod(addmod(mulmod(y, y, p), mulmod(mulmod(a1, x, p), y, p), p),
                            mulmod(a3, y, p), p);
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

// short model y^2 = x^3 + Ax + B isomorphic to the long model, p >= 5
void short_model(const CurveSpec& c, uint64_t p, uint64_t& A, uint64_t& B) {
  BInv b = b_invariants(c, p);
  uint64_t c4 = submod(mulmod(b.b2, b.b2, p), mulmod(24 % p, b.b4, p), p);
  uint64_t c6 = submod(mulmod(mulmod(36 % p, b.b2, p), b.b4, p),
                       addmod(mulmod(mulmod(b.b2, b.b2, p), b.b2, p), mulmod(216 % p, b.b6, p), p), p);
  A = submod(0, mulmod(27 % p, c4, p), p);
  B = submod(0, mulmod(54 % p, c6, p), p);
}

struct Pt {
  uint64_t x = 0, y = 0;
  bool inf = true;
};

Pt ec_add(const Pt& P, const Pt& Q, uint64_t A, uint64_t p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  uint64_t lam;
  if (P.x == Q.x) {
    if (addmod(P.y, Q.y, p) == 0) return {};  // vertical
    uint64_t num = addmod(mulmod(3 % p, mulmod(P.x, P.x, p), p), A, p);
    lam = mulmod(num, arith::invmod(addmod(P.y, P.y, p), p), p);
  } else {
    uint64_t num = submod(Q.y, P.y, p);
    lam = mulmod(num, arith::invmod(submod(Q.x, P.x, p), p), p);
  }
  uint64_t x3 = submod(submod(mulmod(lam, lam, p), P.x, p), Q.x, p);
  uint64_t y3 = submod(mulmod(lam, submod(P.x, x3, p), p), P.y, p);
  return {x3, y3, false};
}

Pt ec_mul(Pt P, uint64_t k, uint64_t A, uint64_t p) {
  Pt R;
  while (k) {
    if (k & 1) R = ec_add(R, P, A, p);
    P = ec_add(P, P, A, p);
    k >>= 1;
  }
  return R;
}

// Some m in the Hasse interval with m P = O (BSGS), or a smaller multiple
// stumbled on while building the baby table. Returns 0 on failure.
uint64_t find_annihilating_multiple(const Pt& P0, uint64_t p, uint64_t A) {
  uint64_t H = 2 * arith::isqrt_u64(p) + 1;
  Pt Q = ec_mul(P0, p + 1, A, p);
  if (Q.inf) return p + 1;

  uint64_t s = arith::isqrt_u64(2 * H + 1) + 1;
  std::vector<std::pair<uint64_t, uint64_t>> baby;  // (x, j), j = 1..s
  baby.reserve(s);
  Pt Pj = P0;
  for (uint64_t j = 1; j <= s; ++j) {
    if (Pj.inf) return j;  // stumbled on the order early
    baby.emplace_back(Pj.x, j);
    Pj = ec_add(Pj, P0, A, p);
  }
  std::sort(baby.begin(), baby.end());

  uint64_t stride = 2 * s + 1;
  Pt G = ec_mul(P0, stride, A, p);
  int64_t amax = static_cast<int64_t>(H / stride) + 1;
  Pt negG{G.x, G.inf ? 0 : submod(0, G.y, p), G.inf};
  Pt R = Q;
  // walk a = 0, then outward is unnecessary; scan a = -amax..amax linearly
  R = ec_add(Q, ec_mul(negG, static_cast<uint64_t>(amax), A, p), A, p);
  for (int64_t a = -amax; a <= amax; ++a) {
    int64_t base = a * static_cast<int64_t>(stride);
    if (R.inf) {
      int64_t t = base;
      if (t >= -static_cast<int64_t>(H) && t <= static_cast<int64_t>(H)) {
        uint64_t m = static_cast<uint64_t>(static_cast<int64_t>(p + 1) + t);
        if (ec_mul(P0, m, A, p).inf) return m;
      }
    } else {
      auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(R.x, uint64_t{0}));
      for (; it != baby.end() && it->first == R.x; ++it) {
        for (int sign : {+1, -1}) {
          int64_t t = base + sign * static_cast<int64_t>(it->second);
          if (t < -static_cast<int64_t>(H) || t > static_cast<int64_t>(H)) continue;
          uint64_t m = static_cast<uint64_t>(static_cast<int64_t>(p + 1) + t);
          if (m >= 1 && ec_mul(P0, m, A, p).inf) return m;
        }
      }
    }
    R = ec_add(R, G, A, p);
  }
  return 0;
}

uint64_t point_order_from_multiple(const Pt& P, uint64_t m, uint64_t A, uint64_t p) {
  auto fac = arith::factorize(m);
  for (auto& [q, e] : fac.factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (m % q == 0 && ec_mul(P, m / q, A, p).inf)
        m /= q;
      else
        break;
    }
  }
  return m;
}

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / arith::gcd_u64(a, b) * b; }

}  // namespace

LocalFrobeniusData ec_count_naive(const CurveSpec& curve, uint64_t p) {
  if (!curve.is_elliptic()) throw input_error("ec_count_naive: not an elliptic curve");
  require_usable(curve, p);
  if (p <= 3) return make_ec_data(p, ec_count_small_char(curve, p));
  // completed square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  BInv b = b_invariants(curve, p);
  uint64_t n = 1;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t g = addmod(mulmod(addmod(mulmod(addmod(mulmod(4 % p, x, p), b.b2, p), x, p),
                                      mulmod(2 % p, b.b4, p), p), x, p), b.b6, p);
    n += static_cast<uint64_t>(1 + legendre(g, p));
  }
  return make_ec_data(p, n);
}

LocalFrobeniusData ec_count_bsgs(const CurveSpec& curve, uint64_t p, const BsgsOptions& opts) {
  if (!curve.is_elliptic()) throw input_error("ec_count_bsgs: not an elliptic curve");
  if (p < 5) throw input_error("ec_count_bsgs: requires p >= 5");
  require_usable(curve, p);

  uint64_t A, B;
  short_model(curve, p, A, B);

  if (p < 100) {
    // curve/twist lattice can stay ambiguous for tiny p; exact sum instead
    uint64_t n = 1;
    for (uint64_t x = 0; x < p; ++x) {
      uint64_t rhs = addmod(mulmod(addmod(mulmod(x, x, p), A, p), x, p), B, p);
      n += static_cast<uint64_t>(1 + legendre(rhs, p));
    }
    return make_ec_data(p, n);
  }

  uint64_t d = arith::QuadExtField::smallest_nonresidue(p);
  uint64_t At = mulmod(A, mulmod(d, d, p), p);
  uint64_t Bt = mulmod(B, mulmod(d, mulmod(d, d, p), p), p);

  uint64_t H = 2 * arith::isqrt_u64(p) + 1;
  uint64_t lo = p + 1 - H, hi = p + 1 + H;
  uint64_t L = 1, Lt = 1;
  uint64_t rng = opts.seed * 0x9e3779b97f4a7c15ull + p;

  auto unique_candidate = [&]() -> uint64_t {
    uint64_t found = 0;
    int count = 0;
    for (uint64_t m = (lo + L - 1) / L * L; m <= hi; m += L) {
      if ((2 * p + 2 - m) % Lt == 0) {
        found = m;
        if (++count > 1) return 0;
      }
    }
    return count == 1 ? found : 0;
  };

  for (unsigned attempt = 0; attempt < opts.attempt_budget; ++attempt) {
    bool on_twist = attempt & 1;
    uint64_t Ac = on_twist ? At : A, Bc = on_twist ? Bt : B;
    Pt P;
    for (int tries = 0; tries < 128; ++tries) {
      uint64_t x = splitmix64(rng) % p;
      uint64_t rhs = addmod(mulmod(addmod(mulmod(x, x, p), Ac, p), x, p), Bc, p);
      int chi = legendre(rhs, p);
      if (chi == -1) continue;
      uint64_t y = chi == 0 ? 0 : *arith::sqrt_mod(rhs, p);
      P = {x, y, false};
      break;
    }
    if (P.inf) continue;

    uint64_t m = find_annihilating_multiple(P, p, Ac);
    if (m == 0) continue;
    uint64_t ord = point_order_from_multiple(P, m, Ac, p);
    if (on_twist)
      Lt = lcm_u64(Lt, ord);
    else
      L = lcm_u64(L, ord);

    if (uint64_t n = unique_candidate()) return make_ec_data(p, n);
  }
  throw std::runtime_error("ec_count_bsgs: order not unique after " +
                           std::to_string(opts.attempt_budget) + " attempts at p=" +
                           std::to_string(p));
}

LocalFrobeniusData ec_count(const CurveSpec& curve, uint64_t p, uint64_t crossover) {
  if (p < crossover || p < 5) return ec_count_naive(curve, p);
  return ec_count_bsgs(curve, p);
}

namespace {

std::pair<uint64_t, uint64_t> genus2_counts_char2(const CurveSpec& c) {
  uint64_t c1 = 1, c2 = 1;  // one point at infinity each (deg h <= 2 model)
  for (unsigned x = 0; x < 2; ++x) {
    uint64_t fx = mod_i64(c.f[0] + c.f[1] * x + c.f[2] * x + c.f[3] * x + c.f[4] * x + c.f[5] * x + c.f[6] * x, 2);
    uint64_t hx = mod_i64(c.h[0] + c.h[1] * x + c.h[2] * x, 2);
    for (unsigned y = 0; y < 2; ++y)
      if (((y * y + hx * y) & 1) == fx) ++c1;
  }
  for (unsigned x = 0; x < 4; ++x) {
    unsigned fx = f4_eval(c.f, x), hx = f4_eval(c.h, x);
    for (unsigned y = 0; y < 4; ++y)
      if (f4_add(f4_add(f4_mul(y, y), f4_mul(hx, y)), fx) == 0) ++c2;
  }
  return {c1, c2};
}

}  // namespace

std::pair<uint64_t, uint64_t> genus2_counts(const CurveSpec& curve, uint64_t p,
                                            unsigned threads) {
  if (curve.is_elliptic()) throw input_error("genus2_counts: not a genus-2 curve");
  require_usable(curve, p);
  if (threads == 0) threads = default_threads();
  if (p == 2) return genus2_counts_char2(curve);

  auto g = genus2_g(curve, p);
  uint64_t d = arith::QuadExtField::smallest_nonresidue(p);

  // #C(F_p): one y per x when g(x) = 0, else 1 + chi(g(x)); plus infinity
  uint64_t c1 = 0;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t v = 0;
    for (int i = 6; i >= 0; --i) v = addmod(mulmod(v, x, p), g[static_cast<std::size_t>(i)], p);
    c1 += static_cast<uint64_t>(1 + legendre(v, p));
  }
  c1 += (g[6] != 0) ? static_cast<uint64_t>(1 + legendre(g[6], p)) : 1;

  // #C(F_{p^2})
  arith::QuadExtField F(p);
  uint64_t psq = p * p;
  const bool use_bitset = psq <= 400'000'000ull;
  std::vector<std::atomic<uint64_t>> bits;
  if (use_bitset) {
    bits = std::vector<std::atomic<uint64_t>>((psq + 63) / 64);
    parallel_for(p, threads, [&](std::size_t alo, std::size_t ahi) {
      for (uint64_t a = alo; a < ahi; ++a)
        for (uint64_t b = 0; b < p; ++b) {
          uint64_t sa = (a * a + d * (b * b % p)) % p;
          uint64_t sb = 2 * a * b % p;
          uint64_t idx = sa * p + sb;
          bits[idx >> 6].fetch_or(1ull << (idx & 63), std::memory_order_relaxed);
        }
    });
  }
  auto chi2 = [&](uint64_t a, uint64_t b) -> int {
    if (a == 0 && b == 0) return 0;
    if (use_bitset) {
      uint64_t idx = a * p + b;
      return (bits[idx >> 6].load(std::memory_order_relaxed) >> (idx & 63)) & 1 ? 1 : -1;
    }
    return F.chi({a, b});
  };

  std::vector<uint64_t> sums(threads, 0);
  std::atomic<unsigned> slot{0};
  parallel_for(p, threads, [&](std::size_t alo, std::size_t ahi) {
    unsigned my = slot.fetch_add(1);
    uint64_t local = 0;
    for (uint64_t a = alo; a < ahi; ++a) {
      for (uint64_t b = 0; b < p; ++b) {
        // Horner for g(x), x = a + b t, coefficients in F_p
        uint64_t u = g[6], v = 0;
        for (int i = 5; i >= 0; --i) {
          uint64_t nu = (u * a + d * (v * b % p) + g[static_cast<std::size_t>(i)]) % p;
          uint64_t nv = (u * b + v * a) % p;
          u = nu;
          v = nv;
        }
        local += static_cast<uint64_t>(1 + chi2(u, v));
      }
    }
    sums[my] += local;
  });
  uint64_t c2 = 0;
  for (uint64_t s : sums) c2 += s;
  c2 += (g[6] != 0) ? static_cast<uint64_t>(1 + chi2(g[6], 0)) : 1;

  return {c1, c2};
}

LocalFrobeniusData genus2_jacobian_order(const CurveSpec& curve, uint64_t p,
                                         unsigned threads) {
  auto [c1, c2] = genus2_counts(curve, p, threads);
  int64_t ip = static_cast<int64_t>(p);
  int64_t s1 = ip + 1 - static_cast<int64_t>(c1);
  int64_t s2 = ip * ip + 1 - static_cast<int64_t>(c2);
  int64_t e1 = s1;
  if ((s1 * s1 - s2) % 2 != 0)
    throw std::logic_error("genus2_jacobian_order: parity failure at p=" + std::to_string(p));
  int64_t e2 = (s1 * s1 - s2) / 2;

  LocalFrobeniusData d;
  d.p = p;
  d.count1 = c1;
  d.count2 = c2;
  // P_p(T) = T^4 - e1 T^3 + e2 T^2 - p e1 T + p^2
  d.charpoly = {ip * ip, -ip * e1, e2, -e1, 1};
  int64_t order = ip * ip + 1 - e1 * (ip + 1) + e2;  // P_p(1)
  if (order <= 0) throw std::logic_error("genus2_jacobian_order: nonpositive order");
  d.group_order = static_cast<uint64_t>(order);

  double sq = std::sqrt(static_cast<double>(p));
  double lo = std::pow(sq - 1, 4), hi = std::pow(sq + 1, 4);
  if (static_cast<double>(order) < lo - 1 || static_cast<double>(order) > hi + 1)
    throw std::logic_error("genus2_jacobian_order: Weil bound violated at p=" +
                           std::to_string(p));
  return d;
}

LocalFrobeniusData local_data(const CurveSpec& curve, uint64_t p, uint64_t crossover,
                              unsigned threads) {
  if (curve.is_elliptic()) return ec_count(curve, p, crossover);
  return genus2_jacobian_order(curve, p, threads);
}

std::vector<std::pair<uint64_t, uint64_t>> scan_group_orders(const CurveSpec& curve,
                                                             uint64_t limit,
                                                             uint64_t crossover,
                                                             unsigned threads) {
  if (threads == 0) threads = default_threads();
  auto table = arith::sieve_primes(limit);
  const auto& ps = table.primes;
  std::vector<uint64_t> orders(ps.size(), UINT64_MAX);

  std::exception_ptr err;
  std::mutex err_mu;
  parallel_for(ps.size(), threads, [&](std::size_t lo, std::size_t hi) {
    try {
      for (std::size_t i = lo; i < hi; ++i) {
        uint64_t p = ps[i];
        if (curve.bad_at(p)) continue;
        orders[i] = local_data(curve, p, crossover, 1).group_order;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      if (!err) err = std::current_exception();
    }
  });
  if (err) std::rethrow_exception(err);

  std::vector<std::pair<uint64_t, uint64_t>> out;
  out.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (orders[i] != UINT64_MAX) out.emplace_back(ps[i], orders[i]);
  return out;
}

}  // namespace pav::counting
