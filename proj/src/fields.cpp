#include "pav/fields.hpp"

#include <algorithm>
#include <cmath>

#include "pav/arith.hpp"
#include "pav/errors.hpp"

namespace pav::fields {

unsigned l_rank_prime_power(uint64_t ell, uint64_t q, unsigned alpha) {
  if (alpha < 1) throw input_error("l_rank_prime_power: alpha must be >= 1");
  if (q % ell == 1) return 1;
  if (q == ell && ell != 2 && alpha >= 2) return 1;
  if (q == 2 && ell == 2 && alpha == 2) return 1;
  if (q == 2 && ell == 2 && alpha >= 3) return 2;
  return 0;
}

unsigned l_rank(uint64_t ell, uint64_t n) {
  if (n == 0) throw input_error("l_rank: n must be >= 1");
  unsigned r = 0;
  for (auto& [q, e] : arith::factorize(n).factors) r += l_rank_prime_power(ell, q, e);
  return r;
}

uint64_t count_subfields_M(uint64_t ell, uint64_t n) {
  unsigned r = l_rank(ell, n);
  uint64_t num = 1;
  for (unsigned i = 0; i < r; ++i) num *= ell;
  return (num - 1) / (ell - 1);
}

static uint64_t pow_u64(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

uint64_t conductor_multiplicity_N(uint64_t ell, uint64_t n) {
  if (n == 0) throw input_error("conductor_multiplicity_N: n must be >= 1");
  unsigned v = 0, t = 0;
  for (auto& [q, e] : arith::factorize(n).factors) {
    if (q == ell) {
      v = e;
      if (!(v == 2 || (ell == 2 && v == 3))) return 0;
    } else {
      if (e != 1 || q % ell != 1) return 0;
      ++t;
    }
  }
  if (v == 0) return t == 0 ? 0 : pow_u64(ell - 1, t - 1);
  if (v == 2) return pow_u64(ell - 1, t);
  return ell * pow_u64(ell - 1, t);  // ell = 2, v = 3
}

ConductorClass conductor_class(uint64_t ell, uint64_t n) {
  ConductorClass c;
  c.ell = ell;
  c.n = n;
  c.multiplicity = conductor_multiplicity_N(ell, n);
  if (c.multiplicity == 0)
    throw input_error("n=" + std::to_string(n) + " is not a valid degree-" +
                      std::to_string(ell) + " conductor");
  for (auto& [q, e] : arith::factorize(n).factors) {
    if (q == ell)
      c.v = e;
    else
      c.q_list.push_back(q);
  }
  return c;
}

bool mobius_inversion_check(uint64_t ell, uint64_t n) {
  // left side: sum of the Lemma-Nn case formula over divisors
  auto fac = arith::factorize(n).factors;
  uint64_t lhs = 0;
  std::vector<unsigned> exp(fac.size(), 0);
  while (true) {
    uint64_t d = 1;
    for (std::size_t i = 0; i < fac.size(); ++i) d *= pow_u64(fac[i].first, exp[i]);
    lhs += conductor_multiplicity_N(ell, d);
    std::size_t i = 0;
    for (; i < fac.size(); ++i) {
      if (exp[i] < fac[i].second) {
        ++exp[i];
        break;
      }
      exp[i] = 0;
    }
    if (i == fac.size()) break;
  }
  // right side: rank formula
  return lhs == count_subfields_M(ell, n);
}

namespace {

// DFS over ascending admissible primes; calls emit(n, t) for every
// squarefree product n = prefactor * q_{i1} ... q_{it} <= X.
template <class Emit>
void dfs_products(const std::vector<uint64_t>& qs, std::size_t start, uint64_t n,
                  unsigned t, uint64_t X, const Emit& emit) {
  emit(n, t);
  for (std::size_t i = start; i < qs.size(); ++i) {
    if (qs[i] > X / n) break;  // qs ascending: later primes overflow too
    dfs_products(qs, i + 1, n * qs[i], t + 1, X, emit);
  }
}

std::vector<uint64_t> admissible_q_list(uint64_t ell, uint64_t X, const PrimeFilter& filter) {
  std::vector<uint64_t> qs;
  if (X < 2) return qs;
  auto table = arith::sieve_primes(X);
  for (uint64_t p : table.primes)
    if (p != ell && p % ell == 1 && filter(p)) qs.push_back(p);
  return qs;
}

void check_census_budget(uint64_t X) {
  if (X > kMaxCensusX)
    throw resource_error("census: X exceeds the configured bound " +
                         std::to_string(kMaxCensusX));
}

void check_census_degree(uint64_t ell) {
  if (!arith::is_prime(ell)) throw input_error("census: the degree must be prime");
}

}  // namespace

std::vector<std::pair<uint64_t, uint64_t>> census_at(uint64_t ell,
                                                     const std::vector<uint64_t>& Xs,
                                                     const PrimeFilter& filter) {
  check_census_degree(ell);
  if (Xs.empty()) return {};
  uint64_t X = *std::max_element(Xs.begin(), Xs.end());
  check_census_budget(X);
  std::vector<uint64_t> sorted(Xs);
  std::sort(sorted.begin(), sorted.end());

  auto qs = admissible_q_list(ell, X, filter);
  std::vector<uint64_t> totals(sorted.size(), 0);

  auto tally = [&](uint64_t n, uint64_t mult) {
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (n <= sorted[i]) totals[i] += mult;
  };

  // v = 0 stratum: n = q_1 ... q_t, t >= 1, N = (ell-1)^(t-1)
  dfs_products(qs, 0, 1, 0, X, [&](uint64_t n, unsigned t) {
    if (t >= 1) tally(n, pow_u64(ell - 1, t - 1));
  });
  // v > 0 strata need ell itself admissible
  if (filter(ell)) {
    uint64_t ell2 = ell * ell;
    if (ell2 <= X)
      dfs_products(qs, 0, 1, 0, X / ell2, [&](uint64_t n, unsigned t) {
        tally(n * ell2, pow_u64(ell - 1, t));
      });
    if (ell == 2 && 8 <= X)
      dfs_products(qs, 0, 1, 0, X / 8, [&](uint64_t n, unsigned t) {
        tally(n * 8, 2 * pow_u64(ell - 1, t));
      });
  }

  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) out.emplace_back(sorted[i], totals[i]);
  return out;
}

CensusResult census(uint64_t ell, uint64_t X, const PrimeFilter& filter,
                    const std::string& descriptor) {
  if (X < 1) throw input_error("census: X must be >= 1");
  CensusResult r;
  r.ell = ell;
  r.X = X;
  r.filter_descriptor = descriptor;
  r.total = census_at(ell, {X}, filter).front().second;
  return r;
}

uint64_t census_v0(uint64_t ell, uint64_t X, const PrimeFilter& filter) {
  check_census_degree(ell);
  check_census_budget(X);
  auto qs = admissible_q_list(ell, X, filter);
  uint64_t total = 0;
  dfs_products(qs, 0, 1, 0, X, [&](uint64_t n, unsigned t) {
    if (t >= 1) total += pow_u64(ell - 1, t - 1);
  });
  return total;
}

uint64_t weighted_sum(uint64_t ell, uint64_t X, const PrimeFilter& filter) {
  check_census_degree(ell);
  check_census_budget(X);
  auto qs = admissible_q_list(ell, X, filter);
  uint64_t total = 0;
  dfs_products(qs, 0, 1, 0, X, [&](uint64_t, unsigned t) { total += pow_u64(ell - 1, t); });
  return total;
}

uint64_t conductor_to_discriminant(uint64_t ell, uint64_t N) {
  if (conductor_multiplicity_N(ell, N) == 0)
    throw input_error("conductor_to_discriminant: invalid conductor " + std::to_string(N));
  uint64_t r = 1;
  for (uint64_t i = 0; i + 1 < ell; ++i) {
    if (r > UINT64_MAX / N)
      throw resource_error("conductor_to_discriminant: N^(ell-1) overflows 64 bits");
    r *= N;
  }
  return r;
}

FitResult asymptotic_fit(const std::vector<std::pair<uint64_t, uint64_t>>& samples,
                         double beta) {
  if (samples.size() < 4) throw input_error("asymptotic_fit: need at least 4 samples");
  if (!(beta > 0.0 && beta <= 1.0)) throw input_error("asymptotic_fit: beta must be in (0,1]");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first <= samples[i - 1].first)
      throw input_error("asymptotic_fit: X_i must be strictly ascending");
  if (samples.back().first < 100 * samples.front().first)
    throw input_error("asymptotic_fit: need X_max/X_min >= 100");

  // model enters multiplicatively: average log(count) - log(X/(log X)^(1-beta))
  double sum = 0;
  for (auto& [X, count] : samples) {
    if (count == 0) throw input_error("asymptotic_fit: zero count sample");
    double lx = std::log(static_cast<double>(X));
    double model = std::log(static_cast<double>(X)) - (1.0 - beta) * std::log(lx);
    sum += std::log(static_cast<double>(count)) - model;
  }
  FitResult fit;
  fit.beta = beta;
  fit.c = std::exp(sum / static_cast<double>(samples.size()));
  for (auto& [X, count] : samples) {
    double lx = std::log(static_cast<double>(X));
    double model = fit.c * static_cast<double>(X) / std::pow(lx, 1.0 - beta);
    fit.residuals.push_back(static_cast<double>(count) / model - 1.0);
  }
  return fit;
}

}  // namespace pav::fields
