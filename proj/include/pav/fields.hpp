#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pav::fields {

// Prime predicate used to restrict conductor enumeration.
using PrimeFilter = std::function<bool(uint64_t)>;

// A valid degree-ell cyclic conductor n = ell^v * q_1 ... q_t with its
// multiplicity N(n) = number of cyclic degree-ell fields of conductor n.
struct ConductorClass {
  uint64_t ell = 2;
  uint64_t n = 1;
  unsigned v = 0;                // exponent of ell: 0 or 2 (plus 3 for ell = 2)
  std::vector<uint64_t> q_list;  // ascending primes = 1 mod ell
  uint64_t multiplicity = 0;     // N(n)
};

struct CensusResult {
  uint64_t ell = 2;
  uint64_t X = 0;
  std::string filter_descriptor;
  uint64_t total = 0;  // sum of N(n) over valid restricted conductors n <= X
  std::vector<std::pair<uint64_t, uint64_t>> samples;  // (X_i, count_i)
};

// ell-rank of (Z/q^alpha Z)^x, the five-case table.
unsigned l_rank_prime_power(uint64_t ell, uint64_t q, unsigned alpha);

// ell-rank of (Z/nZ)^x, additive across coprime factors.
unsigned l_rank(uint64_t ell, uint64_t n);

// M(n) = number of degree-ell cyclic fields inside Q(zeta_n) = (ell^r - 1)/(ell - 1).
uint64_t count_subfields_M(uint64_t ell, uint64_t n);

// N(n); 0 when n is not a valid degree-ell conductor.
uint64_t conductor_multiplicity_N(uint64_t ell, uint64_t n);

// Decomposes a valid conductor; throws input_error when N(n) = 0.
ConductorClass conductor_class(uint64_t ell, uint64_t n);

// Checks sum_{d | n} N(d) = M(n) with the two sides computed independently.
bool mobius_inversion_check(uint64_t ell, uint64_t n);

// Sum of N(n) over valid conductors n <= X whose prime divisors all satisfy
// the filter. The all-primes census counts every cyclic degree-ell field of
// conductor at most X.
CensusResult census(uint64_t ell, uint64_t X, const PrimeFilter& filter,
                    const std::string& descriptor = "");

// Same DFS, counting totals at several ascending thresholds in one pass.
std::vector<std::pair<uint64_t, uint64_t>> census_at(uint64_t ell,
                                                     const std::vector<uint64_t>& Xs,
                                                     const PrimeFilter& filter);

// v = 0 stratum only (squarefree conductors away from ell).
uint64_t census_v0(uint64_t ell, uint64_t X, const PrimeFilter& filter);

// Sum of (ell-1)^omega(n) over squarefree n <= X built from filtered primes
// congruent to 1 mod ell (n = 1 included).
uint64_t weighted_sum(uint64_t ell, uint64_t X, const PrimeFilter& filter);

// Discriminant of a cyclic degree-ell field of conductor N: N^(ell-1).
uint64_t conductor_to_discriminant(uint64_t ell, uint64_t N);

struct FitResult {
  double c = 0;
  double beta = 0;
  std::vector<double> residuals;  // relative deviation per sample
};

// Least-squares fit of count ~ c * X / (log X)^(1 - beta), beta in (0, 1].
FitResult asymptotic_fit(const std::vector<std::pair<uint64_t, uint64_t>>& samples,
                         double beta);

inline constexpr uint64_t kMaxCensusX = 1'000'000'000ull;

}  // namespace pav::fields
