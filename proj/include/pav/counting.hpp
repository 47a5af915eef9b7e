#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pav/curve.hpp"

namespace pav::counting {

// Point counts and the Frobenius characteristic polynomial at a good prime.
struct LocalFrobeniusData {
  uint64_t p = 0;
  uint64_t count1 = 0;  // #E(F_p), or #C(F_p) for genus 2
  uint64_t count2 = 0;  // #C(F_{p^2}) (genus 2 only)
  std::vector<int64_t> charpoly;  // P_p coefficients, ascending degree
  uint64_t group_order = 0;       // #A(F_p) = P_p(1)
};

struct BsgsOptions {
  uint64_t seed = 1;
  unsigned attempt_budget = 40;
};

// Default crossover between the naive character-sum oracle and BSGS.
inline constexpr uint64_t kDefaultCrossover = 3000;

// Throws bad_reduction_error when p divides the conductor, and
// unusable_model_error when the model is singular mod p but p does not
// divide the attested conductor.
void require_usable(const CurveSpec& curve, uint64_t p);

LocalFrobeniusData ec_count_naive(const CurveSpec& curve, uint64_t p);
LocalFrobeniusData ec_count_bsgs(const CurveSpec& curve, uint64_t p,
                                 const BsgsOptions& opts = {});

// Dispatch: naive below the crossover, BSGS above.
LocalFrobeniusData ec_count(const CurveSpec& curve, uint64_t p,
                            uint64_t crossover = kDefaultCrossover);

std::pair<uint64_t, uint64_t> genus2_counts(const CurveSpec& curve, uint64_t p,
                                            unsigned threads = 1);
LocalFrobeniusData genus2_jacobian_order(const CurveSpec& curve, uint64_t p,
                                         unsigned threads = 1);

// Kind dispatch.
LocalFrobeniusData local_data(const CurveSpec& curve, uint64_t p,
                              uint64_t crossover = kDefaultCrossover,
                              unsigned threads = 1);

// #A(F_p) for every good prime p <= limit, ascending; bad primes omitted.
std::vector<std::pair<uint64_t, uint64_t>> scan_group_orders(
    const CurveSpec& curve, uint64_t limit,
    uint64_t crossover = kDefaultCrossover, unsigned threads = 0);

}  // namespace pav::counting
