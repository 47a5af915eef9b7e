#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pav/counting.hpp"
#include "pav/curve.hpp"

namespace pav::obstruction {

struct RAScanResult {
  std::string label;
  uint64_t limit = 0;
  std::vector<uint64_t> members;  // primes in R_A up to the limit, ascending
  uint64_t count = 0;
  uint64_t prime_count = 0;  // pi(limit)
  double ratio = 0;
};

struct CheckItem {
  std::string name;
  bool passed = false;
};

// Conditional emptiness certificate: the listed checks were verified, the
// listed attestations were taken on trust.
struct ObstructionCertificate {
  std::string curve_label;
  std::string field_kind;  // "cyclic" or "cyclotomic"
  uint64_t ell = 0;        // cyclic: degree; cyclotomic: the prime p
  uint64_t conductor = 0;  // cyclic: conductor n; cyclotomic: tower level n
  uint64_t field_degree = 0;
  uint64_t witness_prime = 0;
  uint64_t witness_order = 0;  // #A(F_p)
  std::vector<uint64_t> excluded;
  std::vector<CheckItem> checks;
  std::vector<std::string> attestations;

  std::string to_json() const;  // stable key order
};

// p in R_A: good reduction and gcd(p(p-1), #A(F_p)) = 1.
bool in_RA(const CurveSpec& curve, uint64_t p,
           uint64_t crossover = counting::kDefaultCrossover);

RAScanResult scan_RA(const CurveSpec& curve, uint64_t limit,
                     uint64_t crossover = counting::kDefaultCrossover,
                     unsigned threads = 0);

// Smallest good prime p <= search_limit with p = 1 mod ell and
// ell not dividing #A(F_p); nullopt when the search is exhausted.
std::optional<uint64_t> find_condition_ii_witness(
    const CurveSpec& curve, uint64_t ell, uint64_t search_limit,
    uint64_t crossover = counting::kDefaultCrossover);

// Emptiness certificate for (A-0)(O_{L,S}) with L any cyclic degree-ell
// field of conductor n; searches the ramified primes of n for a witness.
std::optional<ObstructionCertificate> certify_cyclic(const CurveSpec& curve,
                                                     uint64_t ell, uint64_t n,
                                                     const std::vector<uint64_t>& S);

// Same for L = Q(zeta_{p^n}).
std::optional<ObstructionCertificate> certify_cyclotomic(const CurveSpec& curve,
                                                         uint64_t p, uint64_t n,
                                                         const std::vector<uint64_t>& S);

}  // namespace pav::obstruction
