#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pav/counting.hpp"
#include "pav/curve.hpp"

namespace pav::density {

struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational make(int64_t n, int64_t d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// 2d x 2d matrix over F_ell.
struct MatrixModL {
  uint64_t ell = 2;
  unsigned d = 1;
  std::vector<uint64_t> entries;  // row-major, size (2d)^2

  uint64_t at(unsigned r, unsigned c) const { return entries[r * 2 * d + c]; }
  uint64_t& at(unsigned r, unsigned c) { return entries[r * 2 * d + c]; }

  // M^T J M = J for the block-diagonal form (d blocks of [[0,1],[-1,0]]).
  bool is_symplectic() const;
  // no eigenvalue 1: det(M - I) != 0 mod ell
  bool acts_freely() const;
};

struct DensityReport {
  uint64_t ell = 2;
  unsigned d = 1;
  uint64_t H_size = 0;  // #H_ell(A) (surjective case: Sp_{2d}(F_ell))
  uint64_t C_size = 0;  // elements acting freely on the ell-torsion
  Rational alpha, beta, gamma;
  std::optional<std::pair<uint64_t, double>> empirical;  // (X, fraction)

  std::string to_json() const;
};

// Exhaustive SL_2(F_ell) enumeration (d = 1 surjective case), ell <= 50.
DensityReport enumerate_free_fraction_sl2(uint64_t ell);

// Exhaustive Sp_4(F_ell) enumeration (d = 2 surjective case), ell in {2, 3}.
// The optional visitor sees every group element with its freeness flag.
DensityReport enumerate_free_fraction_sp4(
    uint64_t ell,
    const std::function<void(const MatrixModL&, bool)>& visit = nullptr);

// -I for ell != 2; the 2x2-block matrix [[1,1],[1,0]]^(d) for ell = 2.
// Verified symplectic and eigenvalue-1-free before returning.
MatrixModL build_free_witness(uint64_t ell, unsigned d);

// Fraction of good primes p <= X, p = 1 mod ell, with ell not dividing
// #A(F_p); Chebotarev estimate of gamma under surjectivity.
std::pair<double, uint64_t> empirical_free_fraction(
    const CurveSpec& curve, uint64_t ell, uint64_t X,
    uint64_t crossover = counting::kDefaultCrossover, unsigned threads = 0);

// The primes in P = {p in P_ell : p in enlarged S or ell | #A(F_p)} up to
// the limit; S is enlarged internally with ell and the bad primes.
std::vector<uint64_t> admissible_prime_set(const CurveSpec& curve, uint64_t ell,
                                           const std::vector<uint64_t>& S, uint64_t limit,
                                           uint64_t crossover = counting::kDefaultCrossover,
                                           unsigned threads = 0);

struct ThinningRow {
  uint64_t X = 0;
  uint64_t restricted = 0;    // #F_{P,ell}(X)
  uint64_t unrestricted = 0;  // #F_ell(X)
  double ratio = 0;
};

std::vector<ThinningRow> thinning_experiment(const CurveSpec& curve, uint64_t ell,
                                             const std::vector<uint64_t>& S,
                                             const std::vector<uint64_t>& X_samples,
                                             uint64_t crossover = counting::kDefaultCrossover,
                                             unsigned threads = 0);

// Fits ratio ~ C / (log X)^gamma; returns the decay exponent gamma.
double fit_decay_exponent(const std::vector<ThinningRow>& rows);

}  // namespace pav::density
