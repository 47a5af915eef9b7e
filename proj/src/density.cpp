#include "pav/density.hpp"

#include <array>
#include <cmath>

#include <json.hpp>

#include "pav/arith.hpp"
#include "pav/errors.hpp"
#include "pav/fields.hpp"

namespace pav::density {

Rational Rational::make(int64_t n, int64_t d) {
  if (d == 0) throw input_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return {n, d};
}

bool MatrixModL::is_symplectic() const {
  unsigned m = 2 * d;
  // J has blocks [[0,1],[-1,0]]; check (M^T J M)_{ij} = J_{ij}, i.e.
  // <col_i, col_j> where <u,v> = sum over blocks of (u_{2k} v_{2k+1} - u_{2k+1} v_{2k})
  auto form = [&](unsigned ci, unsigned cj) -> uint64_t {
    uint64_t acc = 0;
    for (unsigned k = 0; k < d; ++k) {
      uint64_t a = at(2 * k, ci), b = at(2 * k + 1, ci);
      uint64_t c = at(2 * k, cj), e = at(2 * k + 1, cj);
      acc = (acc + a * e + (ell - 1) * (b * c % ell)) % ell;
    }
    return acc;
  };
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      uint64_t expect = 0;
      if (i / 2 == j / 2) {
        if (i + 1 == j && i % 2 == 0) expect = 1;
        if (j + 1 == i && j % 2 == 0) expect = ell - 1;
      }
      if (form(i, j) != expect) return false;
    }
  return true;
}

namespace {

// determinant mod ell by Gaussian elimination
uint64_t det_mod(std::vector<uint64_t> a, unsigned m, uint64_t ell) {
  uint64_t det = 1;
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    while (piv < m && a[piv * m + col] % ell == 0) ++piv;
    if (piv == m) return 0;
    if (piv != col) {
      for (unsigned j = 0; j < m; ++j) std::swap(a[piv * m + j], a[col * m + j]);
      det = (det * (ell - 1)) % ell;
    }
    uint64_t pv = a[col * m + col] % ell;
    det = det * pv % ell;
    uint64_t inv = arith::invmod(pv, ell);
    for (unsigned r = col + 1; r < m; ++r) {
      uint64_t f = a[r * m + col] % ell * inv % ell;
      if (!f) continue;
      for (unsigned j = col; j < m; ++j)
        a[r * m + j] = (a[r * m + j] + (ell - f) * a[col * m + j]) % ell;
    }
  }
  return det;
}

}  // namespace

bool MatrixModL::acts_freely() const {
  unsigned m = 2 * d;
  std::vector<uint64_t> a(entries);
  for (unsigned i = 0; i < m; ++i) a[i * m + i] = (a[i * m + i] + ell - 1) % ell;
  return det_mod(std::move(a), m, ell) != 0;
}

static DensityReport finish_report(uint64_t ell, unsigned d, uint64_t H, uint64_t C) {
  DensityReport r;
  r.ell = ell;
  r.d = d;
  r.H_size = H;
  r.C_size = C;
  r.alpha = Rational::make(static_cast<int64_t>(H - C),
                           static_cast<int64_t>((ell - 1) * H));
  r.beta = Rational::make(static_cast<int64_t>(H - C), static_cast<int64_t>(H));
  r.gamma = Rational::make(static_cast<int64_t>(C), static_cast<int64_t>(H));
  return r;
}

std::string DensityReport::to_json() const {
  nlohmann::ordered_json j;
  j["ell"] = ell;
  j["dimension"] = d;
  j["H_size"] = H_size;
  j["C_size"] = C_size;
  j["alpha"] = {{"num", alpha.num}, {"den", alpha.den}};
  j["beta"] = {{"num", beta.num}, {"den", beta.den}};
  j["gamma"] = {{"num", gamma.num}, {"den", gamma.den}};
  if (empirical) {
    j["empirical"] = {{"X", empirical->first}, {"fraction", empirical->second}};
  }
  return j.dump(2);
}

DensityReport enumerate_free_fraction_sl2(uint64_t ell) {
  if (!arith::is_prime(ell))
    throw input_error("enumerate_free_fraction_sl2: ell must be prime");
  if (ell > 50) throw input_error("enumerate_free_fraction_sl2: ell must be <= 50");
  uint64_t H = 0, C = 0;
  for (uint64_t a = 0; a < ell; ++a)
    for (uint64_t b = 0; b < ell; ++b)
      for (uint64_t c = 0; c < ell; ++c)
        for (uint64_t dd = 0; dd < ell; ++dd) {
          if ((a * dd + ell * ell - b * c) % ell != 1 % ell) continue;
          ++H;
          // free iff det(M - I) = (a-1)(d-1) - bc != 0
          uint64_t v = ((a + ell - 1) * (dd + ell - 1) + ell * ell - b * c) % ell;
          if (v != 0) ++C;
        }
  return finish_report(ell, 1, H, C);
}

namespace {

using Vec4 = std::array<uint64_t, 4>;

inline uint64_t sym_form(const Vec4& u, const Vec4& v, uint64_t ell) {
  // block-diagonal J: <u,v> = u0 v1 - u1 v0 + u2 v3 - u3 v2
  uint64_t plus = u[0] * v[1] + u[2] * v[3];
  uint64_t minus = u[1] * v[0] + u[3] * v[2];
  return (plus + (ell * ell - minus)) % ell;
}

}  // namespace

DensityReport enumerate_free_fraction_sp4(
    uint64_t ell, const std::function<void(const MatrixModL&, bool)>& visit) {
  if (ell != 2 && ell != 3)
    throw input_error("enumerate_free_fraction_sp4: only ell in {2, 3} supported");

  uint64_t n = ell * ell * ell * ell;
  std::vector<Vec4> all(n);
  for (uint64_t i = 0; i < n; ++i)
    all[i] = {i % ell, i / ell % ell, i / (ell * ell) % ell, i / (ell * ell * ell) % ell};

  uint64_t H = 0, C = 0;
  MatrixModL M;
  M.ell = ell;
  M.d = 2;
  M.entries.assign(16, 0);

  auto set_col = [&](unsigned c, const Vec4& v) {
    for (unsigned r = 0; r < 4; ++r) M.at(r, c) = v[r];
  };

  // complete symplectic bases (e1, f1, e2, f2); columns of a group element
  for (uint64_t i = 1; i < n; ++i) {
    const Vec4& e1 = all[i];
    for (const Vec4& f1 : all) {
      if (sym_form(e1, f1, ell) != 1) continue;
      for (uint64_t j = 1; j < n; ++j) {
        const Vec4& e2 = all[j];
        if (sym_form(e1, e2, ell) != 0 || sym_form(f1, e2, ell) != 0) continue;
        for (const Vec4& f2 : all) {
          if (sym_form(e1, f2, ell) != 0 || sym_form(f1, f2, ell) != 0 ||
              sym_form(e2, f2, ell) != 1)
            continue;
          ++H;
          set_col(0, e1);
          set_col(1, f1);
          set_col(2, e2);
          set_col(3, f2);
          bool free = M.acts_freely();
          if (free) ++C;
          if (visit) visit(M, free);
        }
      }
    }
  }

  // closed-form order ell^4 (ell^2 - 1)(ell^4 - 1) as an internal check
  uint64_t expected = ell * ell * ell * ell * (ell * ell - 1) * (ell * ell * ell * ell - 1);
  if (H != expected)
    throw std::logic_error("Sp4 enumeration size mismatch: got " + std::to_string(H) +
                           ", expected " + std::to_string(expected));
  return finish_report(ell, 2, H, C);
}

MatrixModL build_free_witness(uint64_t ell, unsigned d) {
  if (d < 1) throw input_error("build_free_witness: d must be >= 1");
  MatrixModL M;
  M.ell = ell;
  M.d = d;
  unsigned m = 2 * d;
  M.entries.assign(static_cast<std::size_t>(m) * m, 0);
  if (ell != 2) {
    for (unsigned i = 0; i < m; ++i) M.at(i, i) = ell - 1;  // -I
  } else {
    for (unsigned k = 0; k < d; ++k) {
      M.at(2 * k, 2 * k) = 1;
      M.at(2 * k, 2 * k + 1) = 1;
      M.at(2 * k + 1, 2 * k) = 1;
    }
  }
  if (!M.is_symplectic() || !M.acts_freely())
    throw std::logic_error("build_free_witness: verification failed");
  return M;
}

std::pair<double, uint64_t> empirical_free_fraction(const CurveSpec& curve, uint64_t ell,
                                                    uint64_t X, uint64_t crossover,
                                                    unsigned threads) {
  if (X < ell * ell) throw input_error("empirical_free_fraction: X must be >= ell^2");
  auto orders = counting::scan_group_orders(curve, X, crossover, threads);
  uint64_t total = 0, free_count = 0;
  for (auto& [p, order] : orders) {
    if (p % ell != 1) continue;
    ++total;
    if (order % ell != 0) ++free_count;
  }
  if (total == 0) throw input_error("empirical_free_fraction: no admissible primes <= X");
  return {static_cast<double>(free_count) / static_cast<double>(total), total};
}

std::vector<uint64_t> admissible_prime_set(const CurveSpec& curve, uint64_t ell,
                                           const std::vector<uint64_t>& S, uint64_t limit,
                                           uint64_t crossover, unsigned threads) {
  // enlarge S with ell and the bad primes
  auto in_enlarged_S = [&](uint64_t p) {
    if (p == ell || curve.bad_at(p)) return true;
    for (uint64_t s : S)
      if (s == p) return true;
    return false;
  };

  std::vector<uint64_t> out;
  auto table = arith::sieve_primes(limit);
  for (uint64_t p : table.primes) {
    bool in_P_ell = (p == ell) || (p % ell == 1);
    if (!in_P_ell) continue;
    if (in_enlarged_S(p)) {
      out.push_back(p);
      continue;
    }
    uint64_t order = counting::local_data(curve, p, crossover, threads).group_order;
    if (order % ell == 0) out.push_back(p);
  }
  return out;
}

std::vector<ThinningRow> thinning_experiment(const CurveSpec& curve, uint64_t ell,
                                             const std::vector<uint64_t>& S,
                                             const std::vector<uint64_t>& X_samples,
                                             uint64_t crossover, unsigned threads) {
  if (X_samples.empty()) return {};
  uint64_t Xmax = *std::max_element(X_samples.begin(), X_samples.end());

  // one order scan, shared by every sample point
  auto orders = counting::scan_group_orders(curve, Xmax, crossover, threads);
  std::vector<uint64_t> divisible;  // good primes with ell | #A(F_p)
  for (auto& [p, order] : orders)
    if (order % ell == 0) divisible.push_back(p);

  auto in_P = [&](uint64_t p) {
    if (p == ell || curve.bad_at(p)) return true;  // enlarged S
    for (uint64_t s : S)
      if (s == p) return true;
    return std::binary_search(divisible.begin(), divisible.end(), p);
  };

  auto restricted = fields::census_at(ell, X_samples, in_P);
  auto unrestricted = fields::census_at(ell, X_samples, [](uint64_t) { return true; });

  std::vector<ThinningRow> rows;
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    ThinningRow row;
    row.X = restricted[i].first;
    row.restricted = restricted[i].second;
    row.unrestricted = unrestricted[i].second;
    row.ratio = row.unrestricted
                    ? static_cast<double>(row.restricted) / static_cast<double>(row.unrestricted)
                    : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double fit_decay_exponent(const std::vector<ThinningRow>& rows) {
  if (rows.size() < 2) throw input_error("fit_decay_exponent: need >= 2 rows");
  // least squares on log(ratio) = log C - gamma * log log X
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (const auto& r : rows) {
    if (r.ratio <= 0) throw input_error("fit_decay_exponent: nonpositive ratio");
    double x = std::log(std::log(static_cast<double>(r.X)));
    double y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

}  // namespace pav::density
