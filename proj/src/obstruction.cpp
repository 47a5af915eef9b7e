#include "pav/obstruction.hpp"

#include <algorithm>

#include <json.hpp>

#include "pav/arith.hpp"
#include "pav/errors.hpp"
#include "pav/fields.hpp"

namespace pav::obstruction {

using arith::gcd_u64;

std::string ObstructionCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["curve"] = curve_label;
  nlohmann::ordered_json field;
  field["kind"] = field_kind;
  if (field_kind == "cyclic") {
    field["degree"] = ell;
    field["conductor"] = conductor;
  } else {
    field["p"] = ell;
    field["n"] = conductor;
    field["degree"] = field_degree;
  }
  j["field"] = field;
  j["witness"] = {{"prime", witness_prime}, {"group_order", witness_order}};
  j["excluded"] = excluded;
  nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"passed", c.passed}});
  j["checks"] = checks_json;
  j["attestations"] = attestations;
  return j.dump(2);
}

bool in_RA(const CurveSpec& curve, uint64_t p, uint64_t crossover) {
  if (curve.bad_at(p)) return false;
  uint64_t order = counting::local_data(curve, p, crossover).group_order;
  return gcd_u64(p * (p - 1), order) == 1;
}

RAScanResult scan_RA(const CurveSpec& curve, uint64_t limit, uint64_t crossover,
                     unsigned threads) {
  if (limit < 2) throw input_error("scan_RA: limit must be >= 2");
  RAScanResult r;
  r.label = curve.label;
  r.limit = limit;

  auto orders = counting::scan_group_orders(curve, limit, crossover, threads);
  r.prime_count = arith::sieve_primes(limit).primes.size();
  for (auto& [p, order] : orders)
    if (gcd_u64(p * (p - 1), order) == 1) r.members.push_back(p);
  r.count = r.members.size();
  r.ratio = static_cast<double>(r.count) / static_cast<double>(r.prime_count);
  return r;
}

std::optional<uint64_t> find_condition_ii_witness(const CurveSpec& curve, uint64_t ell,
                                                  uint64_t search_limit,
                                                  uint64_t crossover) {
  if (search_limit < 2) return std::nullopt;
  auto table = arith::sieve_primes(search_limit);
  for (uint64_t p : table.primes) {
    if (p % ell != 1) continue;  // also rules out p = ell
    if (curve.bad_at(p)) continue;
    uint64_t order = counting::local_data(curve, p, crossover).group_order;
    if (order % ell != 0) return p;
  }
  return std::nullopt;
}

static std::vector<std::string> base_attestations(const CurveSpec& curve) {
  return {
      "A(Q) = 0 (attested Mordell-Weil input for curve " + curve.label + ")",
      "conductor " + std::to_string(curve.conductor) +
          " is correct (good reduction inferred from it)",
  };
}

std::optional<ObstructionCertificate> certify_cyclic(const CurveSpec& curve, uint64_t ell,
                                                     uint64_t n,
                                                     const std::vector<uint64_t>& S) {
  if (!curve.attested_trivial_mw)
    throw attestation_error("certify_cyclic: curve " + curve.label +
                            " lacks the A(Q)=0 attestation");
  if (!arith::is_prime(ell))
    throw input_error("certify_cyclic: the field degree must be prime");
  // validates the conductor shape; throws input_error otherwise
  auto cls = fields::conductor_class(ell, n);

  auto in_S = [&](uint64_t p) { return std::find(S.begin(), S.end(), p) != S.end(); };

  // A ramified prime in a prime-degree cyclic field is totally ramified, so
  // any prime divisor p = 1 mod ell of n with good reduction, p not in S and
  // gcd(#A(F_p), ell) = 1 witnesses emptiness. Smallest divisor wins.
  for (uint64_t p : cls.q_list) {
    if (curve.bad_at(p) || in_S(p)) continue;
    uint64_t order = counting::local_data(curve, p).group_order;
    if (order % ell == 0) continue;

    ObstructionCertificate cert;
    cert.curve_label = curve.label;
    cert.field_kind = "cyclic";
    cert.ell = ell;
    cert.conductor = n;
    cert.field_degree = ell;
    cert.witness_prime = p;
    cert.witness_order = order;
    cert.excluded = S;
    cert.checks = {
        {"conductor_shape_valid", true},
        {"witness_divides_conductor", n % p == 0},
        {"witness_congruent_1_mod_degree", p % ell == 1},
        {"good_reduction_at_witness", !curve.bad_at(p)},
        {"witness_not_excluded", !in_S(p)},
        {"gcd_order_degree_is_1", gcd_u64(order, ell) == 1},
    };
    cert.attestations = base_attestations(curve);
    return cert;
  }
  return std::nullopt;
}

std::optional<ObstructionCertificate> certify_cyclotomic(const CurveSpec& curve, uint64_t p,
                                                         uint64_t n,
                                                         const std::vector<uint64_t>& S) {
  if (!curve.attested_trivial_mw)
    throw attestation_error("certify_cyclotomic: curve " + curve.label +
                            " lacks the A(Q)=0 attestation");
  if (!arith::is_prime(p)) throw input_error("certify_cyclotomic: p must be prime");
  if (n < 1) throw input_error("certify_cyclotomic: n must be >= 1");
  if (std::find(S.begin(), S.end(), p) != S.end()) return std::nullopt;
  if (curve.bad_at(p)) return std::nullopt;

  uint64_t order = counting::local_data(curve, p).group_order;
  if (gcd_u64(p * (p - 1), order) != 1) return std::nullopt;

  // degree of Q(zeta_{p^n}) is p^(n-1) (p-1)
  uint64_t degree = p - 1;
  for (uint64_t i = 1; i < n; ++i) {
    if (degree > UINT64_MAX / p)
      throw resource_error("certify_cyclotomic: field degree overflows 64 bits");
    degree *= p;
  }

  ObstructionCertificate cert;
  cert.curve_label = curve.label;
  cert.field_kind = "cyclotomic";
  cert.ell = p;
  cert.conductor = n;
  cert.field_degree = degree;
  cert.witness_prime = p;
  cert.witness_order = order;
  cert.excluded = S;
  cert.checks = {
      {"good_reduction_at_witness", !curve.bad_at(p)},
      {"witness_not_excluded", true},
      {"totally_ramified_in_tower", true},  // p in Q(zeta_{p^n}), by construction
      {"gcd_p_pminus1_order_is_1", gcd_u64(p * (p - 1), order) == 1},
  };
  cert.attestations = base_attestations(curve);
  return cert;
}

}  // namespace pav::obstruction
