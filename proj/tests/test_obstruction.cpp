#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "pav/arith.hpp"
#include "pav/counting.hpp"
#include "pav/curve.hpp"
#include "pav/errors.hpp"
#include "pav/fields.hpp"
#include "pav/obstruction.hpp"

using namespace pav;
using namespace pav::obstruction;

namespace {

const std::vector<uint64_t> kRE1000 = {
    2,   17,  19,  23,  47,  59,  89,  107, 127, 149, 151, 157, 163, 173, 193,
    199, 227, 257, 283, 359, 421, 431, 449, 479, 491, 509, 569, 601, 613, 617,
    659, 691, 719, 773, 821, 823, 827, 839, 881, 887, 911, 947, 953, 971, 977};

const std::vector<uint64_t> kRJ1000 = {11,  13,  43,  79,  149, 163, 223, 227,
                                       269, 353, 367, 443, 523, 593, 641, 683,
                                       743, 769, 797, 887, 929, 941, 991};

// R_A membership straight from the definition, with the naive counter.
bool in_RA_by_definition(const CurveSpec& c, uint64_t p) {
  if (c.bad_at(p)) return false;
  uint64_t order = counting::ec_count_naive(c, p).group_order;
  return std::gcd(p * (p - 1), order) == 1;
}

}  // namespace

TEST_CASE("in_RA matches the definition on small primes") {
  CurveRegistry reg;
  const auto& e67 = reg.get("67a1");
  for (uint64_t p : arith::sieve_primes(500).primes) {
    if (p == 67) {
      CHECK_FALSE(in_RA(e67, p));
      continue;
    }
    CHECK(in_RA(e67, p) == in_RA_by_definition(e67, p));
  }
}

TEST_CASE("R_E up to 1000 is reproduced exactly") {
  CurveRegistry reg;
  auto res = scan_RA(reg.get("67a1"), 1000);
  CHECK(res.members == kRE1000);
  CHECK(res.count == 45);
  CHECK(res.prime_count == 168);
  CHECK(res.ratio == doctest::Approx(45.0 / 168.0));
}

TEST_CASE("R_J up to 1000 is reproduced exactly") {
  CurveRegistry reg;
  auto res = scan_RA(reg.get("8969.a.8969.1"), 1000);
  CHECK(res.members == kRJ1000);
}

TEST_CASE("scan prefixes are stable") {
  CurveRegistry reg;
  const auto& e67 = reg.get("67a1");
  auto r200 = scan_RA(e67, 200);
  auto r1000 = scan_RA(e67, 1000);
  std::vector<uint64_t> prefix;
  for (uint64_t p : r1000.members)
    if (p <= 200) prefix.push_back(p);
  CHECK(r200.members == prefix);
}

TEST_CASE("condition-(ii) witnesses for 67a1 match brute force") {
  CurveRegistry reg;
  const auto& e67 = reg.get("67a1");
  for (uint64_t ell : {2ull, 3ull, 5ull, 7ull, 11ull}) {
    auto w = find_condition_ii_witness(e67, ell, 100000);
    // brute force: smallest good p = 1 mod ell with ell not dividing #E(F_p)
    std::optional<uint64_t> expect;
    for (uint64_t p : arith::sieve_primes(100000).primes) {
      if (p % ell != 1 || e67.bad_at(p)) continue;
      if (counting::ec_count(e67, p).group_order % ell != 0) {
        expect = p;
        break;
      }
    }
    REQUIRE(w.has_value());
    CHECK(w == expect);
  }
}

TEST_CASE("cyclic certificates verify and exhaust") {
  CurveRegistry reg;
  const auto& e67 = reg.get("67a1");
  for (uint64_t ell : {2ull, 3ull}) {
    for (uint64_t n = 2; n <= 500; ++n) {
      uint64_t N = fields::conductor_multiplicity_N(ell, n);
      if (N == 0) continue;  // not a conductor; certify throws input_error
      auto cert = certify_cyclic(e67, ell, n, {});
      auto cls = fields::conductor_class(ell, n);
      // independent witness search over the ramified primes
      std::optional<uint64_t> expect;
      for (uint64_t q : cls.q_list) {
        if (e67.bad_at(q)) continue;
        if (counting::ec_count(e67, q).group_order % ell != 0) {
          expect = q;
          break;
        }
      }
      if (expect) {
        REQUIRE(cert.has_value());
        CHECK(cert->witness_prime == *expect);
        CHECK(cert->ell == ell);
        CHECK(cert->conductor == n);
        CHECK(cert->witness_order ==
              counting::ec_count(e67, cert->witness_prime).group_order);
        CHECK(std::gcd(cert->witness_order, ell) == 1);
        CHECK(cert->witness_prime % ell == 1);
        CHECK(n % cert->witness_prime == 0);
        for (const auto& item : cert->checks) CHECK(item.passed);
      } else {
        CHECK_FALSE(cert.has_value());
      }
    }
  }
}

TEST_CASE("excluded primes disqualify witnesses") {
  CurveRegistry reg;
  const auto& J = reg.get("8969.a.8969.1");
  auto cert = certify_cyclic(J, 2, 5, {});
  REQUIRE(cert.has_value());
  CHECK(cert->witness_prime == 5);
  CHECK(cert->witness_order == 15);
  // excluding 5 removes the only ramified prime
  CHECK_FALSE(certify_cyclic(J, 2, 5, {5}).has_value());
  // a conductor with two ramified primes falls back to the second
  // 5 * 13: both 1 mod 2; excluding 5 must promote 13 if usable
  auto cert2 = certify_cyclic(J, 2, 65, {5});
  if (counting::local_data(J, 13).group_order % 2 != 0) {
    REQUIRE(cert2.has_value());
    CHECK(cert2->witness_prime == 13);
  }
}

TEST_CASE("cyclotomic certificates require R_A membership") {
  CurveRegistry reg;
  const auto& e67 = reg.get("67a1");
  for (uint64_t p : {2ull, 17ull, 19ull, 23ull}) {  // members of R_E
    auto cert = certify_cyclotomic(e67, p, 1, {});
    REQUIRE(cert.has_value());
    CHECK(cert->witness_prime == p);
    CHECK(std::gcd(p * (p - 1), cert->witness_order) == 1);
    for (const auto& item : cert->checks) CHECK(item.passed);
  }
  for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {  // not in R_E
    CHECK_FALSE(certify_cyclotomic(e67, p, 1, {}).has_value());
  }
  // excluding the ramified prime kills the certificate
  CHECK_FALSE(certify_cyclotomic(e67, 17, 2, {17}).has_value());
}

TEST_CASE("cyclotomic tower degree") {
  CurveRegistry reg;
  auto cert = certify_cyclotomic(reg.get("67a1"), 17, 3, {});
  REQUIRE(cert.has_value());
  CHECK(cert->field_degree == 17ull * 17 * 16);  // p^(n-1) (p-1)
  CHECK_THROWS_AS(certify_cyclotomic(reg.get("67a1"), 17, 20, {}),
                  resource_error);
}

TEST_CASE("attestation is mandatory") {
  CurveRegistry reg;
  CurveSpec c = reg.get("67a1");
  c.label = "67a1-unattested";
  c.attested_trivial_mw = false;
  CHECK_THROWS_AS(certify_cyclic(c, 2, 5, {}), attestation_error);
  CHECK_THROWS_AS(certify_cyclotomic(c, 2, 1, {}), attestation_error);
}

TEST_CASE("invalid conductors are input errors") {
  CurveRegistry reg;
  CHECK_THROWS_AS(certify_cyclic(reg.get("67a1"), 3, 5, {}), input_error);
  CHECK_THROWS_AS(certify_cyclotomic(reg.get("67a1"), 4, 1, {}), input_error);
}

TEST_CASE("certificate JSON is stable and complete") {
  CurveRegistry reg;
  auto cert = certify_cyclic(reg.get("8969.a.8969.1"), 2, 5, {});
  REQUIRE(cert.has_value());
  auto j = nlohmann::json::parse(cert->to_json());
  CHECK(j["curve"] == "8969.a.8969.1");
  CHECK(j["field"]["kind"] == "cyclic");
  CHECK(j["field"]["degree"] == 2);
  CHECK(j["field"]["conductor"] == 5);
  CHECK(j["witness"]["prime"] == 5);
  CHECK(j["witness"]["group_order"] == 15);
  CHECK(j["checks"].is_array());
  CHECK(!j["attestations"].empty());

  auto cyt = certify_cyclotomic(reg.get("67a1"), 2, 2, {});
  REQUIRE(cyt.has_value());
  auto j2 = nlohmann::json::parse(cyt->to_json());
  CHECK(j2["field"]["kind"] == "cyclotomic");
  CHECK(j2["field"]["p"] == 2);
  CHECK(j2["field"]["n"] == 2);
  CHECK(j2["field"]["degree"] == 2);
}
