#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pav {

// An elliptic curve or genus-2 curve over Q with integer model coefficients
// plus attested global data. The conductor, triviality of the Mordell-Weil
// group, and mod-ell surjectivity are inputs we cannot verify; everything
// derived from them is conditional on these attestations.
struct CurveSpec {
  enum class Kind { Elliptic, Genus2 };

  Kind kind = Kind::Elliptic;
  std::string label;

  // elliptic: y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
  std::array<int64_t, 5> ec{};  // a1, a2, a3, a4, a6

  // genus 2: y^2 + h(x) y = f(x), deg f in {5, 6}, deg h <= 2
  std::vector<int64_t> f;  // f[0..6], ascending
  std::vector<int64_t> h;  // h[0..2], ascending

  uint64_t conductor = 1;
  bool attested_trivial_mw = false;

  // mod-ell surjectivity attestation
  bool surjective_all = false;
  std::vector<uint64_t> surjective_ell;         // explicit list, when not "all"
  std::vector<uint64_t> surjective_exceptions;  // primes excluded from "all l >= min"
  uint64_t surjective_min = 0;                  // 0 = list mode

  bool is_elliptic() const { return kind == Kind::Elliptic; }
  bool bad_at(uint64_t p) const { return conductor % p == 0; }
  bool surjective_at(uint64_t ell) const;

  void validate() const;  // throws input_error on malformed data
};

class CurveRegistry {
 public:
  CurveRegistry();  // ships with the two built-in curves

  const CurveSpec& get(const std::string& label) const;  // input_error if unknown
  bool contains(const std::string& label) const;
  void add(CurveSpec curve);
  void load_file(const std::string& path);  // JSON, one document or an array

  std::vector<std::string> labels() const;

 private:
  std::map<std::string, CurveSpec> curves_;
};

CurveSpec curve_to_spec_from_json_text(const std::string& text);
std::string curve_to_json_text(const CurveSpec& c);

}  // namespace pav
