// Command-line front end: R_A scans, emptiness certificates, cyclic-field
// censuses, and free-action density reports.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pav/arith.hpp"
#include "pav/counting.hpp"
#include "pav/curve.hpp"
#include "pav/density.hpp"
#include "pav/errors.hpp"
#include "pav/fields.hpp"
#include "pav/obstruction.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string format4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct CommonOpts {
  std::string registry_path;
  unsigned threads = 0;
  uint64_t crossover = pav::counting::kDefaultCrossover;
};

pav::CurveRegistry load_registry(const CommonOpts& opts) {
  pav::CurveRegistry reg;
  if (!opts.registry_path.empty()) reg.load_file(opts.registry_path);
  return reg;
}

int run_ra_scan(const CommonOpts& opts, const std::string& label, uint64_t limit,
                const std::string& format) {
  auto reg = load_registry(opts);
  auto result = pav::obstruction::scan_RA(reg.get(label), limit, opts.crossover,
                                          opts.threads);
  if (format == "csv") {
    std::cout << "limit,count,pi,ratio\n";
    std::cout << result.limit << ',' << result.count << ',' << result.prime_count << ','
              << format4(result.ratio) << '\n';
  } else {
    json j;
    j["curve"] = result.label;
    j["limit"] = result.limit;
    j["count"] = result.count;
    j["prime_count"] = result.prime_count;
    j["ratio"] = format4(result.ratio);
    j["members"] = result.members;
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

int run_certify(const CommonOpts& opts, const std::string& label,
                const std::vector<uint64_t>& cyclic, const std::vector<uint64_t>& cyclotomic,
                const std::vector<uint64_t>& exclude) {
  auto reg = load_registry(opts);
  const auto& curve = reg.get(label);

  std::optional<pav::obstruction::ObstructionCertificate> cert;
  if (!cyclic.empty())
    cert = pav::obstruction::certify_cyclic(curve, cyclic[0], cyclic[1], exclude);
  else
    cert = pav::obstruction::certify_cyclotomic(curve, cyclotomic[0], cyclotomic[1], exclude);

  if (cert) {
    std::cout << cert->to_json() << '\n';
    return 0;
  }
  json j;
  j["curve"] = label;
  j["result"] = "no-witness";
  j["note"] = "no admissible ramified prime certifies emptiness; this does not "
              "assert that integral points exist";
  std::cout << j.dump(2) << '\n';
  return 1;
}

std::vector<uint64_t> geometric_samples(uint64_t X) {
  std::vector<uint64_t> xs;
  uint64_t v = X;
  while (v >= 10 && xs.size() < 6) {
    xs.push_back(v);
    v /= 10;
  }
  if (xs.empty()) xs.push_back(X);
  std::sort(xs.begin(), xs.end());
  return xs;
}

int run_census(const CommonOpts& opts, uint64_t ell, uint64_t X, bool all_primes,
               const std::string& curve_label, const std::vector<uint64_t>& exclude,
               const std::string& beta_arg) {
  auto reg = load_registry(opts);
  auto xs = geometric_samples(X);

  double beta = 1.0;
  std::vector<std::pair<uint64_t, uint64_t>> samples;
  if (all_primes) {
    samples = pav::fields::census_at(ell, xs, [](uint64_t) { return true; });
  } else {
    const auto& curve = reg.get(curve_label);
    auto rows = pav::density::thinning_experiment(curve, ell, exclude, xs, opts.crossover,
                                                  opts.threads);
    std::cout << "X,restricted,unrestricted,ratio\n";
    for (const auto& r : rows)
      std::cout << r.X << ',' << r.restricted << ',' << r.unrestricted << ','
                << format4(r.ratio) << '\n';
    if (beta_arg == "auto") {
      if (ell <= 50 && curve.surjective_at(ell)) {
        auto rep = curve.is_elliptic() || ell > 3
                       ? pav::density::enumerate_free_fraction_sl2(ell)
                       : pav::density::enumerate_free_fraction_sp4(ell);
        beta = 1.0 - rep.gamma.value();
      }
    } else if (!beta_arg.empty()) {
      beta = std::stod(beta_arg);
    }
    for (const auto& r : rows) samples.emplace_back(r.X, r.restricted);
    // fall through to the scaled table and fit on the restricted counts
  }

  if (!beta_arg.empty() && beta_arg != "auto") beta = std::stod(beta_arg);
  std::cout << "X,count,scaled\n";
  for (auto& [x, count] : samples) {
    double lx = std::log(static_cast<double>(x));
    double scaled = static_cast<double>(count) * std::pow(lx, 1.0 - beta) /
                    static_cast<double>(x);
    std::cout << x << ',' << count << ',' << format4(scaled) << '\n';
  }
  try {
    auto fit = pav::fields::asymptotic_fit(samples, beta);
    std::cout << "# fit: c=" << format4(fit.c) << " beta=" << format4(fit.beta) << '\n';
  } catch (const pav::input_error& e) {
    std::cout << "# fit skipped: " << e.what() << '\n';
  }
  return 0;
}

int run_density(const CommonOpts& opts, uint64_t ell, unsigned dim,
                const std::string& empirical_label, uint64_t empirical_X) {
  if (!empirical_label.empty()) {
    auto reg = load_registry(opts);
    const auto& curve = reg.get(empirical_label);
    auto [fraction, sample_size] = pav::density::empirical_free_fraction(
        curve, ell, empirical_X, opts.crossover, opts.threads);
    json j;
    j["ell"] = ell;
    j["curve"] = empirical_label;
    j["X"] = empirical_X;
    j["fraction"] = fraction;
    j["sample_size"] = sample_size;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  pav::density::DensityReport rep;
  if (dim == 1)
    rep = pav::density::enumerate_free_fraction_sl2(ell);
  else
    rep = pav::density::enumerate_free_fraction_sp4(ell);
  std::cout << rep.to_json() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral-point obstructions on punctured abelian varieties"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--registry", opts.registry_path, "extra curves (JSON file)");
  app.add_option("--threads", opts.threads, "worker threads (0 = hardware)");
  app.add_option("--crossover", opts.crossover, "naive/BSGS crossover prime");

  // ra-scan
  auto* scan = app.add_subcommand("ra-scan", "scan R_A membership up to a limit");
  std::string scan_label, scan_format = "json";
  uint64_t scan_limit = 0;
  scan->add_option("label", scan_label)->required();
  scan->add_option("limit", scan_limit)->required();
  scan->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "json"}));

  // certify
  auto* certify = app.add_subcommand("certify", "emptiness certificate for (A-0)(O_{L,S})");
  std::string cert_label;
  std::vector<uint64_t> cert_cyclic, cert_cyclotomic, cert_exclude;
  certify->add_option("label", cert_label)->required();
  auto* cyc = certify->add_option("--cyclic", cert_cyclic,
                                  "degree ell and conductor n of a cyclic field")
                  ->expected(2);
  auto* cyt = certify->add_option("--cyclotomic", cert_cyclotomic,
                                  "prime p and tower level n of Q(zeta_{p^n})")
                  ->expected(2);
  certify->add_option("--exclude", cert_exclude, "excluded primes S");
  cyc->excludes(cyt);

  // census
  auto* census = app.add_subcommand("census", "count cyclic degree-ell fields by conductor");
  uint64_t census_ell = 0, census_X = 0;
  bool census_all = false;
  std::string census_curve, census_beta = "auto";
  std::vector<uint64_t> census_exclude;
  census->add_option("ell", census_ell)->required();
  census->add_option("X", census_X)->required();
  census->add_flag("--all-primes", census_all, "no prime restriction");
  census->add_option("--curve", census_curve, "restrict to the curve's admissible primes");
  census->add_option("--exclude", census_exclude, "excluded primes S");
  census->add_option("--beta", census_beta, "fit exponent: auto or a value in (0,1]");

  // density
  auto* density = app.add_subcommand("density", "free-action density report");
  uint64_t density_ell = 0, density_X = 0;
  unsigned density_dim = 1;
  std::vector<std::string> density_empirical;
  density->add_option("ell", density_ell)->required();
  density->add_option("--dim", density_dim, "abelian-variety dimension (1 or 2)");
  density->add_option("--empirical", density_empirical,
                      "curve label and prime bound X for a Chebotarev estimate")
      ->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) return run_ra_scan(opts, scan_label, scan_limit, scan_format);
    if (certify->parsed()) {
      if (cert_cyclic.empty() == cert_cyclotomic.empty())
        throw pav::input_error("certify: exactly one of --cyclic/--cyclotomic is required");
      return run_certify(opts, cert_label, cert_cyclic, cert_cyclotomic, cert_exclude);
    }
    if (census->parsed()) {
      if (census_all == !census_curve.empty())
        throw pav::input_error("census: exactly one of --all-primes/--curve is required");
      return run_census(opts, census_ell, census_X, census_all, census_curve,
                        census_exclude, census_beta);
    }
    if (density->parsed()) {
      if (!density_empirical.empty()) {
        return run_density(opts, density_ell, 0, density_empirical[0],
                           std::stoull(density_empirical[1]));
      }
      if (density_dim != 1 && density_dim != 2)
        throw pav::input_error("density: --dim must be 1 or 2");
      return run_density(opts, density_ell, density_dim, "", 0);
    }
  } catch (const pav::resource_error& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const pav::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const pav::attestation_error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
