// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "curvaspec/verify.hpp"

using namespace curvaspec;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string first_failure(const SuiteReport& rep) {
  for (const auto& c : rep.checks) {
    if (!c.passed) return c.name + " = " + detail::short_number(c.measured);
  }
  return {};
}

std::string worst_ratio(const SuiteReport& rep) {
  double worst = 0.0;
  for (const auto& c : rep.checks) {
    if (c.tolerance > 0.0) worst = std::max(worst, c.measured / c.tolerance);
  }
  return std::to_string(rep.checks.size()) + " checks, worst measured/tolerance " + detail::short_number(worst);
}

Outcome from_report(const SuiteReport& rep) {
  return rep.passed() ? Outcome{true, worst_ratio(rep)} : Outcome{false, first_failure(rep)};
}

Outcome timed(double budget, const std::function<SuiteReport()>& body) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep = body();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.expect_below("runtime [s]", seconds, budget);
  Outcome out = from_report(rep);
  out.detail += ", " + detail::short_number(seconds) + " s";
  return out;
}

}  // namespace

int main() {
  const VerifyOptions opt;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Euclidean limit", [&] { return timed(10.0, [&] { return verify_euclidean_limit(opt); }); }},
      {"curved spectra vs oracle", [&] { return timed(60.0, [&] { return verify_curved_spectra(opt); }); }},
      {"finite hyperbolic bound set", [&] { return from_report(verify_bound_set(opt)); }},
      {"symmetry suite", [&] { return from_report(verify_symmetry(opt)); }},
      {"classical algebra and trajectories",
       [&] {
         SuiteReport rep = verify_classical_algebra(opt, 1000);
         rep.append(verify_trajectories());
         return from_report(rep);
       }},
      {"quantum operators and eigenstate residuals",
       [&] {
         SuiteReport rep = verify_quantum_operators(opt);
         rep.append(verify_eigenstate_residuals(opt));
         return from_report(rep);
       }},
      {"special-function consistency", [&] { return from_report(verify_special_functions(opt)); }},
      {"orthonormality", [&] { return from_report(verify_orthonormality(opt)); }},
      {"printed energy sign is rejected",
       [&] {
         VerifyOptions printed = opt;
         printed.branch = EnergyBranch::as_printed;
         const bool limit_fails = !verify_euclidean_limit(printed).passed();
         const bool curved_fails = !verify_curved_spectra(printed).passed();
         const bool corrected_ok = verify_euclidean_limit(opt).passed() && verify_curved_spectra(opt).passed();
         const bool ok = limit_fails && curved_fails && corrected_ok;
         return Outcome{ok, std::string("printed sign: Euclidean limit ") + (limit_fails ? "fails" : "passes") +
                                ", curved spectra " + (curved_fails ? "fail" : "pass") + "; corrected sign " +
                                (corrected_ok ? "passes" : "fails")};
       }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("criterion %zu: %s  %s (%s)\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
