#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parab {

struct SuiteOptions {
    std::vector<std::uint32_t> primes{3, 5};
    // primes for the oracle sweeps over lambda0 (delta, det, roots, di)
    std::vector<std::uint32_t> sweep_primes{3, 5, 7};
    int instances = 20;           // randomized instances per prime
    int algebra_instances = 100;  // per prime for the algebra layer
    std::uint64_t seed = 1;
};

struct SuiteResult {
    std::string name;
    int cases = 0;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double seconds = 0;

    bool ok() const { return failures.empty() && cases > 0; }
    void check(bool cond, const std::string& what);
};

struct SuiteInfo {
    std::string name;
    std::string summary;
    SuiteResult (*run)(const SuiteOptions&);
};

const std::vector<SuiteInfo>& suites();
// Throws ValidationError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

SuiteResult suite_arith(const SuiteOptions& o);
SuiteResult suite_p1(const SuiteOptions& o);
SuiteResult suite_algebra(const SuiteOptions& o);
SuiteResult suite_serialize(const SuiteOptions& o);
SuiteResult suite_connections(const SuiteOptions& o);
SuiteResult suite_delta(const SuiteOptions& o);
SuiteResult suite_det(const SuiteOptions& o);
SuiteResult suite_roots(const SuiteOptions& o);
SuiteResult suite_di(const SuiteOptions& o);
SuiteResult suite_cartier(const SuiteOptions& o);
SuiteResult suite_descent(const SuiteOptions& o);
SuiteResult suite_bis(const SuiteOptions& o);
SuiteResult suite_functoriality(const SuiteOptions& o);
SuiteResult suite_flow(const SuiteOptions& o);

}  // namespace parab
