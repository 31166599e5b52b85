#pragma once

#include "eivarx/pipeline.hpp"
#include "eivarx/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eivarx {

struct Scenario {
    std::string name = "custom";
    DifferenceEquation model;
    NoiseSpec noise;
    std::size_t n = 1023;
    int prbs_bits = 0;  ///< 0 = smallest register covering n
    std::uint64_t prbs_seed = 0;
    std::pair<double, double> levels{-1.0, 1.0};

    int register_length() const;
};

enum class Method { Proposed, Dpca, DipcaDiag, OlsArx };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct McConfig {
    Scenario scenario;
    int replications = 100;
    std::uint64_t base_seed = 0;
    std::vector<Method> methods{Method::Proposed};
    PipelineConfig pipeline;
    unsigned threads = 0;       ///< 0 = hardware concurrency
    bool fixed_seed = false;    ///< every replicate uses base_seed (degenerate moments)
};

struct ParameterSummary {
    std::string method;
    std::string parameter;
    double true_value = 0.0;
    double mean = 0.0;
    double two_sigma = 0.0;  ///< NaN with fewer than two samples
    int count = 0;
};

struct EigenvalueSummary {
    int index = 0;  ///< 1-based, descending order
    double mean = 0.0;
    double two_sigma = 0.0;
};

struct McSummary {
    std::string scenario;
    int replications = 0;
    std::uint64_t base_seed = 0;
    std::vector<ParameterSummary> parameters;
    std::vector<EigenvalueSummary> eigenvalues;
    double order_recovery_rate = 0.0;
    double refinement_eigenvalue_mean = 0.0;
    int failures = 0;
    std::vector<std::uint64_t> failed_seeds;
    std::vector<std::string> failure_messages;
    std::vector<int> eta_hats;  ///< per replicate, -1 on failure

    const ParameterSummary* find(const std::string& method, const std::string& parameter) const;
};

/// Replicate r uses seed base_seed + r; the PRBS is shared by all replicates.
McSummary run_mc(const McConfig& config);

/// Mean / 2 sigma of the converged eigenvalues at the accepted order.
std::vector<EigenvalueSummary> eigenvalue_summary(const McConfig& config);

/// Stable parameter names for a model of order eta: sigma2_ey, sigma2_eu, a1.., b0..
std::vector<std::string> parameter_names(int eta, bool with_variances);

}  // namespace eivarx
