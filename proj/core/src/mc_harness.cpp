#include "eivarx/mc_harness.hpp"

#include "eivarx/baselines.hpp"
#include "eivarx/errors.hpp"
#include "eivarx/signal_gen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <thread>

namespace eivarx {

namespace {

using Estimates = std::map<std::string, double>;

struct Replicate {
    std::uint64_t seed = 0;
    std::vector<std::optional<Estimates>> per_method;
    int eta_hat = -1;
    Vector eigenvalues;
    double refinement_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

Estimates coefficient_map(const DifferenceEquation& m, int eta) {
    Estimates e;
    for (int i = 1; i <= eta; ++i) e["a" + std::to_string(i)] = i <= m.ny() ? m.a(i - 1) : 0.0;
    const Vector bf = m.b_full();
    for (int j = 0; j <= eta; ++j) e["b" + std::to_string(j)] = j < bf.size() ? bf(j) : 0.0;
    return e;
}

std::vector<std::string> method_parameters(Method method, const Scenario& sc) {
    const int eta = sc.model.eta();
    switch (method) {
    case Method::Proposed:
        return parameter_names(eta, true);
    case Method::Dpca:
    case Method::DipcaDiag:
        return parameter_names(eta, false);
    case Method::OlsArx: {
        std::vector<std::string> names{"sigma2_ey"};
        for (int i = 1; i <= sc.model.ny(); ++i) names.push_back("a" + std::to_string(i));
        for (int j = sc.model.delay; j <= sc.model.nu(); ++j) names.push_back("b" + std::to_string(j));
        return names;
    }
    }
    return {};
}

Estimates true_values(const Scenario& sc) {
    Estimates t = coefficient_map(sc.model, sc.model.eta());
    t["sigma2_ey"] = sc.noise.sigma2_ey;
    t["sigma2_eu"] = sc.noise.sigma2_eu;
    return t;
}

void mean_two_sigma(const std::vector<double>& xs, double& mean, double& two_sigma) {
    const double n = static_cast<double>(xs.size());
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) {
        two_sigma = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    // Shifted by the first sample so identical replicates give exactly zero.
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
        s1 += x - xs.front();
        s2 += (x - xs.front()) * (x - xs.front());
    }
    two_sigma = 2.0 * std::sqrt(std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0)));
}

Replicate run_replicate(const McConfig& cfg, const Vector& u_star, const Vector& y_star,
                        std::uint64_t seed) {
    const Scenario& sc = cfg.scenario;
    const int eta = sc.model.eta();
    Replicate rep;
    rep.seed = seed;
    rep.per_method.resize(cfg.methods.size());
    try {
        const TimeSeriesPair series = corrupt_measurements(y_star, u_star, sc.model, sc.noise, seed);
        for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
            switch (cfg.methods[k]) {
            case Method::Proposed: {
                const IdentificationReport r = identify(series, cfg.pipeline);
                rep.eta_hat = r.eta_hat;
                if (r.eta_hat == eta) {
                    Estimates e = coefficient_map(r.model, eta);
                    e["sigma2_ey"] = r.variances.sigma2_ey;
                    e["sigma2_eu"] = r.variances.sigma2_eu;
                    rep.per_method[k] = std::move(e);
                    rep.eigenvalues = r.eigenvalue_trail.back().eigenvalues;
                    rep.refinement_eigenvalue = r.refinement_eigenvalue;
                }
                break;
            }
            case Method::Dpca:
                rep.per_method[k] = coefficient_map(dpca(series, eta).model, eta);
                break;
            case Method::DipcaDiag:
                rep.per_method[k] = coefficient_map(dipca_diag(series, eta, cfg.pipeline).model, eta);
                break;
            case Method::OlsArx: {
                const BaselineResult b =
                    ols_arx(series, sc.model.ny(), sc.model.nu(), sc.model.delay);
                Estimates e = coefficient_map(b.model, std::max(sc.model.ny(), sc.model.nu()));
                e["sigma2_ey"] = *b.sigma2_ey;
                rep.per_method[k] = std::move(e);
                break;
            }
            }
        }
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

}  // namespace

int Scenario::register_length() const { return prbs_bits > 0 ? prbs_bits : prbs_bits_for_length(n); }

std::string method_name(Method m) {
    switch (m) {
    case Method::Proposed: return "proposed";
    case Method::Dpca: return "dpca";
    case Method::DipcaDiag: return "dipca_diag";
    case Method::OlsArx: return "ols_arx";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "proposed") return Method::Proposed;
    if (name == "dpca") return Method::Dpca;
    if (name == "dipca_diag") return Method::DipcaDiag;
    if (name == "ols_arx") return Method::OlsArx;
    throw InvalidArgument("unknown method '" + name + "' (expected proposed, dpca, dipca_diag, ols_arx)");
}

std::vector<std::string> parameter_names(int eta, bool with_variances) {
    std::vector<std::string> names;
    if (with_variances) {
        names.push_back("sigma2_ey");
        names.push_back("sigma2_eu");
    }
    for (int i = 1; i <= eta; ++i) names.push_back("a" + std::to_string(i));
    for (int j = 0; j <= eta; ++j) names.push_back("b" + std::to_string(j));
    return names;
}

const ParameterSummary* McSummary::find(const std::string& method, const std::string& parameter) const {
    for (const auto& p : parameters)
        if (p.method == method && p.parameter == parameter) return &p;
    return nullptr;
}

McSummary run_mc(const McConfig& cfg) {
    if (cfg.replications < 1) throw InvalidArgument("run_mc: replications must be positive");
    if (cfg.methods.empty()) throw InvalidArgument("run_mc: no methods selected");
    const Scenario& sc = cfg.scenario;
    sc.model.validate();
    if (!is_stable(sc.model.a)) throw UnstableModel("run_mc: scenario model is not stable");

    const Vector u_star = generate_prbs(sc.register_length(), sc.n, sc.prbs_seed, sc.levels);
    const Vector y_star = simulate_system(sc.model, u_star);

    const auto r_count = static_cast<std::size_t>(cfg.replications);
    std::vector<Replicate> reps(r_count);
    unsigned workers = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, r_count));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < r_count; i = next++) {
            const std::uint64_t seed = cfg.fixed_seed ? cfg.base_seed : cfg.base_seed + i;
            reps[i] = run_replicate(cfg, u_star, y_star, seed);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    McSummary out;
    out.scenario = sc.name;
    out.replications = cfg.replications;
    out.base_seed = cfg.base_seed;
    const int eta = sc.model.eta();
    const bool has_proposed =
        std::find(cfg.methods.begin(), cfg.methods.end(), Method::Proposed) != cfg.methods.end();

    int recovered = 0;
    std::vector<Vector> eig;
    std::vector<double> ref_eig;
    for (const auto& r : reps) {
        out.eta_hats.push_back(r.error.empty() ? r.eta_hat : -1);
        if (!r.error.empty()) {
            ++out.failures;
            out.failed_seeds.push_back(r.seed);
            out.failure_messages.push_back(r.error);
            continue;
        }
        if (r.eta_hat == eta) {
            ++recovered;
            if (r.eigenvalues.size() > 0) eig.push_back(r.eigenvalues);
            ref_eig.push_back(r.refinement_eigenvalue);
        }
    }
    if (out.failures == cfg.replications) throw Error("run_mc: all replicates failed");

    out.order_recovery_rate = has_proposed ? static_cast<double>(recovered) / cfg.replications
                                           : std::numeric_limits<double>::quiet_NaN();
    if (!ref_eig.empty()) {
        double dummy = 0.0;
        mean_two_sigma(ref_eig, out.refinement_eigenvalue_mean, dummy);
    } else {
        out.refinement_eigenvalue_mean = std::numeric_limits<double>::quiet_NaN();
    }

    const Estimates truth = true_values(sc);
    for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
        for (const auto& name : method_parameters(cfg.methods[k], sc)) {
            std::vector<double> xs;
            for (const auto& r : reps)
                if (r.per_method[k]) xs.push_back(r.per_method[k]->at(name));
            if (xs.empty()) continue;
            ParameterSummary p;
            p.method = method_name(cfg.methods[k]);
            p.parameter = name;
            p.true_value = truth.count(name) ? truth.at(name) : 0.0;
            p.count = static_cast<int>(xs.size());
            mean_two_sigma(xs, p.mean, p.two_sigma);
            out.parameters.push_back(p);
        }
    }

    if (!eig.empty()) {
        const Index dim = eig.front().size();
        for (Index j = 0; j < dim; ++j) {
            std::vector<double> xs;
            for (const auto& v : eig)
                if (v.size() == dim) xs.push_back(v(j));
            EigenvalueSummary e;
            e.index = static_cast<int>(j) + 1;
            mean_two_sigma(xs, e.mean, e.two_sigma);
            out.eigenvalues.push_back(e);
        }
    }
    return out;
}

std::vector<EigenvalueSummary> eigenvalue_summary(const McConfig& config) {
    McConfig c = config;
    c.methods = {Method::Proposed};
    return run_mc(c).eigenvalues;
}

}  // namespace eivarx
