#include "eivarx/order_select.hpp"

#include "eivarx/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eivarx {

int equality_dof(int q) { return (q - 1) * (q + 2) / 2; }

double chi2_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0) || !(dof > 0.0))
        throw InvalidArgument("chi2_quantile: need 0 < p < 1 and dof > 0");
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), p);
}

EigenEqualityTest equality_test(const Vector& eigenvalues, int d_guess, Index row_count,
                                double alpha) {
    if (d_guess < 2 || d_guess > eigenvalues.size())
        throw InvalidArgument("equality_test: d_guess = " + std::to_string(d_guess) +
                              " outside [2, " + std::to_string(eigenvalues.size()) + "]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("equality_test: alpha outside (0, 1)");

    Vector sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    const Vector tail = sorted.head(d_guess);
    if (!(tail.minCoeff() > 0.0))
        throw InvalidArgument("equality_test: non-positive eigenvalue in the tested tail");

    EigenEqualityTest t;
    t.d_guess = d_guess;
    t.alpha = alpha;
    t.dof = equality_dof(d_guess);
    const double q = d_guess;
    const double stat = static_cast<double>(row_count) *
                        (q * std::log(tail.mean()) - tail.array().log().sum());
    t.statistic = std::max(stat, 0.0);
    t.critical_value = chi2_quantile(1.0 - alpha, t.dof);
    t.reject = t.statistic > t.critical_value;
    return t;
}

OrderSelection select_order(const CandidateEvaluator& evaluate, int lag, Index row_count,
                            double alpha) {
    if (lag < 1) throw InvalidArgument("select_order: lag must be at least 1");
    OrderSelection sel;
    for (int d = lag; d >= 2; --d) {
        EigenEqualityTest test;
        try {
            const CandidateFit fit = evaluate(d);
            sel.eigenvalue_trail.push_back({d, fit.eigenvalues});
            if (fit.degenerate) {
                test.d_guess = d;
                test.alpha = alpha;
                test.dof = equality_dof(d);
                test.critical_value = chi2_quantile(1.0 - alpha, test.dof);
                test.statistic = 0.0;
                test.reject = false;
            } else {
                test = equality_test(fit.eigenvalues, d, row_count, alpha);
            }
        } catch (const Error&) {
            test.d_guess = d;
            test.alpha = alpha;
            test.dof = equality_dof(d);
            test.critical_value = chi2_quantile(1.0 - alpha, test.dof);
            test.statistic = std::numeric_limits<double>::quiet_NaN();
            test.reject = true;
            test.structural_failure = true;
        }
        sel.tests.push_back(test);
        if (!test.reject) {
            sel.d_hat = d;
            sel.eta_hat = lag - d + 1;
            return sel;
        }
    }
    throw NoStructureFound("no constraint structure found: every d_guess in [2, " +
                           std::to_string(lag) + "] was rejected");
}

}  // namespace eivarx
