#include "eivarx/nelder_mead.hpp"

#include "eivarx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace eivarx {

namespace {

struct Vertex {
    Vector x;
    double f;
};

double safe(double f) { return std::isnan(f) ? std::numeric_limits<double>::infinity() : f; }

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& options) {
    const Index n = x0.size();
    if (n == 0) throw InvalidArgument("nelder_mead: empty start point");
    const bool bounded = options.lower.size() == n && options.upper.size() == n;

    auto clamp = [&](Vector x) {
        if (bounded) x = x.cwiseMax(options.lower).cwiseMin(options.upper);
        return x;
    };
    auto eval = [&](const Vector& x) { return safe(f(x)); };

    std::vector<Vertex> simplex;
    simplex.reserve(static_cast<std::size_t>(n) + 1);
    const Vector start = clamp(x0);
    simplex.push_back({start, eval(start)});
    for (Index i = 0; i < n; ++i) {
        Vector x = start;
        x(i) += options.initial_step;
        x = clamp(x);
        // A step swallowed by the bound would collapse the simplex.
        if (x(i) == start(i)) x(i) -= options.initial_step;
        x = clamp(x);
        simplex.push_back({x, eval(x)});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    NelderMeadResult result;
    int it = 0;
    for (; it < options.max_iter; ++it) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);

        double x_spread = 0.0;
        for (std::size_t k = 1; k < simplex.size(); ++k)
            x_spread = std::max(x_spread, (simplex[k].x - simplex[0].x).cwiseAbs().maxCoeff());
        const double f_spread = std::abs(simplex.back().f - simplex.front().f);
        if (x_spread <= options.x_tol && f_spread <= options.f_tol) {
            result.converged = true;
            break;
        }

        Vector centroid = Vector::Zero(n);
        for (Index k = 0; k < n; ++k) centroid += simplex[static_cast<std::size_t>(k)].x;
        centroid /= static_cast<double>(n);

        Vertex& worst = simplex.back();
        const Vector xr = clamp(centroid + (centroid - worst.x));
        const double fr = eval(xr);

        if (fr < simplex.front().f) {
            const Vector xe = clamp(centroid + 2.0 * (centroid - worst.x));
            const double fe = eval(xe);
            worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr < simplex[simplex.size() - 2].f) {
            worst = {xr, fr};
            continue;
        }
        const bool outside = fr < worst.f;
        const Vector xc = outside ? clamp(centroid + 0.5 * (xr - centroid))
                                  : clamp(centroid + 0.5 * (worst.x - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : worst.f)) {
            worst = {xc, fc};
            continue;
        }
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            simplex[k].x = clamp(simplex[0].x + 0.5 * (simplex[k].x - simplex[0].x));
            simplex[k].f = eval(simplex[k].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    result.x = simplex.front().x;
    result.f = simplex.front().f;
    result.iterations = it;
    return result;
}

}  // namespace eivarx
