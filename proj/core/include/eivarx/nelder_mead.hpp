#pragma once

#include "eivarx/types.hpp"

#include <functional>

namespace eivarx {

struct NelderMeadOptions {
    int max_iter = 500;
    double x_tol = 1e-8;
    double f_tol = 1e-8;
    double initial_step = 0.5;
    Vector lower;  ///< empty = unbounded
    Vector upper;
};

struct NelderMeadResult {
    Vector x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead simplex search. Trial points are clamped into [lower, upper].
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& options = {});

}  // namespace eivarx
