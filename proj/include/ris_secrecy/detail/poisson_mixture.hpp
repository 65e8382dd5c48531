#pragma once

#include <cmath>
#include <string>

#include "ris_secrecy/errors.hpp"
#include "ris_secrecy/specfun.hpp"

namespace ris::detail {

// Sums sum_k Pois(k; mu) * factor(k) for the noncentral chi-square series.
//
// Terms are accepted until k has passed the Poisson mode, the terms are
// decreasing, and the current term is below rel_tol times the partial sum.
// Weights are formed in log space so large mu does not underflow e^{-mu}.
template <class Factor>
double poisson_mixture(double mu, const specfun::SeriesControl& ctl, Factor&& factor,
                       const char* what) {
    const double log_mu = std::log(mu);
    double sum = 0.0;
    double prev = 0.0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const double log_w = -mu + k * log_mu - std::lgamma(k + 1.0);
        const double term = std::exp(log_w) * factor(k);
        sum += term;
        if (k > mu && term <= prev) {
            if (term <= ctl.rel_tol * std::abs(sum)) return sum;
            if (log_w < -745.0) return sum;
        }
        prev = term;
    }
    throw convergence_error(std::string(what) + ": series did not reach rel_tol", ctl.max_terms);
}

}  // namespace ris::detail
