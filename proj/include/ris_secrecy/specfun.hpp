#pragma once

// Special functions needed by the RIS secrecy closed forms: incomplete gamma,
// modified Bessel I (ascending series), Marcum Q of order 1/2 and the
// exponential integral. Everything here is a pure function of its arguments.

namespace ris::specfun {

// Truncation control for every infinite sum in the library.
struct SeriesControl {
    int max_terms = 200;
    double rel_tol = 1e-12;

    // Throws invalid_parameter unless max_terms >= 1 and rel_tol in (0, 1e-3].
    void validate() const;
};

// Lower incomplete gamma gamma(s, x) = int_0^x t^{s-1} e^{-t} dt.
// Throws std::domain_error for s <= 0 or x < 0.
double lower_inc_gamma(double s, double x);

// Upper incomplete gamma Gamma(s, x) = Gamma(s) - gamma(s, x).
double upper_inc_gamma(double s, double x);

// Regularized forms P(s,x) = gamma(s,x)/Gamma(s) and Q(s,x) = 1 - P(s,x).
// The closed forms use these so the Poisson-mixture weights stay O(1).
// P is computed with full relative accuracy for x < s + 1 (series) and Q for
// x >= s + 1 (continued fraction); the other one comes from additivity.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

/// Modified Bessel function of the first kind via its ascending series
///   I_nu(z) = sum_k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)).
///
/// Requires nu > -1 and z >= 0. For nu < 0 the k = 0 term behaves like
/// z^nu, so I_{-1/2}(z) diverges as sqrt(2/(pi z)) when z -> 0+ and the
/// function returns +inf at z = 0. The noncentral chi-square density of the
/// legitimate channel only ever needs the product x^{-1/4} I_{-1/2}(c sqrt(x)),
/// which is finite at x = 0; channel_model evaluates that product term by
/// term instead of calling this function.
///
/// Throws std::domain_error for z < 0 or nu <= -1, convergence_error when
/// the series does not reach ctl.rel_tol within ctl.max_terms terms.
double bessel_i(double nu, double z, const SeriesControl& ctl = {});

// Q_{1/2}(a, b) = (erfc((b-a)/sqrt2) + erfc((b+a)/sqrt2)) / 2.
double marcum_q_half(double a, double b);

// E1(t) = int_t^inf e^{-u}/u du for t > 0.
double exp_integral_e1(double t);

// e^t E1(t), finite for all t > 0 (no overflow for large t).
double scaled_exp_integral_e1(double t);

// Ei(x) = -E1(-x) for x < 0. Throws std::domain_error for x >= 0.
double exp_integral_ei(double x);

}  // namespace ris::specfun
