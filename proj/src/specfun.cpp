#include "ris_secrecy/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ris_secrecy/errors.hpp"

namespace ris::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

void require_gamma_domain(double s, double x, const char* fn) {
    if (!(s > 0.0)) throw std::domain_error(std::string(fn) + ": s must be > 0");
    if (!(x >= 0.0)) throw std::domain_error(std::string(fn) + ": x must be >= 0");
}

// P(s, x) by the ascending series; accurate for x < s + 1.
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
        }
    }
    throw convergence_error("gamma_p: series did not converge", kMaxIter);
}

// Q(s, x) by the Legendre continued fraction (modified Lentz); x >= s + 1.
double gamma_q_cf(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return std::exp(s * std::log(x) - x - std::lgamma(s)) * h;
        }
    }
    throw convergence_error("gamma_q: continued fraction did not converge", kMaxIter);
}

// Continued fraction for e^t E1(t), t > 1.
double scaled_e1_cf(double t) {
    double b = t + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw convergence_error("exp_integral_e1: continued fraction did not converge", kMaxIter);
}

// E1(t) = -gamma - ln t - sum_{k>=1} (-t)^k / (k k!), 0 < t <= 1.
double e1_series(double t) {
    double sum = 0.0;
    double fact = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
        fact *= -t / k;
        const double del = fact / k;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return -std::numbers::egamma - std::log(t) - sum;
        }
    }
    throw convergence_error("exp_integral_e1: series did not converge", kMaxIter);
}

}  // namespace

void SeriesControl::validate() const {
    if (max_terms < 1) throw invalid_parameter("max_terms", "must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) {
        throw invalid_parameter("rel_tol", "must lie in (0, 1e-3]");
    }
}

double gamma_p(double s, double x) {
    require_gamma_domain(s, x, "gamma_p");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return gamma_p_series(s, x);
    return 1.0 - gamma_q_cf(s, x);
}

double gamma_q(double s, double x) {
    require_gamma_domain(s, x, "gamma_q");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_cf(s, x);
}

double lower_inc_gamma(double s, double x) {
    require_gamma_domain(s, x, "lower_inc_gamma");
    return std::tgamma(s) * gamma_p(s, x);
}

double upper_inc_gamma(double s, double x) {
    require_gamma_domain(s, x, "upper_inc_gamma");
    return std::tgamma(s) * gamma_q(s, x);
}

double bessel_i(double nu, double z, const SeriesControl& ctl) {
    if (!(nu > -1.0)) throw std::domain_error("bessel_i: nu must be > -1");
    if (!(z >= 0.0)) throw std::domain_error("bessel_i: z must be >= 0");
    ctl.validate();
    if (z == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }

    const double half = 0.5 * z;
    const double q = half * half;
    double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 0; k + 1 < ctl.max_terms; ++k) {
        const double ratio = q / ((k + 1.0) * (k + 1.0 + nu));
        term *= ratio;
        sum += term;
        // Terms grow until the ratio drops below one; only stop on the way down.
        if (ratio < 1.0 && term < ctl.rel_tol * sum) return sum;
    }
    throw convergence_error("bessel_i: series did not reach rel_tol", ctl.max_terms);
}

double marcum_q_half(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::domain_error("marcum_q_half: arguments must be >= 0");
    }
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return 0.5 * (std::erfc((b - a) * inv_sqrt2) + std::erfc((b + a) * inv_sqrt2));
}

double exp_integral_e1(double t) {
    if (!(t > 0.0)) throw std::domain_error("exp_integral_e1: t must be > 0");
    if (std::isinf(t)) return 0.0;
    if (t <= 1.0) return e1_series(t);
    return std::exp(-t) * scaled_e1_cf(t);
}

double scaled_exp_integral_e1(double t) {
    if (!(t > 0.0)) throw std::domain_error("scaled_exp_integral_e1: t must be > 0");
    if (std::isinf(t)) return 0.0;
    if (t <= 1.0) return std::exp(t) * e1_series(t);
    return scaled_e1_cf(t);
}

double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw std::domain_error("exp_integral_ei: x must be < 0");
    return -exp_integral_e1(-x);
}

}  // namespace ris::specfun
