#include "ris_secrecy/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ris::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Law {
    double scale;  // gamma_D_bar sigma^2
    boost::math::non_central_chi_squared_distribution<double> chi;
    double lambda_e;
};

// Distribution parameters written out directly from the CLT moments so the
// oracle does not go through channel::derive_stats.
Law law_of(const SystemParams& p) {
    const double n = p.n_elements;
    const double mean = n * std::numbers::pi / 4.0;
    const double var = n * (1.0 - std::numbers::pi * std::numbers::pi / 16.0);
    return {p.snr_d_linear() * var,
            boost::math::non_central_chi_squared_distribution<double>(1.0, mean * mean / var),
            p.snr_e_linear() * n};
}

double cdf(const Law& l, double x) {
    if (x <= 0.0) return 0.0;
    if (!std::isfinite(x)) return 1.0;
    return boost::math::cdf(l.chi, x / l.scale);
}

double ccdf(const Law& l, double x) {
    if (x <= 0.0) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    return boost::math::cdf(boost::math::complement(l.chi, x / l.scale));
}

}  // namespace

double cdf_rho_d(double x, const SystemParams& params) { return cdf(law_of(params), x); }

double ccdf_rho_d(double x, const SystemParams& params) { return ccdf(law_of(params), x); }

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

double sop(const SystemParams& params) {
    const Law l = law_of(params);
    const double kd = params.kappa2_d();
    const double ke = params.kappa2_e();
    const double g = std::exp2(params.c_th);
    const double v = g - 1.0;
    const double t1 = v * ke + g;
    const double t2 = v * ke * kd + g * kd - ke;
    const double t3 = 1.0 - v * kd;
    if (t3 <= 0.0) return 1.0;
    const double upper = t2 > 0.0 ? t3 / t2 : kInf;
    const auto f = [&](double x) {
        const double den = t3 - t2 * x;
        const double arg = den > 0.0 ? (t1 * x + v) / den : kInf;
        return std::exp(-x / l.lambda_e) / l.lambda_e * cdf(l, arg);
    };
    // Split at the pole so the kink there does not stall the adaptive rule.
    return std::isinf(upper) ? integrate(f, 0.0, upper)
                             : integrate(f, 0.0, upper) + integrate(f, upper, kInf);
}

double sop_asymptotic(const SystemParams& params) {
    const Law l = law_of(params);
    const double g = std::exp2(params.c_th);
    const double t4 = g * params.kappa2_d() - params.kappa2_e();
    const auto f = [&](double x) {
        const double den = 1.0 - t4 * x;
        const double arg = den > 0.0 ? g * x / den : kInf;
        return std::exp(-x / l.lambda_e) / l.lambda_e * cdf(l, arg);
    };
    return integrate(f, 0.0, 1.0 / t4) + integrate(f, 1.0 / t4, kInf);
}

double legitimate_rate(const SystemParams& params) {
    const Law l = law_of(params);
    const double k = params.kappa2_d();
    const auto f = [&](double x) {
        const double den = 1.0 - k * x;
        return den > 0.0 ? ccdf(l, x / den) / (1.0 + x) : 0.0;
    };
    return integrate(f, 0.0, k > 0.0 ? 1.0 / k : kInf) / std::numbers::ln2;
}

double eavesdropper_rate(const SystemParams& params) {
    const double lambda_e = params.snr_e_linear() * params.n_elements;
    const double k = params.kappa2_e();
    const auto f = [&](double x) {
        const double den = 1.0 - k * x;
        return den > 0.0 ? std::exp(-x / den / lambda_e) / (1.0 + x) : 0.0;
    };
    return integrate(f, 0.0, k > 0.0 ? 1.0 / k : kInf) / std::numbers::ln2;
}

double eavesdropper_rate_unsaturated(double lambda_e, double kappa2_e) {
    const auto f = [&](double x) { return std::exp(-x / lambda_e) / (1.0 + x); };
    return integrate(f, 0.0, kappa2_e > 0.0 ? 1.0 / kappa2_e : kInf) / std::numbers::ln2;
}

}  // namespace ris::oracle
