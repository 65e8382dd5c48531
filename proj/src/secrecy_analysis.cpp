#include "ris_secrecy/secrecy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ris_secrecy/detail/poisson_mixture.hpp"
#include "ris_secrecy/errors.hpp"

namespace ris::secrecy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
// Below this theta2 the pole theta3/theta2 is treated as being at infinity.
constexpr double kThetaFloor = 1e-12;

// Where the exponential rho_E density has shed all but eps of its mass.
double exponential_tail_point(double mean, double eps) { return mean * std::log(1.0 / eps); }

// Point beyond which Pr(rho_D > y) < eps under the Gaussian X1 law.
double rho_d_tail_point(const ChannelStats& stats, double snr_d_linear, double eps) {
    const double z = std::sqrt(2.0 * std::log(1.0 / eps));
    const double x1 = std::sqrt(stats.lambda) + z * std::sqrt(stats.sigma2);
    return snr_d_linear * x1 * x1;
}

// int_0^upper f(x) dx with the nodes mapped by x = upper (1 + phi) / 2.
template <class F>
double integrate_on(double upper, const ChebyshevRule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        sum += rule.weights[n] * f(0.5 * upper * (1.0 + rule.nodes[n]));
    }
    return 0.5 * upper * sum;
}

// F_{rho_D}(c * y) summed over lower regularized gammas; y in units of
// the component scale 2 gamma_D_bar sigma^2.
double mixture_cdf(double mu, double y, const SeriesControl& ctl) {
    if (y <= 0.0) return 0.0;
    if (std::isinf(y)) return 1.0;
    return detail::poisson_mixture(
        mu, ctl, [&](int k) { return specfun::gamma_p(k + 0.5, y); }, "sop");
}

double mixture_ccdf(double mu, double y, const SeriesControl& ctl) {
    if (y <= 0.0) return 1.0;
    if (std::isinf(y)) return 0.0;
    return detail::poisson_mixture(
        mu, ctl, [&](int k) { return specfun::gamma_q(k + 0.5, y); }, "legitimate_rate");
}

}  // namespace

void NumericsConfig::validate() const {
    if (quad_order < 2) throw invalid_parameter("quad_order", "must be >= 2");
    series.validate();
    if (!(tail_eps > 0.0 && tail_eps <= 1e-3)) {
        throw invalid_parameter("tail_eps", "must lie in (0, 1e-3]");
    }
}

ThetaSet theta_coefficients(const SystemParams& params) {
    const double kd = params.kappa2_d();
    const double ke = params.kappa2_e();
    ThetaSet t;
    t.gamma_th = std::exp2(params.c_th);
    t.vartheta = t.gamma_th - 1.0;
    t.theta1 = t.vartheta * ke + t.gamma_th;
    t.theta2 = t.vartheta * ke * kd + t.gamma_th * kd - ke;
    t.theta3 = 1.0 - t.vartheta * kd;
    t.theta4 = t.gamma_th * kd - ke;
    return t;
}

ChebyshevRule gauss_chebyshev(int order) {
    if (order < 1) throw invalid_parameter("quad_order", "must be >= 1");
    ChebyshevRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int n = 1; n <= order; ++n) {
        const double angle = (2.0 * n - 1.0) * kPi / (2.0 * order);
        rule.nodes[n - 1] = std::cos(angle);
        // sqrt(1 - cos^2) = sin, which avoids cancellation next to phi = +-1.
        rule.weights[n - 1] = kPi / order * std::sin(angle);
    }
    return rule;
}

SopResult sop(const SystemParams& params, const ChannelStats& stats,
              const NumericsConfig& numerics) {
    params.validate();
    numerics.validate();
    const ThetaSet th = theta_coefficients(params);

    SopResult result;
    if (th.theta3 <= 0.0) {
        result.saturated = true;
        result.value = 1.0;
        return result;
    }

    const double tail = exponential_tail_point(stats.lambda_e, numerics.tail_eps);
    const bool has_pole = th.theta2 > kThetaFloor && th.theta3 / th.theta2 < tail;
    const double upper = has_pole ? th.theta3 / th.theta2 : tail;
    const double scale = 2.0 * params.snr_d_linear() * stats.sigma2;
    const double mu = stats.mixture_mean();
    const ChebyshevRule rule = gauss_chebyshev(numerics.quad_order);

    const double integral = integrate_on(upper, rule, [&](double x) {
        const double den = th.theta3 - th.theta2 * x;
        const double threshold =
            den > 0.0 ? (th.theta1 * x + th.vartheta) / (den * scale)
                      : std::numeric_limits<double>::infinity();
        return std::exp(-x / stats.lambda_e) / stats.lambda_e *
               mixture_cdf(mu, threshold, numerics.series);
    });

    // Past the pole gamma_E alone pushes the required gamma_D above its
    // saturation level 1/kappa2_d, so the outage there is certain.
    result.beyond_pole = has_pole ? std::exp(-upper / stats.lambda_e) : 0.0;
    result.value = std::clamp(integral + result.beyond_pole, 0.0, 1.0);
    result.upper_limit = upper;
    return result;
}

double sop_asymptotic(const SystemParams& params, const ChannelStats& stats,
                      const NumericsConfig& numerics) {
    params.validate();
    numerics.validate();
    const ThetaSet th = theta_coefficients(params);
    if (!(th.theta4 > 0.0)) {
        throw unsupported_regime("sop_asymptotic: requires theta4 > 0 (finite integration limit)");
    }

    const double tail = exponential_tail_point(stats.lambda_e, numerics.tail_eps);
    const bool has_pole = 1.0 / th.theta4 < tail;
    const double upper = has_pole ? 1.0 / th.theta4 : tail;
    const double scale = 2.0 * params.snr_d_linear() * stats.sigma2;
    const double mu = stats.mixture_mean();
    const ChebyshevRule rule = gauss_chebyshev(numerics.quad_order);

    const double integral = integrate_on(upper, rule, [&](double x) {
        const double den = 1.0 - th.theta4 * x;
        const double threshold = den > 0.0 ? th.gamma_th * x / (den * scale)
                                           : std::numeric_limits<double>::infinity();
        return std::exp(-x / stats.lambda_e) / stats.lambda_e *
               mixture_cdf(mu, threshold, numerics.series);
    });
    const double beyond_pole = has_pole ? std::exp(-upper / stats.lambda_e) : 0.0;
    return std::clamp(integral + beyond_pole, 0.0, 1.0);
}

double legitimate_rate(const SystemParams& params, const ChannelStats& stats,
                       const NumericsConfig& numerics) {
    params.validate();
    numerics.validate();
    const double kd = params.kappa2_d();
    const double snr = params.snr_d_linear();
    const double scale = 2.0 * snr * stats.sigma2;
    const double mu = stats.mixture_mean();
    const double y_tail = rho_d_tail_point(stats, snr, numerics.tail_eps);
    const ChebyshevRule rule = gauss_chebyshev(numerics.quad_order);

    if (kd > 0.0) {
        // gamma_D = x  <=>  rho_D = x / (1 - kd x); beyond y_tail the survival is < eps.
        const double upper = std::min(1.0 / kd, y_tail / (1.0 + kd * y_tail));
        const double integral = integrate_on(upper, rule, [&](double x) {
            const double den = 1.0 - kd * x;
            const double y = den > 0.0 ? x / (den * scale) : std::numeric_limits<double>::infinity();
            return mixture_ccdf(mu, y, numerics.series) / (1.0 + x);
        });
        return integral / kLn2;
    }

    if (!numerics.ideal_hardware_fallback) {
        throw unsupported_regime(
            "legitimate_rate: kappa2_d = 0 has no finite limit; enable ideal_hardware_fallback");
    }
    // u = ln(1 + x) turns dx / (1 + x) into du and shrinks [0, y_tail] to
    // [0, ln(1 + y_tail)], which keeps the endpoint error of the rule small.
    const double integral = integrate_on(std::log1p(y_tail), rule, [&](double u) {
        return mixture_ccdf(mu, std::expm1(u) / scale, numerics.series);
    });
    return integral / kLn2;
}

double eavesdropper_rate(const SystemParams& params, const ChannelStats& stats,
                         EavesdropperRateForm form) {
    params.validate();
    const double ke = params.kappa2_e();
    const double le = stats.lambda_e;
    using specfun::scaled_exp_integral_e1;

    // Unbounded gamma_E: int_0^inf e^{-x/lambda_E}/(1+x) dx = e^{1/lambda_E} E1(1/lambda_E).
    if (ke == 0.0) return scaled_exp_integral_e1(1.0 / le) / kLn2;

    if (form == EavesdropperRateForm::printed) {
        const double a = 1.0 / le;
        const double b = 1.0 / (ke * le);
        return (scaled_exp_integral_e1(a) - std::exp(-b) * scaled_exp_integral_e1(a + b)) / kLn2;
    }

    // With y = x / (1 - ke x) the integral becomes
    // int_0^inf e^{-y/lambda_E} / ((1 + ke y)(1 + (1 + ke) y)) dy; partial fractions
    // leave two e^{c} E1(c) terms.
    const double a = 1.0 / ((1.0 + ke) * le);
    const double b = 1.0 / (ke * le);
    return (scaled_exp_integral_e1(a) - scaled_exp_integral_e1(b)) / kLn2;
}

CapacityResult avg_secrecy_capacity(const SystemParams& params, const ChannelStats& stats,
                                    const NumericsConfig& numerics) {
    CapacityResult r;
    r.r_d = legitimate_rate(params, stats, numerics);
    r.r_e = eavesdropper_rate(params, stats, numerics.eavesdropper_rate);
    r.value = r.r_d - r.r_e;
    return r;
}

}  // namespace ris::secrecy
