#include "ris_secrecy/channel_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ris_secrecy/detail/poisson_mixture.hpp"
#include "ris_secrecy/errors.hpp"

namespace ris::channel {

namespace {

constexpr double kPi = std::numbers::pi;

double link_snr_db(double p_s, double n0, double d1, double d2, double chi) {
    return 10.0 * std::log10(p_s / (std::pow(d1 * d2, chi) * n0));
}

void require_nonnegative(double x, const char* fn) {
    if (!(x >= 0.0)) throw std::domain_error(std::string(fn) + ": x must be >= 0");
}

// Scale of the Gamma(k + 1/2, .) components: 2 gamma_D_bar sigma^2.
double component_scale(const ChannelStats& stats, double snr_d_linear) {
    return 2.0 * snr_d_linear * stats.sigma2;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double Geometry::snr_d_db() const { return link_snr_db(p_s, n0, d_sr, d_rd, chi); }
double Geometry::snr_e_db() const { return link_snr_db(p_s, n0, d_sr, d_re, chi); }

SystemParams SystemParams::from_geometry(int n_elements, const Geometry& geometry,
                                         double kappa2_d_t, double kappa2_d_r,
                                         double kappa2_e_t, double kappa2_e_r, double c_th) {
    SystemParams p;
    p.n_elements = n_elements;
    p.kappa2_d_t = kappa2_d_t;
    p.kappa2_d_r = kappa2_d_r;
    p.kappa2_e_t = kappa2_e_t;
    p.kappa2_e_r = kappa2_e_r;
    p.c_th = c_th;
    p.geometry = geometry;
    p.snr_d_db = geometry.snr_d_db();
    p.snr_e_db = geometry.snr_e_db();
    p.validate();
    return p;
}

void SystemParams::validate() const {
    if (n_elements < 1) throw invalid_parameter("n_elements", "must be >= 1");
    const auto check_kappa = [](double k, const char* name) {
        if (!(k >= 0.0 && k < 1.0)) throw invalid_parameter(name, "must lie in [0, 1)");
    };
    check_kappa(kappa2_d_t, "kappa2_d_t");
    check_kappa(kappa2_d_r, "kappa2_d_r");
    check_kappa(kappa2_e_t, "kappa2_e_t");
    check_kappa(kappa2_e_r, "kappa2_e_r");
    if (!std::isfinite(snr_d_db)) throw invalid_parameter("snr_d_db", "must be finite");
    if (!std::isfinite(snr_e_db)) throw invalid_parameter("snr_e_db", "must be finite");
    if (!(c_th > 0.0) || !std::isfinite(c_th)) throw invalid_parameter("c_th", "must be > 0");

    if (geometry) {
        const Geometry& g = *geometry;
        if (!(g.p_s > 0.0)) throw invalid_parameter("geometry.p_s", "must be > 0");
        if (!(g.n0 > 0.0)) throw invalid_parameter("geometry.n0", "must be > 0");
        if (!(g.d_sr > 0.0)) throw invalid_parameter("geometry.d_sr", "must be > 0");
        if (!(g.d_rd > 0.0)) throw invalid_parameter("geometry.d_rd", "must be > 0");
        if (!(g.d_re > 0.0)) throw invalid_parameter("geometry.d_re", "must be > 0");
        if (!(g.chi > 0.0)) throw invalid_parameter("geometry.chi", "must be > 0");
        constexpr double tol_db = 1e-9;
        if (std::abs(snr_d_db - g.snr_d_db()) > tol_db) {
            throw invalid_parameter("snr_d_db", "inconsistent with geometry");
        }
        if (std::abs(snr_e_db - g.snr_e_db()) > tol_db) {
            throw invalid_parameter("snr_e_db", "inconsistent with geometry");
        }
    }
}

double SystemParams::snr_d_linear() const { return db_to_linear(snr_d_db); }
double SystemParams::snr_e_linear() const { return db_to_linear(snr_e_db); }

ChannelStats derive_stats(const SystemParams& params, VarianceConvention convention) {
    params.validate();
    const double n = params.n_elements;
    const double mean = n * kPi / 4.0;
    const double per_element_var = 1.0 - kPi * kPi / 16.0;

    ChannelStats s;
    s.lambda = mean * mean;
    s.sigma2 = convention == VarianceConvention::clt ? n * per_element_var
                                                     : n * per_element_var * per_element_var;
    s.lambda_e = params.snr_e_linear() * n;
    return s;
}

double pdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                 const SeriesControl& ctl) {
    require_nonnegative(x, "pdf_rho_d");
    ctl.validate();
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(x)) return 0.0;

    const double theta = component_scale(stats, snr_d_linear);
    const double log_x = std::log(x);
    const double log_theta = std::log(theta);
    return detail::poisson_mixture(
        stats.mixture_mean(), ctl,
        [&](int k) {
            const double a = k + 0.5;
            return std::exp((a - 1.0) * log_x - x / theta - std::lgamma(a) - a * log_theta);
        },
        "pdf_rho_d");
}

double cdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                 const SeriesControl& ctl, CdfMethod method) {
    require_nonnegative(x, "cdf_rho_d");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;

    if (method == CdfMethod::marcum) {
        const double a = std::sqrt(stats.lambda / stats.sigma2);
        const double b = std::sqrt(x / (snr_d_linear * stats.sigma2));
        return 1.0 - specfun::marcum_q_half(a, b);
    }

    ctl.validate();
    const double y = x / component_scale(stats, snr_d_linear);
    return detail::poisson_mixture(
        stats.mixture_mean(), ctl, [&](int k) { return specfun::gamma_p(k + 0.5, y); },
        "cdf_rho_d");
}

double ccdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                  const SeriesControl& ctl) {
    require_nonnegative(x, "ccdf_rho_d");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    ctl.validate();
    const double y = x / component_scale(stats, snr_d_linear);
    return detail::poisson_mixture(
        stats.mixture_mean(), ctl, [&](int k) { return specfun::gamma_q(k + 0.5, y); },
        "ccdf_rho_d");
}

double pdf_rho_e(double x, const ChannelStats& stats) {
    require_nonnegative(x, "pdf_rho_e");
    return std::exp(-x / stats.lambda_e) / stats.lambda_e;
}

double cdf_rho_e(double x, const ChannelStats& stats) {
    require_nonnegative(x, "cdf_rho_e");
    return -std::expm1(-x / stats.lambda_e);
}

double cdf_gamma_d(double x, const SystemParams& params, const ChannelStats& stats,
                   const SeriesControl& ctl) {
    require_nonnegative(x, "cdf_gamma_d");
    const double kappa2 = params.kappa2_d();
    if (kappa2 > 0.0 && (x >= 1.0 / kappa2 || x * kappa2 >= 1.0)) return 1.0;
    // gamma_D <= x  <=>  rho_D <= x / (1 - kappa2 x)
    return cdf_rho_d(x / (1.0 - kappa2 * x), stats, params.snr_d_linear(), ctl);
}

}  // namespace ris::channel
