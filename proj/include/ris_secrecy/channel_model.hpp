#pragma once

#include <optional>

#include "ris_secrecy/specfun.hpp"

namespace ris::channel {

using specfun::SeriesControl;

// Link geometry; when present the average SNRs are implied by it.
struct Geometry {
    double p_s = 1.0;   // transmit power
    double n0 = 1.0;    // noise power
    double d_sr = 1.0;  // source -> RIS (m)
    double d_rd = 1.0;  // RIS -> destination (m)
    double d_re = 1.0;  // RIS -> eavesdropper (m)
    double chi = 2.0;   // path-loss exponent

    double snr_d_db() const;
    double snr_e_db() const;
};

// One RIS wiretap scenario. Impairment levels are the squared kappas.
struct SystemParams {
    int n_elements = 5;
    double kappa2_d_t = 0.0;
    double kappa2_d_r = 0.0;
    double kappa2_e_t = 0.0;
    double kappa2_e_r = 0.0;
    double snr_d_db = 0.0;
    double snr_e_db = 0.0;
    double c_th = 1.0;
    std::optional<Geometry> geometry;

    // Builds a scenario whose average SNRs are derived from the geometry.
    static SystemParams from_geometry(int n_elements, const Geometry& geometry, double kappa2_d_t,
                                      double kappa2_d_r, double kappa2_e_t, double kappa2_e_r,
                                      double c_th);

    // Throws invalid_parameter naming the offending field.
    void validate() const;

    double kappa2_d() const { return kappa2_d_t + kappa2_d_r; }
    double kappa2_e() const { return kappa2_e_t + kappa2_e_r; }
    double snr_d_linear() const;
    double snr_e_linear() const;
};

double db_to_linear(double db);

// Variance of the CLT Gaussian for X1 = sum f_R f_D.
enum class VarianceConvention {
    clt,              // sigma^2 = N (1 - pi^2/16)
    printed_squared,  // sigma^2 = N (1 - pi^2/16)^2, kept for comparison only
};

struct ChannelStats {
    double lambda = 0.0;    // (N pi / 4)^2, squared mean of X1
    double sigma2 = 0.0;    // variance of X1
    double lambda_e = 0.0;  // mean of rho_E = gamma_E_bar * N

    // Poisson mean lambda / (2 sigma^2) of the noncentral chi-square mixture.
    double mixture_mean() const { return lambda / (2.0 * sigma2); }
};

ChannelStats derive_stats(const SystemParams& params,
                          VarianceConvention convention = VarianceConvention::clt);

enum class CdfMethod { marcum, series };

// Density of rho_D = gamma_D_bar X1^2, evaluated as the Poisson mixture of
// Gamma(k + 1/2, 2 gamma_D_bar sigma^2) densities (the ascending Bessel
// series of the noncentral chi-square law, summed term by term so the
// x^{-1/4} I_{-1/2} product is never formed). Returns +inf at x = 0.
double pdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                 const SeriesControl& ctl = {});

// CDF of rho_D. The series method keeps full relative accuracy in the
// lower tail; the Marcum method is the independent erfc route.
double cdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                 const SeriesControl& ctl = {}, CdfMethod method = CdfMethod::series);

// 1 - F_{rho_D}(x), summed over upper regularized gammas (accurate in the upper tail).
double ccdf_rho_d(double x, const ChannelStats& stats, double snr_d_linear,
                  const SeriesControl& ctl = {});

// rho_E is exponential with mean lambda_E.
double pdf_rho_e(double x, const ChannelStats& stats);
double cdf_rho_e(double x, const ChannelStats& stats);

// CDF of the legitimate SNDR gamma_D = rho_D / (kappa2_d rho_D + 1).
// Equals 1 for x >= 1 / kappa2_d (saturation) when kappa2_d > 0.
double cdf_gamma_d(double x, const SystemParams& params, const ChannelStats& stats,
                   const SeriesControl& ctl = {});

}  // namespace ris::channel
