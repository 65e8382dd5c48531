#pragma once

#include <vector>

#include "ris_secrecy/channel_model.hpp"

namespace ris::secrecy {

using channel::ChannelStats;
using channel::SystemParams;
using specfun::SeriesControl;

// Coefficients of the SOP integral after clearing the SNDR fractions.
struct ThetaSet {
    double gamma_th = 2.0;  // 2^{C_th}
    double vartheta = 1.0;  // gamma_th - 1
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
    double theta4 = 0.0;    // high-SNR coefficient
};

ThetaSet theta_coefficients(const SystemParams& params);

// Which closed form backs the eavesdropper ergodic rate R_E.
enum class EavesdropperRateForm {
    // Exact for the saturating SNDR gamma_E = rho_E / (kappa2_e rho_E + 1).
    saturated,
    // e^{1/lambda_E}[Ei(-1/(kappa2_e lambda_E) - 1/lambda_E) - Ei(-1/lambda_E)] / ln 2,
    // i.e. int_0^{1/kappa2_e} e^{-x/lambda_E}/(1+x) dx / ln 2, which ignores
    // the saturation inside F_{gamma_E}. Kept for comparison.
    printed,
};

struct NumericsConfig {
    int quad_order = 100;  // Gauss-Chebyshev node count Q
    SeriesControl series;
    // Probability mass discarded when an exponential tail is truncated.
    double tail_eps = 1e-12;
    // Allow the truncated numeric path for kappa2_d = 0 in the capacity.
    bool ideal_hardware_fallback = false;
    EavesdropperRateForm eavesdropper_rate = EavesdropperRateForm::saturated;
    // Sweeps add the Monte Carlo row next to every analytic sop / asc row.
    bool mc_check = false;

    void validate() const;
};

// Nodes phi_n = cos((2n-1) pi / (2Q)), n = 1..Q, and the matching weights
// (pi/Q) sqrt(1 - phi_n^2) for int_{-1}^{1} f(phi) dphi.
struct ChebyshevRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

ChebyshevRule gauss_chebyshev(int order);

struct SopResult {
    double value = 1.0;
    // True when theta3 <= 0: the target rate is unreachable even at infinite
    // SNR, so the outage is certain.
    bool saturated = false;
    // Upper end of the integration interval actually used.
    double upper_limit = 0.0;
    // Pr(rho_E > theta3/theta2), included in value: beyond that point the
    // outage is certain because gamma_D cannot exceed 1/kappa2_d.
    double beyond_pole = 0.0;
};

// Secrecy outage probability Pr(R_S < C_th): Gauss-Chebyshev quadrature of
// int_0^{theta3/theta2} f_{rho_E}(x) F_{rho_D}((theta1 x + vartheta)/(theta3 - theta2 x)) dx
// plus the certain-outage mass Pr(rho_E > theta3/theta2).
SopResult sop(const SystemParams& params, const ChannelStats& stats,
              const NumericsConfig& numerics = {});

// High-SNR approximation Pr(gamma_D / gamma_E < gamma_th), including the
// mass Pr(rho_E > 1/theta4) where that ratio is below gamma_th for sure.
// Throws unsupported_regime when theta4 <= 0.
double sop_asymptotic(const SystemParams& params, const ChannelStats& stats,
                      const NumericsConfig& numerics = {});

struct CapacityResult {
    double value = 0.0;  // r_d - r_e, bits/s/Hz
    double r_d = 0.0;
    double r_e = 0.0;
};

// E[log2(1 + gamma_D)] by Gauss-Chebyshev over [0, 1/kappa2_d].
double legitimate_rate(const SystemParams& params, const ChannelStats& stats,
                       const NumericsConfig& numerics = {});

// E[log2(1 + gamma_E)] in closed form (exponential integrals).
double eavesdropper_rate(const SystemParams& params, const ChannelStats& stats,
                         EavesdropperRateForm form = EavesdropperRateForm::saturated);

// Average secrecy capacity E[log2(1+gamma_D)] - E[log2(1+gamma_E)].
CapacityResult avg_secrecy_capacity(const SystemParams& params, const ChannelStats& stats,
                                    const NumericsConfig& numerics = {});

}  // namespace ris::secrecy
