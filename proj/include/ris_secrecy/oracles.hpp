#pragma once

#include <functional>

#include "ris_secrecy/channel_model.hpp"

// Reference evaluations built on Boost.Math (adaptive Gauss-Kronrod and the
// noncentral chi-square distribution). They share no numerics with the
// closed forms and exist only to check them.
namespace ris::oracle {

using channel::SystemParams;

// F_{rho_D}(x) from boost::math::non_central_chi_squared with one degree of
// freedom: rho_D / (gamma_D_bar sigma^2) ~ chi'^2_1(lambda / sigma^2).
double cdf_rho_d(double x, const SystemParams& params);
double ccdf_rho_d(double x, const SystemParams& params);

// Adaptive 61-point Gauss-Kronrod over [a, b]; b may be +inf.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

// Pr(R_S < C_th) = int_0^inf f_{rho_E}(x) F_{rho_D}((theta1 x + vartheta)/(theta3 - theta2 x)) dx,
// with F_{rho_D} = 1 past the pole x = theta3/theta2. Returns 1 when theta3 <= 0.
double sop(const SystemParams& params);

// int_0^inf f_{rho_E}(x) F_{rho_D}(gamma_th x / (1 - theta4 x)) dx with F = 1 past
// x = 1/theta4; requires theta4 > 0.
double sop_asymptotic(const SystemParams& params);

// E[log2(1+gamma_D)] = (1/ln2) int_0^{1/kappa2_d} (1 - F_{gamma_D}(x)) / (1 + x) dx.
double legitimate_rate(const SystemParams& params);

// E[log2(1+gamma_E)] = (1/ln2) int_0^{1/kappa2_e} (1 - F_{gamma_E}(x)) / (1 + x) dx
// with the saturating SNDR.
double eavesdropper_rate(const SystemParams& params);

// (1/ln2) int_0^{1/kappa2_e} e^{-x/lambda_E} / (1 + x) dx, saturation ignored.
double eavesdropper_rate_unsaturated(double lambda_e, double kappa2_e);

}  // namespace ris::oracle
