#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "ris_secrecy/channel_model.hpp"

// Signal-level simulator of the RIS wiretap link. Trials are split over a
// fixed number of independent RNG streams; every estimate is a deterministic
// function of (seed, stream_count, trials) whatever the thread count.
namespace ris::mc {

using channel::SystemParams;

enum class ChannelLaw {
    // Rayleigh amplitudes per element, ideal phase alignment on the legitimate
    // link and uniform residual phases on the eavesdropper link.
    physical,
    // Draws X1 ~ Normal(N pi / 4, sigma^2) and X2^2 ~ Exp(mean N) directly,
    // i.e. the approximate laws the closed forms are derived from.
    approximated,
};

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int stream_count = 16;
    ChannelLaw law = ChannelLaw::physical;
    // Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    void validate() const;
};

struct EstimateWithCI {
    double value = 0.0;
    double std_error = 0.0;  // sample std / sqrt(trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct TrialOutcome {
    double x1 = 0.0;       // |sum f_R f_D|
    double x2 = 0.0;       // |sum f_R f_E e^{j delta}|
    double rho_d = 0.0;
    double rho_e = 0.0;
    double gamma_d = 0.0;  // SNDR at D
    double gamma_e = 0.0;  // SNDR at E
    double r_s = 0.0;      // max(log2((1+gamma_D)/(1+gamma_E)), 0)
};

// Portable 64-bit stream: mt19937_64 seeded through std::seed_seq with
// (seed, stream index), and hand-written transforms so the variates do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    double uniform();      // [0, 1)
    double exponential();  // mean 1
    double normal();       // standard normal (Box-Muller, no caching)

private:
    std::mt19937_64 engine_;
};

TrialOutcome sample_trial(const SystemParams& params, Rng& rng,
                          ChannelLaw law = ChannelLaw::physical);

EstimateWithCI estimate_sop(const SystemParams& params, const McConfig& mc);

enum class AscDefinition {
    rate_difference,  // E[log2(1+gamma_D)] - E[log2(1+gamma_E)]
    clipped,          // E[max(log2((1+gamma_D)/(1+gamma_E)), 0)]
};

EstimateWithCI estimate_asc(const SystemParams& params, const McConfig& mc,
                            AscDefinition definition = AscDefinition::rate_difference);

struct MomentEstimates {
    EstimateWithCI mean_x1;
    EstimateWithCI var_x1;
    EstimateWithCI mean_x2_squared;
};

MomentEstimates estimate_moments(const SystemParams& params, const McConfig& mc);

enum class Quantity { x1, rho_d, rho_e, gamma_d, gamma_e };

// All simulated values of one quantity, sorted ascending.
std::vector<double> sample_quantity(Quantity quantity, const SystemParams& params,
                                    const McConfig& mc);

struct CdfPoint {
    double x = 0.0;
    double f = 0.0;
};

// Empirical CDF of `quantity` evaluated on `grid`; an empty grid returns the
// step function at every sample.
std::vector<CdfPoint> empirical_cdf(Quantity quantity, const SystemParams& params,
                                    const McConfig& mc, std::span<const double> grid = {});

// sup |F_hat - F| over the sorted samples (two-sided Kolmogorov-Smirnov statistic).
double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf);

// Draws the transmit/receive distortion and AWGN per their complex Gaussian
// laws and estimates E[|y - sqrt(P) h x|^2 / D], D being the SNDR denominator
// (kappa2_t + kappa2_r) rho + 1. Equal to 1 iff the distortions fold into
// the SNDR as modelled.
struct DistortionCheck {
    EstimateWithCI legitimate;
    EstimateWithCI eavesdropper;
};

DistortionCheck verify_distortion_model(const SystemParams& params, const McConfig& mc);

}  // namespace ris::mc
