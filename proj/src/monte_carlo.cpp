#include "ris_secrecy/monte_carlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "ris_secrecy/detail/parallel.hpp"
#include "ris_secrecy/errors.hpp"

namespace ris::mc {

namespace {

constexpr double kPi = std::numbers::pi;

// Running mean / second central moment; merged with Chan's pairwise update.
struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / total;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }

    EstimateWithCI estimate(std::uint64_t seed) const {
        EstimateWithCI e;
        e.value = mean;
        e.trials = n;
        e.seed = seed;
        e.std_error = n > 0 ? std::sqrt(m2 / static_cast<double>(n)) / std::sqrt(static_cast<double>(n))
                            : 0.0;
        return e;
    }
};

std::uint64_t stream_trials(const McConfig& mc, int stream) {
    const auto count = static_cast<std::uint64_t>(mc.stream_count);
    return mc.trials / count + (static_cast<std::uint64_t>(stream) < mc.trials % count ? 1 : 0);
}

// Runs `body(rng, trials, state)` once per stream on a worker pool and
// returns the per-stream states in stream order.
template <class State, class Body>
std::vector<State> run_streams(const McConfig& mc, Body&& body) {
    mc.validate();
    std::vector<State> states(static_cast<std::size_t>(mc.stream_count));
    detail::parallel_for(states.size(), mc.threads, [&](std::size_t s) {
        Rng rng(mc.seed, s);
        body(rng, stream_trials(mc, static_cast<int>(s)), states[s]);
    });
    return states;
}

Welford merged(const std::vector<Welford>& parts) {
    Welford total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

template <class Statistic>
EstimateWithCI mean_of(const SystemParams& params, const McConfig& mc, Statistic&& stat) {
    params.validate();
    auto parts = run_streams<Welford>(mc, [&](Rng& rng, std::uint64_t n, Welford& acc) {
        for (std::uint64_t i = 0; i < n; ++i) acc.add(stat(sample_trial(params, rng, mc.law)));
    });
    return merged(parts).estimate(mc.seed);
}

double pick(Quantity q, const TrialOutcome& t) {
    switch (q) {
        case Quantity::x1: return t.x1;
        case Quantity::rho_d: return t.rho_d;
        case Quantity::rho_e: return t.rho_e;
        case Quantity::gamma_d: return t.gamma_d;
        case Quantity::gamma_e: return t.gamma_e;
    }
    return 0.0;
}

double sndr(double rho, double kappa2) { return rho / (kappa2 * rho + 1.0); }

}  // namespace

void McConfig::validate() const {
    if (trials < 1000) throw invalid_parameter("trials", "must be >= 1000");
    if (stream_count < 1) throw invalid_parameter("stream_count", "must be >= 1");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x52495321u};
    engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

TrialOutcome sample_trial(const SystemParams& params, Rng& rng, ChannelLaw law) {
    const int n = params.n_elements;
    TrialOutcome t;
    if (law == ChannelLaw::physical) {
        double x1 = 0.0;
        double re = 0.0;
        double im = 0.0;
        for (int i = 0; i < n; ++i) {
            const double f_r = std::sqrt(rng.exponential());
            const double f_d = std::sqrt(rng.exponential());
            const double f_e = std::sqrt(rng.exponential());
            const double delta = kPi * (2.0 * rng.uniform() - 1.0);
            // Legitimate phases are cancelled by the RIS; only amplitudes add.
            x1 += f_r * f_d;
            re += f_r * f_e * std::cos(delta);
            im += f_r * f_e * std::sin(delta);
        }
        t.x1 = x1;
        t.x2 = std::hypot(re, im);
    } else {
        const double mean = n * kPi / 4.0;
        const double sd = std::sqrt(n * (1.0 - kPi * kPi / 16.0));
        t.x1 = std::abs(mean + sd * rng.normal());
        t.x2 = std::sqrt(n * rng.exponential());
    }

    t.rho_d = params.snr_d_linear() * t.x1 * t.x1;
    t.rho_e = params.snr_e_linear() * t.x2 * t.x2;
    t.gamma_d = sndr(t.rho_d, params.kappa2_d());
    t.gamma_e = sndr(t.rho_e, params.kappa2_e());
    assert(params.kappa2_d() == 0.0 || t.gamma_d <= 1.0 / params.kappa2_d() * (1 + 1e-12));
    assert(params.kappa2_e() == 0.0 || t.gamma_e <= 1.0 / params.kappa2_e() * (1 + 1e-12));
    const double diff = (std::log1p(t.gamma_d) - std::log1p(t.gamma_e)) / std::numbers::ln2;
    t.r_s = std::max(diff, 0.0);
    return t;
}

EstimateWithCI estimate_sop(const SystemParams& params, const McConfig& mc) {
    return mean_of(params, mc,
                   [c = params.c_th](const TrialOutcome& t) { return t.r_s < c ? 1.0 : 0.0; });
}

EstimateWithCI estimate_asc(const SystemParams& params, const McConfig& mc,
                            AscDefinition definition) {
    if (definition == AscDefinition::clipped) {
        return mean_of(params, mc, [](const TrialOutcome& t) { return t.r_s; });
    }
    return mean_of(params, mc, [](const TrialOutcome& t) {
        return (std::log1p(t.gamma_d) - std::log1p(t.gamma_e)) / std::numbers::ln2;
    });
}

MomentEstimates estimate_moments(const SystemParams& params, const McConfig& mc) {
    params.validate();
    struct Acc {
        Welford x1, x2sq;
    };
    auto parts = run_streams<Acc>(mc, [&](Rng& rng, std::uint64_t n, Acc& acc) {
        for (std::uint64_t i = 0; i < n; ++i) {
            const TrialOutcome t = sample_trial(params, rng, mc.law);
            acc.x1.add(t.x1);
            acc.x2sq.add(t.x2 * t.x2);
        }
    });
    Welford x1, x2sq;
    for (const auto& p : parts) {
        x1.merge(p.x1);
        x2sq.merge(p.x2sq);
    }

    // Second pass over the same streams: the spread of (X1 - mean)^2 gives the
    // standard error of the variance estimate.
    const double mu = x1.mean;
    auto fourth = run_streams<Welford>(mc, [&](Rng& rng, std::uint64_t n, Welford& acc) {
        for (std::uint64_t i = 0; i < n; ++i) {
            const double d = sample_trial(params, rng, mc.law).x1 - mu;
            acc.add(d * d);
        }
    });

    MomentEstimates m;
    m.mean_x1 = x1.estimate(mc.seed);
    m.mean_x2_squared = x2sq.estimate(mc.seed);
    m.var_x1 = merged(fourth).estimate(mc.seed);
    return m;
}

std::vector<double> sample_quantity(Quantity quantity, const SystemParams& params,
                                    const McConfig& mc) {
    params.validate();
    auto parts =
        run_streams<std::vector<double>>(mc, [&](Rng& rng, std::uint64_t n, std::vector<double>& out) {
            out.reserve(n);
            for (std::uint64_t i = 0; i < n; ++i) out.push_back(pick(quantity, sample_trial(params, rng, mc.law)));
        });
    std::vector<double> all;
    all.reserve(mc.trials);
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<CdfPoint> empirical_cdf(Quantity quantity, const SystemParams& params,
                                    const McConfig& mc, std::span<const double> grid) {
    const std::vector<double> samples = sample_quantity(quantity, params, mc);
    const double n = static_cast<double>(samples.size());
    std::vector<CdfPoint> out;
    if (grid.empty()) {
        out.reserve(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            // Ties collapse onto the last index so F_hat is right-continuous.
            if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
            out.push_back({samples[i], static_cast<double>(i + 1) / n});
        }
        return out;
    }
    out.reserve(grid.size());
    for (double x : grid) {
        const auto count = std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
        out.push_back({x, static_cast<double>(count) / n});
    }
    return out;
}

double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf(sorted_samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

DistortionCheck verify_distortion_model(const SystemParams& params, const McConfig& mc) {
    params.validate();
    struct Acc {
        Welford d, e;
    };
    // Complex normal with E|z|^2 = var.
    const auto cn = [](Rng& rng, double var) {
        const double s = std::sqrt(var / 2.0);
        return std::pair{s * rng.normal(), s * rng.normal()};
    };
    // |sqrt(snr) h eta_t + eta_r + n|^2 / ((kt + kr) snr |h|^2 + 1) with N0 = 1 and
    // the path-loss-scaled transmit power folded into snr.
    const auto ratio = [&](Rng& rng, double snr, double h2, double kt, double kr) {
        const auto [tr, ti] = cn(rng, kt);
        const auto [rr, ri] = cn(rng, kr * h2 * snr);
        const auto [nr, ni] = cn(rng, 1.0);
        const double amp = std::sqrt(snr * h2);
        const double re = amp * tr + rr + nr;
        const double im = amp * ti + ri + ni;
        return (re * re + im * im) / ((kt + kr) * snr * h2 + 1.0);
    };

    auto parts = run_streams<Acc>(mc, [&](Rng& rng, std::uint64_t n, Acc& acc) {
        for (std::uint64_t i = 0; i < n; ++i) {
            const TrialOutcome t = sample_trial(params, rng, mc.law);
            acc.d.add(ratio(rng, params.snr_d_linear(), t.x1 * t.x1, params.kappa2_d_t,
                            params.kappa2_d_r));
            acc.e.add(ratio(rng, params.snr_e_linear(), t.x2 * t.x2, params.kappa2_e_t,
                            params.kappa2_e_r));
        }
    });
    Welford d, e;
    for (const auto& p : parts) {
        d.merge(p.d);
        e.merge(p.e);
    }
    return {d.estimate(mc.seed), e.estimate(mc.seed)};
}

}  // namespace ris::mc
