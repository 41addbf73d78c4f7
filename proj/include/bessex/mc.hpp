#pragma once

// Langevin Monte Carlo oracle: Euler-Maruyama paths with regularized drift,
// rejection on the first-return window, counter-based per-attempt RNG
// streams so results are independent of the worker count.

#include <cstdint>
#include <vector>

#include "bessex/distribution.hpp"
#include "bessex/params.hpp"

namespace bessex::mc {

struct McConfig {
    ExcursionParams params;
    double dt = 0.0;             // step; default 1e-4 * T when 0
    double x_start = 0.0;        // launch height; default 0.02 * sqrt(D T)
    double x0_reg = 0.0;         // drift regularization; default x_start / 4
    double return_window = 0.05; // delta: accept first return in [T(1-d), T]
    long n_target = 100000;
    std::uint64_t seed = 1;
    int threads = 0;
    double max_wall_s = 0.0;  // 0 = unlimited; otherwise stop issuing
                              // attempts at the deadline and return the
                              // accepted prefix, flagged truncated

    void fill_defaults();
    void validate() const;
};

struct McEnsemble {
    std::vector<double> areas;      // physical units, sorted ascending
    std::vector<double> durations;  // paired with areas
    double acceptance_rate = 0.0;
    long attempts = 0;
    std::uint64_t seed = 0;
    bool truncated = false;  // wall budget hit before n_target
    McConfig config;
};

McEnsemble sample_excursions(const McConfig& config);

struct McReport {
    long n = 0;
    double ks_stat = 0.0;
    double ks_critical_1pct = 0.0;
    bool ks_pass = false;
    double mean_a_hat = 0.0;  // duration-scaled areas A / sqrt(D) t^{3/2}
    double m2_a_hat = 0.0;
    double model_m1 = 0.0;    // in the same scaled units
    double model_m2 = 0.0;
    double z_m1 = 0.0;
    double z_m2 = 0.0;
};

// scaled per-sample areas of an ensemble
std::vector<double> scaled_areas(const McEnsemble& ensemble);

McReport mc_vs_analytic(const McEnsemble& ensemble, const dist::DistributionTable& table);

// one-sample KS statistic of sorted data against a CDF
double ks_statistic(const std::vector<double>& sorted_data, const dist::Cdf& cdf);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

double ks_critical_1pct(long n);                 // one-sample
double ks_two_sample_critical_1pct(long n, long m);

}  // namespace bessex::mc
