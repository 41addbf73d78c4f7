#include "bessex/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numeric>
#include <thread>

#include "bessex/moments.hpp"

namespace bessex::mc {
namespace {

// ---------------------------------------------------------------------------
// Philox4x32-10

struct PhiloxStream {
    std::uint32_t key0, key1;
    std::uint32_t ctr1, ctr2;  // attempt id
    std::uint32_t block = 0;

    PhiloxStream(std::uint64_t seed, std::uint64_t attempt)
        : key0(static_cast<std::uint32_t>(seed)),
          key1(static_cast<std::uint32_t>(seed >> 32)),
          ctr1(static_cast<std::uint32_t>(attempt)),
          ctr2(static_cast<std::uint32_t>(attempt >> 32)) {}

    inline void next4(std::uint32_t out[4]) {
        std::uint32_t c0 = block++, c1 = ctr1, c2 = ctr2, c3 = 0x9E3779B9u;
        std::uint32_t k0 = key0, k1 = key1;
        for (int r = 0; r < 10; ++r) {
            std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c0;
            std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out[0] = c0;
        out[1] = c1;
        out[2] = c2;
        out[3] = c3;
    }
};

// n consecutive blocks of one stream, elementwise over block indices so the
// 32-bit rounds vectorize; bit-identical to repeated next4 calls
__attribute__((noinline)) void philox_bulk(std::uint32_t block0, std::uint32_t ctr1,
                                           std::uint32_t ctr2, std::uint32_t key0,
                                           std::uint32_t key1, int n,
                                           std::uint32_t* __restrict o0,
                                           std::uint32_t* __restrict o1,
                                           std::uint32_t* __restrict o2,
                                           std::uint32_t* __restrict o3) {
    for (int i = 0; i < n; ++i) {
        o0[i] = block0 + static_cast<std::uint32_t>(i);
        o1[i] = ctr1;
        o2[i] = ctr2;
        o3[i] = 0x9E3779B9u;
    }
    std::uint32_t k0 = key0, k1 = key1;
    for (int r = 0; r < 10; ++r) {
#pragma omp simd
        for (int i = 0; i < n; ++i) {
            std::uint64_t p0 = std::uint64_t(0xD2511F53u) * o0[i];
            std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * o2[i];
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            o0[i] = hi1 ^ o1[i] ^ k0;
            o1[i] = lo1;
            o2[i] = hi0 ^ o3[i] ^ k1;
            o3[i] = lo0;
        }
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
}

inline double u64_to_unit(std::uint64_t v) {
    // (0, 1], safe for log
    return (static_cast<double>(v >> 11) + 1.0) * 0x1.0p-53;
}

constexpr int kNBuf = 256;   // normals buffered per lane
constexpr int kLanes = 8;
constexpr int kSub = 16;     // unconditional sub-steps per block

// The Box-Muller transforms live in standalone kernels on restrict pointers:
// gcc vectorizes them through libmvec, which it will not do for the fused
// sincos form or through the member-array indirection.
__attribute__((noinline)) void bm_radii(const double* __restrict u, double* __restrict r,
                                        int n) {
    for (int i = 0; i < n; ++i) r[i] = std::sqrt(-2.0 * std::log(u[i]));
}

__attribute__((noinline)) void bm_cos(const double* __restrict u, double* __restrict c,
                                      int n) {
    for (int i = 0; i < n; ++i) c[i] = std::cos(2.0 * kPi * u[i]);
}

// sin recovered from cos and the half-period sign bit; the tiny absolute
// error near the poles is irrelevant at Monte Carlo scale
__attribute__((noinline)) void bm_sin_from_cos(const double* __restrict u,
                                               const double* __restrict c,
                                               double* __restrict s, int n) {
    for (int i = 0; i < n; ++i) {
        double mag = std::sqrt(std::max(1.0 - c[i] * c[i], 0.0));
        s[i] = (u[i] < 0.5) ? mag : -mag;
    }
}

struct LaneRng {
    PhiloxStream stream{0, 0};
    double buf[kNBuf];
    int pos = kNBuf;
    int end = kNBuf;
    int next_size = kNBuf;

    void reset(std::uint64_t seed, std::uint64_t attempt) {
        stream = PhiloxStream(seed, attempt);
        pos = end = kNBuf;
        next_size = 32;  // most attempts die within a few steps; grow the
                         // batch only for survivors
    }

    void refill() {
        const int sz = next_size;
        next_size = std::min(2 * sz, kNBuf);
        const int h = sz / 2;
        alignas(64) std::uint32_t o0[kNBuf / 2], o1[kNBuf / 2], o2[kNBuf / 2],
            o3[kNBuf / 2];
        philox_bulk(stream.block, stream.ctr1, stream.ctr2, stream.key0, stream.key1,
                    h, o0, o1, o2, o3);
        stream.block += h;
        alignas(64) double u1[kNBuf / 2], u2[kNBuf / 2], rad[kNBuf / 2], co[kNBuf / 2],
            si[kNBuf / 2];
        for (int i = 0; i < h; ++i) {
            u1[i] = u64_to_unit((std::uint64_t(o0[i]) << 32) | o1[i]);
            u2[i] = u64_to_unit((std::uint64_t(o2[i]) << 32) | o3[i]);
        }
        bm_radii(u1, rad, h);
        bm_cos(u2, co, h);
        bm_sin_from_cos(u2, co, si, h);
        for (int i = 0; i < h; ++i) {
            buf[2 * i] = rad[i] * co[i];
            buf[2 * i + 1] = rad[i] * si[i];
        }
        pos = 0;
        end = sz;
    }
};

// one block of kSub unconditional steps over kLanes interleaved paths
template <bool HasDrift>
inline void step_block(double* __restrict x, double* __restrict area,
                       double* __restrict alive, double* __restrict steps,
                       const double* __restrict nrm, double sigma, double drift_amp,
                       double x0r2, double barrier) {
    for (int c = 0; c < kSub; ++c) {
        const double* n = nrm + c * kLanes;
#pragma omp simd
        for (int l = 0; l < kLanes; ++l) {
            double xo = x[l];
            double xn = HasDrift ? xo + drift_amp * xo / (x0r2 + xo * xo) + sigma * n[l]
                                 : xo + sigma * n[l];
            area[l] += alive[l] * 0.5 * (xo + xn);
            steps[l] += alive[l];
            alive[l] = (xn >= barrier) ? alive[l] : 0.0;
            x[l] = xn;
        }
    }
}

struct Accepted {
    std::uint64_t attempt;
    double area;
    double duration;
};

struct Kernel {
    double sigma;        // sqrt(2 D dt)
    double drift_amp;    // -D U0 dt
    double x0r2;         // x0_reg^2
    double barrier;      // x_start
    double dt;
    long max_steps;
    long accept_min;     // steps
    bool has_drift;

    // run one worker over attempt ids [lo, hi), appending accepted results
    void run_range(std::uint64_t seed, std::uint64_t lo, std::uint64_t hi,
                   std::vector<Accepted>& out) const {
        alignas(64) double x[kLanes], area[kLanes], alive[kLanes], steps[kLanes];
        alignas(64) double nrm[kSub][kLanes];
        LaneRng rng[kLanes];
        std::uint64_t attempt_of[kLanes];
        bool active[kLanes];
        std::uint64_t next_attempt = lo;

        auto load_lane = [&](int l) {
            if (next_attempt >= hi) {
                active[l] = false;
                alive[l] = 0.0;
                x[l] = 0.0;
                return;
            }
            attempt_of[l] = next_attempt++;
            rng[l].reset(seed, attempt_of[l]);
            x[l] = barrier;
            area[l] = 0.0;
            alive[l] = 1.0;
            steps[l] = 0.0;
            active[l] = true;
        };
        for (int l = 0; l < kLanes; ++l) load_lane(l);

        for (;;) {
            bool any = false;
            for (int l = 0; l < kLanes; ++l) {
                any |= active[l];
                if (rng[l].pos + kSub > rng[l].end) rng[l].refill();
                const double* src = rng[l].buf + rng[l].pos;
                for (int c = 0; c < kSub; ++c) nrm[c][l] = src[c];
                rng[l].pos += kSub;
            }
            if (!any) break;

            if (has_drift)
                step_block<true>(x, area, alive, steps, &nrm[0][0], sigma, drift_amp,
                                 x0r2, barrier);
            else
                step_block<false>(x, area, alive, steps, &nrm[0][0], sigma, drift_amp,
                                  x0r2, barrier);

            for (int l = 0; l < kLanes; ++l) {
                if (!active[l]) continue;
                long st = static_cast<long>(steps[l]);
                if (alive[l] == 0.0) {
                    if (st >= accept_min && st <= max_steps)
                        out.push_back({attempt_of[l], area[l] * dt, st * dt});
                    load_lane(l);
                } else if (st >= max_steps) {
                    load_lane(l);  // still above the barrier at the horizon
                }
            }
        }
    }
};

}  // namespace

void McConfig::fill_defaults() {
    params.validate();
    if (dt <= 0.0) dt = 1e-4 * params.horizon;
    if (x_start <= 0.0) x_start = 0.02 * std::sqrt(params.diff * params.horizon);
    if (x0_reg <= 0.0) x0_reg = 0.25 * x_start;
}

void McConfig::validate() const {
    params.validate();
    if (params.mode != BoundaryMode::Absorbing)
        throw DomainError("McConfig: sampling is defined for the absorbing process only");
    if (!(dt > 0.0) || !(dt < 0.01 * params.horizon))
        throw DomainError("McConfig: requires 0 < dt << T");
    if (!(x_start > 0.0) || !(x_start < 0.2 * std::sqrt(params.diff * params.horizon)))
        throw DomainError("McConfig: requires 0 < x_start << sqrt(D T)");
    if (!(return_window > 0.0 && return_window <= 0.05))
        throw DomainError("McConfig: requires 0 < delta <= 0.05");
    if (!(x0_reg > 0.0 && x0_reg <= x_start))
        throw DomainError("McConfig: requires 0 < x0_reg <= x_start");
    if (n_target < 1) throw DomainError("McConfig: requires n_target >= 1");
}

McEnsemble sample_excursions(const McConfig& config_in) {
    McConfig config = config_in;
    config.fill_defaults();
    config.validate();

    Kernel kern;
    kern.sigma = std::sqrt(2.0 * config.params.diff * config.dt);
    kern.drift_amp = -config.params.diff * config.params.u0 * config.dt;
    kern.x0r2 = config.x0_reg * config.x0_reg;
    kern.barrier = config.x_start;
    kern.dt = config.dt;
    kern.max_steps = std::lround(config.params.horizon / config.dt);
    kern.accept_min = static_cast<long>(
        std::ceil(config.params.horizon * (1.0 - config.return_window) / config.dt));
    kern.has_drift = config.params.u0 != 0.0;

    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(n_threads, 1);

    const std::uint64_t chunk = 1 << 16;
    std::vector<Accepted> accepted;
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_chunk{0};
    std::uint64_t frontier = 0;  // attempts issued so far

    auto t_start = std::chrono::steady_clock::now();
    bool truncated = false;
    // issue contiguous chunks of attempts until the accepted prefix covers
    // n_target; after the first batch the acceptance rate estimate sizes the
    // remaining batches
    for (;;) {
        std::uint64_t batch_chunks = std::max<std::uint64_t>(n_threads, 16);
        if (!accepted.empty()) {
            double rate = static_cast<double>(accepted.size()) / frontier;
            long missing = config.n_target - static_cast<long>(accepted.size());
            if (missing > 0) {
                double need = 1.03 * missing / rate / chunk + 1.0;
                batch_chunks = std::max<std::uint64_t>(
                    static_cast<std::uint64_t>(need), n_threads);
            }
        }
        std::uint64_t hi_chunk = next_chunk.load() + batch_chunks;

        auto worker = [&] {
            std::vector<Accepted> local;
            for (;;) {
                std::uint64_t c = next_chunk.fetch_add(1);
                if (c >= hi_chunk) break;
                kern.run_range(config.seed, c * chunk, (c + 1) * chunk, local);
            }
            std::lock_guard<std::mutex> g(merge_mutex);
            accepted.insert(accepted.end(), local.begin(), local.end());
        };
        if (n_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        frontier = std::min(next_chunk.load(), hi_chunk) * chunk;
        if (static_cast<long>(accepted.size()) >= config.n_target) break;
        if (frontier > (1ull << 22) && accepted.empty())
            throw NumericalError("sample_excursions: acceptance starvation");
        if (frontier >= (1ull << 40))
            throw NumericalError("sample_excursions: attempt budget exhausted");
        if (config.max_wall_s > 0.0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                      t_start)
                            .count();
            if (el > config.max_wall_s) {
                truncated = true;
                break;
            }
        }
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Accepted& a, const Accepted& b) { return a.attempt < b.attempt; });
    if (!truncated) {
        if (static_cast<long>(accepted.size()) < config.n_target)
            throw NumericalError("sample_excursions: internal shortfall");
        accepted.resize(config.n_target);
    } else if (accepted.size() < 100) {
        throw NumericalError("sample_excursions: wall budget left too few samples");
    }

    McEnsemble ens;
    ens.config = config;
    ens.seed = config.seed;
    ens.truncated = truncated;
    ens.attempts = static_cast<long>(accepted.back().attempt) + 1;
    ens.acceptance_rate = static_cast<double>(accepted.size()) / ens.attempts;
    ens.areas.reserve(accepted.size());
    ens.durations.reserve(accepted.size());
    std::sort(accepted.begin(), accepted.end(), [](const Accepted& a, const Accepted& b) {
        return a.area < b.area || (a.area == b.area && a.attempt < b.attempt);
    });
    for (const Accepted& a : accepted) {
        ens.areas.push_back(a.area);
        ens.durations.push_back(a.duration);
    }
    return ens;
}

std::vector<double> scaled_areas(const McEnsemble& ensemble) {
    // Conditioning on the realized duration removes the window-width bias:
    // given a first return at t, A / (sqrt(D) t^{3/2}) follows the scaled law.
    // The sampled path is an excursion above the effective barrier
    // x_start - beta sigma_step (discrete monitoring shifts the barrier by
    // the Broadie-Glasserman-Kou constant beta = -zeta(1/2)/sqrt(2 pi)), so
    // that offset times the duration is removed from the raw area.
    constexpr double kBarrierShift = 0.5825971579390107;
    const McConfig& c = ensemble.config;
    double sigma_step = std::sqrt(2.0 * c.params.diff * c.dt);
    double b_eff = c.x_start - kBarrierShift * sigma_step;
    std::vector<double> out(ensemble.areas.size());
    double sd = std::sqrt(c.params.diff);
    for (size_t i = 0; i < out.size(); ++i) {
        double t = ensemble.durations[i];
        out[i] = (ensemble.areas[i] - b_eff * t) / (sd * t * std::sqrt(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double ks_statistic(const std::vector<double>& sorted_data, const dist::Cdf& cdf) {
    long n = static_cast<long>(sorted_data.size());
    double d = 0.0;
    for (long i = 0; i < n; ++i) {
        double f = cdf(sorted_data[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

double ks_critical_1pct(long n) { return 1.62762 / std::sqrt(static_cast<double>(n)); }

double ks_two_sample_critical_1pct(long n, long m) {
    return 1.62762 * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

McReport mc_vs_analytic(const McEnsemble& ensemble, const dist::DistributionTable& table) {
    McReport rep;
    std::vector<double> ah = scaled_areas(ensemble);
    rep.n = static_cast<long>(ah.size());
    if (rep.n < 10) throw DomainError("mc_vs_analytic: ensemble too small");
    if (ah.back() > table.a_hat.back() * 1.02)
        throw DomainError("mc_vs_analytic: table does not cover the ensemble range");

    dist::Cdf cdf = dist::table_cdf(table);
    rep.ks_stat = ks_statistic(ah, cdf);
    rep.ks_critical_1pct = ks_critical_1pct(rep.n);
    rep.ks_pass = rep.ks_stat < rep.ks_critical_1pct;

    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (double v : ah) {
        s1 += v;
        s2 += v * v;
        s4 += v * v * v * v;
    }
    double n = static_cast<double>(rep.n);
    rep.mean_a_hat = s1 / n;
    rep.m2_a_hat = s2 / n;

    const ExcursionParams& p = ensemble.config.params;
    double a0 = p.a0();
    rep.model_m1 = moments::m1_closed(p) / a0;
    rep.model_m2 = moments::m2_series(p) / (a0 * a0);
    double var1 = std::max(s2 / n - rep.mean_a_hat * rep.mean_a_hat, 1e-300);
    double var2 = std::max(s4 / n - rep.m2_a_hat * rep.m2_a_hat, 1e-300);
    rep.z_m1 = (rep.mean_a_hat - rep.model_m1) / std::sqrt(var1 / n);
    rep.z_m2 = (rep.m2_a_hat - rep.model_m2) / std::sqrt(var2 / n);
    return rep;
}

}  // namespace bessex::mc
