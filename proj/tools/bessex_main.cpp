// Command-line front end: every computation as a subcommand with CSV/JSON
// output, exit codes 0 (success), 1 (numerical failure), 2 (usage).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bessex/io.hpp"
#include "bessex/levy_limit.hpp"
#include "bessex/mc.hpp"
#include "bessex/moments.hpp"

namespace {

using namespace bessex;

struct CommonOpts {
    double u0 = 0.0;
    double diff = 0.5;     // paper figures assume D = 1/2, T = 1
    double horizon = 1.0;
    std::string mode = "absorbing";
    int threads = 0;
    std::string out;

    ExcursionParams params() const {
        ExcursionParams p;
        p.u0 = u0;
        p.diff = diff;
        p.horizon = horizon;
        if (mode == "absorbing") {
            p.mode = BoundaryMode::Absorbing;
        } else if (mode == "continued") {
            p.mode = BoundaryMode::Continued;
        } else {
            throw DomainError("mode must be 'absorbing' or 'continued'");
        }
        p.validate();
        return p;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_out) {
    cmd->add_option("--u0", c.u0, "drift strength U0");
    cmd->add_option("-D,--diff", c.diff, "diffusion constant")->check(CLI::PositiveNumber);
    cmd->add_option("-T,--horizon", c.horizon, "excursion duration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "boundary mode: absorbing | continued");
    cmd->add_option("--threads", c.threads, "worker cap (0 = hardware)");
    c.out = default_out;
    cmd->add_option("--out", c.out, "output path base");
}

struct GridOpt {
    double lo = 0.05, hi = 6.0;
    int n = 400;
};

void parse_grid(const std::string& s, GridOpt& g) {
    if (s.empty()) return;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.n) != 3)
        throw DomainError("grid must be lo:hi:n");
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_spectrum(const CommonOpts& c, int k_count, double tol) {
    auto t0 = std::chrono::steady_clock::now();
    ExcursionParams p = c.params();
    auto sd = spectrum::solve_spectrum(p, k_count, tol, c.threads);
    std::string csv = c.out + ".csv";
    io::write_spectrum_csv(csv, sd);
    io::write_manifest(c.out + "_manifest.json", "spectrum", p, elapsed_since(t0), {csv});
    std::printf("wrote %s (K=%d)\n", csv.c_str(), sd.count);
    return 0;
}

int run_pdf(const CommonOpts& c, const std::string& grid_s, const std::string& method_s,
            int k_count, double tol, bool physical) {
    auto t0 = std::chrono::steady_clock::now();
    ExcursionParams p = c.params();
    GridOpt g;
    parse_grid(grid_s, g);
    dist::TableMethod m = dist::TableMethod::Auto;
    if (method_s == "auto")
        m = dist::TableMethod::Auto;
    else if (method_s == "hyp")
        m = dist::TableMethod::Hyp;
    else if (method_s == "airy")
        m = dist::TableMethod::Airy;
    else if (method_s == "talbot")
        m = dist::TableMethod::Talbot;
    else
        throw DomainError("method must be auto | hyp | airy | talbot");
    auto sd = spectrum::solve_spectrum(p, k_count, tol, c.threads);
    dist::GridSpec gs{g.lo, g.hi, g.n};
    auto table = dist::build_table(p, sd, gs, m, c.threads);
    std::string csv = c.out + ".csv", js = c.out + ".json";
    io::write_table_csv(csv, table, physical);
    io::write_table_json(js, table);
    io::write_manifest(c.out + "_manifest.json", "pdf", p, elapsed_since(t0), {csv, js});
    std::printf("wrote %s, %s (%d points)\n", csv.c_str(), js.c_str(), g.n);
    return 0;
}

int run_moments(const CommonOpts& c, const std::string& range_s, double tol,
                bool physical) {
    auto t0 = std::chrono::steady_clock::now();
    if (range_s.empty()) {
        ExcursionParams p = c.params();
        auto ms = moments::compute_moments(p, tol);
        std::string js = c.out + ".json";
        io::write_moments_json(js, p, ms, physical);
        io::write_manifest(c.out + "_manifest.json", "moments", p, elapsed_since(t0), {js});
        std::printf("wrote %s\n", js.c_str());
        return 0;
    }
    double lo, hi;
    int n = 25;
    int got = std::sscanf(range_s.c_str(), "%lf:%lf:%d", &lo, &hi, &n);
    if (got < 2) throw DomainError("u0-range must be lo:hi[:n]");
    if (n < 2) throw DomainError("u0-range needs n >= 2");
    std::string csv = c.out + ".csv";
    CommonOpts cc = c;
    io::CsvWriter w(csv);
    w.comment(io::version_string() + " moments sweep");
    w.comment("units=" + std::string(physical ? "physical" : "scaled"));
    w.header({"u0", "alpha_eff", "m1", "m2", "m2_linear", "m_nu", "nu"});
    ExcursionParams last;
    for (int i = 0; i < n; ++i) {
        cc.u0 = lo + (hi - lo) * i / (n - 1);
        ExcursionParams p = cc.params();
        last = p;
        double a0 = p.a0();
        double s1 = physical ? 1.0 : 1.0 / a0;
        double s2 = physical ? 1.0 : 1.0 / (a0 * a0);
        double m1 = moments::m1_closed(p) * s1;
        double m2 = moments::m2_series(p, tol) * s2;
        double m2l = moments::m2_linear(p) * s2;
        double mn = std::numeric_limits<double>::quiet_NaN();
        if (p.alpha() > 0.0)
            mn = moments::m_nu_closed(p) * (physical ? 1.0 : std::pow(a0, -p.nu()));
        w.row({cc.u0, p.alpha_eff(), m1, m2, m2l, mn, p.nu()});
    }
    io::write_manifest(c.out + "_manifest.json", "moments", last, elapsed_since(t0), {csv});
    std::printf("wrote %s (%d rows)\n", csv.c_str(), n);
    return 0;
}

int run_mc(const CommonOpts& c, long n, std::uint64_t seed, double dt, double delta,
           double xstart_eps, int k_count, double tol) {
    auto t0 = std::chrono::steady_clock::now();
    ExcursionParams p = c.params();
    mc::McConfig cfg;
    cfg.params = p;
    cfg.n_target = n;
    cfg.seed = seed;
    cfg.threads = c.threads;
    if (dt > 0.0) cfg.dt = dt;
    if (delta > 0.0) cfg.return_window = delta;
    if (xstart_eps > 0.0)
        cfg.x_start = xstart_eps * std::sqrt(p.diff * p.horizon);
    mc::McEnsemble ens = mc::sample_excursions(cfg);

    auto sd = spectrum::solve_spectrum(p, k_count, tol, c.threads);
    bool airy_case = std::fabs(std::fabs(p.alpha()) - 0.5) < 1e-12;
    dist::GridSpec gs{0.02, 6.0, 1200};
    auto table = dist::build_table(p, sd, gs,
                                   airy_case ? dist::TableMethod::Airy
                                             : dist::TableMethod::Auto,
                                   c.threads);
    mc::McReport rep = mc::mc_vs_analytic(ens, table);

    std::string csv = c.out + ".csv";
    std::string cfgjs = c.out + "_config.json";
    std::string repjs = c.out + "_report.json";
    io::write_ensemble_csv(csv, ens);
    io::write_mc_config_json(cfgjs, ens);
    io::write_mc_report_json(repjs, rep);
    io::write_manifest(c.out + "_manifest.json", "mc", p, elapsed_since(t0),
                       {csv, cfgjs, repjs});
    std::printf("wrote %s (n=%ld, KS=%.4g vs crit %.4g, z1=%.2f z2=%.2f)\n", csv.c_str(),
                n, rep.ks_stat, rep.ks_critical_1pct, rep.z_m1, rep.z_m2);
    return 0;
}

int run_levy_limit(const CommonOpts& c, int k_count, double s_max, int n_s, double tol) {
    auto t0 = std::chrono::steady_clock::now();
    CommonOpts cc = c;
    cc.mode = "continued";
    ExcursionParams p = cc.params();
    auto sd = spectrum::solve_spectrum(p, k_count, tol, c.threads);
    std::string csv = c.out + ".csv", js = c.out + ".json";
    {
        io::CsvWriter w(csv);
        w.comment(io::version_string() + " levy-limit comparison");
        w.comment(io::params_digest(p));
        w.header({"s_hat", "laplace_limit", "laplace_full", "rel_diff"});
        for (int i = 0; i <= n_s; ++i) {
            double s = s_max * i / n_s;
            double lim = levy::limit_laplace(p.u0, s);
            double full = dist::laplace_pdf(p, sd, s);
            w.row({s, lim, full, (lim - full) / full});
        }
    }
    {
        nlohmann::ordered_json j;
        j["kind"] = "levy_limit";
        j["u0"] = p.u0;
        j["lambda0_perturbative"] = levy::lambda0_perturbative(p.u0);
        j["lambda0_solver"] = sd.lambdas[0];
        j["d0_perturbative"] = levy::d0_perturbative(p.u0);
        j["d0_solver"] = sd.dks[0];
        j["rate_constant"] = levy::lambda0_rate_constant();
        j["lambdas_fixed"] = levy::limit_fixed_spectrum(
            std::min(k_count, 6), tol, c.threads);
        FILE* f = std::fopen(js.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open " + js);
        std::string s = j.dump(2);
        std::fwrite(s.data(), 1, s.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
    }
    io::write_manifest(c.out + "_manifest.json", "levy-limit", p, elapsed_since(t0),
                       {csv, js});
    std::printf("wrote %s, %s\n", csv.c_str(), js.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"area distribution under Bessel excursions"};
    app.require_subcommand(1);

    CommonOpts c_spec, c_pdf, c_mom, c_mc, c_levy;
    int spec_k = 40;
    double spec_tol = 1e-10;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and origin coefficients");
    add_common(spectrum_cmd, c_spec, "bessex_spectrum");
    spectrum_cmd->add_option("--k", spec_k, "number of modes")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--tol", spec_tol, "solver tolerance");

    std::string pdf_grid, pdf_method = "auto";
    int pdf_k = 60;
    double pdf_tol = 1e-10;
    bool pdf_phys = false;
    auto* pdf_cmd = app.add_subcommand("pdf", "scaled area density table");
    add_common(pdf_cmd, c_pdf, "bessex_pdf");
    pdf_cmd->add_option("--grid", pdf_grid, "lo:hi:n log grid (default 0.05:6:400)");
    pdf_cmd->add_option("--method", pdf_method, "auto | hyp | airy | talbot");
    pdf_cmd->add_option("--k", pdf_k, "spectral modes");
    pdf_cmd->add_option("--tol", pdf_tol, "solver tolerance");
    pdf_cmd->add_flag("--physical", pdf_phys, "emit physical units");

    std::string mom_range;
    double mom_tol = 1e-8;
    bool mom_phys = false;
    auto* mom_cmd = app.add_subcommand("moments", "closed-form and series moments");
    add_common(mom_cmd, c_mom, "bessex_moments");
    mom_cmd->add_option("--u0-range", mom_range, "sweep lo:hi[:n]");
    mom_cmd->add_option("--tol", mom_tol, "series tolerance");
    mom_cmd->add_flag("--physical", mom_phys, "emit physical units");

    long mc_n = 100000;
    std::uint64_t mc_seed = 1;
    double mc_dt = 0.0, mc_delta = 0.0, mc_eps = 0.0;
    int mc_k = 60;
    double mc_tol = 1e-10;
    auto* mc_cmd = app.add_subcommand("mc", "Langevin excursion sampling and comparison");
    add_common(mc_cmd, c_mc, "bessex_mc");
    mc_cmd->add_option("--n", mc_n, "accepted excursions")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_seed, "RNG seed");
    mc_cmd->add_option("--dt", mc_dt, "time step (default 1e-4 T)");
    mc_cmd->add_option("--delta", mc_delta, "return window (default 0.05)");
    mc_cmd->add_option("--xstart-eps", mc_eps, "launch height / sqrt(D T) (default 0.02)");
    mc_cmd->add_option("--k", mc_k, "spectral modes for the reference table");
    mc_cmd->add_option("--tol", mc_tol, "solver tolerance");

    int levy_k = 4, levy_ns = 40;
    double levy_smax = 4.0, levy_tol = 1e-10;
    auto* levy_cmd = app.add_subcommand("levy-limit", "continued-mode limit comparison");
    add_common(levy_cmd, c_levy, "bessex_levy_limit");
    levy_cmd->add_option("--k", levy_k, "spectral modes");
    levy_cmd->add_option("--smax", levy_smax, "transform grid upper end");
    levy_cmd->add_option("--ns", levy_ns, "transform grid points");
    levy_cmd->add_option("--tol", levy_tol, "solver tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum_cmd->parsed()) return run_spectrum(c_spec, spec_k, spec_tol);
        if (pdf_cmd->parsed())
            return run_pdf(c_pdf, pdf_grid, pdf_method, pdf_k, pdf_tol, pdf_phys);
        if (mom_cmd->parsed()) return run_moments(c_mom, mom_range, mom_tol, mom_phys);
        if (mc_cmd->parsed())
            return run_mc(c_mc, mc_n, mc_seed, mc_dt, mc_delta, mc_eps, mc_k, mc_tol);
        if (levy_cmd->parsed())
            return run_levy_limit(c_levy, levy_k, levy_smax, levy_ns, levy_tol);
    } catch (const bessex::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
