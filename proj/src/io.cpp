#include "bessex/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace bessex::io {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    // shortest representation that round-trips exactly
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::string version_string() { return "bessex 0.1.0"; }

CsvWriter::CsvWriter(const std::string& p) : path(p) {
    FILE* f = std::fopen(p.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + p);
    stream = f;
}

CsvWriter::~CsvWriter() {
    if (stream) std::fclose(static_cast<FILE*>(stream));
}

void CsvWriter::comment(const std::string& line) {
    std::fprintf(static_cast<FILE*>(stream), "# %s\n", line.c_str());
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    FILE* f = static_cast<FILE*>(stream);
    for (size_t i = 0; i < cols.size(); ++i)
        std::fprintf(f, "%s%s", cols[i].c_str(), i + 1 < cols.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& vals) {
    FILE* f = static_cast<FILE*>(stream);
    for (size_t i = 0; i < vals.size(); ++i)
        std::fprintf(f, "%s%s", fmt(vals[i]).c_str(), i + 1 < vals.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& vals) {
    FILE* f = static_cast<FILE*>(stream);
    for (size_t i = 0; i < vals.size(); ++i)
        std::fprintf(f, "%s%s", vals[i].c_str(), i + 1 < vals.size() ? "," : "\n");
}

std::string params_digest(const ExcursionParams& p) {
    return "u0=" + fmt(p.u0) + " D=" + fmt(p.diff) + " T=" + fmt(p.horizon) + " mode=" +
           (p.mode == BoundaryMode::Absorbing ? "absorbing" : "continued");
}

namespace {

ordered_json params_json(const ExcursionParams& p) {
    ordered_json j;
    j["u0"] = p.u0;
    j["D"] = p.diff;
    j["T"] = p.horizon;
    j["mode"] = p.mode == BoundaryMode::Absorbing ? "absorbing" : "continued";
    j["alpha"] = p.alpha();
    j["nu"] = p.nu();
    j["A0"] = p.a0();
    return j;
}

void dump(const std::string& path, const ordered_json& j) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string s = j.dump(2);
    std::fwrite(s.data(), 1, s.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
}

}  // namespace

void write_spectrum_csv(const std::string& path, const spectrum::SpectralData& sd) {
    CsvWriter w(path);
    w.comment(version_string() + " spectrum");
    w.comment(params_digest(sd.params) + " K=" + std::to_string(sd.count) +
              " tol=" + fmt(sd.tol));
    w.header({"k", "lambda", "d", "lambda_asym", "d_asym"});
    for (int k = 0; k < sd.count; ++k) {
        double la = spectrum::lambda_asymptotic(sd.params, k);
        double da = spectrum::dk_asymptotic(sd.params, sd.lambdas[k]);
        w.row({static_cast<double>(k), sd.lambdas[k], sd.dks[k], la, da});
    }
}

void write_table_csv(const std::string& path, const dist::DistributionTable& t,
                     bool physical) {
    CsvWriter w(path);
    w.comment(version_string() + " pdf");
    w.comment(params_digest(t.params) + (physical ? " units=physical" : " units=scaled"));
    double a0 = t.params.a0();
    if (physical)
        w.header({"a", "pdf", "err", "method"});
    else
        w.header({"a_hat", "pdf_scaled", "err", "method"});
    for (size_t i = 0; i < t.a_hat.size(); ++i) {
        double x = physical ? t.a_hat[i] * a0 : t.a_hat[i];
        double p = physical ? t.pdf_scaled[i] / a0 : t.pdf_scaled[i];
        double e = physical ? t.err[i] / a0 : t.err[i];
        w.row_mixed({fmt(x), fmt(p), fmt(e), dist::method_name(t.method[i])});
    }
}

void write_table_json(const std::string& path, const dist::DistributionTable& t) {
    ordered_json j;
    j["kind"] = "distribution_table";
    j["params"] = params_json(t.params);
    j["a_hat"] = t.a_hat;
    j["pdf_scaled"] = t.pdf_scaled;
    j["err"] = t.err;
    std::vector<std::string> methods;
    methods.reserve(t.method.size());
    for (auto m : t.method) methods.emplace_back(dist::method_name(m));
    j["method"] = methods;
    dump(path, j);
}

void write_moments_json(const std::string& path, const ExcursionParams& p,
                        const moments::MomentSet& ms, bool physical) {
    ordered_json j;
    j["kind"] = "moments";
    j["params"] = params_json(p);
    j["units"] = physical ? "physical" : "scaled";
    double a0 = p.a0();
    double s1 = physical ? 1.0 : 1.0 / a0;
    double s2 = physical ? 1.0 : 1.0 / (a0 * a0);
    double sn = physical ? 1.0 : std::pow(a0, -p.nu());
    j["m0"] = ms.m0;
    j["m1"] = ms.m1 * s1;
    j["m2"] = ms.m2 * s2;
    j["nu"] = ms.nu;
    if (std::isnan(ms.m_nu))
        j["m_nu"] = nullptr;
    else
        j["m_nu"] = ms.m_nu * sn;
    j["method_tags"] = {{"m0", moments::tag_name(ms.tag_m0)},
                        {"m1", moments::tag_name(ms.tag_m1)},
                        {"m2", moments::tag_name(ms.tag_m2)},
                        {"m_nu", moments::tag_name(ms.tag_m_nu)}};
    dump(path, j);
}

void write_ensemble_csv(const std::string& path, const mc::McEnsemble& e) {
    CsvWriter w(path);
    w.comment(version_string() + " mc ensemble");
    w.comment(params_digest(e.config.params) + " n=" + std::to_string(e.config.n_target) +
              " seed=" + std::to_string(e.seed));
    w.header({"area", "duration"});
    for (size_t i = 0; i < e.areas.size(); ++i) w.row({e.areas[i], e.durations[i]});
}

void write_mc_config_json(const std::string& path, const mc::McEnsemble& e) {
    ordered_json j;
    j["kind"] = "mc_config";
    j["params"] = params_json(e.config.params);
    j["dt"] = e.config.dt;
    j["x_start"] = e.config.x_start;
    j["x0_reg"] = e.config.x0_reg;
    j["return_window"] = e.config.return_window;
    j["n_target"] = e.config.n_target;
    j["seed"] = e.seed;
    j["attempts"] = e.attempts;
    j["acceptance_rate"] = e.acceptance_rate;
    dump(path, j);
}

void write_mc_report_json(const std::string& path, const mc::McReport& r) {
    ordered_json j;
    j["kind"] = "mc_report";
    j["n"] = r.n;
    j["ks_stat"] = r.ks_stat;
    j["ks_critical_1pct"] = r.ks_critical_1pct;
    j["ks_pass"] = r.ks_pass;
    j["mean_a_hat"] = r.mean_a_hat;
    j["m2_a_hat"] = r.m2_a_hat;
    j["model_m1"] = r.model_m1;
    j["model_m2"] = r.model_m2;
    j["z_m1"] = r.z_m1;
    j["z_m2"] = r.z_m2;
    dump(path, j);
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    const ExcursionParams& p, double wall_seconds,
                    const std::vector<std::string>& outputs) {
    ordered_json j;
    j["kind"] = "run_manifest";
    j["tool"] = version_string();
    j["subcommand"] = subcommand;
    j["params"] = params_json(p);
    j["wall_seconds"] = wall_seconds;
    j["outputs"] = outputs;
    dump(path, j);
}

}  // namespace bessex::io
