#pragma once

// CSV / JSON emitters shared by the CLI: deterministic number formatting so
// identical runs produce byte-identical file bodies.

#include <string>
#include <vector>

#include "bessex/distribution.hpp"
#include "bessex/mc.hpp"
#include "bessex/moments.hpp"
#include "bessex/params.hpp"
#include "bessex/spectrum.hpp"

namespace bessex::io {

std::string fmt(double v);  // shortest exact round-trip form

std::string version_string();

struct CsvWriter {
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    void comment(const std::string& line);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& vals);
    void row_mixed(const std::vector<std::string>& vals);
    std::string path;

private:
    void* stream;
};

std::string params_digest(const ExcursionParams& p);

void write_spectrum_csv(const std::string& path, const spectrum::SpectralData& sd);
void write_table_csv(const std::string& path, const dist::DistributionTable& t,
                     bool physical);
void write_table_json(const std::string& path, const dist::DistributionTable& t);
void write_moments_json(const std::string& path, const ExcursionParams& p,
                        const moments::MomentSet& ms, bool physical);
void write_ensemble_csv(const std::string& path, const mc::McEnsemble& e);
void write_mc_config_json(const std::string& path, const mc::McEnsemble& e);
void write_mc_report_json(const std::string& path, const mc::McReport& r);

void write_manifest(const std::string& path, const std::string& subcommand,
                    const ExcursionParams& p, double wall_seconds,
                    const std::vector<std::string>& outputs);

}  // namespace bessex::io
