#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fdao/models.hpp"
#include "fdao/montecarlo.hpp"
#include "fdao/uncertainty.hpp"

namespace fdao::io {

// `key = value` lines, blank lines and `#` comments ignored.
struct KeyValueMap {
    std::map<std::string, std::string> entries;
    std::string source_name = "<config>";

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const std::string& get(const std::string& key) const;  // throws if missing
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
};

KeyValueMap parse_key_values(std::istream& in, const std::string& source_name);
KeyValueMap parse_key_values_file(const std::string& path);

double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);

// CSV with header `x,y`; parse errors name the offending 1-based row.
Dataset read_xy_csv(std::istream& in, const std::string& name);
Dataset read_xy_csv_file(const std::string& path);

// CSV with header `well_id,absorbance`; returns the absorbance column.
std::vector<double> read_absorbance_csv(std::istream& in, const std::string& name);
std::vector<double> read_absorbance_csv_file(const std::string& path);

std::string slurp_file(const std::string& path);
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_u64(std::uint64_t v);

// 6 significant digits for human-facing reports, shortest round-trip form
// for machine dumps.
std::string format_sig6(double v);
std::string format_full(double v);

struct ReportHeader {
    std::string subcommand;
    std::string config_hash;
    std::uint64_t seed = 0;
};

void write_report_tsv(std::ostream& out, const ReportHeader& header,
                      const FdaoReport& report);
void write_dgamma_csv(std::ostream& out, const ModelSpec& spec, const Dataset& data,
                      const FitResult& fit, const ParamUncertainty& summary,
                      std::size_t param_index);
void write_experiment_header(std::ostream& out);
void write_experiment_rows(std::ostream& out, const ExperimentRow& row);

}  // namespace fdao::io
