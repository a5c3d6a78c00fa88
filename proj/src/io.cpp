#include "fdao/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdao/uncertainty.hpp"

namespace fdao::io {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

const std::string& KeyValueMap::get(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end())
        throw std::invalid_argument(source_name + ": missing key '" + key + "'");
    return it->second;
}

std::string KeyValueMap::get_or(const std::string& key, const std::string& fallback) const {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : it->second;
}

double KeyValueMap::get_double(const std::string& key) const {
    return parse_double(get(key), source_name + " key '" + key + "'");
}

double KeyValueMap::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueMap::get_long_or(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const double v = get_double(key);
    if (v != std::floor(v))
        throw std::invalid_argument(source_name + " key '" + key + "' must be an integer");
    return static_cast<long>(v);
}

std::uint64_t KeyValueMap::get_u64(const std::string& key) const {
    const std::string& text = get(key);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0')
        throw std::invalid_argument(source_name + " key '" + key +
                                    "' is not an unsigned integer: " + text);
    return v;
}

KeyValueMap parse_key_values(std::istream& in, const std::string& source_name) {
    KeyValueMap kv;
    kv.source_name = source_name;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(source_name + " line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(source_name + " line " + std::to_string(lineno) +
                                        ": empty key or value");
        kv.entries[key] = value;
    }
    return kv;
}

KeyValueMap parse_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_key_values(in, path);
}

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (errno != 0 || end == t.c_str() || *end != '\0' || !std::isfinite(v))
        throw std::invalid_argument(what + ": not a finite number: '" + text + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::string normalized = text;
    for (char& c : normalized)
        if (c == ',') c = ' ';
    std::vector<double> out;
    std::stringstream ss(normalized);
    std::string token;
    while (ss >> token) out.push_back(parse_double(token, what));
    if (out.empty()) throw std::invalid_argument(what + ": empty list");
    return out;
}

Dataset read_xy_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(name + ": empty file");
    std::string header = trim(line);
    if (header != "x,y")
        throw std::invalid_argument(name + " row 1: expected header 'x,y'");
    Dataset data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2)
            throw std::invalid_argument(name + " row " + std::to_string(row) +
                                        ": expected two columns");
        const std::string where = name + " row " + std::to_string(row);
        data.points.push_back(
            {parse_double(cells[0], where), parse_double(cells[1], where)});
    }
    if (data.points.empty())
        throw std::invalid_argument(name + ": no data rows");
    return data;
}

Dataset read_xy_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_xy_csv(in, path);
}

std::vector<double> read_absorbance_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(name + ": empty file");
    if (trim(line) != "well_id,absorbance")
        throw std::invalid_argument(name + " row 1: expected header 'well_id,absorbance'");
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2)
            throw std::invalid_argument(name + " row " + std::to_string(row) +
                                        ": expected two columns");
        values.push_back(
            parse_double(cells[1], name + " row " + std::to_string(row)));
    }
    if (values.empty()) throw std::invalid_argument(name + ": no data rows");
    return values;
}

std::vector<double> read_absorbance_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_absorbance_csv(in, path);
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex_u64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report_tsv(std::ostream& out, const ReportHeader& header,
                      const FdaoReport& report) {
    out << "# subcommand = " << header.subcommand << '\n';
    out << "# config_hash = " << header.config_hash << '\n';
    out << "# seed = " << header.seed << '\n';
    out << "# stop_reason = " << stop_reason_name(report.stop_reason) << '\n';
    out << "# loops = " << report.loops << '\n';
    out << "# sr = " << format_full(report.sr) << '\n';
    out << "# alpha = " << format_sig6(report.alpha) << '\n';
    for (std::size_t j = 0; j < report.theta_opt.size(); ++j)
        out << "# theta_opt." << report.theta_opt.names[j] << " = "
            << format_full(report.theta_opt.values[j]) << '\n';
    out << "param\tmedian\tci_lo\tci_hi\trange_lo\trange_hi\tSk\tKr\tupsilon\t"
           "m_kept\tdropped\tflagged\n";
    for (const ParamUncertainty& p : report.params) {
        out << p.name << '\t' << format_sig6(p.median) << '\t' << format_sig6(p.ci_lo)
            << '\t' << format_sig6(p.ci_hi) << '\t' << format_sig6(p.range_lo) << '\t'
            << format_sig6(p.range_hi) << '\t' << format_sig6(p.sk) << '\t'
            << format_sig6(p.kr) << '\t' << format_sig6(p.upsilon) << '\t' << p.m_kept
            << '\t' << p.dropped << '\t' << (p.flagged ? "yes" : "no") << '\n';
    }
}

void write_dgamma_csv(std::ostream& out, const ModelSpec& spec, const Dataset& data,
                      const FitResult& fit, const ParamUncertainty& summary,
                      std::size_t param_index) {
    const GammaDetail detail = gamma_detail(spec, data, fit, param_index);
    out << "# param = " << summary.name << '\n';
    out << "# dgamma_median = " << format_full(summary.dg_median) << '\n';
    out << "# dgamma_ci_lo = " << format_full(summary.dg_ci_lo) << '\n';
    out << "# dgamma_ci_hi = " << format_full(summary.dg_ci_hi) << '\n';
    out << "i,x_i,delta_i,omega_ji,dgamma_ji,kept_flag\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << (i + 1) << ',' << format_full(data.points[i].x) << ','
            << format_full(fit.residuals[i]) << ',' << format_full(detail.omega[i])
            << ',' << format_full(detail.dgamma[i]) << ','
            << static_cast<int>(detail.kept_flag[i]) << '\n';
    }
}

void write_experiment_header(std::ostream& out) {
    out << "param\tsimulated\tpredicted\tci_lo\tci_hi\trange_lo\trange_hi\tloops\t"
           "Sk\tKr\n";
}

void write_experiment_rows(std::ostream& out, const ExperimentRow& row) {
    for (const ExperimentParamRow& p : row.params) {
        out << p.name << '\t' << format_sig6(p.simulated) << '\t'
            << format_sig6(p.predicted) << '\t' << format_sig6(p.ci_lo) << '\t'
            << format_sig6(p.ci_hi) << '\t' << format_sig6(p.range_lo) << '\t'
            << format_sig6(p.range_hi) << '\t' << row.loops << '\t'
            << format_sig6(p.sk) << '\t' << format_sig6(p.kr) << '\n';
    }
}

}  // namespace fdao::io
