// io.hpp — self-describing CSV and JSON emission of sweep records and
// single-point reports.
//
// CSV: '#'-prefixed "key = value" header lines carrying every effective
// parameter, then one column header line and one row per record. Null
// measures (unstable points, GIP outside its domain) are empty fields.

#pragma once

#include "magnonics/format.hpp"
#include "magnonics/model.hpp"
#include "magnonics/sweep.hpp"

#include "json.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace magnonics {

struct MetaEntry {
    std::string key;
    std::string value;
};

using Metadata = std::vector<MetaEntry>;

inline constexpr std::array<std::string_view, 19> kCsvColumns{
    "axis1", "axis2", "stable", "E_N",    "S_ab",   "S_ba",   "GIP",      "mancini", "var_X", "var_P",
    "var_x1", "var_y1", "var_x2", "var_y2", "sq_db_x1", "R_d", "R_o1",   "R_o2",    "R_min"};

inline Metadata describe(const SystemParams& p, const PhysicalEnv& env) {
    return {
        {"delta_d", format_number(p.delta_d)},
        {"delta_o1", format_number(p.delta_o1)},
        {"delta_o2", format_number(p.delta_o2)},
        {"kappa_d", format_number(p.kappa_d)},
        {"kappa_o1", format_number(p.kappa_o1)},
        {"kappa_o2", format_number(p.kappa_o2)},
        {"g1", format_number(p.g1)},
        {"g2", format_number(p.g2)},
        {"lambda", format_number(p.lambda)},
        {"r", format_number(p.r)},
        {"n_o1", format_number(p.n_o1)},
        {"n_o2", format_number(p.n_o2)},
        {"omega_d_hz", format_number(env.omega_d_hz)},
        {"temperature_k", format_number(env.temperature_k)},
        {"hbar", format_number(env.hbar)},
        {"k_b", format_number(env.k_b)},
        {"gyromag_hz_per_t", format_number(env.gyromag_hz_per_t)},
    };
}

namespace detail {
inline std::string field(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

inline nlohmann::json json_field(const std::optional<double>& x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

inline nlohmann::json meta_value(const std::string& s) {
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (!s.empty() && ec == std::errc{} && ptr == s.data() + s.size()) return d;
    return s;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, "CSV field");
}
}  // namespace detail

inline std::vector<std::string> record_fields(const SweepRecord& r) {
    std::vector<std::string> f;
    f.reserve(kCsvColumns.size());
    f.push_back(format_number(r.axis1));
    f.push_back(detail::field(r.axis2));
    f.push_back(r.stable ? "1" : "0");
    for (const auto* x : {&r.e_n, &r.s_ab, &r.s_ba, &r.gip, &r.mancini}) f.push_back(detail::field(*x));
    for (const auto& v : r.var) f.push_back(detail::field(v));
    for (const auto* x : {&r.sq_db_x1, &r.r_d, &r.r_o1, &r.r_o2, &r.r_min}) f.push_back(detail::field(*x));
    return f;
}

inline void write_csv(std::ostream& os, const Metadata& meta, const std::vector<SweepRecord>& records) {
    for (const MetaEntry& m : meta) os << "# " << m.key << " = " << m.value << '\n';
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
    os << '\n';
    for (const SweepRecord& r : records) {
        const auto f = record_fields(r);
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
        os << '\n';
    }
}

struct CsvDocument {
    Metadata meta;
    std::vector<SweepRecord> records;
};

inline CsvDocument read_csv(std::istream& is) {
    CsvDocument doc;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) doc.meta.push_back({line.substr(2, eq - 2), line.substr(eq + 3)});
            continue;
        }
        const auto cells = detail::split(line, ',');
        if (cells.size() != kCsvColumns.size()) throw ConfigError("read_csv: wrong column count");
        if (!header_seen) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i] != kCsvColumns[i]) throw ConfigError("read_csv: unexpected header '" + cells[i] + "'");
            header_seen = true;
            continue;
        }
        SweepRecord r;
        std::size_t k = 0;
        r.axis1 = detail::parse_double(cells[k++], "axis1");
        r.axis2 = detail::parse_optional(cells[k++]);
        r.stable = cells[k++] == "1";
        for (auto* x : {&r.e_n, &r.s_ab, &r.s_ba, &r.gip, &r.mancini}) *x = detail::parse_optional(cells[k++]);
        for (auto& v : r.var) v = detail::parse_optional(cells[k++]);
        for (auto* x : {&r.sq_db_x1, &r.r_d, &r.r_o1, &r.r_o2, &r.r_min}) *x = detail::parse_optional(cells[k++]);
        doc.records.push_back(r);
    }
    return doc;
}

inline nlohmann::ordered_json to_json(const Metadata& meta, const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json out;
    out["meta"] = nlohmann::ordered_json::object();
    for (const MetaEntry& m : meta) out["meta"][m.key] = detail::meta_value(m.value);
    out["records"] = nlohmann::ordered_json::array();
    for (const SweepRecord& r : records) {
        nlohmann::ordered_json row;
        row["axis1"] = r.axis1;
        row["axis2"] = detail::json_field(r.axis2);
        row["stable"] = r.stable;
        row["E_N"] = detail::json_field(r.e_n);
        row["S_ab"] = detail::json_field(r.s_ab);
        row["S_ba"] = detail::json_field(r.s_ba);
        row["GIP"] = detail::json_field(r.gip);
        row["mancini"] = detail::json_field(r.mancini);
        for (std::size_t i = 0; i < 6; ++i) row[std::string(kCsvColumns[8 + i])] = detail::json_field(r.var[i]);
        row["sq_db_x1"] = detail::json_field(r.sq_db_x1);
        row["R_d"] = detail::json_field(r.r_d);
        row["R_o1"] = detail::json_field(r.r_o1);
        row["R_o2"] = detail::json_field(r.r_o2);
        row["R_min"] = detail::json_field(r.r_min);
        out["records"].push_back(std::move(row));
    }
    return out;
}

inline nlohmann::ordered_json bipartite_json(const BipartiteReport& b) {
    nlohmann::ordered_json j;
    j["E_N"] = b.entanglement;
    j["S_ab"] = b.steering_ab;
    j["S_ba"] = b.steering_ba;
    j["GIP"] = detail::json_field(b.gip);
    j["mancini"] = b.mancini_product;
    j["mancini_entangled"] = mancini_entangled(b.mancini_product);
    j["stable"] = b.stable;
    return j;
}

// Full report for one operating point. `report` is nullopt when unstable.
inline nlohmann::ordered_json point_json(const Metadata& meta, const std::optional<PointReport>& report) {
    nlohmann::ordered_json out;
    out["meta"] = nlohmann::ordered_json::object();
    for (const MetaEntry& m : meta) out["meta"][m.key] = detail::meta_value(m.value);
    out["stable"] = report.has_value();
    if (!report) {
        for (const char* k : {"variances", "sq_db_x1", "pairs", "tripartite"}) out[k] = nullptr;
        return out;
    }

    nlohmann::ordered_json var;
    for (std::size_t i = 0; i < 6; ++i) var[std::string(kCsvColumns[8 + i])] = report->variances[i];
    out["variances"] = var;
    out["sq_db_x1"] = report->squeezing_db_x1;

    nlohmann::ordered_json pairs;
    pairs["o1_o2"] = bipartite_json(report->magnons);
    pairs["d_o1"] = bipartite_json(report->cavity_o1);
    pairs["d_o2"] = bipartite_json(report->cavity_o2);
    out["pairs"] = pairs;

    const TripartiteReport& t = report->tripartite;
    nlohmann::ordered_json tri;
    tri["R_d"] = t.residual[0];
    tri["R_o1"] = t.residual[1];
    tri["R_o2"] = t.residual[2];
    tri["R_min"] = t.r_min;
    tri["R_min_raw"] = t.r_min_raw;
    tri["C_d|o1o2"] = t.one_vs_two[0];
    tri["C_o1|o2d"] = t.one_vs_two[1];
    tri["C_o2|do1"] = t.one_vs_two[2];
    tri["C_d|o1"] = t.contangle_d_o1;
    tri["C_d|o2"] = t.contangle_d_o2;
    tri["C_o1|o2"] = t.contangle_o1_o2;
    out["tripartite"] = tri;
    return out;
}

}  // namespace magnonics
