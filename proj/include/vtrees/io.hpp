#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vtrees/bounds.hpp"
#include "vtrees/coefficients.hpp"
#include "vtrees/penrose.hpp"
#include "vtrees/rational.hpp"

namespace vtrees {

// Fixed 15-significant-digit decimal formatting; identical bytes for
// identical values across runs.
inline std::string fmt_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Write-temp-then-rename so readers never observe a half-written file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

inline std::string partition_report_text(const PartitionReport& rep) {
    std::string out;
    out += "penrose partition on [" + std::to_string(rep.n) + "]\n";
    out += "trees: " + std::to_string(rep.tree_count) + "\n";
    for (const auto& [size, count] : rep.extra_size_hist)
        out += "intervals with |extra| = " + std::to_string(size) + ": " + std::to_string(count) + "\n";
    out += "sum of 2^|extra|: " + std::to_string(rep.interval_sum) + "\n";
    out += "connected graphs: " + std::to_string(rep.connected_count) + "\n";
    out += std::to_string(rep.uniquely_assigned) + "/" + std::to_string(rep.connected_count) +
           " covered, " + std::to_string(rep.violations.size()) + " violations\n";
    for (const auto& v : rep.violations) out += "violation: " + v + "\n";
    return out;
}

inline std::string partition_report_json(const PartitionReport& rep) {
    nlohmann::ordered_json j;
    j["n"] = rep.n;
    j["trees"] = rep.tree_count;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [size, count] : rep.extra_size_hist) hist[std::to_string(size)] = count;
    j["interval_size_counts"] = hist;
    j["interval_sum"] = rep.interval_sum;
    j["connected_graphs"] = rep.connected_count;
    j["uniquely_assigned"] = rep.uniquely_assigned;
    j["violations"] = rep.violations;
    return j.dump(2) + "\n";
}

// Exact fractions; lossless.
inline std::string coefficient_table_json(const CoefficientTable& t) {
    nlohmann::ordered_json j;
    j["model"] = t.model_id;
    j["nmax"] = t.nmax;
    j["route"] = t.route;
    nlohmann::ordered_json bs = nlohmann::ordered_json::array();
    for (size_t i = 1; i < t.b.size(); ++i) bs.push_back(rational_to_string(t.b[i]));
    if (!t.b.empty()) j["b"] = bs;
    nlohmann::ordered_json betas = nlohmann::ordered_json::array();
    for (size_t i = 1; i < t.beta.size(); ++i) betas.push_back(rational_to_string(t.beta[i]));
    j["beta"] = betas;
    return j.dump(2) + "\n";
}

// Decimal approximations, flagged lossy in the header comment.
inline std::string coefficient_table_csv(const CoefficientTable& t) {
    std::string out = "# model=" + t.model_id + " route=" + t.route +
                      " (decimal approximations; lossy, use JSON for exact fractions)\n";
    out += "n,b_n,beta_n\n";
    for (int n = 1; n <= t.nmax; ++n) {
        out += std::to_string(n) + ",";
        if (n < static_cast<int>(t.b.size())) out += fmt_g15(to_double(t.b[static_cast<size_t>(n)]));
        out += "," + fmt_g15(to_double(t.beta[static_cast<size_t>(n)])) + "\n";
    }
    return out;
}

inline std::string bound_result_csv_header() {
    return "u,t,c,alpha,radius_coeff,residual_c,residual_alpha\n";
}

inline std::string bound_result_csv_row(const BoundResult& r) {
    return fmt_g15(r.u) + "," + fmt_g15(r.t) + "," + fmt_g15(r.c) + "," + fmt_g15(r.alpha) + "," +
           fmt_g15(r.radius_coeff) + "," + fmt_g15(r.residual_c) + "," + fmt_g15(r.residual_alpha) + "\n";
}

}  // namespace vtrees
