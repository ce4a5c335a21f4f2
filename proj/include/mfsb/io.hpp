#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mfsb/growth.hpp"
#include "mfsb/pressure.hpp"
#include "mfsb/spectrum.hpp"
#include "mfsb/stern_brocot.hpp"

namespace mfsb::io {

// Floats print with 17 significant digits so CSV re-parses losslessly.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_vertices_csv(std::ostream& os, unsigned n, unsigned cap = kDefaultDepthCap) {
    os << "index,num,den\n";
    const SternBrocotLevel lvl = level(n, cap);
    for (std::size_t k = 0; k < lvl.size(); ++k) {
        os << (k + 1) << ',' << lvl[k].num().get_str() << ',' << lvl[k].den().get_str() << '\n';
    }
}

inline void write_intervals_csv(std::ostream& os, unsigned n, unsigned cap = kDefaultDepthCap) {
    os << "index,left_num,left_den,right_num,right_den\n";
    IntervalStream stream(n, 0, cap);
    Interval iv;
    while (stream.next(iv)) {
        os << iv.index << ',' << iv.left.num().get_str() << ',' << iv.left.den().get_str() << ','
           << iv.right.num().get_str() << ',' << iv.right.den().get_str() << '\n';
    }
}

inline void write_pressure_csv(std::ostream& os, const PressureCurve& c, unsigned n_or_degree) {
    os << "theta,value,method,n_or_degree,error_bound\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << fmt(c.theta[i]) << ',' << fmt(c.value[i]) << ',' << method_name(c.method) << ','
           << n_or_degree << ',' << fmt(c.error_bound[i]) << '\n';
    }
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumCurve& sc) {
    os << "alpha,tau,t_of_alpha,alpha_star,alpha_sharp,status\n";
    double prev = 0.0;
    bool have_prev = false;
    for (const auto& p : sc.points) {
        const char* status = p.convention ? "convention" : (p.clipped ? "clipped" : "ok");
        std::string monotone;
        if (have_prev && !p.convention) {
            const bool decreasing = p.tau < prev;
            if (sc.kind == SpectrumKind::farey_tau && !decreasing) monotone = "+nonmonotone";
        }
        prev = p.tau;
        have_prev = true;
        os << fmt(p.alpha) << ',' << fmt(p.tau) << ',' << fmt(p.t_of_alpha) << ','
           << p.alpha_star.str() << ',' << p.alpha_sharp.str() << ',' << status << monotone << '\n';
    }
}

inline nlohmann::json spectrum_json(const SpectrumCurve& sc) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : sc.points) {
        nlohmann::json row;
        row["alpha"] = p.alpha;
        row["tau"] = p.tau;
        row["t_of_alpha"] = p.t_of_alpha;
        if (p.alpha_star.is_inf) row["alpha_star"] = "inf";
        else row["alpha_star"] = p.alpha_star.value;
        if (p.alpha_sharp.is_inf) row["alpha_sharp"] = "inf";
        else row["alpha_sharp"] = p.alpha_sharp.value;
        rows.push_back(row);
    }
    nlohmann::json out;
    out["kind"] = kind_name(sc.kind);
    out["source"] = sc.source;
    out["points"] = rows;
    return out;
}

inline nlohmann::json rate_report_json(const RateReport& r) {
    nlohmann::json ell;
    ell["l1"] = r.l1;
    ell["l2"] = r.l2;
    ell["l3"] = r.l3;
    ell["l4"] = r.l4;
    if (r.l5) ell["l5"] = *r.l5; else ell["l5"] = nullptr;
    if (r.l6) ell["l6"] = *r.l6; else ell["l6"] = nullptr;
    nlohmann::json out;
    out["input"] = r.input;
    out["depth"] = r.requested_depth;
    out["k"] = r.k;
    out["ell"] = ell;
    out["proxies"] = {{"minus_log_Tn", r.minus_log_Tn},
                      {"two_log_qk", r.two_log_qk},
                      {"tau_k", r.tau_k}};
    out["truncated"] = r.truncated;
    out["terminal"] = r.terminal;
    return out;
}

inline void write_monte_carlo_csv(std::ostream& os, const MonteCarloResult& r) {
    os << "seed,samples,depth,mean,stderr\n";
    os << r.seed << ',' << r.samples << ',' << r.depth << ',' << fmt(r.mean) << ','
       << fmt(r.stderr_of_mean) << '\n';
}

// JSON forms of the word types: digit words as integer arrays, run-length
// words as {"lead": "A"|"B", "blocks": [...]}.
inline nlohmann::json cf_word_json(const CFWord& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < w.size(); ++i) arr.push_back(w[i]);
    return arr;
}

inline CFWord cf_word_from_json(const nlohmann::json& j) {
    std::vector<std::uint64_t> d;
    for (const auto& v : j) d.push_back(v.get<std::uint64_t>());
    return CFWord(std::move(d));
}

inline nlohmann::json runlength_json(const RunLengthWord& w) {
    nlohmann::json out;
    out["lead"] = w.lead == Letter::A ? "A" : "B";
    nlohmann::json arr = nlohmann::json::array();
    for (auto b : w.blocks) arr.push_back(b);
    out["blocks"] = arr;
    return out;
}

inline RunLengthWord runlength_from_json(const nlohmann::json& j) {
    const std::string lead = j.at("lead").get<std::string>();
    if (lead != "A" && lead != "B") throw std::invalid_argument("runlength_from_json: bad lead");
    std::vector<std::uint64_t> blocks;
    for (const auto& v : j.at("blocks")) blocks.push_back(v.get<std::uint64_t>());
    return RunLengthWord(lead == "A" ? Letter::A : Letter::B, std::move(blocks));
}

} // namespace mfsb::io
