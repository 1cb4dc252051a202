#include "tcm/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace tcm::cli {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

const std::vector<std::string>& diagnostics_columns() {
    static const std::vector<std::string> cols = {
        "time",       "E",          "D_cum",          "energy_residual",
        "l2_u",       "l2_v",       "l2_theta",       "gradh_u",
        "lambda_alpha_v", "grad_theta", "lbeta1_u",   "d3_u",
        "grad_u",     "grad_v",     "lap_theta",      "lap_u",
        "lap_v",      "lambda_s_u", "lambda_s_v",     "lambda_s_theta",
        "damping_alias_defect",     "cancel_a",       "cancel_b",
        "cancel_c",   "cancel_d",   "cancel_e",
    };
    return cols;
}

std::string diagnostics_header() {
    std::string out;
    const auto& cols = diagnostics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i)
            out += ',';
        out += cols[i];
    }
    out += '\n';
    return out;
}

std::string diagnostics_row(const diag::DiagnosticsRecord& r) {
    const double values[] = {
        r.time,      r.e,          r.d_cum,      r.energy_residual,
        r.l2_u,      r.l2_v,       r.l2_theta,   r.gradh_u,
        r.lambda_alpha_v, r.grad_theta, r.lbeta1_u, r.d3_u,
        r.grad_u,    r.grad_v,     r.lap_theta,  r.lap_u,
        r.lap_v,     r.lambda_s_u, r.lambda_s_v, r.lambda_s_theta,
        r.damping_alias_defect,    r.cancel[0],  r.cancel[1],
        r.cancel[2], r.cancel[3],  r.cancel[4],
    };
    std::string out;
    bool first = true;
    for (double v : values) {
        if (!first)
            out += ',';
        first = false;
        out += format_double(v);
    }
    out += '\n';
    return out;
}

} // namespace tcm::cli
