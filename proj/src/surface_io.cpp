#include "srgbode/surface_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "srgbode/version.hpp"

namespace srgbode {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader = "omega,U,r_omega_A,r_partial_omega_A,A_bound,gamma,feasible";

double parse_field(const std::string& tok) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw std::invalid_argument("surface CSV: bad number '" + tok + "'");
    return v;
}

json input_json(const PeriodicInput& input) {
    json terms = json::array();
    for (const auto& h : input.terms)
        terms.push_back({{"k", h.k}, {"amplitude", h.amplitude}, {"phase", h.phase}});
    return {{"omega", input.omega}, {"terms", terms}};
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string surface_to_csv(const GainSurface& surface) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : surface.records) {
        out << format_double(r.omega) << ',' << format_double(r.U) << ','
            << format_double(r.r_omega_A) << ',' << format_double(r.r_partial_omega_A) << ','
            << format_double(r.A_bound) << ',' << format_double(r.gamma) << ','
            << (r.feasible ? '1' : '0') << '\n';
    }
    return out.str();
}

std::vector<GainRecord> parse_surface_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("surface CSV: unexpected header");
    std::vector<GainRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        std::vector<std::string> fields;
        while (std::getline(row, tok, ',')) fields.push_back(tok);
        if (fields.size() != 7) throw std::invalid_argument("surface CSV: bad row '" + line + "'");
        GainRecord r;
        r.omega = parse_field(fields[0]);
        r.U = parse_field(fields[1]);
        r.r_omega_A = parse_field(fields[2]);
        r.r_partial_omega_A = parse_field(fields[3]);
        r.A_bound = parse_field(fields[4]);
        r.gamma = parse_field(fields[5]);
        r.feasible = fields[6] == "1";
        records.push_back(r);
    }
    return records;
}

std::string surface_metadata_json(const GainSurface& surface, const RunTimings& timings) {
    const auto& cfg = surface.config;
    json meta;
    meta["tool"] = "srg-bode";
    meta["version"] = kVersion;
    meta["system"] = {{"num", cfg.system.num()}, {"den", cfg.system.den()}};
    meta["nonlinearity"] = cfg.nonlinearity.name();
    meta["grid"] = {{"omega_count", cfg.omega_grid.size()},
                    {"omega_min", cfg.omega_grid.front()},
                    {"omega_max", cfg.omega_grid.back()},
                    {"U_count", cfg.u_grid.size()},
                    {"U_min", cfg.u_grid.front()},
                    {"U_max", cfg.u_grid.back()}};
    meta["hypotheses"] = {{"stable", true},
                          {"strictly_proper", true},
                          {"odd", true},
                          {"wellposedness_r", surface.wellposedness_r},
                          {"tau_sweep_min_dist", surface.tau_sweep_min},
                          {"tau_sweep_argmin", surface.tau_sweep_argmin}};
    meta["tau_steps"] = cfg.tau_steps;
    meta["bisection_tol"] = cfg.bisection_tol;
    meta["timings_ms"] = {{"surface", timings.surface_ms}};
    return meta.dump(2) + "\n";
}

std::string validation_report_json(const ValidationReport& report) {
    json doc;
    doc["tool"] = "srg-bode";
    doc["version"] = kVersion;
    doc["seed"] = report.seed;
    doc["margin"] = report.margin;
    doc["total_samples"] = report.total_samples;
    doc["total_violations"] = report.total_violations;
    json points = json::array();
    for (const auto& p : report.points) {
        json samples = json::array();
        for (const auto& s : p.samples) {
            samples.push_back({{"input", input_json(s.input)},
                               {"measured_gain", s.measured_gain},
                               {"gain_bound", s.gain_bound},
                               {"measured_sup", s.measured_sup},
                               {"sup_bound", s.sup_bound},
                               {"converged", s.converged},
                               {"ok", s.ok}});
        }
        points.push_back({{"omega", p.omega},
                          {"U", p.U},
                          {"record_index", p.record_index},
                          {"violations", p.violations},
                          {"samples", samples}});
    }
    doc["points"] = points;
    return doc.dump(2) + "\n";
}

std::string plot_script_text() {
    return R"PY(#!/usr/bin/env python3
"""Render the gain and amplitude surfaces from a surface CSV.

Usage: python3 plot_surface.py [surface.csv]
Writes surface_gamma.png and surface_amplitude.png next to the CSV.
"""
import csv
import math
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "surface.csv"
rows = []
with open(path, newline="") as f:
    for row in csv.DictReader(f):
        rows.append({k: float(v) if k != "feasible" else v == "1"
                     for k, v in row.items()})

omegas = sorted({r["omega"] for r in rows})
energies = sorted({r["U"] for r in rows})
gamma = np.full((len(energies), len(omegas)), np.nan)
amp = np.full((len(energies), len(omegas)), np.nan)
for r in rows:
    i = energies.index(r["U"])
    j = omegas.index(r["omega"])
    if r["feasible"] and math.isfinite(r["gamma"]):
        gamma[i, j] = r["gamma"]
    if math.isfinite(r["A_bound"]):
        amp[i, j] = r["A_bound"]

W, E = np.meshgrid(np.log10(omegas), np.log10(np.maximum(energies, 1e-300)))
outdir = os.path.dirname(os.path.abspath(path))

for data, label, fname in [(gamma, "gain bound", "surface_gamma.png"),
                           (amp, "amplitude bound", "surface_amplitude.png")]:
    fig = plt.figure(figsize=(7, 5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(W, E, data, cmap="viridis", linewidth=0)
    ax.set_xlabel("log10 omega [rad/s]")
    ax.set_ylabel("log10 U")
    ax.set_zlabel(label)
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, fname), dpi=150)
    plt.close(fig)
print("wrote surface_gamma.png and surface_amplitude.png")
)PY";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace srgbode
