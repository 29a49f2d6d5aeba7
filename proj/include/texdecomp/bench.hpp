#pragma once

// Side-by-side timing of the two decomposition pipelines on one input.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "texdecomp/decompose.hpp"

namespace texdecomp {

struct BenchRow {
    Method method;
    RunStats stats;
    double final_energy = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    bool all_converged() const {
        for (const auto& r : rows) {
            if (!r.stats.converged) return false;
        }
        return true;
    }

    const BenchRow& faster() const {
        return rows[0].stats.wall_time <= rows[1].stats.wall_time ? rows[0] : rows[1];
    }

    std::string csv() const {
        std::ostringstream out;
        out << "method,outer_iters,inner_iters_total,wall_time_s,final_fau_energy\n";
        char energy[64];
        for (const auto& r : rows) {
            std::snprintf(energy, sizeof energy, "%.17g", r.final_energy);
            out << to_string(r.method) << ',' << r.stats.outer_iters << ',' << r.stats.inner_iters_total << ','
                << r.stats.wall_time << ',' << energy << '\n';
        }
        return out.str();
    }

    std::string summary() const {
        return std::string("faster=") + to_string(faster().method) + " chambolle_s=" +
               std::to_string(rows[0].stats.wall_time) + " bregman_s=" + std::to_string(rows[1].stats.wall_time);
    }
};

/// Runs chambolle then bregman with the same lambda, mu and outer tolerances.
/// `base.method` and the inner parameter block for the other method are ignored.
inline BenchReport run_benchmark(const ScalarField& f, const DecompParams& base) {
    BenchReport report;
    for (Method m : {Method::chambolle, Method::bregman}) {
        DecompParams p = base;
        p.method = m;
        const DecompositionResult r = decompose(f, p);
        report.rows.push_back({m, r.stats, fau_energy(r.cartoon, r.texture, f, p.lambda, p.mu)});
    }
    return report;
}

}  // namespace texdecomp
