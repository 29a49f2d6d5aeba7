// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Each criterion must also finish inside its runtime budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "oracles.hpp"
#include "texdecomp/texdecomp.hpp"

using namespace texdecomp;
namespace tt = texdecomp::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome operator_exactness() {
    tt::Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t h = rng.index(4, 32), w = rng.index(6, 32);
        const ScalarField u = tt::random_field(h, w, rng);
        const VectorField p = tt::random_vector_field(h, w, rng);
        const double lhs = inner_product(gradient(u), p);
        const double rhs = -inner_product(u, divergence(p));
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return {worst <= 1e-12, "max relative adjointness error " + fmt("%.3g", worst)};
}

Outcome rof_oracle_equivalence() {
    Outcome o;
    double worst_agree = 0.0, worst_energy = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ScalarField f = tt::noisy_disk(16, seed);
        for (double lambda : {5.0, 20.0, 100.0}) {
            ProjectorParams pp;
            pp.tol = 1e-8;
            pp.max_iters = 1'000'000;
            const ScalarField cham = rof_chambolle(f, lambda, pp).value;

            BregmanParams bp;
            bp.tol = 1e-7;
            bp.max_iters = 100'000;
            const ScalarField fourier = p_rof(f, lambda, bp).value;
            bp.u_update = UUpdate::gauss_seidel;
            const ScalarField gs = p_rof(f, lambda, bp).value;

            worst_agree = std::max({worst_agree, relative_l2(fourier, cham), relative_l2(gs, cham)});

            const double ref = tt::subgradient_rof(f, lambda).best_energy;
            for (const ScalarField* u : {&cham, &fourier, &gs}) {
                worst_energy = std::max(worst_energy, std::abs(tt::naive_rof_energy(*u, f, lambda) - ref) / ref);
            }
        }
    }
    o.pass = worst_agree <= 1e-2 && worst_energy <= 5e-3;
    o.detail = "max cross-solver rel L2 " + fmt("%.3g", worst_agree) + ", max energy gap to oracle " +
               fmt("%.3g", worst_energy);
    return o;
}

BregmanParams tight_bregman() {
    BregmanParams p;
    p.tol = 1e-6;
    p.max_iters = 100'000;
    return p;
}

Outcome gprox_lambda_independence() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScalarField f = tt::textured_field(16, seed);
        const ScalarField base = gnorm_prox(f, 1.0, 0.1, tight_bregman()).value;
        for (double lambda : {0.1, 10.0, 100.0}) {
            worst = std::max(worst, relative_l2(gnorm_prox(f, lambda, 0.1, tight_bregman()).value, base));
        }
    }
    return {worst <= 1e-3, "max rel L2 deviation across lambda " + fmt("%.3g", worst)};
}

Outcome projector_equivalence() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScalarField f = tt::textured_field(16, seed);
        ProjectorParams pp;
        pp.mu = 0.1;
        pp.tol = 1e-8;
        pp.max_iters = 1'000'000;
        const ScalarField ref = project_G(f, pp).value;
        worst = std::max(worst, relative_l2(gnorm_prox(f, 1.0, 0.1, tight_bregman()).value, ref));
    }
    return {worst <= 1e-2, "max rel L2 gnorm_prox vs project_G " + fmt("%.3g", worst)};
}

Outcome decomposition_separation() {
    const SyntheticImage img = generate_synthetic(SyntheticSpec{});
    const auto cham = decompose(img.f, DecompParams::with_defaults(Method::chambolle, 1000.0, 1000.0));
    const auto breg = decompose(img.f, DecompParams::with_defaults(Method::bregman, 1000.0, 1000.0));
    const double cv[2] = {tt::pearson(cham.texture, img.texture), tt::pearson(breg.texture, img.texture)};
    const double cu[2] = {tt::pearson(cham.cartoon, img.cartoon), tt::pearson(breg.cartoon, img.cartoon)};
    const double du = relative_l2(breg.cartoon, cham.cartoon);
    const double dv = relative_l2(breg.texture, cham.texture);
    Outcome o;
    o.pass = std::min(cv[0], cv[1]) >= 0.8 && std::min(cu[0], cu[1]) >= 0.9 && du <= 5e-2 && dv <= 5e-2;
    o.detail = "corr(v,texture) chambolle " + fmt("%.3f", cv[0]) + " bregman " + fmt("%.3f", cv[1]) +
               "; corr(u,cartoon) chambolle " + fmt("%.3f", cu[0]) + " bregman " + fmt("%.3f", cu[1]) +
               "; cross-method u " + fmt("%.3g", du) + " v " + fmt("%.3g", dv) + "; converged " +
               (cham.stats.converged ? "yes" : "no") + "/" + (breg.stats.converged ? "yes" : "no");
    return o;
}

Outcome speed_direction() {
    SyntheticSpec spec;
    spec.height = spec.width = 256;
    spec.texture_freq = 32;
    const SyntheticImage img = generate_synthetic(spec);
    const auto cham = decompose(img.f, DecompParams::with_defaults(Method::chambolle, 1000.0, 1000.0, 1e-3));
    const auto breg = decompose(img.f, DecompParams::with_defaults(Method::bregman, 1000.0, 1000.0, 1e-3));
    Outcome o;
    o.pass = breg.stats.wall_time < cham.stats.wall_time && breg.stats.inner_iters_total < cham.stats.inner_iters_total;
    o.detail = "wall time chambolle " + fmt("%.2f", cham.stats.wall_time) + " s, bregman " +
               fmt("%.2f", breg.stats.wall_time) + " s; inner iterations chambolle " +
               std::to_string(cham.stats.inner_iters_total) + ", bregman " +
               std::to_string(breg.stats.inner_iters_total);
    return o;
}

Outcome io_bit_exactness() {
    tt::Rng rng(7);
    int pgm_ok = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t h = rng.index(1, 64), w = rng.index(1, 64);
        const std::string header = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
        Bytes file(header.begin(), header.end());
        for (std::size_t k = 0; k < h * w; ++k) file.push_back(static_cast<std::uint8_t>(rng.index(0, 255)));
        if (write_pgm(read_pgm(file), 255) == file) ++pgm_ok;
    }
    const ScalarField values = tt::random_field(17, 23, rng, -1e6, 1e6);
    const Bytes raw = write_f64(values);
    const bool f64_ok = read_f64(raw) == values && write_f64(read_f64(raw)) == raw;
    return {pgm_ok == 50 && f64_ok,
            std::to_string(pgm_ok) + "/50 PGM round trips identical; f64 round trip " + (f64_ok ? "exact" : "differs")};
}

std::string strip_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        if (cols.size() > 3) cols.erase(cols.begin() + 3);
        for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
        out += '\n';
    }
    return out;
}

Outcome determinism() {
    const char* argv[] = {"texdecomp", "bench", "--synthetic", "64", "--threads", "1", "--lambda", "1000", "--mu", "1000"};
    std::string csv[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
        std::ostringstream out, err;
        codes[k] = cli::run(int(std::size(argv)), argv, out, err);
        const std::string text = out.str();
        csv[k] = text.substr(0, text.rfind("faster="));
    }
    const bool same = strip_wall_time(csv[0]) == strip_wall_time(csv[1]);
    const bool shaped = std::count(csv[0].begin(), csv[0].end(), '\n') == 3;
    return {same && shaped && codes[0] == codes[1],
            std::string("CSV without wall_time_s ") + (same ? "identical" : "differs") + ", exit codes " +
                std::to_string(codes[0]) + "/" + std::to_string(codes[1])};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "operator exactness", 1.0, operator_exactness},
        {2, "ROF oracle equivalence", 120.0, rof_oracle_equivalence},
        {3, "G-prox lambda independence", 60.0, gprox_lambda_independence},
        {4, "projector equivalence", 60.0, projector_equivalence},
        {5, "decomposition separation", 120.0, decomposition_separation},
        {6, "speed direction", 300.0, speed_direction},
        {7, "I/O bit-exactness", 5.0, io_bit_exactness},
        {8, "bench determinism", 600.0, determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed < c.budget_s;
        const bool pass = o.pass && in_budget;
        if (!pass) ++failed;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << "; "
                  << fmt("%.2f", elapsed) << " s of " << fmt("%g", c.budget_s) << " s budget"
                  << (in_budget ? "" : " EXCEEDED") << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
