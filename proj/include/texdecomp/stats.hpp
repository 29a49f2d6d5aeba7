#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "texdecomp/field.hpp"

namespace texdecomp {

/// Iteration bookkeeping shared by every solver.
///
/// For a single inner solve (projector, split Bregman) outer_iters is the
/// number of fixed-point sweeps and inner_iters_total equals it. For the
/// alternating decompositions outer_iters counts alternations and
/// inner_iters_total sums the iterations of every nested solve.
struct RunStats {
    int outer_iters = 0;
    long inner_iters_total = 0;
    bool converged = false;
    double wall_time = 0.0;  // seconds
    std::vector<double> change_trace;
    std::vector<std::string> warnings;

    /// Fold a nested solve into this one.
    void absorb(const RunStats& inner) {
        inner_iters_total += inner.inner_iters_total;
        for (const auto& w : inner.warnings) warnings.push_back(w);
    }
};

/// A solver output together with its bookkeeping.
struct FieldResult {
    ScalarField value;
    RunStats stats;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace texdecomp
