#ifndef PIPEROUTE_BENCHMARK_HPP
#define PIPEROUTE_BENCHMARK_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "piperoute/instances.hpp"

namespace piperoute {

struct BenchmarkMethods {
    bool exact = true;
    bool h1 = true;
    bool h2 = true;
};

struct BenchmarkLimits {
    double time_limit_s = 300.0;
    int h2_maxit = 20;
    std::optional<int> h2_fallback_density;
    int threads = 1;
    std::ostream* log = nullptr;
};

// Runs the requested methods on every instance and emits a CSV with one row
// per (d, s, o) group, one summary row per density, and a total row.
// Columns: d,s,o,Vars,Cons,Solved,GAP_Ex,GAP_H1,GAP_H2,Time_Ex,Time_H1,Time_H2.
// Gaps of the heuristics are percent deviations from the best exact
// incumbent; the exact gap is the final MIP gap.
std::string run_benchmark(const std::vector<RandomInstanceSpec>& specs,
                          const BenchmarkMethods& methods, const BenchmarkLimits& limits);

} // namespace piperoute

#endif
