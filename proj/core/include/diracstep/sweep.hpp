#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diracstep/types.hpp"

namespace diracstep {

// One point of a sin(theta) sweep. Optional fields are empty when the
// quantity is undefined there: s_t/chi_t on every evanescent row, the rest
// only if the point failed outright (note then carries the error text).
struct SweepRow {
    double sin_theta = 0.0;
    Zone zone = Zone::DiffusionOscillatory;
    std::optional<double> r2_total;  // |R+|^2 + |R-|^2
    std::optional<double> t2_flux;   // flux_ratio * (|T+|^2+|T-|^2), signed
    std::optional<double> s_r;
    std::optional<double> s_t;
    std::optional<double> chi_r;
    std::optional<double> chi_t;
    std::optional<double> conservation_residual;
    std::string note;
};

// Uniform grid over (0, sin_theta_max]: the i-th of n samples sits at
// sin_theta_max * (i+1)/n.
std::vector<double> sweep_grid(const StepConfig& config);

// Evaluate the full observable set over the sweep grid. threads <= 1 runs
// serially; larger values split the grid into contiguous chunks evaluated
// concurrently. Rows are pure functions of their parameters, so the output
// is identical (bitwise) for any thread count, in grid order.
std::vector<SweepRow> run_sweep(const StepConfig& config, int threads = 1);

std::string csv_header();

// Fixed-schema CSV: 17-significant-digit doubles, "." decimal separator,
// "\n" newlines, empty cell for missing optionals. Byte-stable across runs.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace diracstep
