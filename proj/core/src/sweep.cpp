#include "diracstep/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <future>
#include <ostream>

#include "diracstep/entanglement.hpp"
#include "diracstep/kinematics.hpp"
#include "diracstep/scattering.hpp"

namespace diracstep {
namespace {

// Per-sweep constants: the medium, the incident pair, and the critical-angle
// description the chirality weights need.
struct SweepContext {
    MediumParams medium;
    IncidentAmplitudes inc;
    double sin_theta_c_eff = 0.0;
    ZoneSide side = ZoneSide::Diffusion;
};

SweepContext make_context(const StepConfig& config) {
    SweepContext ctx;
    ctx.medium.mu = config.mu;
    ctx.medium.nu = barrier_nu(config.barrier, config.mu);
    ctx.inc = config.incident();
    if (config.barrier.kind == Barrier::Kind::Critical) {
        ctx.sin_theta_c_eff = config.barrier.sin_theta_c;
        ctx.side = config.barrier.side;
    } else {
        // A nu-parameterized step may have no critical angle inside (0, 1];
        // the clamped square root still feeds the transmitted chirality
        // weight correctly because only its square enters.
        const double s2c = critical_sine_squared(ctx.medium);
        ctx.sin_theta_c_eff = std::sqrt(std::max(s2c, 0.0));
        ctx.side = ctx.medium.nu <= 1.0 ? ZoneSide::Diffusion : ZoneSide::Klein;
    }
    return ctx;
}

SweepRow evaluate_row(const SweepContext& ctx, double sin_theta) {
    SweepRow row;
    row.sin_theta = sin_theta;
    row.zone = classify(ctx.medium, sin_theta);
    try {
        const RefractionResult refr = refract(ctx.medium, sin_theta);
        const AParam a = compute_A_for_medium(ctx.medium, sin_theta);
        const ScatteredAmplitudes amps = scatter(a, sin_theta, refr, ctx.inc);
        const double f = flux_ratio(ctx.medium, sin_theta);
        row.r2_total = amps.reflected_norm_sq();
        row.t2_flux = f * amps.transmitted_norm_sq();
        row.conservation_residual = conservation_residual(amps, f);
        const KappaFactor kr = kappa(Wave::Reflected, ctx.medium.mu, ctx.medium.nu);
        row.s_r = von_neumann_entropy(reduced_spectrum(kr, amps.r_plus, amps.r_minus));
        row.chi_r = chirality(Wave::Reflected, ctx.medium.mu, ctx.sin_theta_c_eff,
                              ctx.side, amps.r_plus, amps.r_minus);
        if (is_oscillatory(row.zone)) {
            const KappaFactor kt =
                kappa(Wave::Transmitted, ctx.medium.mu, ctx.medium.nu);
            row.s_t = von_neumann_entropy(
                reduced_spectrum(kt, amps.t_plus, amps.t_minus));
            row.chi_t = chirality(Wave::Transmitted, ctx.medium.mu,
                                  ctx.sin_theta_c_eff, ctx.side, amps.t_plus,
                                  amps.t_minus);
        }
    } catch (const std::exception& e) {
        row.note = e.what();
    }
    return row;
}

// %.17g under the "C" locale: shortest form that round-trips a double, "."
// decimal separator.
void append_cell(std::string& line, const std::optional<double>& value) {
    line.push_back(',');
    if (!value) return;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *value);
    line += buf;
}

}  // namespace

std::vector<double> sweep_grid(const StepConfig& config) {
    const int n = std::max(config.theta_samples, 1);
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = config.sin_theta_max * (i + 1) / n;
    return grid;
}

std::vector<SweepRow> run_sweep(const StepConfig& config, int threads) {
    const SweepContext ctx = make_context(config);
    const std::vector<double> grid = sweep_grid(config);
    const std::size_t n = grid.size();
    std::vector<SweepRow> rows(n);
    const std::size_t workers =
        threads <= 1 ? 1
                     : std::min(static_cast<std::size_t>(threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = evaluate_row(ctx, grid[i]);
        return rows;
    }
    // Contiguous chunks into a preallocated vector: each slot is written by
    // exactly one task, so the result matches the serial order bitwise.
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        const std::size_t end = std::min(begin + chunk, n);
        tasks.push_back(std::async(std::launch::async, [&ctx, &grid, &rows, begin, end] {
            for (std::size_t i = begin; i < end; ++i)
                rows[i] = evaluate_row(ctx, grid[i]);
        }));
    }
    for (auto& task : tasks) task.get();
    return rows;
}

std::string csv_header() {
    return "sin_theta,zone_tag,R2_total,T2_flux,S_R,S_T,chi_R,chi_T,"
           "conservation_residual";
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << csv_header() << '\n';
    std::string line;
    for (const SweepRow& row : rows) {
        char head[40];
        std::snprintf(head, sizeof head, "%.17g", row.sin_theta);
        line.assign(head);
        line.push_back(',');
        line += zone_tag(row.zone);
        append_cell(line, row.r2_total);
        append_cell(line, row.t2_flux);
        append_cell(line, row.s_r);
        append_cell(line, row.s_t);
        append_cell(line, row.chi_r);
        append_cell(line, row.chi_t);
        append_cell(line, row.conservation_residual);
        line.push_back('\n');
        os << line;
    }
}

}  // namespace diracstep
