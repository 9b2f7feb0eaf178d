// Command line front end: single-point reports, sin(theta) sweeps, figure
// datasets with a plot script, and the self-verification battery.
//
// Exit codes: 0 success, 1 parameter error, 2 verification failure, 3 I/O.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diracstep/entanglement.hpp"
#include "diracstep/errors.hpp"
#include "diracstep/kinematics.hpp"
#include "diracstep/scattering.hpp"
#include "diracstep/spinors.hpp"
#include "diracstep/sweep.hpp"
#include "diracstep/types.hpp"
#include "diracstep/verify.hpp"

namespace ds = diracstep;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct IoFailure {
    std::string message;
};

struct ParamFailure {
    std::string message;
};

// Raw CLI/file values before they are folded into a StepConfig.
struct Params {
    double mu = 0.5;
    double nu = 0.0;
    double sin_theta_c = 0.0;
    std::string zone = "diffusion";
    double i_plus = 1.0;
    double i_minus = 0.0;
    double delta_omega = 0.0;
    int samples = 400;
    double theta_max = 0.999999;
    bool radians = false;
    std::string config_path;
};

struct ParamOpts {
    CLI::Option* mu = nullptr;
    CLI::Option* nu = nullptr;
    CLI::Option* sin_theta_c = nullptr;
    CLI::Option* zone = nullptr;
    CLI::Option* i_plus = nullptr;
    CLI::Option* i_minus = nullptr;
    CLI::Option* delta_omega = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* theta_max = nullptr;
};

ParamOpts add_config_options(CLI::App* cmd, Params& p) {
    ParamOpts o;
    o.mu = cmd->add_option("--mu", p.mu, "Mass-to-energy ratio, |mu| < 1");
    o.nu = cmd->add_option("--nu", p.nu, "Step height over energy, nu >= 0");
    o.sin_theta_c = cmd->add_option("--sin-theta-c", p.sin_theta_c,
                                    "Critical sine in (0, 1]; pairs with --zone");
    o.zone = cmd->add_option("--zone", p.zone,
                             "Step side for --sin-theta-c: diffusion|klein");
    o.i_plus = cmd->add_option("--i-plus", p.i_plus,
                               "Incident helicity-plus magnitude");
    o.i_minus = cmd->add_option("--i-minus", p.i_minus,
                                "Incident helicity-minus magnitude");
    o.delta_omega = cmd->add_option("--delta-omega", p.delta_omega,
                                    "Relative phase of the incident pair, radians");
    o.samples = cmd->add_option("--samples", p.samples,
                                "Sweep sample count (>= 2)");
    o.theta_max = cmd->add_option("--theta-max", p.theta_max,
                                  "Upper end of the sweep grid");
    cmd->add_flag("--radians", p.radians,
                  "Interpret angle inputs as radians instead of sine values");
    cmd->add_option("--config", p.config_path,
                    "JSON config file; explicit flags override its values");
    o.nu->excludes(o.sin_theta_c);
    o.sin_theta_c->excludes(o.nu);
    return o;
}

// Folds a JSON config file under already-parsed flags: a key applies only
// when the matching flag was not given.
void apply_config_file(Params& p, const ParamOpts& o) {
    if (p.config_path.empty()) return;
    std::ifstream is(p.config_path);
    if (!is)
        throw IoFailure{"cannot open config file: " + p.config_path};
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ParamFailure{"config file " + p.config_path + ": " + e.what()};
    }
    if (!j.is_object())
        throw ParamFailure{"config file " + p.config_path +
                           ": top level must be an object"};
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "mu") {
                if (!o.mu->count()) p.mu = value.get<double>();
            } else if (key == "nu") {
                if (!o.nu->count() && !o.sin_theta_c->count()) {
                    p.nu = value.get<double>();
                    o.nu->add_result(std::to_string(p.nu));  // mark present
                }
            } else if (key == "sin_theta_c") {
                if (!o.sin_theta_c->count() && !o.nu->count()) {
                    p.sin_theta_c = value.get<double>();
                    o.sin_theta_c->add_result(std::to_string(p.sin_theta_c));
                }
            } else if (key == "zone") {
                if (!o.zone->count()) p.zone = value.get<std::string>();
            } else if (key == "i_plus") {
                if (!o.i_plus->count()) p.i_plus = value.get<double>();
            } else if (key == "i_minus") {
                if (!o.i_minus->count()) p.i_minus = value.get<double>();
            } else if (key == "delta_omega") {
                if (!o.delta_omega->count())
                    p.delta_omega = value.get<double>();
            } else if (key == "samples") {
                if (!o.samples->count()) p.samples = value.get<int>();
            } else if (key == "theta_max") {
                if (!o.theta_max->count()) p.theta_max = value.get<double>();
            } else {
                throw ParamFailure{"config file " + p.config_path +
                                   ": unknown key \"" + key + "\""};
            }
        } catch (const json::exception& e) {
            throw ParamFailure{"config file " + p.config_path + ", key \"" +
                               key + "\": " + e.what()};
        }
    }
    if (j.contains("nu") && j.contains("sin_theta_c"))
        throw ParamFailure{"config file " + p.config_path +
                           ": give either nu or sin_theta_c, not both"};
}

double as_sine(double value, bool radians, const char* what) {
    const double s = radians ? std::sin(value) : value;
    if (!(s >= 0.0) || !(s < 1.0))
        throw ParamFailure{std::string(what) +
                           " must map to sin(theta) in [0, 1)"};
    return s;
}

ds::StepConfig resolve_config(const Params& p, const ParamOpts& o) {
    ds::StepConfig cfg;
    if (!(p.mu > -1.0 && p.mu < 1.0))
        throw ParamFailure{"--mu must lie in (-1, 1)"};
    cfg.mu = p.mu;
    const bool have_nu = o.nu->count() > 0;
    const bool have_sc = o.sin_theta_c->count() > 0;
    if (o.zone->count() > 0 && !have_sc)
        throw ParamFailure{"--zone needs --sin-theta-c (or sin_theta_c in the "
                           "config file)"};
    if (have_nu) {
        if (!(p.nu >= 0.0)) throw ParamFailure{"--nu must be >= 0"};
        cfg.barrier = ds::Barrier::from_nu(p.nu);
    } else if (have_sc) {
        if (!(p.sin_theta_c > 0.0 && p.sin_theta_c <= 1.0))
            throw ParamFailure{"--sin-theta-c must lie in (0, 1]"};
        ds::ZoneSide side;
        if (p.zone == "diffusion")
            side = ds::ZoneSide::Diffusion;
        else if (p.zone == "klein")
            side = ds::ZoneSide::Klein;
        else
            throw ParamFailure{"--zone must be diffusion or klein"};
        cfg.barrier = ds::Barrier::from_critical(p.sin_theta_c, side);
    } else {
        cfg.barrier = ds::Barrier::from_nu(0.0);  // transparent interface
    }
    const double norm = p.i_plus * p.i_plus + p.i_minus * p.i_minus;
    if (std::abs(norm - 1.0) > 1e-9)
        throw ParamFailure{
            "incident magnitudes must satisfy i_plus^2 + i_minus^2 = 1 "
            "within 1e-9 (got " +
            std::to_string(norm) + ")"};
    cfg.i_plus_mag = p.i_plus;
    cfg.i_minus_mag = p.i_minus;
    cfg.delta_omega = p.delta_omega;
    cfg.theta_samples = p.samples;
    cfg.sin_theta_max = as_sine(p.theta_max, p.radians, "--theta-max");
    if (cfg.sin_theta_max <= 0.0)
        throw ParamFailure{"--theta-max must be positive"};
    return cfg;
}

// Critical-sine description used by the transmitted chirality weight.
void chirality_frame(const ds::StepConfig& cfg, double nu, double* sc_eff,
                     ds::ZoneSide* side) {
    if (cfg.barrier.kind == ds::Barrier::Kind::Critical) {
        *sc_eff = cfg.barrier.sin_theta_c;
        *side = cfg.barrier.side;
    } else {
        const double s2c =
            ds::critical_sine_squared(ds::MediumParams{cfg.mu, nu});
        *sc_eff = std::sqrt(std::max(s2c, 0.0));
        *side = nu <= 1.0 ? ds::ZoneSide::Diffusion : ds::ZoneSide::Klein;
    }
}

std::string show_cplx(ds::cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%+.15g %+.15gi", z.real(), z.imag());
    return buf;
}

json json_cplx(ds::cplx z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json json_opt(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

int cmd_point(const ds::StepConfig& cfg, double sin_theta, bool as_json) {
    const double nu = ds::barrier_nu(cfg.barrier, cfg.mu);
    const ds::MediumParams m{cfg.mu, nu};
    const ds::IncidentAmplitudes inc = cfg.incident();
    const ds::Zone zone = ds::classify(m, sin_theta);
    const ds::RefractionResult refr = ds::refract(m, sin_theta);
    const ds::AParam a = ds::compute_A_for_medium(m, sin_theta);
    const ds::ScatteredAmplitudes amps = ds::scatter(a, sin_theta, refr, inc);
    const double flux = ds::flux_ratio(m, sin_theta);
    const double r2 = amps.reflected_norm_sq();
    const double t2 = amps.transmitted_norm_sq();
    const double t2_flux = flux * t2;
    const double cons = ds::conservation_residual(amps, flux);
    const double bres =
        ds::boundary_residual(m.mu, m.nu, sin_theta, inc, amps);

    double sc_eff = 0.0;
    ds::ZoneSide side = ds::ZoneSide::Diffusion;
    chirality_frame(cfg, nu, &sc_eff, &side);

    std::optional<double> s_r, s_t;
    std::optional<double> lam_r[2], lam_t[2];
    if (r2 > 0.0) {
        const ds::ReducedSpectrum sp = ds::reduced_spectrum(
            ds::kappa(ds::Wave::Reflected, m.mu, m.nu), amps.r_plus,
            amps.r_minus);
        lam_r[0] = sp.lambda_plus;
        lam_r[1] = sp.lambda_minus;
        s_r = ds::von_neumann_entropy(sp);
    }
    const bool oscillatory = ds::is_oscillatory(zone);
    if (oscillatory) {
        const ds::ReducedSpectrum sp = ds::reduced_spectrum(
            ds::kappa(ds::Wave::Transmitted, m.mu, m.nu), amps.t_plus,
            amps.t_minus);
        lam_t[0] = sp.lambda_plus;
        lam_t[1] = sp.lambda_minus;
        s_t = ds::von_neumann_entropy(sp);
    }

    const double chi_i = ds::chirality(ds::Wave::Incident, m.mu, sc_eff, side,
                                       inc.i_plus, inc.i_minus);
    const double chi_r = ds::chirality(ds::Wave::Reflected, m.mu, sc_eff, side,
                                       amps.r_plus, amps.r_minus);
    std::optional<double> chi_t;
    if (oscillatory)
        chi_t = ds::chirality(ds::Wave::Transmitted, m.mu, sc_eff, side,
                              amps.t_plus, amps.t_minus);

    const ds::BiSpinor wi = ds::incident_wave(m.mu, sin_theta, inc);
    const double g5_i = ds::gamma5_expectation(wi);
    std::optional<double> g5_r, g5_t;
    if (r2 > 0.0)
        g5_r = ds::gamma5_expectation(ds::reflected_wave(m.mu, sin_theta, amps));
    if (oscillatory)
        g5_t = ds::gamma5_expectation(
            ds::transmitted_wave(m.mu, m.nu, sin_theta, amps));

    const ds::ParityObservables par_i =
        ds::parity_observables(ds::kappa(ds::Wave::Incident, m.mu, m.nu));
    const ds::ParityObservables par_r =
        ds::parity_observables(ds::kappa(ds::Wave::Reflected, m.mu, m.nu));
    std::optional<ds::ParityObservables> par_t;
    try {
        par_t = ds::parity_observables(
            ds::kappa(ds::Wave::Transmitted, m.mu, m.nu));
    } catch (const ds::EvanescentKappa&) {
        // medium has no propagating transmitted channel at any angle
    }

    std::optional<std::array<ds::ExtremalPoint, 2>> extremals;
    try {
        extremals = ds::extremal_points(cfg.mu, inc);
    } catch (const ds::PreconditionPhase&) {
        // complex relative phase: no closed extremal points to report
    }

    if (as_json) {
        json out;
        out["mu"] = cfg.mu;
        out["nu"] = nu;
        out["sin_theta"] = sin_theta;
        out["zone"] = ds::zone_tag(zone);
        out["A"] = json_cplx(a.value);
        out["amplitudes"] = {{"R_plus", json_cplx(amps.r_plus)},
                             {"R_minus", json_cplx(amps.r_minus)},
                             {"T_plus", json_cplx(amps.t_plus)},
                             {"T_minus", json_cplx(amps.t_minus)}};
        out["R2_total"] = r2;
        out["T2_total"] = t2;
        out["T2_flux"] = t2_flux;
        out["flux_ratio"] = flux;
        out["residuals"] = {{"conservation", cons}, {"boundary", bres}};
        out["reflected"] = {{"lambda_plus", json_opt(lam_r[0])},
                            {"lambda_minus", json_opt(lam_r[1])},
                            {"entropy", json_opt(s_r)},
                            {"chirality", chi_r},
                            {"gamma5", json_opt(g5_r)},
                            {"p_odd", par_r.p_odd},
                            {"p_even", par_r.p_even},
                            {"avg_parity", par_r.avg_parity}};
        out["incident"] = {{"entropy_spectrum",
                            {ds::reduced_spectrum(
                                 ds::kappa(ds::Wave::Incident, m.mu, m.nu),
                                 inc.i_plus, inc.i_minus)
                                 .lambda_plus,
                             ds::reduced_spectrum(
                                 ds::kappa(ds::Wave::Incident, m.mu, m.nu),
                                 inc.i_plus, inc.i_minus)
                                 .lambda_minus}},
                           {"chirality", chi_i},
                           {"gamma5", g5_i},
                           {"p_odd", par_i.p_odd},
                           {"p_even", par_i.p_even},
                           {"avg_parity", par_i.avg_parity}};
        out["transmitted"] = {{"lambda_plus", json_opt(lam_t[0])},
                              {"lambda_minus", json_opt(lam_t[1])},
                              {"entropy", json_opt(s_t)},
                              {"chirality", json_opt(chi_t)},
                              {"gamma5", json_opt(g5_t)}};
        if (par_t) {
            out["transmitted"]["p_odd"] = par_t->p_odd;
            out["transmitted"]["p_even"] = par_t->p_even;
            out["transmitted"]["avg_parity"] = par_t->avg_parity;
        } else {
            out["transmitted"]["p_odd"] = nullptr;
            out["transmitted"]["p_even"] = nullptr;
            out["transmitted"]["avg_parity"] = nullptr;
        }
        if (extremals) {
            json ex = json::array();
            for (const ds::ExtremalPoint& e : *extremals)
                ex.push_back(
                    {{"sin_theta_0", e.sin_theta_0},
                     {"lambda_plus", e.spectrum.lambda_plus},
                     {"lambda_minus", e.spectrum.lambda_minus},
                     {"entropy", ds::von_neumann_entropy(e.spectrum)}});
            out["reflected_extremal_points"] = ex;
        }
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }

    const auto pd = [](const char* k, double v) {
        std::printf("  %-26s % .15g\n", k, v);
    };
    const auto po = [](const char* k, const std::optional<double>& v) {
        if (v)
            std::printf("  %-26s % .15g\n", k, *v);
        else
            std::printf("  %-26s (undefined)\n", k);
    };
    std::printf("point report\n");
    pd("mu", cfg.mu);
    pd("nu", nu);
    pd("sin_theta", sin_theta);
    std::printf("  %-26s %s\n", "zone", std::string(ds::zone_tag(zone)).c_str());
    std::printf("  %-26s %s\n", "A", show_cplx(a.value).c_str());
    std::printf("  %-26s %s\n", "R_plus", show_cplx(amps.r_plus).c_str());
    std::printf("  %-26s %s\n", "R_minus", show_cplx(amps.r_minus).c_str());
    std::printf("  %-26s %s\n", "T_plus", show_cplx(amps.t_plus).c_str());
    std::printf("  %-26s %s\n", "T_minus", show_cplx(amps.t_minus).c_str());
    pd("|R|^2", r2);
    pd("|T|^2", t2);
    pd("flux ratio", flux);
    pd("flux-weighted |T|^2", t2_flux);
    pd("conservation residual", cons);
    pd("boundary residual", bres);
    po("reflected lambda_plus", lam_r[0]);
    po("reflected lambda_minus", lam_r[1]);
    po("S_R", s_r);
    po("transmitted lambda_plus", lam_t[0]);
    po("transmitted lambda_minus", lam_t[1]);
    po("S_T", s_t);
    pd("chirality incident", chi_i);
    pd("chirality reflected", chi_r);
    po("chirality transmitted", chi_t);
    pd("gamma5 incident", g5_i);
    po("gamma5 reflected", g5_r);
    po("gamma5 transmitted", g5_t);
    pd("incident p_odd", par_i.p_odd);
    pd("incident p_even", par_i.p_even);
    pd("incident <P>", par_i.avg_parity);
    pd("reflected p_odd", par_r.p_odd);
    pd("reflected <P>", par_r.avg_parity);
    if (par_t) {
        pd("transmitted p_odd", par_t->p_odd);
        pd("transmitted <P>", par_t->avg_parity);
    } else {
        std::printf("  %-26s (undefined)\n", "transmitted p_odd");
    }
    if (extremals) {
        for (const ds::ExtremalPoint& e : *extremals) {
            std::printf("  extremal point: sin_theta_0 = %.15g  spectrum = "
                        "(%.15g, %.15g)  S = %.15g\n",
                        e.sin_theta_0, e.spectrum.lambda_plus,
                        e.spectrum.lambda_minus,
                        ds::von_neumann_entropy(e.spectrum));
        }
    }
    return 0;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoFailure{"cannot open for writing: " + path};
    os << body;
    os.flush();
    if (!os) throw IoFailure{"write failed: " + path};
}

int cmd_sweep(const ds::StepConfig& cfg, const std::string& out_path,
              int threads) {
    if (cfg.theta_samples < 2)
        throw ParamFailure{"--samples must be >= 2 for a sweep"};
    const std::vector<ds::SweepRow> rows = ds::run_sweep(cfg, threads);
    std::ostringstream body;
    ds::write_csv(body, rows);
    if (out_path.empty() || out_path == "-") {
        std::fputs(body.str().c_str(), stdout);
        return 0;
    }
    write_text_file(out_path, body.str());
    return 0;
}

struct Curve {
    std::string file;
    std::string title;
    ds::StepConfig cfg;
};

std::string sc_tag(double sc) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d", (int)std::lround(sc * 1000.0));
    return buf;
}

std::vector<Curve> figure_curves(int fig, int samples) {
    const double sqrt2inv = 1.0 / std::sqrt(2.0);
    const std::vector<double> scs = {0.5, sqrt2inv, std::sqrt(3.0) / 2.0};
    const std::vector<std::pair<ds::ZoneSide, const char*>> sides = {
        {ds::ZoneSide::Diffusion, "diffusion"}, {ds::ZoneSide::Klein, "klein"}};
    std::vector<Curve> out;
    if (fig >= 1 && fig <= 4) {
        for (const auto& [side, sname] : sides)
            for (double sc : scs) {
                Curve c;
                c.cfg.mu = 0.5;
                c.cfg.barrier = ds::Barrier::from_critical(sc, side);
                c.cfg.theta_samples = samples;
                c.file = "fig" + std::to_string(fig) + "_" + sname + "_sc" +
                         sc_tag(sc) + ".csv";
                char t[96];
                std::snprintf(t, sizeof t, "%s, sin{/Symbol q}_c=%.4f", sname,
                              sc);
                c.title = t;
                out.push_back(c);
            }
        return out;
    }
    // fig5: balanced magnitudes, three relative phases, both step sides.
    const std::vector<std::pair<double, const char*>> phases = {
        {kPi / 4.0, "pi4"}, {kPi / 3.0, "pi3"}, {kPi / 2.0, "pi2"}};
    for (const auto& [side, sname] : sides)
        for (const auto& [dw, dwname] : phases) {
            Curve c;
            c.cfg.mu = 0.5;
            c.cfg.barrier = ds::Barrier::from_critical(0.5, side);
            c.cfg.i_plus_mag = sqrt2inv;
            c.cfg.i_minus_mag = sqrt2inv;
            c.cfg.delta_omega = dw;
            c.cfg.theta_samples = samples;
            c.file = std::string("fig5_") + sname + "_dw" + dwname + ".csv";
            char t[96];
            std::snprintf(t, sizeof t, "%s, {/Symbol Dw}=%s", sname, dwname);
            c.title = t;
            out.push_back(c);
        }
    return out;
}

int cmd_figures(const std::string& which, const std::string& out_dir,
                int samples, int threads) {
    int lo = 1, hi = 5;
    if (which != "all") {
        if (which.size() == 4 && which.rfind("fig", 0) == 0 &&
            which[3] >= '1' && which[3] <= '5') {
            lo = hi = which[3] - '0';
        } else {
            throw ParamFailure{"--which must be fig1..fig5 or all"};
        }
    }
    if (samples < 2) throw ParamFailure{"--samples must be >= 2"};
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoFailure{"cannot create directory " + out_dir + ": " +
                        ec.message()};

    std::ostringstream gp;
    gp << "# Figure datasets. Render with: gnuplot plot_figures.gp\n"
          "set datafile separator \",\"\n"
          "set datafile missing \"\"\n"
          "set terminal pngcairo size 960,660\n"
          "set key outside right\n"
          "set xlabel \"sin(theta)\"\n";
    const ds::IncidentAmplitudes pure;
    const auto ex = ds::extremal_points(0.5, pure);
    const double s_lo = ds::von_neumann_entropy(ex[0].spectrum);
    const double s_hi = ds::von_neumann_entropy(ex[1].spectrum);

    for (int fig = lo; fig <= hi; ++fig) {
        const std::vector<Curve> curves = figure_curves(fig, samples);
        for (const Curve& c : curves) {
            const std::vector<ds::SweepRow> rows = ds::run_sweep(c.cfg, threads);
            std::ostringstream body;
            ds::write_csv(body, rows);
            write_text_file(out_dir + "/" + c.file, body.str());
        }
        switch (fig) {
            case 1: {
                gp << "\nset output \"fig1_amplitudes.png\"\n"
                      "set ylabel \"|R|^2 and flux-weighted |T|^2\"\n"
                      "plot \\\n";
                for (std::size_t i = 0; i < curves.size(); ++i) {
                    gp << "  \"" << curves[i].file << "\" using 1:3 with lines"
                       << " title \"R2 " << curves[i].title << "\", \\\n";
                    gp << "  \"" << curves[i].file << "\" using 1:4 with lines"
                       << " dashtype 2 title \"T2 " << curves[i].title << "\""
                       << (i + 1 < curves.size() ? ", \\\n" : "\n");
                }
                break;
            }
            case 2: {
                gp << "\nset output \"fig2_entropies.png\"\n"
                      "set ylabel \"entanglement entropy\"\n";
                gp << "S_lo = " << s_lo << "\nS_hi = " << s_hi << "\n";
                gp << "plot \\\n";
                for (const Curve& c : curves) {
                    gp << "  \"" << c.file << "\" using 1:5 with lines title "
                       << "\"S_R " << c.title << "\", \\\n";
                    gp << "  \"" << c.file << "\" using 1:6 with lines "
                       << "dashtype 2 title \"S_T " << c.title << "\", \\\n";
                }
                gp << "  S_lo with lines dashtype 3 lc rgb \"gray\" title "
                      "\"S_R extremal min\", \\\n"
                      "  S_hi with lines dashtype 3 lc rgb \"gray\" title "
                      "\"S_R extremal max\"\n";
                break;
            }
            case 3:
            case 4: {
                const bool refl = fig == 3;
                gp << "\nset output \"fig" << fig << "_chirality_"
                   << (refl ? "reflected" : "transmitted") << ".png\"\n"
                   << "set ylabel \"chirality ("
                   << (refl ? "reflected" : "transmitted") << ")\"\n"
                   << "plot \\\n";
                for (std::size_t i = 0; i < curves.size(); ++i)
                    gp << "  \"" << curves[i].file << "\" using 1:"
                       << (refl ? 7 : 8) << " with lines title \""
                       << curves[i].title << "\""
                       << (i + 1 < curves.size() ? ", \\\n" : "\n");
                break;
            }
            case 5: {
                gp << "\nset output \"fig5_phase_study.png\"\n"
                      "set ylabel \"S_R\"\n"
                      "plot \\\n";
                for (std::size_t i = 0; i < curves.size(); ++i)
                    gp << "  \"" << curves[i].file << "\" using 1:5 with lines"
                       << " title \"" << curves[i].title << "\""
                       << (i + 1 < curves.size() ? ", \\\n" : "\n");
                break;
            }
        }
    }
    write_text_file(out_dir + "/plot_figures.gp", gp.str());
    return 0;
}

int cmd_verify(int grid_density, unsigned long seed, int random_samples,
               bool corrupt_flux_sign) {
    if (grid_density < 10)
        throw ParamFailure{"--grid-density must be >= 10"};
    if (random_samples < 1)
        throw ParamFailure{"--random-samples must be >= 1"};
    ds::VerifyOptions opts;
    opts.grid_density = grid_density;
    opts.seed = seed;
    opts.random_samples = random_samples;
    opts.corrupt_flux_sign = corrupt_flux_sign;
    const std::vector<ds::CheckResult> checks = ds::run_acceptance(opts);
    for (const ds::CheckResult& c : checks)
        std::printf("%s\n", ds::format_check_line(c).c_str());
    int failed = 0;
    for (const ds::CheckResult& c : checks)
        if (!c.pass) ++failed;
    std::printf("%zu checks, %d failed\n", checks.size(), failed);
    return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane-wave scattering on an electrostatic step for a "
                 "relativistic spin-1/2 particle: amplitudes, conservation, "
                 "parity-spin entanglement, and chirality"};
    app.require_subcommand(1);

    Params p_point, p_sweep, p_fig;
    double angle = 0.3;
    bool as_json = false;
    std::string sweep_out = "-";
    int sweep_threads = 1;
    std::string fig_which = "all";
    std::string fig_out = "figures";
    int fig_threads = 1;
    int grid_density = 200;
    unsigned long seed = 20260817UL;
    int random_samples = 1000;
    bool corrupt_flux = false;

    CLI::App* point = app.add_subcommand(
        "point", "Report every derived quantity at one incidence angle");
    ParamOpts o_point = add_config_options(point, p_point);
    point->add_option("--angle", angle,
                      "Incidence angle as sin(theta), or radians with "
                      "--radians");
    point->add_flag("--json", as_json, "Emit a JSON report");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Write the observable table over a sin(theta) grid as CSV");
    ParamOpts o_sweep = add_config_options(sweep, p_sweep);
    sweep->add_option("--out", sweep_out, "Output path; - for stdout");
    sweep->add_option("--threads", sweep_threads,
                      "Worker threads for the sweep");

    CLI::App* figures = app.add_subcommand(
        "figures", "Emit reference figure datasets plus a gnuplot script");
    figures->add_option("--which", fig_which, "fig1..fig5 or all");
    figures->add_option("--out", fig_out, "Output directory");
    figures
        ->add_option("--samples", p_fig.samples, "Samples per curve (>= 2)")
        ->capture_default_str();
    figures->add_option("--threads", fig_threads, "Worker threads");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the acceptance battery against the oracle");
    verify->add_option("--grid-density", grid_density,
                       "Theta samples per parameter cell (>= 10)");
    verify->add_option("--seed", seed, "Seed for the randomized checks");
    verify->add_option("--random-samples", random_samples,
                       "Randomized trials per randomized check");
    verify->add_flag("--corrupt-flux-sign", corrupt_flux,
                     "Debug: flip the flux sign inside the conservation "
                     "check so it must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (point->parsed()) {
            apply_config_file(p_point, o_point);
            const ds::StepConfig cfg = resolve_config(p_point, o_point);
            const double s = as_sine(angle, p_point.radians, "--angle");
            return cmd_point(cfg, s, as_json);
        }
        if (sweep->parsed()) {
            apply_config_file(p_sweep, o_sweep);
            const ds::StepConfig cfg = resolve_config(p_sweep, o_sweep);
            return cmd_sweep(cfg, sweep_out, sweep_threads);
        }
        if (figures->parsed())
            return cmd_figures(fig_which, fig_out, p_fig.samples, fig_threads);
        if (verify->parsed())
            return cmd_verify(grid_density, seed, random_samples, corrupt_flux);
    } catch (const ParamFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return 1;
    } catch (const IoFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return 3;
    } catch (const ds::DiracError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
