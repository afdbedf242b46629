// chos - command-line front end: configuration ingestion, subcommand
// dispatch, and deterministic CSV/JSON emission.
//
// Subcommands:
//   spectrum   dispersion / transmission curves (closed forms)
//   slowlight  constant-splitting pulse propagation
//   store      store-and-retrieve run with a switched splitting
//   sweep      fidelity heatmap over (optical depth, splitting)
//   optimize   per-depth splitting optimization + analytic fit
//   estimate   physical-system estimates (sr, pryso presets)
//
// Exit codes: 0 success, 2 usage error, 3 invalid configuration or
// parameters, 4 solver failure, 5 internal error.

#include "chos/config.hpp"
#include "chos/io.hpp"
#include "chos/mb_solver.hpp"
#include "chos/metrics.hpp"
#include "chos/model.hpp"
#include "chos/spectral.hpp"
#include "chos/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<double> b, delta, sigma_tau, t_center, t_off, t_on, ramp, t_max, dt;
    std::optional<int> nz, snapshots;
    std::string variant;     // zeeman | stark | full
    std::string convention;  // paper | canonical
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (flat key-value sections)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--b", o.b, "optical depth");
    cmd->add_option("--delta", o.delta, "splitting in gamma units");
    cmd->add_option("--sigma-tau", o.sigma_tau, "pulse width [1/gamma]");
    cmd->add_option("--t-center", o.t_center, "pulse center [1/gamma]");
    cmd->add_option("--t-off", o.t_off, "switch-off time [1/gamma]");
    cmd->add_option("--t-on", o.t_on, "switch-on time [1/gamma]");
    cmd->add_option("--ramp", o.ramp, "ramp duration for smooth switching [1/gamma]");
    cmd->add_option("--t-max", o.t_max, "simulation horizon [1/gamma]");
    cmd->add_option("--dt", o.dt, "time step bound [1/gamma]");
    cmd->add_option("--nz", o.nz, "spatial points");
    cmd->add_option("--variant", o.variant, "scheme variant: zeeman | stark | full")
        ->check(CLI::IsMember({"zeeman", "stark", "full"}));
    cmd->add_option("--convention", o.convention, "closed-form convention: paper | canonical")
        ->check(CLI::IsMember({"paper", "canonical"}));
    cmd->add_option("--jobs", o.jobs, "parallel jobs for sweeps");
    cmd->add_option("--snapshots", o.snapshots, "snapshot decimation stride (0 = none kept)");
}

chos::RunConfig resolve_config(const CommonOpts& o, const std::string& default_variant) {
    chos::RunConfig cfg;
    if (!o.config_path.empty()) cfg = chos::load_config(o.config_path);
    else cfg.variant = default_variant;
    if (o.b) cfg.optical_depth = *o.b;
    if (o.delta) cfg.delta0 = *o.delta;
    if (o.sigma_tau) cfg.sigma_tau = *o.sigma_tau;
    if (o.t_center) cfg.t_center = *o.t_center;
    if (o.t_off) cfg.t_off = *o.t_off;
    if (o.t_on) cfg.t_on = *o.t_on;
    if (o.ramp) { cfg.ramp_time = *o.ramp; if (cfg.variant == "step") cfg.variant = "ramped"; }
    if (o.t_max) cfg.t_max = *o.t_max;
    if (o.dt) cfg.dt = *o.dt;
    if (o.nz) cfg.nz = *o.nz;
    if (o.snapshots) cfg.snapshot_stride = *o.snapshots;
    return cfg;
}

chos::SchemeVariant parse_variant(const std::string& v) {
    if (v.empty() || v == "zeeman") return chos::SchemeVariant::zeeman_v;
    if (v == "stark") return chos::SchemeVariant::stark_two_class;
    if (v == "full") return chos::SchemeVariant::full_five_var;
    throw chos::validation_error("unknown variant: " + v);
}

chos::Convention parse_convention(const std::string& c) {
    if (c == "paper") return chos::Convention::paper;
    if (c == "canonical") return chos::Convention::canonical;
    throw chos::validation_error("convention must be given explicitly: paper or canonical");
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw chos::validation_error("cannot parse " + what + " list element: " + item);
        }
    }
    if (out.empty()) throw chos::validation_error(what + " list is empty");
    return out;
}

chos::SimGrid grid_from_config(const chos::RunConfig& cfg, const chos::SplittingSchedule& sched,
                               const chos::ProbePulse& pulse, double t_max) {
    double dt = cfg.dt;
    if (dt <= 0.0)
        dt = chos::auto_dt(cfg.optical_depth, sched.max_value(), pulse.sigma_tau);
    const int nt = static_cast<int>(std::ceil(t_max / dt)) + 1;
    return chos::SimGrid::make(cfg.nz, nt, t_max);
}

json params_json(const chos::RunConfig& cfg, const std::string& variant,
                 const std::string& convention) {
    json p;
    p["medium"] = {{"gamma", cfg.gamma},
                   {"optical_depth", cfg.optical_depth},
                   {"length", cfg.length},
                   {"light_speed", cfg.light_speed}};
    p["schedule"] = {{"variant", cfg.variant},
                     {"delta0", cfg.delta0},
                     {"t_off", cfg.t_off},
                     {"t_on", cfg.t_on},
                     {"ramp_time", cfg.ramp_time}};
    p["pulse"] = {{"sigma_tau", cfg.sigma_tau},
                  {"t_center", cfg.t_center},
                  {"amplitude", cfg.amplitude}};
    p["grid"] = {{"nz", cfg.nz}, {"dt", cfg.dt}, {"t_max", cfg.t_max},
                 {"snapshot_stride", cfg.snapshot_stride}};
    if (!variant.empty()) p["scheme_variant"] = variant;
    if (!convention.empty()) p["convention"] = convention;
    return p;
}

std::string timeseries_csv(const chos::SimResult& res) {
    std::ostringstream os;
    os << "# chos time series (t in 1/gamma)\n";
    os << "t,abs_e_in_sq,abs_e_out_sq,delta\n";
    for (std::size_t i = 0; i < res.t.size(); ++i) {
        os << chos::fmt_num(res.t[i]) << ',' << chos::fmt_num(std::norm(res.e_in[i])) << ','
           << chos::fmt_num(std::norm(res.e_out[i])) << ','
           << chos::fmt_num(res.delta_trace[i]) << '\n';
    }
    return os.str();
}

std::string snapshots_csv(const chos::SimResult& res) {
    std::ostringstream os;
    os << "# chos snapshots, variant=" << chos::to_string(res.variant) << "\n";
    os << "# pol_a/pol_b map: zeeman -> sigma_z/sigma_y, stark -> sigma_1/sigma_2, "
          "full -> sigma_z/sigma_y (+pol_c = sigma_x)\n";
    const bool five = res.variant == chos::SchemeVariant::full_five_var;
    os << "t,zeta,re_e_y,im_e_y,re_pol_a,im_pol_a,re_pol_b,im_pol_b";
    if (five) os << ",re_pol_c,im_pol_c,re_e_x,im_e_x";
    os << '\n';
    const double dz = res.grid.dzeta();
    for (const auto& s : res.snapshots) {
        for (std::size_t j = 0; j < s.field_y.size(); ++j) {
            os << chos::fmt_num(s.t) << ',' << chos::fmt_num(j * dz) << ','
               << chos::fmt_num(s.field_y[j].real()) << ',' << chos::fmt_num(s.field_y[j].imag())
               << ',' << chos::fmt_num(s.pol_a[j].real()) << ',' << chos::fmt_num(s.pol_a[j].imag())
               << ',' << chos::fmt_num(s.pol_b[j].real()) << ',' << chos::fmt_num(s.pol_b[j].imag());
            if (five)
                os << ',' << chos::fmt_num(s.pol_c[j].real()) << ',' << chos::fmt_num(s.pol_c[j].imag())
                   << ',' << chos::fmt_num(s.field_x[j].real()) << ','
                   << chos::fmt_num(s.field_x[j].imag());
            os << '\n';
        }
    }
    return os.str();
}

void write_run_outputs(const fs::path& out, const chos::RunConfig& cfg,
                       const chos::SimResult& res, const json& summary, bool keep_snapshots) {
    chos::atomic_write_file(out / "timeseries.csv", timeseries_csv(res));
    chos::atomic_write_file(out / "summary.json", summary.dump(2) + "\n");
    chos::atomic_write_file(out / "config.cfg", chos::serialize_config(cfg));
    if (keep_snapshots) chos::atomic_write_file(out / "snapshots.csv", snapshots_csv(res));
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const CommonOpts& o, double omega_max, int points) {
    const chos::RunConfig cfg = resolve_config(o, "constant");
    const chos::Convention conv = parse_convention(o.convention);
    const chos::MediumParams params = cfg.medium();
    const double delta = cfg.delta0;
    if (omega_max <= 0.0)
        omega_max = 3.0 * std::max({delta, std::sqrt(params.optical_depth), 10.0});
    if (points < 2) throw chos::validation_error("spectrum: need at least 2 points");

    std::ostringstream os;
    os << "# chos spectrum convention=" << chos::to_string(conv)
       << " b=" << chos::fmt_num(params.optical_depth) << " delta_over_gamma="
       << chos::fmt_num(delta) << "\n";
    os << "omega_over_gamma,re_chi,im_chi,transmission\n";
    for (int i = 0; i < points; ++i) {
        const double w = -omega_max + 2.0 * omega_max * i / (points - 1);
        const chos::cplx chi = chos::susceptibility(w, params, delta, conv);
        os << chos::fmt_num(w) << ',' << chos::fmt_num(chi.real()) << ','
           << chos::fmt_num(chi.imag()) << ',' << chos::fmt_num(std::exp(2.0 * chi.real()))
           << '\n';
    }
    if (o.out_dir.empty()) {
        std::cout << os.str();
    } else {
        chos::atomic_write_file(fs::path(o.out_dir) / "spectrum.csv", os.str());
        chos::atomic_write_file(fs::path(o.out_dir) / "config.cfg", chos::serialize_config(cfg));
    }
    return 0;
}

int cmd_slowlight(const CommonOpts& o) {
    chos::RunConfig cfg = resolve_config(o, "constant");
    cfg.variant = "constant";
    const chos::MediumParams params = cfg.medium();
    const chos::SplittingSchedule sched = cfg.schedule();
    const chos::ProbePulse pulse = cfg.pulse();
    if (cfg.t_max <= 0.0) {
        const double tsl = cfg.delta0 > 0.0
                               ? std::min(chos::slow_light_delay(params, cfg.delta0), 0.5)
                               : 0.0;
        cfg.t_max = cfg.t_center + tsl + 8.0 * cfg.sigma_tau;
    }
    const chos::SimGrid grid = grid_from_config(cfg, sched, pulse, cfg.t_max);
    chos::SolverOptions opts;
    opts.variant = parse_variant(o.variant);
    opts.snapshot_stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : grid.nt;
    const chos::SimResult res = chos::simulate(params, sched, pulse, grid, opts);

    json summary;
    double delay = 0.0;
    try {
        delay = chos::measured_delay(res);
    } catch (const chos::validation_error&) {
        delay = std::numeric_limits<double>::quiet_NaN();
    }
    const double f_lo = std::isfinite(delay) ? std::max(0.0, delay - 2.0 * cfg.sigma_tau) : 0.0;
    const double f_hi = std::isfinite(delay) ? std::min(cfg.t_max, delay + 2.0 * cfg.sigma_tau)
                                             : 4.0 * cfg.sigma_tau;
    const chos::FidelityReport rep = chos::fidelity_max_over_delay(res, pulse, f_lo, f_hi);
    const chos::EnergyBalance bal = chos::energy_balance(res, params);
    summary["fidelity"] = rep.fidelity;
    summary["fidelity_mod_sq"] = rep.fidelity * rep.fidelity;
    summary["delay"] = delay;
    summary["shape_overlap"] =
        std::isfinite(delay) ? chos::shape_overlap(res, pulse, delay) : 0.0;
    summary["energy_in"] = bal.input;
    summary["energy_out"] = bal.output;
    summary["parameters"] = params_json(cfg, o.variant.empty() ? "zeeman" : o.variant, "");

    if (o.out_dir.empty()) {
        std::cout << summary.dump(2) << "\n";
    } else {
        write_run_outputs(fs::path(o.out_dir), cfg, res, summary, cfg.snapshot_stride > 0);
    }
    return 0;
}

int cmd_store(const CommonOpts& o) {
    chos::RunConfig cfg = resolve_config(o, "step");
    if (cfg.variant == "constant") cfg.variant = cfg.ramp_time > 0.0 ? "ramped" : "step";
    const chos::MediumParams params = cfg.medium();
    const chos::SplittingSchedule sched = cfg.schedule();
    const chos::ProbePulse pulse = cfg.pulse();
    if (cfg.t_max <= 0.0) cfg.t_max = chos::storage_t_max(params, cfg.delta0, cfg.t_on, pulse);
    const chos::SimGrid grid = grid_from_config(cfg, sched, pulse, cfg.t_max);
    chos::SolverOptions opts;
    opts.variant = parse_variant(o.variant);
    opts.snapshot_stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : grid.nt;
    const chos::SimResult res = chos::simulate(params, sched, pulse, grid, opts);

    const double tsl =
        cfg.delta0 > 0.0 ? std::min(chos::slow_light_delay(params, cfg.delta0), 0.5) : 0.0;
    const double tau_ref = (cfg.t_on - cfg.t_off) + tsl;
    const chos::FidelityReport rep = chos::fidelity_max_over_delay(
        res, pulse, std::max(0.0, tau_ref - 4.0 * cfg.sigma_tau),
        std::min(cfg.t_max, tau_ref + 4.0 * cfg.sigma_tau));
    const chos::EnergyBalance bal = chos::energy_balance(res, params);

    json summary;
    summary["fidelity"] = rep.fidelity;
    summary["fidelity_mod_sq"] = rep.fidelity * rep.fidelity;
    summary["delay"] = rep.reference_delay;
    summary["energy_in"] = bal.input;
    summary["energy_out"] = bal.output;
    summary["stored_fraction_at_t_off"] = res.diag.entered_fraction_at_off;
    summary["parameters"] = params_json(cfg, o.variant.empty() ? "zeeman" : o.variant, "");

    if (o.out_dir.empty()) {
        std::cout << summary.dump(2) << "\n";
    } else {
        write_run_outputs(fs::path(o.out_dir), cfg, res, summary, cfg.snapshot_stride > 0);
    }
    return 0;
}

std::string heatmap_csv(const chos::SweepResult& sw) {
    std::ostringstream os;
    os << "# chos sweep heatmap; sigma_tau=" << chos::fmt_num(sw.tpl.sigma_tau)
       << " t_off=" << chos::fmt_num(sw.tpl.t_off()) << " t_on=" << chos::fmt_num(sw.tpl.t_on())
       << " ramp=" << chos::fmt_num(sw.tpl.ramp_time) << " nz=" << sw.policy.nz << "\n";
    os << "b,delta_over_gamma,fidelity_mod,fidelity_mod_sq,delay\n";
    for (const auto& pt : sw.rows) {
        os << chos::fmt_num(pt.b) << ',' << chos::fmt_num(pt.delta_over_gamma) << ','
           << chos::fmt_num(pt.fidelity_mod) << ',' << chos::fmt_num(pt.fidelity_mod_sq) << ','
           << chos::fmt_num(pt.delay) << '\n';
    }
    bool any_err = false;
    for (const auto& pt : sw.rows)
        if (!pt.ok) {
            if (!any_err) os << "# failed points:\n";
            any_err = true;
            os << "# b=" << pt.b << " delta=" << pt.delta_over_gamma << ": " << pt.error << "\n";
        }
    return os.str();
}

int cmd_sweep(const CommonOpts& o, std::string b_list_s, std::string delta_list_s,
              bool full_scale) {
    chos::StorageTemplate tpl;
    if (o.sigma_tau) tpl.sigma_tau = *o.sigma_tau;
    if (o.ramp) tpl.ramp_time = *o.ramp;
    chos::GridPolicy policy;
    if (o.nz) policy.nz = *o.nz;

    std::vector<double> b_list = b_list_s.empty()
                                     ? std::vector<double>{1e2, 3e2, 1e3, 3e3, 1e4}
                                     : parse_list(b_list_s, "b");
    if (full_scale) b_list.push_back(6e4);
    std::sort(b_list.begin(), b_list.end());
    const std::vector<double> delta_list =
        delta_list_s.empty() ? std::vector<double>{100, 200, 400, 800, 1600, 3200}
                             : parse_list(delta_list_s, "delta");

    const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::thread::hardware_concurrency());
    const chos::SweepResult sw = chos::heatmap(b_list, delta_list, tpl, policy, jobs);

    const std::string csv = heatmap_csv(sw);
    if (o.out_dir.empty()) {
        std::cout << csv;
    } else {
        chos::atomic_write_file(fs::path(o.out_dir) / "heatmap.csv", csv);
    }
    return 0;
}

int cmd_optimize(const CommonOpts& o, std::string b_list_s, std::string bounds_s,
                 double t_s_override) {
    chos::StorageTemplate tpl;
    if (o.sigma_tau) tpl.sigma_tau = *o.sigma_tau;
    if (o.ramp) tpl.ramp_time = *o.ramp;
    chos::GridPolicy policy;
    if (o.nz) policy.nz = *o.nz;

    const std::vector<double> b_list = b_list_s.empty()
                                           ? std::vector<double>{1e2, 3e2, 1e3, 3e3, 1e4}
                                           : parse_list(b_list_s, "b");
    const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::thread::hardware_concurrency());

    chos::OptimizationCurve curve;
    curve.tpl = tpl;
    curve.points.resize(b_list.size());
    std::pair<double, double> fixed_bounds{0.0, 0.0};
    if (!bounds_s.empty()) {
        const auto v = parse_list(bounds_s, "delta-bounds");
        if (v.size() != 2) throw chos::validation_error("--delta-bounds expects lo,hi");
        fixed_bounds = {v[0], v[1]};
    }
    chos::parallel_for_index(b_list.size(), jobs, [&](std::size_t i) {
        auto bounds = bounds_s.empty() ? chos::default_delta_bounds(b_list[i], tpl.sigma_tau)
                                       : fixed_bounds;
        curve.points[i] = chos::optimize_delta(b_list[i], tpl, policy, bounds.first, bounds.second);
    });

    std::ostringstream os;
    os << "# chos optimized fidelity vs optical depth; sigma_tau="
       << chos::fmt_num(tpl.sigma_tau) << " hold=" << chos::fmt_num(tpl.hold()) << "\n";
    os << "b,best_delta,best_fidelity\n";
    for (const auto& p : curve.points)
        os << chos::fmt_num(p.b) << ',' << chos::fmt_num(p.best_delta) << ','
           << chos::fmt_num(p.best_fidelity) << '\n';

    json fit_json;
    if (curve.points.size() >= 4) {
        const double t_s = t_s_override > 0.0 ? t_s_override : tpl.hold();
        const chos::FidelityFit fit = chos::fit_fidelity_curve(curve, t_s);
        fit_json["t_s"] = t_s;
        fit_json["c0"] = fit.c0;
        fit_json["c1"] = fit.c1;
        fit_json["rms_residual"] = fit.rms_residual;
    } else {
        fit_json["note"] = "fit skipped: fewer than 4 curve points";
    }

    if (o.out_dir.empty()) {
        std::cout << os.str();
        std::cout << fit_json.dump(2) << "\n";
    } else {
        chos::atomic_write_file(fs::path(o.out_dir) / "curve.csv", os.str());
        chos::atomic_write_file(fs::path(o.out_dir) / "fit.json", fit_json.dump(2) + "\n");
    }
    return 0;
}

int cmd_estimate(const std::string& preset, const std::string& out_dir) {
    chos::EstimateReport rep;
    if (preset == "sr") rep = chos::estimate_sr();
    else if (preset == "pryso") rep = chos::estimate_pryso();
    else throw chos::validation_error("estimate: unknown preset '" + preset + "' (sr | pryso)");

    json j;
    j["preset"] = rep.preset;
    j["gamma"] = rep.gamma;
    j["alpha"] = rep.alpha;
    j["length"] = rep.length;
    j["b"] = rep.optical_depth;
    j["delta_over_gamma"] = rep.delta_over_gamma;
    j["v_g"] = rep.v_g;
    j["tau"] = rep.tau;
    j["fidelity_estimate"] = rep.fidelity_estimate;
    j["notes"] = rep.notes;
    if (out_dir.empty()) std::cout << j.dump(2) << "\n";
    else chos::atomic_write_file(fs::path(out_dir) / "estimate.json", j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chos - controlled-homogeneous-splitting quantum memory simulator"};
    app.require_subcommand(1);

    CommonOpts o_spec, o_slow, o_store, o_sweep, o_opt;
    double omega_max = 0.0;
    int points = 2001;
    std::string b_list_s, delta_list_s, bounds_s, preset = "sr", est_out;
    bool full_scale = false;
    double t_s_override = 0.0;

    CLI::App* c_spec = app.add_subcommand("spectrum", "dispersion and transmission curves");
    add_common(c_spec, o_spec);
    c_spec->add_option("--omega-max", omega_max, "half-width of the frequency grid [gamma]");
    c_spec->add_option("--points", points, "number of frequency samples");

    CLI::App* c_slow = app.add_subcommand("slowlight", "constant-splitting propagation");
    add_common(c_slow, o_slow);

    CLI::App* c_store = app.add_subcommand("store", "store-and-retrieve run");
    add_common(c_store, o_store);

    CLI::App* c_sweep = app.add_subcommand("sweep", "fidelity heatmap over (b, delta)");
    add_common(c_sweep, o_sweep);
    c_sweep->add_option("--b-list", b_list_s, "comma-separated optical depths");
    c_sweep->add_option("--delta-list", delta_list_s, "comma-separated splittings [gamma]");
    c_sweep->add_flag("--full-scale", full_scale, "include the b = 6e4 point");

    CLI::App* c_opt = app.add_subcommand("optimize", "optimized fidelity vs optical depth");
    add_common(c_opt, o_opt);
    c_opt->add_option("--b-list", b_list_s, "comma-separated optical depths");
    c_opt->add_option("--delta-bounds", bounds_s, "search bounds lo,hi [gamma]");
    c_opt->add_option("--t-s", t_s_override, "storage time used in the analytic fit [1/gamma]");

    CLI::App* c_est = app.add_subcommand("estimate", "physical-system estimates");
    c_est->add_option("--preset", preset, "sr | pryso");
    c_est->add_option("--out", est_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_spec->parsed()) return cmd_spectrum(o_spec, omega_max, points);
        if (c_slow->parsed()) return cmd_slowlight(o_slow);
        if (c_store->parsed()) return cmd_store(o_store);
        if (c_sweep->parsed()) return cmd_sweep(o_sweep, b_list_s, delta_list_s, full_scale);
        if (c_opt->parsed()) return cmd_optimize(o_opt, b_list_s, bounds_s, t_s_override);
        if (c_est->parsed()) return cmd_estimate(preset, est_out);
    } catch (const chos::solver_error& e) {
        std::cerr << "chos: solver failure: " << e.what() << " (step " << e.step_index << ")\n";
        return 4;
    } catch (const chos::validation_error& e) {
        std::cerr << "chos: " << e.what() << "\n";
        return 3;
    } catch (const chos::internal_error& e) {
        std::cerr << "chos: internal error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "chos: error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
