#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dlambda/apm.hpp"
#include "dlambda/dynamics.hpp"
#include "dlambda/phase_jump.hpp"
#include "dlambda/steady_state.hpp"
#include "report.hpp"

namespace dlambda::cli {

namespace {

using Row = std::vector<Json>;

struct GlobalOptions
{
    std::string out = "-";
    std::string format = "csv";
    int threads = 1;
};

/// Evaluates f(0..n-1) on up to `threads` workers; results keep index order.
template <typename F>
std::vector<Row> parallel_rows(std::size_t n, int threads, F&& f)
{
    std::vector<Row> rows(n);
    const auto workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                rows[i] = f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
    return rows;
}

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? sep : "") + parts[i];
    return s;
}

Json typed_value(const std::string& s)
{
    if (s.empty())
        return s;
    std::size_t pos = 0;
    try {
        if (s.find_first_of(".eEni") == std::string::npos) {
            const long long i = std::stoll(s, &pos);
            if (pos == s.size())
                return i;
        }
        const double v = std::stod(s, &pos);
        if (pos == s.size())
            return v;
    } catch (const std::exception&) {
    }
    return s;
}

// collects the resolved value of every named option of `app`
void record_options(const CLI::App& app, Json& config, std::vector<std::string>& argv_out)
{
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_lnames().empty())
            continue;
        const std::string name = opt->get_lnames().front();
        if (name == "help" || name == "config")
            continue;
        std::string value = opt->count() > 0 ? join(opt->reduced_results(), ",") : opt->get_default_str();
        const bool is_flag = opt->get_expected_min() == 0;
        if (is_flag) {
            const bool on = opt->count() > 0 && value != "false" && value != "0";
            config[name] = on;
            if (on)
                argv_out.push_back("--" + name);
            continue;
        }
        if (value.empty() || value == "{}" || value == "[]")
            continue;
        config[name] = typed_value(value);
        argv_out.push_back("--" + name);
        argv_out.push_back(value);
    }
}

MediumParams<> drive(double alpha, double delta, double phi_r, double omega_c, double omega_d, double gamma21 = 0.0)
{
    MediumParams<> p;
    p.alpha = alpha;
    p.delta = delta;
    p.gamma21 = gamma21;
    p.omega_c = omega_c * std::conj(unit_phasor(phi_r));
    p.omega_d = omega_d;
    validate(p);
    return p;
}

PropagationCurve<> curve_for(const MediumParams<>& p, double phi_r, Eigen::Index samples)
{
    if (std::abs(p.omega_c) == std::abs(p.omega_d))
        return trace_curve(phi_r, p, samples);
    return trace_curve(p, FieldPair<>{1.0, 1.0}, samples);
}

std::vector<double> values_or_sweep(const std::vector<double>& list, const std::string& sweep, const char* what)
{
    if (!list.empty() && !sweep.empty())
        throw InvalidArgument(std::string("give either a list or a sweep for ") + what + ", not both");
    if (!sweep.empty())
        return parse_sweep(sweep);
    if (list.empty())
        throw InvalidArgument(std::string("no values given for ") + what);
    return list;
}

PulseKind pulse_kind(const std::string& s)
{
    if (s == "square")
        return PulseKind::square;
    if (s == "smoothed_square")
        return PulseKind::smoothed_square;
    if (s == "gaussian")
        return PulseKind::gaussian;
    return PulseKind::cw;
}

struct SteadyOptions
{
    double alpha = 0.0;
    double delta = 0.0;
    double omega_c = 1.0;
    double omega_d = 1.0;
    std::vector<double> phi_r;
    std::string phi_r_sweep;
    int samples = 2000;
};

struct DiagramOptions
{
    double alpha = 0.0;
    double delta = 0.0;
    double omega_c = 1.0;
    double omega_d = 1.0;
    double phi_r = 0.0;
    int samples = 2000;
};

struct JumpOptions
{
    std::vector<double> delta;
    std::string delta_sweep;
    int n = 1;
    bool verify = false;
    int samples = 4000;
};

struct ApmOptions
{
    std::vector<double> alpha;
    std::string alpha_sweep;
    std::string target = "pi";
    double delta_min = 0.5;
    double delta_max = 60.0;
    double scan_step = 0.05;
    double tol = 1e-3;
    bool scan = false;
    bool all_maxima = false;
};

struct PropagateOptions
{
    double alpha = 100.0;
    double delta = 34.2;
    double phi_r = 1.53;
    double omega_c = 1.0;
    double omega_d = 1.0;
    double gamma21 = 0.0;
    int nz = 200;
    double dt = 0.02;
    double t_final = 400.0;
    std::string pulse = "smoothed_square";
    double amplitude = 0.01;
    double t_on = 10.0;
    double t_off = 210.0;
    double rise = 2.0;
    int stride = 10;
};

struct AmplifyOptions
{
    std::vector<double> alpha;
    std::string alpha_sweep;
    double delta_min = 0.5;
    double delta_max = 80.0;
    double scan_step = 0.05;
    double tol = 1e-4;
};

Report run_steady(const SteadyOptions& o, int threads)
{
    const auto phis = values_or_sweep(o.phi_r, o.phi_r_sweep, "--phi-r");
    Report r;
    r.columns = {"phi_r", "T_p", "T_s", "dphi_p", "dphi_s"};
    r.rows = parallel_rows(phis.size(), threads, [&](std::size_t i) -> Row {
        const double phi = phis[i];
        const auto p = drive(o.alpha, o.delta, phi, o.omega_c, o.omega_d);
        const auto curve = curve_for(p, phi, o.samples);
        const auto last = curve.size() - 1;
        return {phi, std::norm(curve.probe_ratio[last]), std::norm(curve.signal_ratio[last]),
                terminal_unwrapped_phase(curve, Field::probe), terminal_unwrapped_phase(curve, Field::signal)};
    });
    return r;
}

Report run_phase_diagram(const DiagramOptions& o)
{
    const auto p = drive(o.alpha, o.delta, o.phi_r, o.omega_c, o.omega_d);
    const auto curve = curve_for(p, o.phi_r, o.samples);
    Report r;
    r.columns = {"zeta", "re_probe", "im_probe", "re_signal", "im_signal"};
    for (Eigen::Index k = 0; k < curve.size(); ++k)
        r.rows.push_back({curve.zeta[k], curve.probe_ratio[k].real(), curve.probe_ratio[k].imag(),
                          curve.signal_ratio[k].real(), curve.signal_ratio[k].imag()});
    return r;
}

Report run_jump(const JumpOptions& o, int threads)
{
    const auto deltas = values_or_sweep(o.delta, o.delta_sweep, "--delta");
    Report r;
    r.columns = {"delta", "n", "alpha_c", "phi_pj", "phi_sj"};
    if (o.verify) {
        r.columns.push_back("zeta_zero_probe");
        r.columns.push_back("zeta_zero_signal");
    }
    r.rows = parallel_rows(deltas.size(), threads, [&](std::size_t i) -> Row {
        const auto js = solve_jump(deltas[i], o.n);
        Row row{deltas[i], js.n, js.alpha_c, js.phi_pj, js.phi_sj};
        if (o.verify) {
            const auto p = balanced_params(1.5 * js.alpha_c, deltas[i], 0.0);
            const auto zp = detect_zero_crossing(trace_curve(js.phi_pj, p, o.samples), Field::probe);
            const auto zs = detect_zero_crossing(trace_curve(js.phi_sj, p, o.samples), Field::signal);
            row.push_back(zp ? Json(*zp) : Json());
            row.push_back(zs ? Json(*zs) : Json());
        }
        return row;
    });
    return r;
}

Row apm_row(const ApmOperatingPoint<>& pt)
{
    return {pt.alpha, pt.delta, pt.phi_r, pt.transmission_with_signal, pt.transmission_without_signal,
            pt.phase_with_signal, pt.phase_without_signal, pt.apm_contrast};
}

Report run_apm(const ApmOptions& o, int threads)
{
    const auto alphas = values_or_sweep(o.alpha, o.alpha_sweep, "--alpha");
    const PhaseTarget target = o.target == "pi" ? PhaseTarget::pi : PhaseTarget::half_pi;
    const DetuningRange<> range{o.delta_min, o.delta_max, o.scan_step};
    Report r;
    if (o.scan) {
        if (!(range.hi > range.lo) || !(range.scan_step > 0.0))
            throw InvalidArgument("detuning range must be non-empty with a positive scan step");
        const auto n = static_cast<std::size_t>(std::floor((range.hi - range.lo) / range.scan_step + 1e-9)) + 1;
        r.columns = {"alpha", "delta", "phi_r", "T_with", "feasible"};
        for (double a : alphas) {
            auto rows = parallel_rows(n, threads, [&](std::size_t j) -> Row {
                const double d = std::min(range.lo + range.scan_step * static_cast<double>(j), range.hi);
                try {
                    const double phi = phi_r_for_shift(a, d, target);
                    return {a, d, phi, operating_point(a, d, phi, target).transmission_with_signal, 1};
                } catch (const NoSolution&) {
                    return {a, d, Json(), Json(), 0};
                }
            });
            std::move(rows.begin(), rows.end(), std::back_inserter(r.rows));
        }
        return r;
    }
    r.columns = {"alpha", "delta", "phi_r", "T_with", "T_without", "phase_with", "phase_without", "contrast"};
    if (o.all_maxima)
        r.columns.push_back("best");
    auto results = std::vector<ApmOptimization<>>(alphas.size());
    parallel_rows(alphas.size(), threads, [&](std::size_t i) -> Row {
        results[i] = optimize_detuning(alphas[i], target, range, o.tol);
        return {};
    });
    for (const auto& res : results) {
        if (!o.all_maxima) {
            r.rows.push_back(apm_row(res.best));
            continue;
        }
        for (const auto& pt : res.local_maxima) {
            auto row = apm_row(pt);
            row.push_back(pt.delta == res.best.delta ? 1 : 0);
            r.rows.push_back(std::move(row));
        }
    }
    return r;
}

Report run_propagate(const PropagateOptions& o)
{
    const auto p = drive(o.alpha, o.delta, o.phi_r, o.omega_c, o.omega_d, o.gamma21);
    PulseShape shape;
    shape.kind = pulse_kind(o.pulse);
    shape.amplitude = o.amplitude;
    shape.t_on = o.t_on;
    shape.t_off = o.t_off;
    shape.rise_time = o.rise;
    if (o.stride < 1)
        throw InvalidArgument("--stride must be at least 1");
    const SimGrid grid{o.nz, o.dt, o.t_final};
    const auto res = simulate(p, shape, shape, grid);

    Report r;
    r.columns = {"t", "re_in_p", "im_in_p", "re_in_s", "im_in_s", "re_out_p", "im_out_p", "re_out_s", "im_out_s"};
    for (Eigen::Index k = 0; k < res.time.size(); k += o.stride)
        r.rows.push_back({res.time[k], res.input_probe[k].real(), res.input_probe[k].imag(),
                          res.input_signal[k].real(), res.input_signal[k].imag(), res.output_probe[k].real(),
                          res.output_probe[k].imag(), res.output_signal[k].real(), res.output_signal[k].imag()});
    r.summary["energy_transmission_probe"] = res.energy_transmission_probe;
    r.summary["energy_transmission_signal"] = res.energy_transmission_signal;
    r.summary["group_delay_probe"] = res.group_delay_probe;
    r.summary["group_delay_signal"] = res.group_delay_signal;
    const double t_plateau = shape.kind == PulseKind::cw ? o.t_final : std::min(o.t_off, o.t_final);
    if (std::abs(shape(t_plateau)) > 0.0) {
        r.summary["plateau_time"] = t_plateau;
        r.summary["plateau_transmission_probe"] = res.transmission_at(Field::probe, t_plateau);
        r.summary["plateau_transmission_signal"] = res.transmission_at(Field::signal, t_plateau);
    }
    if (o.gamma21 == 0.0) {
        const auto ss = propagate_general(p, FieldPair<>{1.0, 1.0}, o.alpha);
        r.summary["steady_transmission_probe"] = std::norm(ss.probe);
        r.summary["steady_transmission_signal"] = std::norm(ss.signal);
    }
    return r;
}

Report run_amplify(const AmplifyOptions& o, int threads)
{
    const auto alphas = values_or_sweep(o.alpha, o.alpha_sweep, "--alpha");
    AmplifyConfig cfg;
    cfg.range = {o.delta_min, o.delta_max, o.scan_step};
    cfg.tol = o.tol;
    Report r;
    r.columns = {"alpha", "delta_opt", "phi_r_opt", "T_p", "T_s"};
    r.rows = parallel_rows(alphas.size(), threads, [&](std::size_t i) -> Row {
        const auto pt = optimize_amplification(alphas[i], cfg);
        return {pt.alpha, pt.delta_opt, pt.phi_r_opt, pt.probe_transmission, pt.signal_transmission};
    });
    return r;
}

}  // namespace

std::vector<double> parse_sweep(const std::string& spec)
{
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(item, &pos));
            if (pos != item.size())
                throw InvalidArgument("");
        } catch (const std::exception&) {
            throw InvalidArgument("malformed sweep '" + spec + "': expected start:stop:step");
        }
    }
    if (parts.size() != 3)
        throw InvalidArgument("malformed sweep '" + spec + "': expected start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop))
        throw InvalidArgument("sweep '" + spec + "' needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 10'000'000)
        throw InvalidArgument("sweep '" + spec + "' has too many points");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = start + step * static_cast<double>(k);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Steady-state, phase-jump, phase-modulation and pulse simulations of a phase-dependent "
                 "double-Lambda EIT medium. All rates in units of Gamma, times in 1/Gamma.",
                 "dlambda"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value (TOML/INI) config file; command-line flags take precedence");

    GlobalOptions g;
    app.add_option("--out", g.out, "Output file ('-' for stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::Range(1, 1024));

    SteadyOptions steady;
    auto* c_steady = app.add_subcommand("steady", "Terminal transmission and phase versus relative phase");
    c_steady->add_option("--alpha", steady.alpha, "Optical depth")->required()->check(CLI::NonNegativeNumber);
    c_steady->add_option("--delta", steady.delta, "Signal detuning");
    c_steady->add_option("--omega-c", steady.omega_c, "Coupling Rabi frequency |Omega_c|")->check(CLI::NonNegativeNumber);
    c_steady->add_option("--omega-d", steady.omega_d, "Driving Rabi frequency |Omega_d|")->check(CLI::NonNegativeNumber);
    auto* o_phi = c_steady->add_option("--phi-r", steady.phi_r, "Relative phase(s) in rad")->delimiter(',');
    auto* o_sweep = c_steady->add_option("--phi-r-sweep", steady.phi_r_sweep, "Relative-phase sweep start:stop:step");
    o_phi->excludes(o_sweep);
    c_steady->add_option("--samples", steady.samples, "Zeta samples for phase unwrapping")->check(CLI::Range(2, 10'000'000));

    DiagramOptions diagram;
    auto* c_diagram = app.add_subcommand("phase-diagram", "Field ratio trajectory over the optical depth");
    c_diagram->add_option("--alpha", diagram.alpha, "Optical depth")->required()->check(CLI::NonNegativeNumber);
    c_diagram->add_option("--delta", diagram.delta, "Signal detuning");
    c_diagram->add_option("--phi-r", diagram.phi_r, "Relative phase in rad")->required();
    c_diagram->add_option("--omega-c", diagram.omega_c, "Coupling Rabi frequency |Omega_c|")->check(CLI::NonNegativeNumber);
    c_diagram->add_option("--omega-d", diagram.omega_d, "Driving Rabi frequency |Omega_d|")->check(CLI::NonNegativeNumber);
    c_diagram->add_option("--samples", diagram.samples, "Zeta samples")->check(CLI::Range(2, 10'000'000));

    JumpOptions jump;
    auto* c_jump = app.add_subcommand("jump", "Critical optical depth and jump phases over detuning");
    auto* o_delta = c_jump->add_option("--delta", jump.delta, "Detuning(s)")->delimiter(',');
    auto* o_dsweep = c_jump->add_option("--delta-sweep", jump.delta_sweep, "Detuning sweep start:stop:step");
    o_delta->excludes(o_dsweep);
    c_jump->add_option("--n", jump.n, "Odd branch index")->check(CLI::PositiveNumber);
    c_jump->add_flag("--verify", jump.verify, "Locate the zero crossings numerically at 1.5 alpha_c");
    c_jump->add_option("--samples", jump.samples, "Zeta samples for verification")->check(CLI::Range(3, 10'000'000));

    ApmOptions apm;
    auto* c_apm = app.add_subcommand("apm", "Detuning-optimized all-optical phase modulation");
    auto* o_alpha = c_apm->add_option("--alpha", apm.alpha, "Optical depth(s)")->delimiter(',');
    auto* o_asweep = c_apm->add_option("--alpha-sweep", apm.alpha_sweep, "Optical-depth sweep start:stop:step");
    o_alpha->excludes(o_asweep);
    c_apm->add_option("--target", apm.target, "Probe phase shift")->check(CLI::IsMember({"pi", "half_pi"}));
    c_apm->add_option("--delta-min", apm.delta_min, "Lower detuning bound");
    c_apm->add_option("--delta-max", apm.delta_max, "Upper detuning bound");
    c_apm->add_option("--scan-step", apm.scan_step, "Detuning scan step");
    c_apm->add_option("--tol", apm.tol, "Golden-section tolerance in detuning")->check(CLI::PositiveNumber);
    c_apm->add_flag("--scan", apm.scan, "Emit constrained transmission over the detuning grid instead");
    c_apm->add_flag("--all-maxima", apm.all_maxima, "Emit every local maximum, flagging the best");

    PropagateOptions prop;
    auto* c_prop = app.add_subcommand("propagate", "Time-domain pulse propagation");
    c_prop->add_option("--alpha", prop.alpha, "Optical depth")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--delta", prop.delta, "Signal detuning");
    c_prop->add_option("--phi-r", prop.phi_r, "Relative phase in rad");
    c_prop->add_option("--omega-c", prop.omega_c, "Coupling Rabi frequency |Omega_c|")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--omega-d", prop.omega_d, "Driving Rabi frequency |Omega_d|")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--gamma21", prop.gamma21, "Ground-state dephasing")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--nz", prop.nz, "Zeta grid points")->check(CLI::Range(16, 1'000'000));
    c_prop->add_option("--dt", prop.dt, "Time step")->check(CLI::PositiveNumber);
    c_prop->add_option("--t-final", prop.t_final, "Simulated time")->check(CLI::PositiveNumber);
    c_prop->add_option("--pulse", prop.pulse, "Incident pulse shape")
        ->check(CLI::IsMember({"square", "smoothed_square", "gaussian", "cw"}));
    c_prop->add_option("--amplitude", prop.amplitude, "Incident probe and signal amplitude")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--t-on", prop.t_on, "Pulse switch-on time");
    c_prop->add_option("--t-off", prop.t_off, "Pulse switch-off time");
    c_prop->add_option("--rise", prop.rise, "Edge duration")->check(CLI::NonNegativeNumber);
    c_prop->add_option("--stride", prop.stride, "Emit every stride-th time step")->check(CLI::PositiveNumber);

    AmplifyOptions amp;
    auto* c_amp = app.add_subcommand("amplify-sweep", "Optimal signal amplification versus optical depth");
    auto* o_amp_alpha = c_amp->add_option("--alpha", amp.alpha, "Optical depth(s)")->delimiter(',');
    auto* o_amp_sweep = c_amp->add_option("--alpha-sweep", amp.alpha_sweep, "Optical-depth sweep start:stop:step");
    o_amp_alpha->excludes(o_amp_sweep);
    c_amp->add_option("--delta-min", amp.delta_min, "Lower detuning bound");
    c_amp->add_option("--delta-max", amp.delta_max, "Upper detuning bound");
    c_amp->add_option("--scan-step", amp.scan_step, "Detuning scan step");
    c_amp->add_option("--tol", amp.tol, "Golden-section tolerance in detuning")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"dlambda"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::FileError& e) {
        err << "dlambda: " << e.what() << '\n';
        return exit_io_error;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_config;
    }

    const CLI::App* cmd = app.get_subcommands().front();
    Report report;
    try {
        const std::string name = cmd->get_name();
        if (name == "steady")
            report = run_steady(steady, g.threads);
        else if (name == "phase-diagram")
            report = run_phase_diagram(diagram);
        else if (name == "jump")
            report = run_jump(jump, g.threads);
        else if (name == "apm")
            report = run_apm(apm, g.threads);
        else if (name == "propagate")
            report = run_propagate(prop);
        else
            report = run_amplify(amp, g.threads);
        report.command = name;
    } catch (const NumericalFailure& e) {
        err << "dlambda: numerical failure: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const std::invalid_argument& e) {
        err << "dlambda: invalid configuration: " << e.what() << '\n';
        return exit_invalid_config;
    } catch (const std::domain_error& e) {
        err << "dlambda: invalid configuration: " << e.what() << '\n';
        return exit_invalid_config;
    }

    std::vector<std::string> rerun{"dlambda"};
    Json global_cfg = Json::object();
    record_options(app, global_cfg, rerun);
    rerun.push_back(report.command);
    Json cmd_cfg = Json::object();
    record_options(*cmd, cmd_cfg, rerun);
    report.config["command"] = report.command;
    for (auto& [k, v] : global_cfg.items())
        report.config[k] = v;
    for (auto& [k, v] : cmd_cfg.items())
        report.config[k] = v;
    report.rerun = join(rerun, " ");

    std::ostringstream buffer;
    if (g.format == "json")
        write_json(buffer, report);
    else
        write_csv(buffer, report);

    if (g.out == "-") {
        out << buffer.str();
        return out ? exit_ok : exit_io_error;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
        err << "dlambda: cannot open output file '" << g.out << "'\n";
        return exit_io_error;
    }
    file << buffer.str();
    file.close();
    if (!file) {
        err << "dlambda: failed writing '" << g.out << "'\n";
        return exit_io_error;
    }
    return exit_ok;
}

}  // namespace dlambda::cli
