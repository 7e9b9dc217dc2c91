#include "dlambda/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dlambda {

namespace {

constexpr Complex<> I{0.0, 1.0};

double trapezoid(const Eigen::VectorXd& t, const Eigen::VectorXd& y)
{
    double sum = 0.0;
    for (Eigen::Index k = 1; k < t.size(); ++k)
        sum += 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
    return sum;
}

double ramp(double x)
{
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    return 0.5 * (1.0 - std::cos(std::numbers::pi * x));
}

// energy ratio and centre-of-energy shift of output relative to input
void pulse_metrics(const Eigen::VectorXd& t, const Eigen::VectorXcd& in, const Eigen::VectorXcd& out,
                   double& transmission, double& delay)
{
    const Eigen::VectorXd pin = in.cwiseAbs2();
    const Eigen::VectorXd pout = out.cwiseAbs2();
    const double e_in = trapezoid(t, pin);
    const double e_out = trapezoid(t, pout);
    transmission = e_in > 0.0 ? e_out / e_in : 0.0;
    if (e_in > 0.0 && e_out > 0.0) {
        const Eigen::VectorXd tin = t.cwiseProduct(pin);
        const Eigen::VectorXd tout = t.cwiseProduct(pout);
        delay = trapezoid(t, tout) / e_out - trapezoid(t, tin) / e_in;
    } else {
        delay = 0.0;
    }
}

}  // namespace

void SimGrid::validate() const
{
    if (n_z < 16)
        throw InvalidArgument("grid needs at least 16 zeta points");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidArgument("time step must be positive");
    if (!(t_final >= dt) || !std::isfinite(t_final))
        throw InvalidArgument("final time must be at least one time step");
}

int SimGrid::steps() const
{
    return static_cast<int>(std::llround(t_final / dt));
}

void PulseShape::validate() const
{
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw InvalidArgument("pulse amplitude must be finite");
    if (!(rise_time >= 0.0))
        throw InvalidArgument("rise time must be non-negative");
    if (kind != PulseKind::cw && !(t_off > t_on))
        throw InvalidArgument("pulse must switch off after it switches on");
}

double PulseShape::envelope(double t) const
{
    switch (kind) {
    case PulseKind::square:
        return t >= t_on && t < t_off ? 1.0 : 0.0;
    case PulseKind::smoothed_square:
        if (rise_time == 0.0)
            return t >= t_on && t < t_off ? 1.0 : 0.0;
        return ramp((t - t_on) / rise_time) - ramp((t - t_off) / rise_time);
    case PulseKind::gaussian: {
        const double fwhm = t_off - t_on;
        const double x = t - 0.5 * (t_on + t_off);
        return std::exp(-4.0 * std::numbers::ln2 * x * x / (fwhm * fwhm));
    }
    case PulseKind::cw:
        if (rise_time == 0.0)
            return t >= t_on ? 1.0 : 0.0;
        return ramp((t - t_on) / rise_time);
    }
    return 0.0;
}

double PulseSimResult::transmission_at(Field which, double t) const
{
    if (time.size() == 0)
        throw InvalidArgument("empty simulation record");
    const double dt = time.size() > 1 ? time[1] - time[0] : 1.0;
    const auto k = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::llround((t - time[0]) / dt)), 0,
                                            time.size() - 1);
    const auto& in = which == Field::probe ? input_probe : input_signal;
    const auto& out = which == Field::probe ? output_probe : output_signal;
    if (std::norm(in[k]) == 0.0)
        throw ZeroFieldError("no incident field at the requested time");
    return std::norm(out[k]) / std::norm(in[k]);
}

Eigen::Matrix3cd obe_matrix(const MediumParams<>& p)
{
    Eigen::Matrix3cd a;
    a << -0.5 * p.gamma21, 0.5 * I * std::conj(p.omega_c), 0.5 * I * std::conj(p.omega_d),
        0.5 * I * p.omega_c, -0.5, 0.0,
        0.5 * I * p.omega_d, 0.0, I * p.delta - 0.5;
    return a;
}

CoherencePropagator::CoherencePropagator(const MediumParams<>& params, double dt)
{
    validate(params);
    if (!(dt > 0.0))
        throw InvalidArgument("time step must be positive");
    // exp([[A, 1], [0, 0]] dt) = [[exp(A dt), Psi], [0, 1]]
    Eigen::Matrix<Complex<>, 6, 6> aug = Eigen::Matrix<Complex<>, 6, 6>::Zero();
    aug.topLeftCorner<3, 3>() = obe_matrix(params) * dt;
    aug.topRightCorner<3, 3>() = Eigen::Matrix3cd::Identity() * dt;
    const Eigen::Matrix<Complex<>, 6, 6> e = aug.exp();
    phi_ = e.topLeftCorner<3, 3>();
    psi_ = e.topRightCorner<3, 3>();
}

CoherenceState<> CoherencePropagator::step(const CoherenceState<>& s, const FieldPair<>& f) const
{
    const Eigen::Vector3cd rho(s.rho21, s.rho31, s.rho41);
    const Eigen::Vector3cd out = phi_ * rho + psi_.col(1) * (0.5 * I * f.probe) + psi_.col(2) * (0.5 * I * f.signal);
    return {out[0], out[1], out[2]};
}

void CoherencePropagator::step(Eigen::Matrix<Complex<>, 3, Eigen::Dynamic>& rho, const Eigen::VectorXcd& probe,
                               const Eigen::VectorXcd& signal) const
{
    rho = phi_ * rho;
    rho.noalias() += psi_.col(1) * (0.5 * I * probe).transpose();
    rho.noalias() += psi_.col(2) * (0.5 * I * signal).transpose();
}

CoherenceState<> step_coherences(const CoherenceState<>& state, const FieldPair<>& fields,
                                 const MediumParams<>& params, double dt)
{
    return CoherencePropagator(params, dt).step(state, fields);
}

FieldProfile step_fields(const Eigen::VectorXcd& rho31, const Eigen::VectorXcd& rho41, const FieldPair<>& boundary,
                         double h)
{
    if (rho31.size() != rho41.size() || rho31.size() == 0)
        throw InvalidArgument("coherence profiles must be non-empty and aligned");
    const Eigen::Index n = rho31.size();
    FieldProfile f{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
    const Complex<> w = 0.25 * I * h;
    f.probe[0] = boundary.probe;
    f.signal[0] = boundary.signal;
    for (Eigen::Index k = 1; k < n; ++k) {
        f.probe[k] = f.probe[k - 1] + w * (rho31[k - 1] + rho31[k]);
        f.signal[k] = f.signal[k - 1] + w * (rho41[k - 1] + rho41[k]);
    }
    return f;
}

namespace {

// columns: response of (rho21, rho31, rho41) to unit Omega_p and unit Omega_s
Eigen::Matrix<Complex<>, 3, 2> steady_response(const MediumParams<>& params)
{
    validate(params);
    const Eigen::Matrix3cd a = obe_matrix(params);
    Eigen::Matrix<Complex<>, 3, 2> b = Eigen::Matrix<Complex<>, 3, 2>::Zero();
    b(1, 0) = 0.5 * I;
    b(2, 1) = 0.5 * I;
    const auto lu = a.fullPivLu();
    if (!lu.isInvertible())
        throw InvalidArgument("singular Bloch matrix: no unique steady state");
    return -lu.solve(b);
}

}  // namespace

CoherenceState<> steady_coherences(const MediumParams<>& params, const FieldPair<>& fields)
{
    const auto r = steady_response(params);
    const Eigen::Vector3cd rho = r * Eigen::Vector2cd(fields.probe, fields.signal);
    return {rho[0], rho[1], rho[2]};
}

Eigen::Matrix2cd steady_transfer(const MediumParams<>& params, double zeta)
{
    if (!(zeta >= 0.0))
        throw InvalidArgument("zeta must be non-negative");
    const Eigen::Matrix2cd s = steady_response(params).bottomRows<2>();
    const Eigen::Matrix2cd gen = (0.5 * I * zeta) * s;
    return gen.exp();
}

FieldPair<> steady_propagate(const MediumParams<>& params, const FieldPair<>& incident, double zeta)
{
    const Eigen::Vector2cd out = steady_transfer(params, zeta) * Eigen::Vector2cd(incident.probe, incident.signal);
    return {out[0], out[1]};
}

PulseSimResult simulate(const MediumParams<>& params, const PulseShape& probe, const PulseShape& signal,
                        const SimGrid& grid, const RecordOptions& record)
{
    validate(params);
    grid.validate();
    probe.validate();
    signal.validate();
    if (record.stride < 1)
        throw InvalidArgument("record stride must be at least 1");

    const int n_z = grid.n_z;
    const int steps = grid.steps();
    const double h = params.alpha / (n_z - 1);
    const CoherencePropagator prop(params, grid.dt);
    const double bound = 10.0 * std::max(std::abs(probe.amplitude), std::abs(signal.amplitude));

    PulseSimResult res;
    res.time.resize(steps + 1);
    res.input_probe.resize(steps + 1);
    res.input_signal.resize(steps + 1);
    res.output_probe.resize(steps + 1);
    res.output_signal.resize(steps + 1);
    res.zeta = Eigen::VectorXd::LinSpaced(n_z, 0.0, params.alpha);

    const int n_rec = steps / record.stride + 1;
    if (record.field_map || record.coherence_map)
        res.map_time.resize(n_rec);
    if (record.field_map) {
        res.probe_map.resize(n_rec, n_z);
        res.signal_map.resize(n_rec, n_z);
    }
    if (record.coherence_map) {
        res.rho21_map.resize(n_rec, n_z);
        res.rho31_map.resize(n_rec, n_z);
        res.rho41_map.resize(n_rec, n_z);
    }

    Eigen::Matrix<Complex<>, 3, Eigen::Dynamic> rho = Eigen::Matrix<Complex<>, 3, Eigen::Dynamic>::Zero(3, n_z);
    FieldProfile fields{Eigen::VectorXcd::Constant(n_z, probe(0.0)), Eigen::VectorXcd::Constant(n_z, signal(0.0))};

    auto store = [&](int j, double t) {
        res.time[j] = t;
        res.input_probe[j] = fields.probe[0];
        res.input_signal[j] = fields.signal[0];
        res.output_probe[j] = fields.probe[n_z - 1];
        res.output_signal[j] = fields.signal[n_z - 1];
        if (j % record.stride != 0)
            return;
        const int r = j / record.stride;
        if (record.field_map || record.coherence_map)
            res.map_time[r] = t;
        if (record.field_map) {
            res.probe_map.row(r) = fields.probe.transpose();
            res.signal_map.row(r) = fields.signal.transpose();
        }
        if (record.coherence_map) {
            res.rho21_map.row(r) = rho.row(0);
            res.rho31_map.row(r) = rho.row(1);
            res.rho41_map.row(r) = rho.row(2);
        }
    };

    store(0, 0.0);
    for (int j = 1; j <= steps; ++j) {
        const double t = j * grid.dt;
        prop.step(rho, fields.probe, fields.signal);
        fields = step_fields(rho.row(1).transpose(), rho.row(2).transpose(), {probe(t), signal(t)}, h);

        const double rho_max = rho.cwiseAbs().maxCoeff();
        const double field_max = std::max(fields.probe.cwiseAbs().maxCoeff(), fields.signal.cwiseAbs().maxCoeff());
        if (!(rho_max <= 1.0) || !(field_max <= bound))
            throw NumericalFailure("integration unstable at t = " + std::to_string(t) + " (max |rho| = "
                                   + std::to_string(rho_max) + ", max |Omega| = " + std::to_string(field_max) + ")");
        store(j, t);
    }

    pulse_metrics(res.time, res.input_probe, res.output_probe, res.energy_transmission_probe, res.group_delay_probe);
    pulse_metrics(res.time, res.input_signal, res.output_signal, res.energy_transmission_signal,
                  res.group_delay_signal);
    return res;
}

namespace {

Complex<> balanced_factor(double alpha, double delta)
{
    return bright_mode_factor(balanced_params(alpha, delta, 0.0), alpha);
}

double phase_between(const Complex<>& a, const Complex<>& b)
{
    if (a == 0.0 || b == 0.0)
        return 0.0;
    return wrap_two_pi(std::arg(a) - std::arg(b));
}

}  // namespace

double max_signal_transmission(double alpha, double delta)
{
    const Complex<> e = balanced_factor(alpha, delta);
    const double m = 0.5 * (std::abs(1.0 + e) + std::abs(1.0 - e));
    return m * m;
}

double signal_optimal_phase(double alpha, double delta)
{
    const Complex<> e = balanced_factor(alpha, delta);
    return phase_between(1.0 + e, 1.0 - e);
}

double probe_optimal_phase(double alpha, double delta)
{
    const Complex<> e = balanced_factor(alpha, delta);
    return phase_between(1.0 - e, 1.0 + e);
}

AmplificationPoint optimize_amplification(double alpha, const AmplifyConfig& config)
{
    const auto& r = config.range;
    if (!(alpha >= 0.0))
        throw InvalidArgument("optical depth must be non-negative");
    if (!(r.hi > r.lo) || !(r.scan_step > 0.0))
        throw InvalidArgument("detuning range must be non-empty with a positive scan step");

    const auto n = static_cast<std::size_t>(std::floor((r.hi - r.lo) / r.scan_step + 1e-9)) + 1;
    auto objective = [&](double d) { return max_signal_transmission(alpha, d); };
    std::size_t best = 0;
    double best_value = -1.0;
    std::vector<double> grid(n);
    for (std::size_t j = 0; j < n; ++j) {
        grid[j] = std::min(r.lo + r.scan_step * static_cast<double>(j), r.hi);
        const double v = objective(grid[j]);
        if (v > best_value) {
            best_value = v;
            best = j;
        }
    }
    double d_opt = grid[best];
    const double a = grid[best > 0 ? best - 1 : best];
    const double b = grid[best + 1 < n ? best + 1 : best];
    if (b > a) {
        const auto [x, fx] = golden_section_max(objective, a, b, config.tol);
        if (fx >= best_value)
            d_opt = x;
    }

    AmplificationPoint p;
    p.alpha = alpha;
    p.delta_opt = d_opt;
    p.phi_r_opt = signal_optimal_phase(alpha, d_opt);
    p.signal_transmission = max_signal_transmission(alpha, d_opt);
    if (alpha > 0.0) {
        const auto ratios = propagate_balanced(p.phi_r_opt, balanced_params(alpha, d_opt, 0.0), alpha);
        p.probe_transmission = std::norm(ratios.probe);
    } else {
        p.probe_transmission = 1.0;
    }
    return p;
}

std::vector<AmplificationPoint> amplification_sweep(std::span<const double> alphas, const AmplifyConfig& config)
{
    if (alphas.empty())
        throw InvalidArgument("amplification sweep needs at least one optical depth");
    std::vector<AmplificationPoint> out;
    out.reserve(alphas.size());
    for (double a : alphas)
        out.push_back(optimize_amplification(a, config));
    return out;
}

}  // namespace dlambda
