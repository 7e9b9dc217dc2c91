#ifndef DLAMBDA_DYNAMICS_HPP
#define DLAMBDA_DYNAMICS_HPP

// Time-domain Maxwell-Bloch integration in the comoving frame.
//
// The first-order Bloch block for (rho21, rho31, rho41) is linear,
//   d rho / dt = A rho + b(Omega_p, Omega_s),
// with A fixed by the drive. Each time step freezes the weak fields, applies
// the exact propagator rho <- exp(A dt) rho + Psi b with
// Psi = int_0^dt exp(A s) ds, and then rebuilds the fields by trapezoidal
// quadrature of d Omega_p / d zeta = (i/2) rho31, d Omega_s / d zeta = (i/2) rho41.

#include <Eigen/Core>

#include <span>
#include <vector>

#include "dlambda/apm.hpp"
#include "dlambda/core.hpp"
#include "dlambda/steady_state.hpp"

namespace dlambda {

struct SimGrid
{
    int n_z = 200;
    double dt = 0.02;
    double t_final = 400.0;

    void validate() const;
    int steps() const;
};

enum class PulseKind { square, smoothed_square, gaussian, cw };

/// Incident waveform. Smoothed edges are raised-cosine ramps of length
/// rise_time starting at t_on and t_off; the Gaussian is centred on
/// (t_on + t_off)/2 with FWHM t_off - t_on; cw switches on like a smoothed
/// square and stays on.
struct PulseShape
{
    PulseKind kind = PulseKind::smoothed_square;
    Complex<> amplitude{};
    double t_on = 0.0;
    double t_off = 200.0;
    double rise_time = 2.0;

    void validate() const;
    double envelope(double t) const;
    Complex<> operator()(double t) const { return amplitude * envelope(t); }
};

struct RecordOptions
{
    bool field_map = false;
    bool coherence_map = false;
    int stride = 1;   // record every stride-th time step in the maps
};

struct PulseSimResult
{
    Eigen::VectorXd time;
    Eigen::VectorXcd input_probe;
    Eigen::VectorXcd input_signal;
    Eigen::VectorXcd output_probe;
    Eigen::VectorXcd output_signal;

    // rows: recorded times (map_time), columns: zeta samples
    Eigen::VectorXd zeta;
    Eigen::VectorXd map_time;
    Eigen::MatrixXcd probe_map;
    Eigen::MatrixXcd signal_map;
    Eigen::MatrixXcd rho21_map;
    Eigen::MatrixXcd rho31_map;
    Eigen::MatrixXcd rho41_map;

    double energy_transmission_probe = 0.0;
    double energy_transmission_signal = 0.0;
    double group_delay_probe = 0.0;
    double group_delay_signal = 0.0;

    /// |output|^2 / |input|^2 at the recorded time nearest t.
    double transmission_at(Field which, double t) const;
};

/// OBE matrix A acting on (rho21, rho31, rho41).
Eigen::Matrix3cd obe_matrix(const MediumParams<>& params);

/// Exact one-step propagator of the Bloch block for piecewise-constant fields.
class CoherencePropagator
{
public:
    CoherencePropagator(const MediumParams<>& params, double dt);

    CoherenceState<> step(const CoherenceState<>& state, const FieldPair<>& fields) const;

    /// In-place update of a 3 x n_z block of coherences, one column per zeta sample.
    void step(Eigen::Matrix<Complex<>, 3, Eigen::Dynamic>& rho, const Eigen::VectorXcd& probe,
              const Eigen::VectorXcd& signal) const;

    const Eigen::Matrix3cd& homogeneous() const { return phi_; }
    const Eigen::Matrix3cd& source() const { return psi_; }

private:
    Eigen::Matrix3cd phi_;
    Eigen::Matrix3cd psi_;
};

/// Advances one coherence state by dt. Builds the propagator on every call;
/// use CoherencePropagator inside loops.
CoherenceState<> step_coherences(const CoherenceState<>& state, const FieldPair<>& fields,
                                 const MediumParams<>& params, double dt);

struct FieldProfile
{
    Eigen::VectorXcd probe;
    Eigen::VectorXcd signal;
};

/// Trapezoidal integration of the propagation equations from zeta = 0 over a
/// uniform grid of spacing h.
FieldProfile step_fields(const Eigen::VectorXcd& rho31, const Eigen::VectorXcd& rho41, const FieldPair<>& boundary,
                         double h);

/// Steady coherences from the linear system A rho = -b; valid for gamma21 >= 0.
CoherenceState<> steady_coherences(const MediumParams<>& params, const FieldPair<>& fields);

/// 2 x 2 steady-state transfer matrix mapping (Omega_p, Omega_s) at 0 to
/// zeta; valid for gamma21 >= 0.
Eigen::Matrix2cd steady_transfer(const MediumParams<>& params, double zeta);

FieldPair<> steady_propagate(const MediumParams<>& params, const FieldPair<>& incident, double zeta);

/// Runs the coupled integration from empty coherences. Throws
/// NumericalFailure if any |rho| exceeds 1 or a field exceeds ten times the
/// larger incident peak.
PulseSimResult simulate(const MediumParams<>& params, const PulseShape& probe, const PulseShape& signal,
                        const SimGrid& grid, const RecordOptions& record = {});

// Coherent amplification on the balanced drive (steady state).

struct AmplificationPoint
{
    double alpha;
    double delta_opt;
    double phi_r_opt;
    double probe_transmission;
    double signal_transmission;
};

struct AmplifyConfig
{
    DetuningRange<double> range{0.5, 80.0, 0.05};
    double tol = 1e-4;
};

/// max over phi_r of the signal transmission: (|1+E| + |1-E|)^2 / 4.
double max_signal_transmission(double alpha, double delta);

/// Loop phase maximizing the signal transmission at (alpha, delta).
double signal_optimal_phase(double alpha, double delta);

/// Loop phase maximizing the probe transmission at (alpha, delta).
double probe_optimal_phase(double alpha, double delta);

AmplificationPoint optimize_amplification(double alpha, const AmplifyConfig& config = {});

std::vector<AmplificationPoint> amplification_sweep(std::span<const double> alphas,
                                                    const AmplifyConfig& config = {});

}  // namespace dlambda

#endif
