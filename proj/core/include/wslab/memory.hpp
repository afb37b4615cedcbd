#pragma once

#include <limits>
#include <utility>

#include "wslab/propagator.hpp"
#include "wslab/radial.hpp"
#include "wslab/state.hpp"

namespace wslab {

// Horizon sentinel: integrate over the whole available trajectory range.
inline constexpr double kNoHorizon = std::numeric_limits<double>::infinity();

// Frequency-splitting parameters: cutoff radius t^beta, memory horizon t1.
struct SplitParams {
    double beta;
    double t1;
    explicit SplitParams(double beta_in = 0.5, double t1_in = kNoHorizon);
};

// The wave field's pieces at one time, all on the fixed box; b_s + b_l = b1
// exactly, with b_s supported on |xi| > t^beta and b_l on the complement.
struct BDecomposition {
    RealField b0;
    RealField b1;
    RealField b_s;
    RealField b_l;
    double t;
};

// Free wave evolution cos(t omega) a_plus + [sin(t omega)/omega] a_dot_plus.
RealField free_wave(const RealField& a_plus, const RealField& a_dot_plus, double t);

// Box sampling of a radial profile (pointwise, not band-limited).
RealField sample_radial(const RadialProfile& f, const SpectralGrid& grid);

// Stretched-frame free wave B0(t,x) = t * A0(t, t|x|), from the closed-form
// radial solution.  The box spectral path is wrong here: stretched sampling
// at t*x reads deep into the periodic copies, which pile up near the origin.
RealField b0_field(const RadialWave& data, const SpectralGrid& grid, double t);

// L2 norm of B0(t) over all of space; the stretching gives exactly
// t^{-1/2} ||A0(t)||_2, which the box lattice cannot resolve once the shell
// is thinner than the spacing.
double b0_norm_l2(const RadialWave& data, double t);

// Memory-integral value at one target time, with truncation metadata when
// the horizon is infinite.
struct MemoryField {
    RealField field;
    double t;
    double t_cap;       // horizon actually integrated to
    double tail_bound;  // L2 bound on the neglected tail; 0 when none
};

// Memory integral at time t: trapezoid in nu over the trajectory's log grid
// of nu^{-3} [sin((nu-1) omega)/omega] rho(nu t, x/nu), rho = Re conj(wa) wb
// resampled by trigonometric dilation.  The two-trajectory form is the
// bilinear version; the one-trajectory form takes rho = |w|^2.
MemoryField b1_memory(const Trajectory& wa, const Trajectory& wb, double t,
                      const SplitParams& params);
MemoryField b1_memory(const Trajectory& traj, double t, const SplitParams& params);

// Whole-family memory pass: b1_memory evaluated at every trajectory node up
// to the horizon, against the same frozen trajectory pair.  Each row equals
// the single-target integral exactly; node evaluations are independent and
// run on the worker pool.
struct MemorySweepResult {
    std::vector<RealField> b1;       // node-aligned values, earliest first
    std::vector<double> node_times;  // same length as b1
    double t_cap;
    double tail_bound;  // bound at the earliest node (the largest one)
};
MemorySweepResult memory_sweep(const Trajectory& wa, const Trajectory& wb,
                               const SplitParams& params);
MemorySweepResult memory_sweep(const Trajectory& traj, const SplitParams& params);

// Sharp spectral partition of b1 at radius t^beta: (short, long); ties go to
// the long-range part.
std::pair<RealField, RealField> split(const RealField& b1, double t, const SplitParams& params);

BDecomposition decompose(const RadialWave& data, const Trajectory& traj, double t,
                         const SplitParams& params);

// Retarded potential in unstretched variables:
//   integral from t to t1 of [sin((t'-t) omega)/omega] |u(t')|^2 dt',
// where |u(t')|^2 = t'^{-3} |w(t', x/t')|^2 is read off the trajectory.
// Caller keeps t' * (support of w) inside the box; t >= 1.
MemoryField a1_potential(const Trajectory& traj, double t, double t1);

// Kernel functional |integral_1^{t1/t} dnu nu^{-m-3/2} f(nu t)|, product
// trapezoid on the series grid (kernel integrated exactly per interval, f
// linear).  An infinite t1 extends past the series end with a power tail
// fitted over the last decade; a non-integrable tail or a partial sum beyond
// 1e12 raises DivergenceError.
double i_m_functional(const ScalarSeries& f, double m, double t, double t1);

}  // namespace wslab
