#include "wslab/memory.hpp"

#include <cmath>
#include <sstream>


namespace wslab {

SplitParams::SplitParams(double beta_in, double t1_in) : beta(beta_in), t1(t1_in) {
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("split exponent beta must lie in (0,1)");
    if (!(t1 > 0.0)) throw ConfigError("memory horizon t1 must be positive");
}

RealField free_wave(const RealField& a_plus, const RealField& a_dot_plus, double t) {
    if (!(t >= 0.0)) throw RangeError("free wave evolution needs t >= 0");
    require_same_grid(a_plus.grid(), a_dot_plus.grid());
    RealField out = apply_multiplier(a_plus, MultiplierSpec::wave_cosine(t));
    out += apply_multiplier(a_dot_plus, MultiplierSpec::wave_sine(t));
    return out;
}

RealField sample_radial(const RadialProfile& f, const SpectralGrid& grid) {
    RealField out(grid);
    const int n = grid.n();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        const double x = grid.coord(i);
        std::size_t idx = static_cast<std::size_t>(i) * n * n;
        for (int j = 0; j < n; ++j) {
            const double y = grid.coord(j);
            for (int k = 0; k < n; ++k, ++idx) {
                const double z = grid.coord(k);
                out[idx] = f(std::sqrt(x * x + y * y + z * z));
            }
        }
    });
    return out;
}

RealField b0_field(const RadialWave& data, const SpectralGrid& grid, double t) {
    if (!(t >= 1.0)) throw RangeError("stretched frame needs t >= 1");
    RealField out(grid);
    const int n = grid.n();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        const double x = grid.coord(i);
        std::size_t idx = static_cast<std::size_t>(i) * n * n;
        for (int j = 0; j < n; ++j) {
            const double y = grid.coord(j);
            for (int k = 0; k < n; ++k, ++idx) {
                const double z = grid.coord(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                out[idx] = t * data(t, t * r);
            }
        }
    });
    return out;
}

double b0_norm_l2(const RadialWave& data, double t) {
    if (!(t >= 1.0)) throw RangeError("stretched frame needs t >= 1");
    return data.l2_norm3d(t) / std::sqrt(t);
}

// ---- memory quadrature support ----------------------------------------------

namespace {

RealField rho_field(const PhasePair& a, const PhasePair& b) {
    RealField r(a.w.grid());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::real(std::conj(a.w[i]) * b.w[i]);
    return r;
}

double recorded_back(const Trajectory& traj) {
    if (traj.size() == 0) throw RangeError("empty trajectory");
    return traj.at(traj.size() - 1).t;
}

void require_pair(const Trajectory& wa, const Trajectory& wb) {
    if (wa.size() != wb.size() || wa.grid().size() != wb.grid().size())
        throw DataError("trajectory pair disagrees in length");
    if (wa.size() == 0) throw RangeError("empty trajectory");
    if (std::abs(wa.grid().front() / wb.grid().front() - 1.0) > 1e-12 ||
        std::abs(wa.grid().back() / wb.grid().back() - 1.0) > 1e-12)
        throw DataError("trajectory pair disagrees in time coverage");
    require_same_grid(wa.at(0).w.grid(), wb.at(0).w.grid());
}

[[noreturn]] void missing_interval(const char* what, double lo, double hi, double front,
                                   double back) {
    std::ostringstream msg;
    msg << what << " needs [" << lo << ", " << hi << "] but the trajectory covers [" << front
        << ", " << back << "]";
    throw RangeError(msg.str());
}

// Quadrature node times: target, interior grid nodes, horizon.
std::vector<double> quad_times(const TimeGrid& g, double t, double horizon) {
    std::vector<double> ts{t};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double tau = g[i];
        if (tau > t * (1.0 + 1e-12) && tau < horizon * (1.0 - 1e-12)) ts.push_back(tau);
    }
    ts.push_back(horizon);
    return ts;
}

// Least-squares decay exponent p of samples (x, y) ~ y = c x^{-p} over the
// last decade; NaN when the window is too thin to fit.
double fitted_decay(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double x_hi = xs.back();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < x_hi / 10.0 || !(ys[i] > 0.0)) continue;
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 6) return std::numeric_limits<double>::quiet_NaN();
    const double det = m * sxx - sx * sx;
    if (det <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -(m * sxy - sx * sy) / det;
}

// Tail of integral g(nu) dnu beyond nu_last, extrapolating the fitted decay.
double tail_from_fit(const std::vector<double>& nus, const std::vector<double>& gnorms) {
    const double g_last = gnorms.back();
    if (g_last <= 0.0) return 0.0;
    const double p = fitted_decay(nus, gnorms);
    if (!(p > 1.02)) return std::numeric_limits<double>::infinity();
    return g_last * nus.back() / (p - 1.0);
}

struct HorizonPlan {
    double horizon;
    double t_cap;
    bool truncated;  // infinite-horizon run cut at t_cap
};

HorizonPlan plan_horizon(double t, double t1, double back, double front) {
    HorizonPlan plan{};
    if (std::isfinite(t1)) {
        if (t1 > back * (1.0 + 1e-12)) missing_interval("memory quadrature", t, t1, front, back);
        plan.horizon = plan.t_cap = t1;
        plan.truncated = false;
    } else {
        plan.horizon = plan.t_cap = std::min(back, 1e3 * t);
        plan.truncated = true;
    }
    return plan;
}

MemoryField b1_direct(const Trajectory& wa, const Trajectory& wb, double t,
                      const SplitParams& params) {
    require_pair(wa, wb);
    const SpectralGrid grid = wa.at(0).w.grid();
    const double front = wa.grid().front();
    const double back = recorded_back(wa);
    if (t < front * (1.0 - 1e-12) || t > back * (1.0 + 1e-12))
        missing_interval("memory quadrature", t, t, front, back);
    const HorizonPlan plan = plan_horizon(t, params.t1, back, front);

    MemoryField out{RealField(grid), t, plan.t_cap, 0.0};
    if (plan.horizon <= t * (1.0 + 1e-12)) return out;

    const auto ts = quad_times(wa.grid(), t, plan.horizon);
    std::vector<double> nus, gnorms;
    nus.reserve(ts.size());
    gnorms.reserve(ts.size());

    auto integrand = [&](double tau) {
        const double nu = tau / t;
        if (nu <= 1.0 + 1e-14) return RealField(grid);
        RealField rho = rho_field(wa.interpolate(tau), wb.interpolate(tau));
        RealField g = apply_multiplier(dilate_sample(rho, nu), MultiplierSpec::wave_sine(nu - 1.0));
        g *= std::pow(nu, -3.0);
        return g;
    };

    RealField prev = integrand(ts[0]);
    nus.push_back(ts[0] / t);
    gnorms.push_back(prev.norm_l2());
    for (std::size_t j = 1; j < ts.size(); ++j) {
        RealField cur = integrand(ts[j]);
        nus.push_back(ts[j] / t);
        gnorms.push_back(cur.norm_l2());
        const double half_dnu = 0.5 * (ts[j] - ts[j - 1]) / t;
        double* acc = out.field.data();
        const double* pa = prev.data();
        const double* pb = cur.data();
        for (std::size_t i = 0; i < out.field.size(); ++i) acc[i] += half_dnu * (pa[i] + pb[i]);
        prev = std::move(cur);
    }
    if (plan.truncated) out.tail_bound = tail_from_fit(nus, gnorms);
    return out;
}

}  // namespace

MemoryField b1_memory(const Trajectory& wa, const Trajectory& wb, double t,
                      const SplitParams& params) {
    return b1_direct(wa, wb, t, params);
}

MemoryField b1_memory(const Trajectory& traj, double t, const SplitParams& params) {
    return b1_direct(traj, traj, t, params);
}

// ---- whole-family memory pass --------------------------------------------------

namespace {

// Batched form of b1_direct: every node below the horizon is a quadrature
// target against the same frozen trajectory pair.  Carrying a value/velocity
// pair between nodes with per-step resampling looks cheaper but does not
// converge: each lattice dilation aliases the off-lattice frequencies it
// creates, and the leakage compounds across steps instead of shrinking with
// the node spacing.  Per-target quadrature keeps one resampling per source.
MemorySweepResult sweep_impl(const Trajectory& wa, const Trajectory& wb,
                             const SplitParams& params) {
    require_pair(wa, wb);
    if (!wa.complete() || !wb.complete())
        throw DataError("memory sweep needs fully recorded trajectories");
    const TimeGrid& g = wa.grid();
    g.check_uniform_log();
    const SpectralGrid grid = wa.at(0).w.grid();
    const double front = g.front();
    const double back = g.back();
    if (std::isfinite(params.t1) && params.t1 < front * (1.0 - 1e-12))
        missing_interval("memory sweep", params.t1, params.t1, front, back);
    const HorizonPlan plan = plan_horizon(front, params.t1, back, front);

    std::size_t top = g.lower_index(plan.horizon);
    // lower_index is an interval index; a horizon sitting on a node owns it
    if (top + 1 < g.size() && plan.horizon >= g[top + 1] * (1.0 - 1e-12)) ++top;
    MemorySweepResult out;
    out.t_cap = plan.t_cap;
    out.tail_bound = 0.0;
    out.node_times.assign(g.nodes().begin(), g.nodes().begin() + top + 1);
    out.b1.assign(top + 1, RealField(grid));
    parallel_for(top + 1, [&](std::size_t i) {
        MemoryField row = b1_direct(wa, wb, g[i], params);
        out.b1[i] = std::move(row.field);
    });
    if (plan.truncated) {
        // tail certificate at the earliest node, where the cut is deepest
        out.tail_bound = b1_direct(wa, wb, front, params).tail_bound;
    }
    return out;
}

}  // namespace

MemorySweepResult memory_sweep(const Trajectory& wa, const Trajectory& wb,
                               const SplitParams& params) {
    return sweep_impl(wa, wb, params);
}

MemorySweepResult memory_sweep(const Trajectory& traj, const SplitParams& params) {
    return sweep_impl(traj, traj, params);
}

// ---- splitting ----------------------------------------------------------------

std::pair<RealField, RealField> split(const RealField& b1, double t, const SplitParams& params) {
    if (!(t >= 1.0)) throw RangeError("split needs t >= 1");
    const double radius = std::pow(t, params.beta);
    RealField short_part = apply_multiplier(b1, MultiplierSpec::high_band(radius));
    RealField long_part = apply_multiplier(b1, MultiplierSpec::low_band(radius));
    return {std::move(short_part), std::move(long_part)};
}

BDecomposition decompose(const RadialWave& data, const Trajectory& traj, double t,
                         const SplitParams& params) {
    RealField b0 = b0_field(data, traj.at(0).w.grid(), t);
    MemoryField b1 = b1_memory(traj, t, params);
    auto parts = split(b1.field, t, params);
    return BDecomposition{std::move(b0), std::move(b1.field), std::move(parts.first),
                          std::move(parts.second), t};
}

// ---- retarded potential --------------------------------------------------------

MemoryField a1_potential(const Trajectory& traj, double t, double t1) {
    if (traj.size() == 0) throw RangeError("empty trajectory");
    if (!(t >= 1.0)) throw RangeError("retarded potential needs t >= 1");
    const SpectralGrid grid = traj.at(0).w.grid();
    const double front = traj.grid().front();
    const double back = recorded_back(traj);
    if (t < front * (1.0 - 1e-12) || t > back * (1.0 + 1e-12))
        missing_interval("retarded potential", t, t, front, back);
    const HorizonPlan plan = plan_horizon(t, t1, back, front);

    MemoryField out{RealField(grid), t, plan.t_cap, 0.0};
    if (plan.horizon <= t * (1.0 + 1e-12)) return out;

    const auto ts = quad_times(traj.grid(), t, plan.horizon);
    std::vector<double> nus, gnorms;

    auto integrand = [&](double tau) {
        if (tau <= t * (1.0 + 1e-14)) return RealField(grid);
        const PhasePair state = traj.interpolate(tau);
        RealField source(grid);
        for (std::size_t i = 0; i < source.size(); ++i) source[i] = std::norm(state.w[i]);
        source = dilate_sample(source, tau);
        source *= std::pow(tau, -3.0);
        return apply_multiplier(source, MultiplierSpec::wave_sine(tau - t));
    };

    RealField prev = integrand(ts[0]);
    nus.push_back(ts[0] / t);
    gnorms.push_back(prev.norm_l2());
    for (std::size_t j = 1; j < ts.size(); ++j) {
        RealField cur = integrand(ts[j]);
        nus.push_back(ts[j] / t);
        gnorms.push_back(cur.norm_l2());
        const double half_dt = 0.5 * (ts[j] - ts[j - 1]);
        double* acc = out.field.data();
        const double* pa = prev.data();
        const double* pb = cur.data();
        for (std::size_t i = 0; i < out.field.size(); ++i) acc[i] += half_dt * (pa[i] + pb[i]);
        prev = std::move(cur);
    }
    if (plan.truncated) {
        // tail in dtau = t dnu
        out.tail_bound = tail_from_fit(nus, gnorms) * t;
    }
    return out;
}

// ---- kernel functional ----------------------------------------------------------

namespace {

// integral of nu^p over [a, b]
double power_integral(double p, double a, double b) {
    if (std::abs(p + 1.0) < 1e-12) return std::log(b / a);
    return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
}

}  // namespace

double i_m_functional(const ScalarSeries& f, double m, double t, double t1) {
    if (f.values.size() != f.grid.size()) throw DataError("series length does not match its grid");
    const double front = f.grid.front();
    const double back = f.grid.back();
    if (t < front * (1.0 - 1e-12) || t > back * (1.0 + 1e-12))
        throw RangeError("target time outside the series");
    const bool infinite = !std::isfinite(t1);
    if (!infinite && t1 < t * (1.0 - 1e-12)) throw RangeError("horizon precedes the target time");
    if (!infinite && t1 > back * (1.0 + 1e-12))
        throw RangeError("finite horizon beyond the series end");
    const double horizon = infinite ? back : t1;
    if (horizon <= t * (1.0 + 1e-12) && !infinite) return 0.0;

    const double p = -m - 1.5;
    double acc = 0.0;
    const auto ts = quad_times(f.grid, t, horizon);
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
        const double na = ts[j] / t, nb = ts[j + 1] / t;
        if (nb - na < 1e-14) continue;
        const double fa = f.at(ts[j]), fb = f.at(ts[j + 1]);
        // f linear in nu across the interval, kernel integrated exactly
        const double slope = (fb - fa) / (nb - na);
        const double i0 = power_integral(p, na, nb);
        const double i1 = power_integral(p + 1.0, na, nb);
        acc += (fa - slope * na) * i0 + slope * i1;
        if (std::abs(acc) > 1e12)
            throw DivergenceError("kernel functional exceeds the divergence guard");
    }
    if (infinite) {
        // extend with the fitted power decay of f past the series end
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < f.grid.size(); ++i) {
            xs.push_back(f.grid[i]);
            ys.push_back(std::abs(f.values[i]));
        }
        double q = fitted_decay(xs, ys);
        const double f_end = f.values.back();
        if (f_end != 0.0) {
            if (std::isnan(q)) q = 0.0;
            const double pq = p - q;
            if (pq >= -1.0)
                throw DivergenceError("kernel functional tail does not converge");
            const double nu_end = back / t;
            // integral of f_end (nu/nu_end)^{-q} nu^p beyond nu_end
            acc += f_end * std::pow(nu_end, q) * (-std::pow(nu_end, pq + 1.0) / (pq + 1.0));
            if (std::abs(acc) > 1e12)
                throw DivergenceError("kernel functional exceeds the divergence guard");
        }
    }
    return std::abs(acc);
}

}  // namespace wslab
