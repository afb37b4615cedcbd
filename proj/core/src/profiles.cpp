#include "wslab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace wslab {

namespace {

constexpr double kSnapTol = 1e-9;  // relative node-snap width

void axpy(RealField& y, double a, const RealField& x) {
    double* yd = y.data();
    const double* xd = x.data();
    for (std::size_t i = 0; i < y.size(); ++i) yd[i] += a * xd[i];
}

void axpy(ComplexField& y, double a, const ComplexField& x) {
    complexd* yd = y.data();
    const complexd* xd = x.data();
    for (std::size_t i = 0; i < y.size(); ++i) yd[i] += a * xd[i];
}

// Cumulative integrals over a uniform log grid with spacing h: each interval
// uses the quadratic through three neighboring nodes, so the global error is
// O(h^3).  Forward returns Int_{tau_0}^{tau_i}, backward Int_{tau_i}^{tau_last}.
template <class Field>
std::vector<Field> cumulative_forward(double h, const std::vector<Field>& f) {
    const std::size_t n = f.size();
    Field zero = f.front();
    zero *= 0.0;
    std::vector<Field> out(n, zero);
    for (std::size_t i = 1; i < n; ++i) {
        out[i] = out[i - 1];
        if (i >= 2) {
            axpy(out[i], -h / 12.0, f[i - 2]);
            axpy(out[i], 8.0 * h / 12.0, f[i - 1]);
            axpy(out[i], 5.0 * h / 12.0, f[i]);
        } else if (n >= 3) {
            axpy(out[i], 5.0 * h / 12.0, f[0]);
            axpy(out[i], 8.0 * h / 12.0, f[1]);
            axpy(out[i], -h / 12.0, f[2]);
        } else {
            axpy(out[i], h / 2.0, f[0]);
            axpy(out[i], h / 2.0, f[1]);
        }
    }
    return out;
}

template <class Field>
std::vector<Field> cumulative_backward(double h, const std::vector<Field>& f) {
    const std::size_t n = f.size();
    Field zero = f.front();
    zero *= 0.0;
    std::vector<Field> out(n, zero);
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = out[i + 1];
        if (i + 2 < n) {
            axpy(out[i], 5.0 * h / 12.0, f[i]);
            axpy(out[i], 8.0 * h / 12.0, f[i + 1]);
            axpy(out[i], -h / 12.0, f[i + 2]);
        } else if (i >= 1) {
            axpy(out[i], -h / 12.0, f[i - 1]);
            axpy(out[i], 8.0 * h / 12.0, f[i]);
            axpy(out[i], 5.0 * h / 12.0, f[i + 1]);
        } else {
            axpy(out[i], h / 2.0, f[i]);
            axpy(out[i], h / 2.0, f[i + 1]);
        }
    }
    return out;
}

RealField squared_magnitude(const VectorField& v) {
    RealField out(v.grid());
    const std::size_t m = v.size();
    const double* a = v.component(0);
    const double* b = v.component(1);
    const double* c = v.component(2);
    for (std::size_t i = 0; i < m; ++i) out[i] = a[i] * a[i] + b[i] * b[i] + c[i] * c[i];
    return out;
}

// (a . grad) b with spectral derivatives per component.
VectorField advect(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid());
    VectorField out(a.grid());
    const std::size_t m = a.size();
    for (int c = 0; c < 3; ++c) {
        ComplexField bc(a.grid());
        const double* src = b.component(c);
        for (std::size_t i = 0; i < m; ++i) bc[i] = complexd(src[i], 0.0);
        double* dst = out.component(c);
        for (int ax = 0; ax < 3; ++ax) {
            const ComplexField d = derivative(bc, ax);
            const double* av = a.component(ax);
            for (std::size_t i = 0; i < m; ++i) dst[i] += av[i] * d[i].real();
        }
    }
    return out;
}

int node_snap(const TimeGrid& g, double t) {
    const std::size_t i = g.lower_index(t);
    if (std::abs(t / g[i] - 1.0) <= kSnapTol) return static_cast<int>(i);
    if (i + 1 < g.size() && std::abs(t / g[i + 1] - 1.0) <= kSnapTol)
        return static_cast<int>(i + 1);
    return -1;
}

TimeGrid make_profile_grid(const ProfileParams& p) {
    if (!(p.beta > 0.0) || !(p.beta < 1.0))
        throw ConfigError("profile split exponent must lie in (0, 1)");
    if (!(p.t_cap > 1.0)) throw ConfigError("profile horizon must exceed 1");
    if (p.nodes_per_decade < 4) throw ConfigError("profile grid needs >= 4 nodes per decade");
    TimeGrid g = TimeGrid::geometric(1.0, p.t_cap, p.nodes_per_decade);
    if (g.size() < 4) throw ConfigError("profile grid too coarse for the quadrature rules");
    return g;
}

// One pass of the coupled chain with the upper limit at node m: pair memories,
// forward phase of the first iterate, transported source and backward integral
// of the second profile, and the second phase.  Every vector runs over nodes
// [0, m].  The memory rows themselves depend on the upper limit, so the chain
// cannot be truncated after the fact; it has to be rebuilt per horizon.
struct Chain {
    std::vector<RealField> b100, b101, b111;
    std::vector<RealField> phi0, phi1;
    std::vector<ComplexField> gint;
};

Chain build_chain(const Trajectory& w0_traj, const SplitParams& sp, std::size_t m) {
    const TimeGrid& g = w0_traj.grid();
    const double h = std::log(g.ratio());
    const SpectralGrid grid = w0_traj.at(0).w.grid();
    const std::size_t k = m + 1;

    Chain c;
    {
        MemorySweepResult sw = memory_sweep(w0_traj, sp);
        c.b100 = std::move(sw.b1);
    }

    // phase accumulator of the first iterate, forward in log time
    {
        std::vector<RealField> longs;
        longs.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            longs.push_back(split(c.b100[i], g[i], sp).second);
        c.phi0 = cumulative_forward(h, longs);
        for (auto& f : c.phi0) f *= -1.0;
    }

    // transported source of the second profile and its backward integral
    {
        std::vector<ComplexField> src;
        src.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const double t = g[i];
            ComplexField q = q_operator(gradient(c.phi0[i]), w0_traj.at(i).w);
            q = free_schrodinger(q, 1.0 / t);
            q *= complexd(1.0 / t, 0.0);
            src.push_back(std::move(q));
        }
        c.gint = cumulative_backward(h, src);
    }

    // second profile trajectory on the full grid; rows above the horizon stay
    // zero and the capped sweeps never read them
    Trajectory w1_traj(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        ComplexField w1i(grid);
        if (i < k) {
            w1i = free_schrodinger(c.gint[i], -1.0 / g[i]);
            w1i *= complexd(-1.0, 0.0);
        }
        w1_traj.append({std::move(w1i), VectorField(grid), g[i]});
    }

    // cross and self memory of the second profile
    {
        MemorySweepResult sw = memory_sweep(w0_traj, w1_traj, sp);
        c.b101 = std::move(sw.b1);
        MemorySweepResult sw11 = memory_sweep(w1_traj, sp);
        c.b111 = std::move(sw11.b1);
    }

    // phase accumulator of the second iterate, backward in log time
    {
        std::vector<RealField> srcs;
        srcs.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const double t = g[i];
            RealField term = squared_magnitude(gradient(c.phi0[i]));
            term *= -0.5 / t;
            RealField lng = split(c.b101[i], t, sp).second;
            lng *= 2.0;
            term += lng;
            srcs.push_back(std::move(term));
        }
        c.phi1 = cumulative_backward(h, srcs);
    }
    return c;
}

}  // namespace

ComplexField build_w0(const ComplexField& w_plus, double t) {
    if (!(t > 0.0)) throw RangeError("profile time must be positive");
    return free_schrodinger(w_plus, -1.0 / t);
}

ComplexField q_operator(const VectorField& s, const ComplexField& w) {
    require_same_grid(s.grid(), w.grid());
    ComplexField out(w.grid());
    for (int ax = 0; ax < 3; ++ax) {
        const ComplexField d = derivative(w, ax);
        const double* sv = s.component(ax);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += sv[i] * d[i];
    }
    const RealField div = divergence(s);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += 0.5 * div[i] * w[i];
    return out;
}

ProfileBundle::ProfileBundle(const ComplexField& w_plus, const ProfileParams& params)
    : w_plus_(w_plus), params_(params), nodes_(make_profile_grid(params)) {
    const std::size_t n = nodes_.size();
    const SpectralGrid& grid = w_plus_.grid();

    // first profile: exact backward free flow at the nodes
    Trajectory w0_traj(nodes_);
    for (std::size_t i = 0; i < n; ++i)
        w0_traj.append({build_w0(w_plus_, nodes_[i]), VectorField(grid), nodes_[i]});

    Chain full = build_chain(w0_traj, SplitParams(params_.beta, params_.t_cap), n - 1);
    if (full.gint.back().norm_l2() != 0.0)
        global_warnings().emit("profiles", "second profile does not vanish at the horizon",
                               full.gint.back().norm_l2());

    // movement bounds: rebuild the chain with the upper limit at the largest
    // node <= cap / 2 and record how far each field moves per node
    const double t_half = params_.t_cap / 2.0;
    half_top_ = (t_half < nodes_.front()) ? 0 : nodes_.lower_index(t_half);
    if (half_top_ + 1 < n && t_half >= nodes_[half_top_ + 1] * (1.0 - 1e-12)) ++half_top_;
    cap_half_ = nodes_[half_top_];
    if (half_top_ == 0) {
        global_warnings().emit("profiles",
                               "horizon too short to self-compare; movement bounds saturate",
                               params_.t_cap);
        const double inf = std::numeric_limits<double>::infinity();
        dphi0_.assign(1, inf);
        ds0_.assign(1, inf);
        dw1_.assign(1, inf);
        dphi1_.assign(1, inf);
        ds1_.assign(1, inf);
    } else {
        Chain part = build_chain(w0_traj, SplitParams(params_.beta, cap_half_), half_top_);
        dphi0_.resize(half_top_ + 1);
        ds0_.resize(half_top_ + 1);
        dw1_.resize(half_top_ + 1);
        dphi1_.resize(half_top_ + 1);
        ds1_.resize(half_top_ + 1);
        for (std::size_t i = 0; i <= half_top_; ++i) {
            RealField dp = full.phi0[i];
            dp -= part.phi0[i];
            dphi0_[i] = dp.norm_l2();
            ds0_[i] = gradient(dp).norm_l2();
            RealField dq = full.phi1[i];
            dq -= part.phi1[i];
            dphi1_[i] = dq.norm_l2();
            ds1_[i] = gradient(dq).norm_l2();
            // the backward flow is unitary, so the pulled-back field moves
            // exactly as much as its integral does
            ComplexField dg = full.gint[i];
            dg -= part.gint[i];
            dw1_[i] = dg.norm_l2();
        }
    }

    b100_ = std::move(full.b100);
    b101_ = std::move(full.b101);
    b111_ = std::move(full.b111);
    phi0n_ = std::move(full.phi0);
    phi1n_ = std::move(full.phi1);
    gint_ = std::move(full.gint);
}

RealField ProfileBundle::interp_real(const std::vector<RealField>& fam, double t) const {
    const int snap = node_snap(nodes_, t);
    if (snap >= 0) return fam[static_cast<std::size_t>(snap)];
    const std::size_t i = nodes_.lower_index(t);
    const double theta = std::log(t / nodes_[i]) / std::log(nodes_[i + 1] / nodes_[i]);
    RealField out = fam[i];
    out *= 1.0 - theta;
    axpy(out, theta, fam[i + 1]);
    return out;
}

ComplexField ProfileBundle::interp_complex(const std::vector<ComplexField>& fam, double t) const {
    const int snap = node_snap(nodes_, t);
    if (snap >= 0) return fam[static_cast<std::size_t>(snap)];
    const std::size_t i = nodes_.lower_index(t);
    const double theta = std::log(t / nodes_[i]) / std::log(nodes_[i + 1] / nodes_[i]);
    ComplexField out = fam[i];
    out *= complexd(1.0 - theta, 0.0);
    axpy(out, theta, fam[i + 1]);
    return out;
}

ComplexField ProfileBundle::w0(double t) const {
    nodes_.lower_index(t);  // range check
    return build_w0(w_plus_, t);
}

ComplexField ProfileBundle::w1(double t) const {
    ComplexField g = interp_complex(gint_, t);
    g = free_schrodinger(g, -1.0 / t);
    g *= complexd(-1.0, 0.0);
    return g;
}

RealField ProfileBundle::phi0(double t) const { return interp_real(phi0n_, t); }

RealField ProfileBundle::phi1(double t) const { return interp_real(phi1n_, t); }

VectorField ProfileBundle::s0(double t) const { return gradient(interp_real(phi0n_, t)); }

VectorField ProfileBundle::s1(double t) const { return gradient(interp_real(phi1n_, t)); }

PhasePair ProfileBundle::pair_state(double t) const {
    ComplexField w = w0(t);
    w += w1(t);
    RealField phi = interp_real(phi0n_, t);
    phi += interp_real(phi1n_, t);
    return {std::move(w), gradient(phi), t};
}

RealField ProfileBundle::b1(int i, int j, double t) const {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw RangeError("iterate index must be 0 or 1");
    const std::vector<RealField>& fam = (i + j == 0) ? b100_ : (i + j == 1) ? b101_ : b111_;
    return interp_real(fam, t);
}

RealField ProfileBundle::b1_pair(double t) const {
    RealField out = interp_real(b100_, t);
    axpy(out, 2.0, interp_real(b101_, t));
    out += interp_real(b111_, t);
    return out;
}

double ProfileBundle::cert(const std::vector<double>& deltas, double t) const {
    nodes_.lower_index(t);  // range check
    const double tq = std::min(t, cap_half_);
    const int snap = node_snap(nodes_, tq);
    if (snap >= 0) return 2.0 * deltas[static_cast<std::size_t>(snap)];
    const std::size_t i = nodes_.lower_index(tq);
    const double theta = std::log(tq / nodes_[i]) / std::log(nodes_[i + 1] / nodes_[i]);
    return 2.0 * ((1.0 - theta) * deltas[i] + theta * deltas[i + 1]);
}

double ProfileBundle::phi0_tail(double t) const { return cert(dphi0_, t); }

double ProfileBundle::s0_tail(double t) const { return cert(ds0_, t); }

double ProfileBundle::w1_tail(double t) const { return cert(dw1_, t); }

double ProfileBundle::phi1_tail(double t) const { return cert(dphi1_, t); }

double ProfileBundle::s1_tail(double t) const { return cert(ds1_, t); }

ComplexField build_w1(const ComplexField& w_plus, const ProfileBundle& s0_builder, double t,
                      double t_cap, int stride) {
    require_same_grid(w_plus.grid(), s0_builder.grid());
    if (stride < 1) throw RangeError("quadrature stride must be >= 1");
    const TimeGrid& g = s0_builder.nodes();
    if (t < g.front() * (1.0 - 1e-12)) throw RangeError("evaluation time below the grid");
    if (t_cap > g.back() * (1.0 + 1e-12)) throw RangeError("upper limit beyond the builder grid");
    ComplexField total(w_plus.grid());
    if (t >= t_cap * (1.0 - kSnapTol)) return total;  // empty range

    const double h = std::log(g.ratio());
    // integrand per unit log time: F(tau) = tau^{-1} U(1/tau) Q(s0(tau), U*(1/tau) w_plus)
    auto eval = [&](double tau) {
        ComplexField q = q_operator(s0_builder.s0(tau), free_schrodinger(w_plus, -1.0 / tau));
        q = free_schrodinger(q, 1.0 / tau);
        q *= complexd(1.0 / tau, 0.0);
        return q;
    };

    std::size_t i0 = g.lower_index(t);
    if (g[i0] < t * (1.0 - kSnapTol)) ++i0;
    std::size_t it = g.lower_index(t_cap);
    if (it + 1 < g.size() && g[it + 1] <= t_cap * (1.0 + kSnapTol)) ++it;

    std::vector<int> have(g.size(), 0);
    std::vector<ComplexField> cache;
    cache.reserve((it - i0) / static_cast<std::size_t>(stride) + 3);
    std::vector<std::size_t> slot(g.size(), 0);
    auto node_val = [&](std::size_t i) -> const ComplexField& {
        if (!have[i]) {
            cache.push_back(eval(g[i]));
            slot[i] = cache.size() - 1;
            have[i] = 1;
        }
        return cache[slot[i]];
    };

    // partial front cell [t, first node]
    if (i0 > 0 && t < g[i0] * (1.0 - kSnapTol)) {
        const double w = 0.5 * std::log(g[i0] / t);
        ComplexField f = eval(t);
        f *= complexd(w, 0.0);
        total += f;
        axpy(total, w, node_val(i0));
    }

    // composite Simpson over strided nodes, quadratic rule on a leftover cell
    const auto s = static_cast<std::size_t>(stride);
    std::size_t j = i0;
    while (j + 2 * s <= it) {
        const double w = s * h / 3.0;
        axpy(total, w, node_val(j));
        axpy(total, 4.0 * w, node_val(j + s));
        axpy(total, w, node_val(j + 2 * s));
        j += 2 * s;
    }
    if (j + s <= it) {
        if (j >= s + i0) {
            axpy(total, -(s * h) / 12.0, node_val(j - s));
            axpy(total, 8.0 * s * h / 12.0, node_val(j));
            axpy(total, 5.0 * s * h / 12.0, node_val(j + s));
        } else {
            axpy(total, s * h / 2.0, node_val(j));
            axpy(total, s * h / 2.0, node_val(j + s));
        }
        j += s;
    }
    // leftover thinner than one stride: trapezoid on the exact remaining span
    if (j < it) {
        const double w = 0.5 * std::log(g[it] / g[j]);
        axpy(total, w, node_val(j));
        axpy(total, w, node_val(it));
    }

    total = free_schrodinger(total, -1.0 / t);
    total *= complexd(-1.0, 0.0);
    return total;
}

ComplexField remainder_r1(const ProfileBundle& bundle, const RealField& b0, double t) {
    require_same_grid(bundle.grid(), b0.grid());
    const ComplexField w0t = bundle.w0(t);
    const ComplexField w1t = bundle.w1(t);
    const VectorField s0t = bundle.s0(t);
    const VectorField s1t = bundle.s1(t);

    ComplexField out = q_operator(s0t, w1t);
    out += q_operator(s1t, w0t);
    out += q_operator(s1t, w1t);
    out *= complexd(-1.0 / (t * t), 0.0);

    const SplitParams sp(bundle.params().beta, bundle.params().t_cap);
    RealField shell = split(bundle.b1_pair(t), t, sp).first;
    shell += b0;
    ComplexField w = w0t;
    w += w1t;
    const complexd phase(0.0, -1.0 / t);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += phase * shell[i] * w[i];
    return out;
}

VectorField remainder_r2(const ProfileBundle& bundle, double t) {
    const VectorField s0t = bundle.s0(t);
    const VectorField s1t = bundle.s1(t);
    VectorField out = advect(s0t, s1t);
    out += advect(s1t, s0t);
    out += advect(s1t, s1t);
    out *= -1.0 / (t * t);

    const SplitParams sp(bundle.params().beta, bundle.params().t_cap);
    VectorField grad_long = gradient(split(bundle.b1(1, 1, t), t, sp).second);
    grad_long *= 1.0 / t;
    out += grad_long;
    return out;
}

ComplexField remainder_r1_flow(const ProfileBundle& bundle, const RealField& b0, double t) {
    require_same_grid(bundle.grid(), b0.grid());
    const double r = bundle.nodes().ratio();
    const double tp = t * r, tm = t / r;
    ComplexField fp = free_schrodinger(bundle.pair_state(tp).w, 1.0 / tp);
    const ComplexField fm = free_schrodinger(bundle.pair_state(tm).w, 1.0 / tm);
    fp -= fm;
    fp *= complexd(1.0 / (tp - tm), 0.0);
    ComplexField out = free_schrodinger(fp, -1.0 / t);

    const PhasePair pair = bundle.pair_state(t);
    ComplexField q = q_operator(pair.s, pair.w);
    q *= complexd(-1.0 / (t * t), 0.0);
    out += q;

    const SplitParams sp(bundle.params().beta, bundle.params().t_cap);
    RealField shell = split(bundle.b1_pair(t), t, sp).first;
    shell += b0;
    const complexd phase(0.0, -1.0 / t);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += phase * shell[i] * pair.w[i];
    return out;
}

VectorField remainder_r2_flow(const ProfileBundle& bundle, double t) {
    const double r = bundle.nodes().ratio();
    const double tp = t * r, tm = t / r;
    VectorField out = bundle.pair_state(tp).s;
    out -= bundle.pair_state(tm).s;
    out *= 1.0 / (tp - tm);

    const PhasePair pair = bundle.pair_state(t);
    VectorField adv = advect(pair.s, pair.s);
    adv *= -1.0 / (t * t);
    out += adv;

    const SplitParams sp(bundle.params().beta, bundle.params().t_cap);
    VectorField grad_long = gradient(split(bundle.b1_pair(t), t, sp).second);
    grad_long *= 1.0 / t;
    out += grad_long;
    return out;
}

}  // namespace wslab
