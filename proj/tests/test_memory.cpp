#include <doctest.h>

#include <cmath>
#include <functional>

#include "wslab/diagnostics.hpp"
#include "wslab/fft.hpp"
#include "wslab/memory.hpp"

using namespace wslab;

namespace {

ComplexField complexify(const RealField& f) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return c;
}

RealField cosine_mode(const SpectralGrid& grid, int m0, int m1, int m2) {
    RealField f(grid);
    const double k0 = M_PI / grid.half_length() * m0;
    const double k1 = M_PI / grid.half_length() * m1;
    const double k2 = M_PI / grid.half_length() * m2;
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx)
                f[idx] = std::cos(k0 * grid.coord(i) + k1 * grid.coord(j) + k2 * grid.coord(k));
    return f;
}

Trajectory const_traj(const ComplexField& w, const TimeGrid& g) {
    Trajectory traj(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        traj.append(PhasePair{w, VectorField(w.grid()), g[i]});
    return traj;
}

// w(t) = t^{-lam} w, recorded exactly at the nodes
Trajectory envelope_traj(const ComplexField& w, const TimeGrid& g, double lam) {
    Trajectory traj(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        ComplexField cp = w;
        cp *= complexd(std::pow(g[i], -lam), 0.0);
        traj.append(PhasePair{std::move(cp), VectorField(w.grid()), g[i]});
    }
    return traj;
}

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 0);
}

double rel_l2_diff(const RealField& a, const RealField& b) {
    RealField d = a;
    d -= b;
    const double scale = std::max(a.norm_l2(), b.norm_l2());
    return scale == 0.0 ? d.norm_l2() : d.norm_l2() / scale;
}

}  // namespace

TEST_CASE("free wave propagates a single cosine mode exactly") {
    const SpectralGrid grid(16, 4.0);
    const RealField ap = cosine_mode(grid, 1, 0, 0);
    const RealField adp(grid);
    const double t = 0.9, kappa = M_PI / 4.0;
    const RealField a = free_wave(ap, adp, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - std::cos(kappa * t) * ap[i]));
    CHECK(worst < 1e-12);

    // velocity data instead: sin(kappa t)/kappa times the mode
    const RealField b = free_wave(adp, ap, t);
    worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        worst = std::max(worst, std::abs(b[i] - std::sin(kappa * t) / kappa * ap[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("free wave on constants grows linearly in time") {
    const SpectralGrid grid(8, 4.0);
    const RealField ap(grid, 0.3), adp(grid, -0.2);
    const double t = 7.0;
    const RealField a = free_wave(ap, adp, t);
    for (std::size_t i = 0; i < a.size(); i += 97)
        CHECK(a[i] == doctest::Approx(0.3 - 0.2 * t).epsilon(1e-13));
}

TEST_CASE("free wave stays within the energy bound for compact data") {
    const SpectralGrid grid(32, 4.0);
    const RealField ap = sample_radial(RadialProfile::bump(0.8, 2.0, 4), grid);
    // mean-free velocity data so the inverse-frequency weight is well defined
    const RealField adp = divergence(gradient(sample_radial(RadialProfile::bump(0.5, 1.5, 5), grid)));
    const double rhs = ap.norm_l2() + homogeneous_norm(complexify(adp), -1.0);
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
        CHECK(free_wave(ap, adp, t).norm_l2() <= rhs * (1.0 + 1e-9));
    }
}

TEST_CASE("stretched wave field vanishes for zero data") {
    const SpectralGrid grid(8, 4.0);
    const RadialWave none{RadialProfile(), RadialProfile()};
    CHECK(b0_field(none, grid, 3.0).norm_sup() == 0.0);
    CHECK(b0_norm_l2(none, 3.0) == 0.0);
}

TEST_CASE("stretched wave field of constant data is the constant times t") {
    const SpectralGrid grid(16, 6.0);
    // constant plateau wide enough that no sampled ray reaches the edge
    const RadialProfile plateau(std::vector<double>{0.0, 40.0},
                                std::vector<Poly>{Poly::constant(0.6)});
    const RadialWave wave(plateau, RadialProfile());
    const double t = 2.0;
    const RealField b0 = b0_field(wave, grid, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < b0.size(); ++i) worst = std::max(worst, std::abs(b0[i] - 0.6 * t));
    CHECK(worst < 1e-12);
}

TEST_CASE("stretched wave field mass concentrates on the unit shell") {
    const SpectralGrid grid(128, 1.6);
    const RadialWave wave(RadialProfile::bump(1.0, 0.5, 4), RadialProfile::bump(0.3, 0.5, 4));
    const double t = 10.0;  // 20 data radii
    const RealField b0 = b0_field(wave, grid, t);
    const int n = grid.n();
    double inside = 0.0, outside = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                const double v = b0[idx] * b0[idx];
                // data radius over t, the sharp support of the shell
                if (std::abs(r - 1.0) <= 0.05)
                    inside += v;
                else
                    outside += v;
            }
    CHECK(inside > 0.0);
    CHECK(outside == 0.0);
    CHECK(inside / (inside + outside) >= 0.99);
}

TEST_CASE("stretched wave norm decays like the inverse square root of time") {
    const RadialWave wave(RadialProfile::bump(1.0, 0.5, 4), RadialProfile::bump(-0.2, 0.5, 5));
    const TimeGrid ts = TimeGrid::geometric(5.0, 500.0, 32);
    std::vector<double> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vals[i] = b0_norm_l2(wave, ts[i]);
    const DecayReport rep = fit_slope(ScalarSeries{ts, vals}, 5.0, 500.0);
    CHECK(rep.slope == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("memory integral of a constant state matches the zero mode value") {
    const SpectralGrid grid(8, 4.0);
    const ComplexField w(grid, complexd(0.7, 0.4));
    const double t = 1.0, t1 = 4.0, mod2 = 0.65;
    const double s = t / t1;
    const double exact = mod2 * ((1.0 - s) - 0.5 * (1.0 - s * s));

    // dense quadrature pins the analytic value
    const Trajectory dense = const_traj(w, TimeGrid::geometric(t, t1, 512));
    const MemoryField fine = b1_memory(dense, t, SplitParams(0.5, t1));
    CHECK(fine.field[0] == doctest::Approx(exact).epsilon(1e-4));
    // the field is a constant: single spatial mode in, single mode out
    double lo = fine.field[0], hi = fine.field[0];
    for (std::size_t i = 0; i < fine.field.size(); ++i) {
        lo = std::min(lo, fine.field[i]);
        hi = std::max(hi, fine.field[i]);
    }
    CHECK(hi - lo < 1e-12 * std::abs(exact));

    // default density carries the documented quadrature error
    const Trajectory coarse = const_traj(w, TimeGrid::geometric(t, t1, 32));
    const MemoryField rough = b1_memory(coarse, t, SplitParams(0.5, t1));
    CHECK(rough.field[0] == doctest::Approx(exact).epsilon(5e-3));
    CHECK(rough.tail_bound == 0.0);
    CHECK(rough.t_cap == t1);
}

TEST_CASE("memory integral vanishes for a zero state") {
    const SpectralGrid grid(8, 4.0);
    const Trajectory traj = const_traj(ComplexField(grid), TimeGrid::geometric(1.0, 4.0, 16));
    CHECK(b1_memory(traj, 1.0, SplitParams(0.5, 4.0)).field.norm_sup() == 0.0);
}

TEST_CASE("memory integral of a single mode with power envelope matches quadrature") {
    const SpectralGrid grid(8, 4.0);
    const complexd c(0.8, 0.3);
    ComplexField w(grid);
    const double k = M_PI / 4.0;
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk, ++idx)
                w[idx] = c * std::exp(complexd(0.0, k * grid.coord(i)));

    const double lam = 0.35, t = 1.0, t1 = 10.0;
    const Trajectory traj = envelope_traj(w, TimeGrid::geometric(t, t1, 512), lam);
    const MemoryField b1 = b1_memory(traj, t, SplitParams(0.5, t1));

    // |w|^2 is spatially constant, so only the zero mode survives
    const double oracle =
        std::norm(c) * std::pow(t, -2.0 * lam) *
        adaptive_quad([&](double nu) { return std::pow(nu, -3.0 - 2.0 * lam) * (nu - 1.0); },
                      1.0, t1 / t, 1e-11);
    CHECK(b1.field[0] == doctest::Approx(oracle).epsilon(1e-6));
    double lo = b1.field[0], hi = b1.field[0];
    for (std::size_t i = 0; i < b1.field.size(); ++i) {
        lo = std::min(lo, b1.field[i]);
        hi = std::max(hi, b1.field[i]);
    }
    CHECK(hi - lo < 1e-12 * std::abs(oracle));
}

TEST_CASE("memory integral is symmetric and bilinear in its two states") {
    const SpectralGrid grid(16, 4.0);
    RealField ra = sample_radial(RadialProfile::bump(0.9, 1.4, 5), grid);
    RealField rb = sample_radial(RadialProfile::bump(-0.6, 2.1, 4), grid);
    ComplexField w1 = complexify(ra);
    ComplexField w2 = complexify(rb);
    for (std::size_t i = 0; i < w2.size(); ++i) w2[i] *= complexd(0.8, 0.6);
    const TimeGrid g = TimeGrid::geometric(1.0, 3.0, 32);
    const Trajectory t1 = const_traj(w1, g), t2 = const_traj(w2, g);
    const SplitParams params(0.5, 3.0);

    const RealField ab = b1_memory(t1, t2, 1.0, params).field;
    const RealField ba = b1_memory(t2, t1, 1.0, params).field;
    CHECK(rel_l2_diff(ab, ba) < 1e-12);

    ComplexField sum = w1;
    sum += w2;
    const RealField full = b1_memory(const_traj(sum, g), 1.0, params).field;
    RealField combo = b1_memory(t1, 1.0, params).field;
    combo += b1_memory(t2, 1.0, params).field;
    RealField cross = ab;
    cross *= 2.0;
    combo += cross;
    CHECK(rel_l2_diff(full, combo) < 1e-12);
}

TEST_CASE("memory tail metadata reports a finite certificate at infinite horizon") {
    const SpectralGrid grid(16, 4.0);
    const ComplexField w = complexify(sample_radial(RadialProfile::bump(0.8, 1.2, 5), grid));
    // long enough recording that the integrand has entered its decaying range
    const Trajectory traj = const_traj(w, TimeGrid::geometric(1.0, 200.0, 32));
    const MemoryField b1 = b1_memory(traj, 1.0, SplitParams(0.5, kNoHorizon));
    CHECK(b1.t_cap == 200.0);
    CHECK(std::isfinite(b1.tail_bound));
    CHECK(b1.tail_bound >= 0.0);
}

TEST_CASE("memory integral demands trajectory coverage") {
    const SpectralGrid grid(8, 4.0);
    const Trajectory traj = const_traj(ComplexField(grid, 1.0), TimeGrid::geometric(1.0, 4.0, 16));
    CHECK_THROWS_AS(b1_memory(traj, 0.5, SplitParams(0.5, 4.0)), RangeError);
    CHECK_THROWS_AS(b1_memory(traj, 5.0, SplitParams(0.5, kNoHorizon)), RangeError);
    CHECK_THROWS_AS(b1_memory(traj, 1.0, SplitParams(0.5, 8.0)), RangeError);
}

TEST_CASE("whole-family memory pass matches the single-target integral node by node") {
    const SpectralGrid grid(32, 6.0);
    RealField re = sample_radial(RadialProfile::bump(0.9, 1.6, 5), grid);
    RealField im = sample_radial(RadialProfile::bump(0.4, 1.1, 4), grid);
    ComplexField w(grid);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = complexd(re[i], im[i]);
    const SplitParams params(0.5, 4.0);

    const TimeGrid g = TimeGrid::geometric(1.0, 4.0, 32);
    const Trajectory traj = const_traj(w, g);
    const MemorySweepResult sweep = memory_sweep(traj, params);
    REQUIRE(sweep.b1.size() == g.size());
    for (std::size_t i : {std::size_t{0}, g.size() / 2, g.size() - 2}) {
        const RealField direct = b1_memory(traj, g[i], params).field;
        CHECK(rel_l2_diff(sweep.b1[i], direct) < 1e-13);
    }
}

TEST_CASE("backward sweep starts from zero at its top node") {
    const SpectralGrid grid(8, 4.0);
    const Trajectory traj = const_traj(ComplexField(grid, 1.0), TimeGrid::geometric(1.0, 4.0, 16));
    const MemorySweepResult sweep = memory_sweep(traj, SplitParams(0.5, 4.0));
    CHECK(sweep.b1.back().norm_sup() == 0.0);
    CHECK(sweep.node_times.back() == 4.0);
}

TEST_CASE("backward sweep needs complete trajectories") {
    const SpectralGrid grid(8, 4.0);
    const TimeGrid g = TimeGrid::geometric(1.0, 4.0, 16);
    Trajectory partial(g);
    partial.append(PhasePair{ComplexField(grid, 1.0), VectorField(grid), g[0]});
    CHECK_THROWS_AS(memory_sweep(partial, SplitParams(0.5, 4.0)), DataError);
}

TEST_CASE("split parameters validate their ranges") {
    CHECK_THROWS_AS(SplitParams(0.0, 4.0), ConfigError);
    CHECK_THROWS_AS(SplitParams(1.0, 4.0), ConfigError);
    CHECK_THROWS_AS(SplitParams(0.5, -1.0), ConfigError);
    CHECK_NOTHROW(SplitParams(0.5, kNoHorizon));
}

TEST_CASE("frequency split partitions the memory field exactly") {
    const SpectralGrid grid(16, 4.0);
    const RealField b1 = sample_radial(RadialProfile::bump(1.1, 1.9, 4), grid);
    const auto [bs, bl] = split(b1, 2.0, SplitParams(0.5, kNoHorizon));
    RealField sum = bs;
    sum += bl;
    sum -= b1;
    CHECK(sum.norm_sup() < 1e-13 * b1.norm_sup());
}

TEST_CASE("frequency split sends everything long range past the lattice band") {
    // corner modes reach sqrt(3) * 2 pi ~ 10.9; the cutoff at t = 150 clears it
    const SpectralGrid grid(16, 4.0);
    const RealField b1 = sample_radial(RadialProfile::bump(1.1, 1.9, 4), grid);
    const auto [bs, bl] = split(b1, 150.0, SplitParams(0.5, kNoHorizon));
    CHECK(bs.norm_sup() == 0.0);
    RealField diff = bl;
    diff -= b1;
    CHECK(diff.norm_sup() < 1e-13 * b1.norm_sup());
}

TEST_CASE("frequency split routes a plane wave by the moving cutoff") {
    const SpectralGrid grid(16, 4.0);
    const RealField b1 = cosine_mode(grid, 2, 0, 0);  // frequency pi/2
    const SplitParams params(0.5, kNoHorizon);
    // cutoff crosses the mode at t = (pi/2)^2 = 2.467...; the complementary
    // band holds nothing but round-trip sampling residue
    const auto [bs_lo, bl_lo] = split(b1, 2.4, params);
    CHECK(bl_lo.norm_sup() <= 1e-14 * b1.norm_sup());
    CHECK(rel_l2_diff(bs_lo, b1) < 1e-13);
    const auto [bs_hi, bl_hi] = split(b1, 2.5, params);
    CHECK(bs_hi.norm_sup() <= 1e-14 * b1.norm_sup());
    CHECK(rel_l2_diff(bl_hi, b1) < 1e-13);
}

TEST_CASE("decomposition bundles the wave pieces consistently") {
    const SpectralGrid grid(16, 4.0);
    const RadialWave data(RadialProfile::bump(0.7, 0.5, 4), RadialProfile());
    const ComplexField w = complexify(sample_radial(RadialProfile::bump(0.8, 1.2, 5), grid));
    const Trajectory traj = const_traj(w, TimeGrid::geometric(1.5, 5.0, 32));
    const SplitParams params(0.5, 5.0);
    const BDecomposition dec = decompose(data, traj, 2.0, params);
    CHECK(dec.t == 2.0);
    RealField sum = dec.b_s;
    sum += dec.b_l;
    sum -= dec.b1;
    CHECK(sum.norm_sup() < 1e-13 * (dec.b1.norm_sup() + 1e-300));
    RealField b0_again = b0_field(data, grid, 2.0);
    b0_again -= dec.b0;
    CHECK(b0_again.norm_sup() == 0.0);
}

TEST_CASE("retarded potential vanishes for zero or instantaneous sources") {
    const SpectralGrid grid(8, 4.0);
    const TimeGrid g = TimeGrid::geometric(1.0, 8.0, 16);
    const Trajectory zero = const_traj(ComplexField(grid), g);
    CHECK(a1_potential(zero, 2.0, 8.0).field.norm_sup() == 0.0);
    const Trajectory unit = const_traj(ComplexField(grid, complexd(0.9, -0.2)), g);
    CHECK(a1_potential(unit, 2.0, 2.0).field.norm_sup() == 0.0);
}

TEST_CASE("squared modulus of the factored state matches the dilated density") {
    // band-limited state whose density also fits the lattice band, so the
    // dictionary |u|^2 = t^{-3} (density at x/t) holds to rounding
    const SpectralGrid grid(16, 4.0);
    ComplexField w(grid);
    const double u0 = M_PI / 4.0;
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
                w[idx] = complexd(0.7, 0.1) * std::exp(complexd(0.0, u0 * x)) +
                         complexd(-0.3, 0.4) * std::exp(complexd(0.0, u0 * (2.0 * y + z))) +
                         complexd(0.2, 0.0) * std::exp(complexd(0.0, u0 * (y - x)));
            }
    const double t = 2.0;
    ComplexField u = dilate_sample(w, t);
    u *= complexd(std::pow(t, -1.5), 0.0);
    u = chirp(u, t, +1);
    RealField rho(grid);
    for (std::size_t i = 0; i < w.size(); ++i) rho[i] = std::norm(w[i]);
    const RealField dilated = dilate_sample(rho, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        worst = std::max(worst, std::abs(std::norm(u[i]) - dilated[i] / (t * t * t)));
    CHECK(worst < 1e-13 * rho.norm_sup() / (t * t * t));
}

TEST_CASE("memory field and retarded potential agree through the change of variables") {
    // the two quadratures share their nodes and weights, so the residual is
    // purely the resampling band limit of the density; resolve it well
    const SpectralGrid grid(64, 6.0);
    const ComplexField w = complexify(sample_radial(RadialProfile::bump(0.9, 1.6, 8), grid));
    const double t = 2.0, t1 = 3.6;
    const Trajectory traj = const_traj(w, TimeGrid::geometric(t, t1, 16));

    RealField lhs = dilate_sample(b1_memory(traj, t, SplitParams(0.5, t1)).field, t);
    lhs *= 1.0 / t;
    const RealField rhs = a1_potential(traj, t, t1).field;
    CHECK(rel_l2_diff(lhs, rhs) < 1e-6);
}

TEST_CASE("kernel functional reproduces analytic values on constants") {
    const TimeGrid g = TimeGrid::geometric(1.0, 1000.0, 32);
    const ScalarSeries ones{g, std::vector<double>(g.size(), 1.0)};
    // infinite horizon: the fitted tail completes the exact integral
    CHECK(i_m_functional(ones, 0.25, 1.0, kNoHorizon) ==
          doctest::Approx(1.0 / 0.75).epsilon(1e-8));
    CHECK(i_m_functional(ones, 1.0, 1.0, kNoHorizon) == doctest::Approx(1.0 / 1.5).epsilon(1e-8));
    // finite horizon at twice the base time
    CHECK(i_m_functional(ones, 0.0, 3.0, 6.0) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("kernel functional matches the closed form for power decay") {
    const double m = 0.7, lam = 0.1, t = 2.0, t1 = 20.0;
    const double mu = -m - 1.5 - lam;
    const double exact = std::pow(t, -lam) * (std::pow(10.0, mu + 1.0) - 1.0) / (mu + 1.0);
    for (auto [density, tol] : {std::pair{512, 1e-6}, std::pair{32, 1e-3}}) {
        const TimeGrid g = TimeGrid::geometric(t, t1, density);
        std::vector<double> vals(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) vals[i] = std::pow(g[i], -lam);
        CHECK(i_m_functional(ScalarSeries{g, vals}, m, t, t1) ==
              doctest::Approx(exact).epsilon(tol));
    }
}

TEST_CASE("kernel functional reports divergence honestly") {
    const TimeGrid g = TimeGrid::geometric(1.0, 1000.0, 32);
    const ScalarSeries ones{g, std::vector<double>(g.size(), 1.0)};
    // tail kernel no longer integrable
    CHECK_THROWS_AS(i_m_functional(ones, -0.5, 1.0, kNoHorizon), DivergenceError);
    CHECK_THROWS_AS(i_m_functional(ones, -1.0, 1.0, kNoHorizon), DivergenceError);
    // finite horizon but the partial sums blow past the guard
    CHECK_THROWS_AS(i_m_functional(ones, -12.0, 1.0, 1000.0), DivergenceError);
    // coverage and ordering errors
    CHECK_THROWS_AS(i_m_functional(ones, 0.0, 0.5, 2.0), RangeError);
    CHECK_THROWS_AS(i_m_functional(ones, 0.0, 4.0, 2.0), RangeError);
    CHECK_THROWS_AS(i_m_functional(ones, 0.0, 1.0, 2000.0), RangeError);
}
