#include "wslab/diagnostics.hpp"

#include "wslab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace wslab {

// ---- slope fits ---------------------------------------------------------------

namespace {

// Gauss-Jordan inverse for the tiny normal-equation systems (p <= 3).
void invert_small(std::vector<double>& a, int p) {
    std::vector<double> inv(p * p, 0.0);
    for (int i = 0; i < p; ++i) inv[i * p + i] = 1.0;
    for (int col = 0; col < p; ++col) {
        int piv = col;
        for (int r = col + 1; r < p; ++r)
            if (std::abs(a[r * p + col]) > std::abs(a[piv * p + col])) piv = r;
        if (a[piv * p + col] == 0.0) throw DataError("degenerate fit design matrix");
        for (int c = 0; c < p; ++c) {
            std::swap(a[col * p + c], a[piv * p + c]);
            std::swap(inv[col * p + c], inv[piv * p + c]);
        }
        const double d = a[col * p + col];
        for (int c = 0; c < p; ++c) {
            a[col * p + c] /= d;
            inv[col * p + c] /= d;
        }
        for (int r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r * p + col];
            if (f == 0.0) continue;
            for (int c = 0; c < p; ++c) {
                a[r * p + c] -= f * a[col * p + c];
                inv[r * p + c] -= f * inv[col * p + c];
            }
        }
    }
    a = std::move(inv);
}

}  // namespace

DecayReport fit_slope(const ScalarSeries& series, double t_a, double t_b,
                      bool with_log_correction, std::string norm_name) {
    if (series.values.size() != series.grid.size())
        throw DataError("series length does not match its grid");
    if (!(t_a > 0.0) || !(t_b > t_a)) throw ConfigError("fit window endpoints out of order");
    if (t_b < 10.0 * t_a * (1.0 - 1e-9)) throw ConfigError("fit window must span a decade");

    std::vector<double> xs, ys, zs;
    for (std::size_t i = 0; i < series.grid.size(); ++i) {
        const double t = series.grid[i];
        if (t < t_a * (1.0 - 1e-12) || t > t_b * (1.0 + 1e-12)) continue;
        const double v = series.values[i];
        if (!(v > 0.0)) throw DataError("slope fit requires positive series values");
        xs.push_back(std::log(t));
        ys.push_back(std::log(v));
        if (with_log_correction) {
            const double u = 1.0 + std::log(t);
            if (!(u > 0.0)) throw DataError("log correction undefined below t = 1/e");
            zs.push_back(std::log(u));
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 16) throw DataError("fit window holds fewer than 16 samples");

    const int p = with_log_correction ? 3 : 2;
    std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
    for (int i = 0; i < n; ++i) {
        const double row[3] = {1.0, xs[i], with_log_correction ? zs[i] : 0.0};
        for (int a = 0; a < p; ++a) {
            xty[a] += row[a] * ys[i];
            for (int b = 0; b < p; ++b) xtx[a * p + b] += row[a] * row[b];
        }
    }
    invert_small(xtx, p);
    std::vector<double> beta(p, 0.0);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) beta[a] += xtx[a * p + b] * xty[b];

    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        double fit = beta[0] + beta[1] * xs[i];
        if (with_log_correction) fit += beta[2] * zs[i];
        const double r = ys[i] - fit;
        rss += r * r;
    }
    const double sigma2 = rss / std::max(1, n - p);

    DecayReport rep;
    rep.norm_name = std::move(norm_name);
    rep.t_a = t_a;
    rep.t_b = t_b;
    rep.slope = beta[1];
    rep.slope_stderr = std::sqrt(std::max(0.0, sigma2 * xtx[1 * p + 1]));
    rep.log_correction = with_log_correction;
    rep.residual_rms = std::sqrt(rss / n);
    return rep;
}

std::pair<double, double> default_fit_window(const ScalarSeries& series) {
    if (series.grid.size() < 2) throw DataError("series too short for a fit window");
    const double t_b = series.grid.back();
    double t_a = t_b / std::pow(10.0, 1.5);
    const std::size_t q = (series.grid.size() - 1) / 4;
    t_a = std::max(t_a, series.grid[q]);
    return {t_a, t_b};
}

std::string decay_csv(const std::vector<DecayReport>& reports) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "norm,t_a,t_b,slope,slope_stderr,log_correction,residual_rms\n";
    for (const auto& r : reports) {
        os << r.norm_name << ',' << r.t_a << ',' << r.t_b << ',' << r.slope << ','
           << r.slope_stderr << ',' << (r.log_correction ? 1 : 0) << ',' << r.residual_rms
           << '\n';
    }
    return os.str();
}

// ---- empirical-constant probes --------------------------------------------------

namespace {

ComplexField complex_of(const RealField& f) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return c;
}

ComplexField random_band_limited(const SpectralGrid& grid, std::mt19937_64& eng, int mmax,
                                 double msigma) {
    std::vector<complexd> spec(grid.size(), complexd(0.0, 0.0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const int mi = grid.mode(i), mj = grid.mode(j), mk = grid.mode(k);
                if (std::abs(mi) > mmax || std::abs(mj) > mmax || std::abs(mk) > mmax) continue;
                const double m2 = static_cast<double>(mi * mi + mj * mj + mk * mk);
                const double amp = std::exp(-m2 / (2.0 * msigma * msigma));
                spec[idx] = complexd(gauss(eng), gauss(eng)) * amp;
            }
    return dft_inverse(grid, spec);
}

Trajectory const_trajectory(const ComplexField& w, const TimeGrid& g) {
    Trajectory traj(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        traj.append(PhasePair{w, VectorField(w.grid()), g[i]});
    return traj;
}

ProbeSample probe_memory_gain(std::mt19937_64& eng, int index) {
    const SpectralGrid grid(24, 6.0);
    const double k = 1.2, t0 = 1.0, t1 = 8.0;
    const ComplexField w =
        (index == 0) ? ComplexField(grid) : random_band_limited(grid, eng, 4, 2.0);
    const TimeGrid tg = TimeGrid::geometric(t0, t1, 16);
    const MemoryField b1 = b1_memory(const_trajectory(w, tg), t0, SplitParams(0.5, t1));
    const double lhs = homogeneous_norm(complex_of(b1.field), 2.0 * k - 0.5);
    const double fk = homogeneous_norm(w, k);
    const ScalarSeries fs{tg, std::vector<double>(tg.size(), fk * fk)};
    const double rhs = i_m_functional(fs, 2.0 * k - 1.5, t0, t1);
    if (rhs == 0.0) return {index, lhs, rhs, 0.0, true};
    return {index, lhs, rhs, lhs / rhs, false};
}

ProbeSample probe_long_range_gain(std::mt19937_64& eng, int index) {
    const SpectralGrid grid(24, 6.0);
    const double beta = 0.5, m = 0.0, t0 = 2.0, t1 = 16.0;
    const ComplexField w =
        (index == 0) ? ComplexField(grid) : random_band_limited(grid, eng, 4, 2.0);
    const TimeGrid tg = TimeGrid::geometric(t0, t1, 16);
    const SplitParams params(beta, t1);
    const MemoryField b1 = b1_memory(const_trajectory(w, tg), t0, params);
    const RealField b_l = split(b1.field, t0, params).second;
    const double lhs = homogeneous_norm(complex_of(b_l), m + 1.0);
    const double l2 = w.norm_l2();
    const ScalarSeries fs{tg, std::vector<double>(tg.size(), l2 * l2)};
    const double rhs = std::pow(t0, beta * (m + 1.5)) * i_m_functional(fs, -1.5, t0, t1);
    if (rhs == 0.0) return {index, lhs, rhs, 0.0, true};
    return {index, lhs, rhs, lhs / rhs, false};
}

ProbeSample probe_settling_rate(std::mt19937_64& eng, int index) {
    const SpectralGrid grid(24, 6.0);
    const ComplexField w =
        (index == 0) ? ComplexField(grid) : random_band_limited(grid, eng, 4, 2.0);
    const double scale = sobolev_norm(w, 2.0);
    if (scale == 0.0) return {index, 0.0, 0.0, 0.0, true};
    const TimeGrid tg = TimeGrid::geometric(1.0, 100.0, 8);
    double best_ratio = 0.0, best_lhs = 0.0, best_rhs = 0.0;
    for (std::size_t i = 0; i < tg.size(); ++i) {
        const double tau = tg[i];
        ComplexField moved = free_schrodinger(w, 1.0 / tau);
        moved -= w;
        const double lhs = moved.norm_l2();
        const double rhs = scale / tau;
        if (lhs / rhs > best_ratio) {
            best_ratio = lhs / rhs;
            best_lhs = lhs;
            best_rhs = rhs;
        }
    }
    return {index, best_lhs, best_rhs, best_ratio, false};
}

// ((r - a)(b - r))^3, the shell piece
Poly shell_piece(double a, double b) {
    const Poly base = Poly({-a, 1.0}) * Poly({b, -1.0});
    return base * base * base;
}

double sup_abs(const RadialProfile& f, double lo, double hi, int pts) {
    double s = 0.0;
    for (int i = 0; i <= pts; ++i) s = std::max(s, std::abs(f(lo + (hi - lo) * i / pts)));
    return s;
}

RadialProfile derivative_profile(const RadialProfile& f) {
    std::vector<Poly> d;
    for (const auto& piece : f.pieces()) d.push_back(piece.derivative());
    return RadialProfile(f.knots(), d);
}

ProbeSample probe_product_decay(std::mt19937_64& eng, int index) {
    if (index == 0) return {index, 0.0, 0.0, 0.0, true};
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto amp = [&]() {
        const double a = 0.5 + 1.5 * uni(eng);
        return uni(eng) < 0.5 ? -a : a;
    };
    const double ra = 1.5 + uni(eng), rd = 1.5 + uni(eng);
    const int pa = 4 + static_cast<int>(3.0 * uni(eng));
    const int pd = 4 + static_cast<int>(3.0 * uni(eng));
    const RadialProfile a_plus = RadialProfile::bump(amp(), ra, pa);
    const RadialProfile a_dot = RadialProfile::bump(amp(), rd, pd);
    const double wa = 1.1 + 0.3 * uni(eng), wb = 2.4 + 0.5 * uni(eng);
    const RadialProfile w(std::vector<double>{0.0, wa, wb},
                          std::vector<Poly>{Poly(), shell_piece(wa, wb).scaled(amp())});
    const RadialProfile wd = derivative_profile(w);
    const RadialWave wave(a_plus, a_dot);

    const double scale_b = sup_abs(a_plus, 0.0, 3.0, 1200) +
                           sup_abs(derivative_profile(a_plus), 0.0, 3.0, 1200) +
                           sup_abs(a_dot, 0.0, 3.0, 1200);
    const double scale_w = sup_abs(w, 0.0, 3.0, 1200) + sup_abs(wd, 0.0, 3.0, 1200);
    if (scale_b * scale_w == 0.0) return {index, 0.0, 0.0, 0.0, true};

    const double lambda0 = 1.5;
    const double times[5] = {2.0, 5.0, 10.0, 30.0, 100.0};
    const int quad = 24000;
    const double hi = 3.2, dr = hi / quad;
    double best_ratio = 0.0, best_lhs = 0.0, best_rhs = 0.0;
    for (const double t : times) {
        double q00 = 0.0, q10 = 0.0, q01 = 0.0, q11 = 0.0;
        for (int i = 0; i < quad; ++i) {
            const double r = (i + 0.5) * dr;
            const double b0 = t * wave(t, t * r);
            const double fd = 1e-6;
            const double b0p = t * t * (wave(t, t * r + fd) - wave(t, t * r - fd)) / (2.0 * fd);
            const double wv = w(r), wp = wd(r);
            const double r2 = r * r * dr;
            q00 += b0 * b0 * wv * wv * r2;
            q10 += b0p * b0p * wv * wv * r2;
            q01 += b0 * b0 * wp * wp * r2;
            q11 += b0p * b0p * wp * wp * r2;
        }
        const double four_pi = 4.0 * M_PI;
        const double lhs_ab[4] = {std::sqrt(four_pi * q00), std::sqrt(four_pi / 3.0 * q10),
                                  std::sqrt(four_pi / 3.0 * q01), std::sqrt(four_pi / 5.0 * q11)};
        const double pow_ab[4] = {0.0, 1.0, 0.5, 1.5};  // |a| + |b|/2
        for (int c = 0; c < 4; ++c) {
            const double rhs = std::pow(t, -lambda0 + pow_ab[c]) * scale_b * scale_w;
            const double ratio = lhs_ab[c] / rhs;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_lhs = lhs_ab[c];
                best_rhs = rhs;
            }
        }
    }
    return {index, best_lhs, best_rhs, best_ratio, false};
}

}  // namespace

ProbeReport inequality_probe(ProbeKind kind, int battery_size, std::uint64_t seed) {
    if (battery_size < 1) throw ConfigError("probe battery must hold at least one sample");
    ProbeReport rep;
    rep.kind = kind;
    switch (kind) {
        case ProbeKind::memory_gain: rep.name = "memory_gain"; break;
        case ProbeKind::long_range_gain: rep.name = "long_range_gain"; break;
        case ProbeKind::settling_rate: rep.name = "settling_rate"; break;
        case ProbeKind::product_decay: rep.name = "product_decay"; break;
    }
    rep.battery = battery_size;
    for (int idx = 0; idx < battery_size; ++idx) {
        std::mt19937_64 eng(seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull * (idx + 1));
        ProbeSample sample{};
        switch (kind) {
            case ProbeKind::memory_gain: sample = probe_memory_gain(eng, idx); break;
            case ProbeKind::long_range_gain: sample = probe_long_range_gain(eng, idx); break;
            case ProbeKind::settling_rate: sample = probe_settling_rate(eng, idx); break;
            case ProbeKind::product_decay: sample = probe_product_decay(eng, idx); break;
        }
        if (sample.skipped)
            ++rep.skipped;
        else
            rep.max_ratio = std::max(rep.max_ratio, sample.ratio);
        rep.samples.push_back(sample);
    }
    return rep;
}

std::string probe_csv(const std::vector<ProbeReport>& reports) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "probe,sample,lhs,rhs,ratio,skipped\n";
    for (const auto& rep : reports)
        for (const auto& s : rep.samples)
            os << rep.name << ',' << s.index << ',' << s.lhs << ',' << s.rhs << ',' << s.ratio
               << ',' << (s.skipped ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace wslab
