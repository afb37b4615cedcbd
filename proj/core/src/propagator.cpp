#include "wslab/propagator.hpp"

#include <cmath>

#include "wslab/common.hpp"

namespace wslab {

ComplexField free_schrodinger(const ComplexField& u0, double t) {
    return apply_multiplier(u0, MultiplierSpec::schrodinger(t));
}

ComplexField chirp(const ComplexField& f, double t, int sign) {
    if (t == 0.0) throw RangeError("chirp requires nonzero time");
    const auto& grid = f.grid();
    const int n = grid.n();
    std::vector<double> xsq(n);
    for (int i = 0; i < n; ++i) xsq[i] = grid.coord(i) * grid.coord(i);
    ComplexField out(grid);
    const double a = sign / (2.0 * t);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double part = xsq[i] + xsq[j];
            for (int k = 0; k < n; ++k, ++idx) {
                out[idx] = f[idx] * std::exp(complexd(0.0, a * (part + xsq[k])));
            }
        }
    return out;
}

namespace {

// Per-axis evaluation matrix E[j][m] = (-1)^m exp(i (pi/L) m y_j) / n applied
// to raw DFT data: contracting all three axes yields the box series at the
// tensor points y.
std::vector<complexd> eval_matrix(const SpectralGrid& grid, const std::vector<double>& y) {
    const int n = grid.n();
    std::vector<complexd> e(y.size() * n);
    const double base = M_PI / grid.half_length();
    for (std::size_t j = 0; j < y.size(); ++j) {
        for (int slot = 0; slot < n; ++slot) {
            const int m = grid.mode(slot);
            const double phase = base * m * y[j];
            complexd v = std::polar(1.0 / n, phase);
            if (m & 1) v = -v;
            e[j * n + slot] = v;
        }
    }
    return e;
}

// out[r,q,p] = sum_{i,j,k} E0[r,i] E1[q,j] E2[p,k] spec[i,j,k]
ComplexField contract(const SpectralGrid& grid, const std::vector<complexd>& spec,
                      const std::vector<complexd>& e0, const std::vector<complexd>& e1,
                      const std::vector<complexd>& e2, int n_out0, int n_out1, int n_out2) {
    const int n = grid.n();
    // axis 2: a[i,j,p] = sum_k spec[i,j,k] E2[p,k]
    std::vector<complexd> a(static_cast<std::size_t>(n) * n * n_out2);
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t ij) {
        const complexd* row = spec.data() + ij * n;
        complexd* out = a.data() + ij * n_out2;
        for (int p = 0; p < n_out2; ++p) {
            complexd acc{0.0, 0.0};
            const complexd* e = e2.data() + static_cast<std::size_t>(p) * n;
            for (int k = 0; k < n; ++k) acc += row[k] * e[k];
            out[p] = acc;
        }
    });
    // axis 1: b[i,q,p] = sum_j a[i,j,p] E1[q,j]
    std::vector<complexd> b(static_cast<std::size_t>(n) * n_out1 * n_out2);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const complexd* ai = a.data() + i * n * n_out2;
        complexd* bi = b.data() + i * n_out1 * n_out2;
        for (int q = 0; q < n_out1; ++q) {
            const complexd* e = e1.data() + static_cast<std::size_t>(q) * n;
            for (int p = 0; p < n_out2; ++p) {
                complexd acc{0.0, 0.0};
                for (int j = 0; j < n; ++j) acc += ai[j * n_out2 + p] * e[j];
                bi[q * n_out2 + p] = acc;
            }
        }
    });
    // axis 0: out[r,q,p] = sum_i b[i,q,p] E0[r,i]
    if (n_out0 != grid.n() || n_out1 != grid.n() || n_out2 != grid.n())
        throw DimensionError("sample_series output must match the grid");
    ComplexField out(grid);
    parallel_for(static_cast<std::size_t>(n_out0), [&](std::size_t r) {
        const complexd* e = e0.data() + r * n;
        complexd* orow = out.data() + r * n_out1 * n_out2;
        for (int q = 0; q < n_out1; ++q)
            for (int p = 0; p < n_out2; ++p) {
                complexd acc{0.0, 0.0};
                for (int i = 0; i < n; ++i) acc += b[(i * n_out1 + q) * n_out2 + p] * e[i];
                orow[q * n_out2 + p] = acc;
            }
    });
    return out;
}

}  // namespace

ComplexField sample_series(const ComplexField& f, const std::vector<double>& x0,
                           const std::vector<double>& x1, const std::vector<double>& x2) {
    const auto& grid = f.grid();
    if (static_cast<int>(x0.size()) != grid.n() || static_cast<int>(x1.size()) != grid.n() ||
        static_cast<int>(x2.size()) != grid.n())
        throw DimensionError("per-axis point lists must match the grid size");
    auto spec = dft_forward(f);
    auto e0 = eval_matrix(grid, x0);
    auto e1 = eval_matrix(grid, x1);
    auto e2 = eval_matrix(grid, x2);
    return contract(grid, spec, e0, e1, e2, grid.n(), grid.n(), grid.n());
}

ComplexField dilate_sample(const ComplexField& f, double nu) {
    if (nu < 1.0) throw RangeError("dilation factor must be at least 1");
    const auto& grid = f.grid();
    std::vector<double> pts(grid.n());
    for (int i = 0; i < grid.n(); ++i) pts[i] = grid.coord(i) / nu;
    return sample_series(f, pts, pts, pts);
}

RealField dilate_sample(const RealField& f, double nu) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    ComplexField r = dilate_sample(c, nu);
    RealField out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = r[i].real();
    return out;
}

double galilei_norm(const ComplexField& u, double t, double k) {
    if (!(t > 0.0)) throw RangeError("galilei norm requires t > 0");
    ComplexField g = chirp(u, t, -1);
    auto sd = dft_forward(g);
    const auto& grid = u.grid();
    const int n = grid.n();
    double s = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk, ++idx) {
                const double w2 = grid.freq_sq(i, j, kk);
                s += std::pow(1.0 + t * t * w2, k) * std::norm(sd[idx]);
            }
    return std::sqrt(s * grid.cell_volume() / static_cast<double>(grid.size()));
}

MdfmResult mdfm_factorization(const ComplexField& f, double t) {
    if (t < 1.0) throw RangeError("factored propagator needs t >= 1 to stay in the box");
    const auto& grid = f.grid();
    const int n = grid.n();

    // Stage 1: inner chirp.
    ComplexField mf = chirp(f, t, +1);

    // Stage 2: continuum-normalized Fourier transform of mf evaluated at the
    // tensor points x/t.  Direct quadrature sum, separable by axis.
    const double h = grid.spacing();
    std::vector<complexd> e(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p) {
        const double eta = grid.coord(p) / t;
        for (int j = 0; j < n; ++j) {
            e[static_cast<std::size_t>(p) * n + j] = std::polar(1.0, -eta * grid.coord(j));
        }
    }
    // contract axis by axis over physical samples
    std::vector<complexd> a(grid.size());
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t ij) {
        const complexd* row = mf.data() + ij * n;
        complexd* out = a.data() + ij * n;
        for (int p = 0; p < n; ++p) {
            complexd acc{0.0, 0.0};
            const complexd* ep = e.data() + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) acc += row[j] * ep[j];
            out[p] = acc;
        }
    });
    std::vector<complexd> b(grid.size());
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const complexd* ai = a.data() + i * n * n;
        complexd* bi = b.data() + i * n * n;
        for (int q = 0; q < n; ++q) {
            const complexd* eq = e.data() + static_cast<std::size_t>(q) * n;
            for (int p = 0; p < n; ++p) {
                complexd acc{0.0, 0.0};
                for (int j = 0; j < n; ++j) acc += ai[j * n + p] * eq[j];
                bi[q * n + p] = acc;
            }
        }
    });
    ComplexField ft(grid);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t r) {
        const complexd* er = e.data() + r * n;
        complexd* orow = ft.data() + r * n * n;
        for (int q = 0; q < n; ++q)
            for (int p = 0; p < n; ++p) {
                complexd acc{0.0, 0.0};
                for (int i = 0; i < n; ++i) acc += b[(i * n + q) * n + p] * er[i];
                orow[q * n + p] = acc;
            }
    });
    const double ft_scale = h * h * h * std::pow(2.0 * M_PI, -1.5);
    // Stage 3: dilation amplitude (i t)^(-3/2) (principal branch).
    const complexd amp = std::pow(t, -1.5) * std::polar(1.0, -0.75 * M_PI);
    for (std::size_t i = 0; i < ft.size(); ++i) ft[i] *= ft_scale * amp;

    // Stage 4: outer chirp.
    ComplexField out = chirp(ft, t, +1);

    const double nin = f.norm_l2();
    const double nout = out.norm_l2();
    const double leak = (nin > 0.0) ? std::abs(nout - nin) / nin : 0.0;
    if (leak > 1e-8) {
        global_warnings().emit("mdfm-leak", "factored propagator lost mass to the box boundary",
                               leak);
    }
    return {std::move(out), leak};
}

}  // namespace wslab
