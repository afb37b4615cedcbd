#include "wslab/multiplier.hpp"

#include <cmath>

namespace wslab {

complexd multiplier_symbol(const MultiplierSpec& spec, double abs_xi) {
    const double t = spec.t;
    const double m = spec.exponent;
    switch (spec.kind) {
        case MultiplierKind::omega_power:
            if (abs_xi == 0.0) return (m == 0.0) ? 1.0 : 0.0;
            return std::pow(abs_xi, m);
        case MultiplierKind::heat_like:
            return std::exp(-t * abs_xi * abs_xi);
        case MultiplierKind::schrodinger_free:
            return std::exp(complexd(0.0, -0.5 * t * abs_xi * abs_xi));
        case MultiplierKind::wave_sine:
            if (abs_xi == 0.0) return t;
            return std::sin(t * abs_xi) / abs_xi;
        case MultiplierKind::wave_cosine:
            return std::cos(t * abs_xi);
        case MultiplierKind::band_low:
            return (abs_xi <= t) ? 1.0 : 0.0;
        case MultiplierKind::band_high:
            return (abs_xi > t) ? 1.0 : 0.0;
        case MultiplierKind::galilei_weight:
            return std::pow(1.0 + t * t * abs_xi * abs_xi, 0.5 * m);
    }
    throw DataError("unknown multiplier kind");
}

void apply_symbol(const SpectralGrid& grid, const MultiplierSpec& spec, complexd* sd) {
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k, ++idx) {
                const double w = std::sqrt(grid.freq_sq(i, j, k));
                sd[idx] *= multiplier_symbol(spec, w);
            }
        }
    }
}

ComplexField apply_multiplier(const ComplexField& f, const MultiplierSpec& spec) {
    auto spec_data = dft_forward(f);
    apply_symbol(f.grid(), spec, spec_data.data());
    return dft_inverse(f.grid(), spec_data);
}

ComplexField apply_multiplier_chain(const ComplexField& f, const std::vector<MultiplierSpec>& specs) {
    auto spec_data = dft_forward(f);
    for (const auto& s : specs) apply_symbol(f.grid(), s, spec_data.data());
    return dft_inverse(f.grid(), spec_data);
}

namespace {

RealField realize(const ComplexField& f, const char* what) {
    RealField out(f.grid());
    double imax = 0.0, rmax = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        imax = std::max(imax, std::abs(f[i].imag()));
        rmax = std::max(rmax, std::abs(f[i].real()));
        out[i] = f[i].real();
    }
    if (imax > 1e-12 * std::max(1.0, rmax)) {
        global_warnings().emit("imag-residue", what, imax);
    }
    return out;
}

}  // namespace

RealField apply_multiplier(const RealField& f, const MultiplierSpec& spec) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return realize(apply_multiplier(c, spec), "real multiplier output");
}

RealField apply_multiplier_chain(const RealField& f, const std::vector<MultiplierSpec>& specs) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return realize(apply_multiplier_chain(c, specs), "real multiplier output");
}

namespace {

// i xi_axis with the Nyquist plane zeroed (keeps real fields real).
void apply_ideriv(const SpectralGrid& grid, int axis, complexd* sd) {
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k, ++idx) {
                const int slot = (axis == 0) ? i : (axis == 1) ? j : k;
                const int m = grid.mode(slot);
                const double xi = (m == -n / 2) ? 0.0 : (M_PI / grid.half_length()) * m;
                sd[idx] *= complexd(0.0, xi);
            }
        }
    }
}

}  // namespace

ComplexField derivative(const ComplexField& f, int axis) {
    auto sd = dft_forward(f);
    apply_ideriv(f.grid(), axis, sd.data());
    return dft_inverse(f.grid(), sd);
}

VectorField gradient(const RealField& f) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return gradient_re(c);
}

VectorField gradient_re(const ComplexField& f) {
    auto base = dft_forward(f);
    VectorField g(f.grid());
    std::vector<complexd> sd(base.size());
    ComplexField tmp(f.grid());
    for (int axis = 0; axis < 3; ++axis) {
        sd = base;
        apply_ideriv(f.grid(), axis, sd.data());
        dft_inverse(f.grid(), sd.data(), tmp.data());
        double* out = g.component(axis);
        for (std::size_t i = 0; i < f.size(); ++i) out[i] = tmp[i].real();
    }
    return g;
}

RealField divergence(const VectorField& v) {
    const auto& grid = v.grid();
    RealField out(grid);
    ComplexField c(grid);
    for (int axis = 0; axis < 3; ++axis) {
        const double* comp = v.component(axis);
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] = comp[i];
        auto sd = dft_forward(c);
        apply_ideriv(grid, axis, sd.data());
        dft_inverse(grid, sd.data(), c.data());
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] += c[i].real();
    }
    return out;
}

double curl_norm_l2(const VectorField& v) {
    const auto& grid = v.grid();
    // curl components: (d2 v3 - d3 v2, d3 v1 - d1 v3, d1 v2 - d2 v1)
    std::vector<std::vector<complexd>> spec(3);
    ComplexField c(grid);
    for (int axis = 0; axis < 3; ++axis) {
        const double* comp = v.component(axis);
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] = comp[i];
        spec[axis] = dft_forward(c);
    }
    auto deriv = [&](int comp, int axis) {
        std::vector<complexd> sd = spec[comp];
        apply_ideriv(grid, axis, sd.data());
        return sd;
    };
    double total = 0.0;
    const int pair[3][2] = {{2, 1}, {0, 2}, {1, 0}};   // (component, axis) ordering
    const int paxis[3][2] = {{1, 2}, {2, 0}, {0, 1}};  // differentiating axes
    for (int c3 = 0; c3 < 3; ++c3) {
        auto a = deriv(pair[c3][0], paxis[c3][0]);
        auto b = deriv(pair[c3][1], paxis[c3][1]);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        const double nrm = spectral_norm_l2(grid, a);
        total += nrm * nrm;
    }
    return std::sqrt(total);
}

namespace {

double weighted_norm(const SpectralGrid& grid, const std::vector<complexd>& sd,
                     const MultiplierSpec& spec) {
    const int n = grid.n();
    double s = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k, ++idx) {
                const double w = std::sqrt(grid.freq_sq(i, j, k));
                const double sym = std::abs(multiplier_symbol(spec, w));
                s += sym * sym * std::norm(sd[idx]);
            }
        }
    }
    const double wq = grid.cell_volume() / static_cast<double>(grid.size());
    return std::sqrt(s * wq);
}

}  // namespace

double sobolev_norm(const ComplexField& f, double k) {
    return weighted_norm(f.grid(), dft_forward(f), MultiplierSpec::bracket(k));
}

double sobolev_norm(const RealField& f, double k) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return sobolev_norm(c, k);
}

double homogeneous_norm(const ComplexField& f, double m) {
    return weighted_norm(f.grid(), dft_forward(f), MultiplierSpec::omega(m));
}

double sobolev_grad_norm(const VectorField& s, double ell) {
    const auto& grid = s.grid();
    ComplexField c(grid);
    double total = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double* comp = s.component(axis);
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] = comp[i];
        auto sd = dft_forward(c);
        // || <omega>^ell omega s_a ||, summed over components, equals
        // || <omega>^ell grad s || because each derivative contributes |xi_d|^2.
        const int n = grid.n();
        double acc = 0.0;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++idx) {
                    const double w2 = grid.freq_sq(i, j, k);
                    acc += w2 * std::pow(1.0 + w2, ell) * std::norm(sd[idx]);
                }
        total += acc * grid.cell_volume() / static_cast<double>(grid.size());
    }
    return std::sqrt(total);
}

namespace {

double tail_fraction_spec(const SpectralGrid& grid, const std::vector<complexd>& sd) {
    const int n = grid.n();
    const int cut = n / 4;
    double tail = 0.0, total = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double e = std::norm(sd[idx]);
                total += e;
                const int mi = std::abs(grid.mode(i));
                const int mj = std::abs(grid.mode(j));
                const int mk = std::abs(grid.mode(k));
                if (mi >= cut || mj >= cut || mk >= cut) tail += e;
            }
    return (total > 0.0) ? tail / total : 0.0;
}

}  // namespace

double tail_fraction(const ComplexField& f) { return tail_fraction_spec(f.grid(), dft_forward(f)); }

double tail_fraction(const RealField& f) {
    ComplexField c(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return tail_fraction(c);
}

complexd mean(const ComplexField& f) {
    complexd s{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    return s / static_cast<double>(f.size());
}

double mean(const RealField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    return s / static_cast<double>(f.size());
}

RealField scalar_potential(const VectorField& v) {
    const auto& grid = v.grid();
    // p_hat = -i xi . v_hat / |xi|^2, zero mode dropped.
    std::vector<complexd> acc(grid.size(), complexd(0.0, 0.0));
    ComplexField c(grid);
    for (int axis = 0; axis < 3; ++axis) {
        const double* comp = v.component(axis);
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] = comp[i];
        auto sd = dft_forward(c);
        const int n = grid.n();
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++idx) {
                    const int slot = (axis == 0) ? i : (axis == 1) ? j : k;
                    const int m = grid.mode(slot);
                    const double xi = (m == -n / 2) ? 0.0 : (M_PI / grid.half_length()) * m;
                    acc[idx] += complexd(0.0, -xi) * sd[idx];
                }
    }
    const int n = grid.n();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double w2 = grid.freq_sq(i, j, k);
                acc[idx] = (w2 > 0.0) ? acc[idx] / w2 : complexd(0.0, 0.0);
            }
    ComplexField p(grid);
    dft_inverse(grid, acc.data(), p.data());
    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = p[i].real();
    return out;
}

}  // namespace wslab
