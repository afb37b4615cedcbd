#pragma once

#include <vector>

#include "wslab/fft.hpp"

namespace wslab {

// Fourier multiplier families used throughout.  Every symbol is a function of
// |xi| alone; the zero mode is pinned explicitly per kind:
//   omega_power      |xi|^m                  m != 0 -> 0 at xi = 0
//   heat_like        exp(-t |xi|^2)          1
//   schrodinger_free exp(-i t |xi|^2 / 2)    1
//   wave_sine        sin(t |xi|) / |xi|      t
//   wave_cosine      cos(t |xi|)             1
//   band_low         [|xi| <= t]             1   (ties kept by the low band)
//   band_high        [|xi| >  t]             0
//   galilei_weight   (1 + t^2 |xi|^2)^(m/2)  1
enum class MultiplierKind {
    omega_power,
    heat_like,
    schrodinger_free,
    wave_sine,
    wave_cosine,
    band_low,
    band_high,
    galilei_weight,
};

struct MultiplierSpec {
    MultiplierKind kind;
    double exponent = 0.0;  // m where applicable
    double t = 0.0;         // time / band radius / weight scale

    static MultiplierSpec omega(double m) { return {MultiplierKind::omega_power, m, 0.0}; }
    static MultiplierSpec heat(double t) { return {MultiplierKind::heat_like, 0.0, t}; }
    static MultiplierSpec schrodinger(double t) { return {MultiplierKind::schrodinger_free, 0.0, t}; }
    static MultiplierSpec wave_sine(double t) { return {MultiplierKind::wave_sine, 0.0, t}; }
    static MultiplierSpec wave_cosine(double t) { return {MultiplierKind::wave_cosine, 0.0, t}; }
    static MultiplierSpec low_band(double radius) { return {MultiplierKind::band_low, 0.0, radius}; }
    static MultiplierSpec high_band(double radius) { return {MultiplierKind::band_high, 0.0, radius}; }
    static MultiplierSpec bracket(double m, double scale = 1.0) {
        return {MultiplierKind::galilei_weight, m, scale};
    }
};

complexd multiplier_symbol(const MultiplierSpec& spec, double abs_xi);

// Multiply a raw spectrum in place by the symbol.
void apply_symbol(const SpectralGrid& grid, const MultiplierSpec& spec, complexd* spec_data);

ComplexField apply_multiplier(const ComplexField& f, const MultiplierSpec& spec);

// Real input, real-symbol multiplier; checks that the imaginary residue stays
// at rounding level and drops it.
RealField apply_multiplier(const RealField& f, const MultiplierSpec& spec);

// Applies a chain of multipliers in one spectral round trip.
ComplexField apply_multiplier_chain(const ComplexField& f, const std::vector<MultiplierSpec>& specs);
RealField apply_multiplier_chain(const RealField& f, const std::vector<MultiplierSpec>& specs);

// Spectral derivatives.  The Nyquist plane is zeroed in odd symbols so real
// fields stay real.
ComplexField derivative(const ComplexField& f, int axis);
VectorField gradient(const RealField& f);
VectorField gradient_re(const ComplexField& f);  // gradient of the real part
RealField divergence(const VectorField& v);
double curl_norm_l2(const VectorField& v);

// Inhomogeneous Sobolev norm ||<omega>^k f||_2.
double sobolev_norm(const ComplexField& f, double k);
double sobolev_norm(const RealField& f, double k);
// Homogeneous norm ||omega^m f||_2 (zero mode dropped for m < 0).
double homogeneous_norm(const ComplexField& f, double m);
// Seminorm ||<omega>^ell grad s||_2 for vector fields (componentwise).
double sobolev_grad_norm(const VectorField& s, double ell);

// Fraction of spectral energy in the top octave (any |mode| >= n/4); the
// resolution health check.
double tail_fraction(const ComplexField& f);
double tail_fraction(const RealField& f);

// Mean of a field over the box.
complexd mean(const ComplexField& f);
double mean(const RealField& f);

// Scalar potential: returns p with grad p = v for curl-free v (zero-mean p).
RealField scalar_potential(const VectorField& v);

}  // namespace wslab
