#pragma once

#include "wslab/multiplier.hpp"

namespace wslab {

// Free Schroedinger flow u(t) = exp(i (t/2) Laplace) u0 as an exact spectral
// multiplier; forms a unitary group on the grid.
ComplexField free_schrodinger(const ComplexField& u0, double t);

// Pointwise quadratic chirp exp(sign * i |x|^2 / (2 t)).
ComplexField chirp(const ComplexField& f, double t, int sign);

// Trigonometric resampling of the field's box series at x / nu (nu >= 1 maps
// the box into itself).  Exact for band-limited data.
ComplexField dilate_sample(const ComplexField& f, double nu);
RealField dilate_sample(const RealField& f, double nu);

// Resampling at per-axis target point lists (tensor evaluation of the box
// series); the workhorse behind dilate_sample and the factored propagator.
ComplexField sample_series(const ComplexField& f, const std::vector<double>& x0,
                           const std::vector<double>& x1, const std::vector<double>& x2);

// Galilei-weighted norm ||<J(t)>^k u||_2 computed as ||<t omega>^k M*(t) u||_2,
// using <J(t)> = M(t) <i t grad> M*(t).
double galilei_norm(const ComplexField& u, double t, double k);

struct MdfmResult {
    ComplexField field;
    double leaked_mass_fraction;  // | ||out|| - ||in|| | / ||in||
};

// Factored free flow  M(t) D(t) F M(t): chirp, continuum-normalized Fourier
// transform evaluated at x/t, dilation amplitude (i t)^(-3/2), final chirp.
// Agrees with free_schrodinger on data compactly supported in the box; the
// leaked-mass fraction reports energy pushed outside the representable
// domain.  Samples requested outside that domain raise RangeError.
MdfmResult mdfm_factorization(const ComplexField& f, double t);

}  // namespace wslab
