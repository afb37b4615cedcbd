#pragma once

#include <vector>

#include "wslab/field.hpp"

namespace wslab {

// Raw 3-D DFT wrappers (unnormalized forward, 1/n^3 inverse), plan reuse per
// grid size behind a lock.  Plans are created FFTW_ESTIMATE so that repeated
// runs are bit-identical.
//
// Conventions: forward()[m] = sum_j f_j exp(-2 pi i m.j / n).  The true
// Fourier coefficient of the box series f(x) = sum C_m exp(i xi_m . x) is
// C_m = (-1)^(m1+m2+m3) forward()[m] / n^3, because grid points start at -L.
void dft_forward(const SpectralGrid& grid, const complexd* in, complexd* out);
void dft_inverse(const SpectralGrid& grid, const complexd* in, complexd* out);

std::vector<complexd> dft_forward(const ComplexField& f);
ComplexField dft_inverse(const SpectralGrid& grid, const std::vector<complexd>& spec);

// L2 norm computed in spectral space from a raw forward DFT; equals the
// physical-space norm by Parseval.
double spectral_norm_l2(const SpectralGrid& grid, const std::vector<complexd>& spec);

}  // namespace wslab
