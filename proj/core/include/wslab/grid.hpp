#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "wslab/common.hpp"

namespace wslab {

// Uniform periodic box [-L, L)^3, n points per dimension.  Frequencies are
// (pi/L) * m with integer m in [-n/2, n/2).  Storage order is row-major
// (index = (i*n + j)*n + k), frequencies in FFT layout (0..n/2-1, -n/2..-1).
class SpectralGrid {
  public:
    SpectralGrid(int n_per_dim, double half_length) : n_(n_per_dim), L_(half_length) {
        if (n_ < 8 || (n_ % 2) != 0) throw ConfigError("grid size must be even and at least 8");
        if (!(L_ > 0.0)) throw ConfigError("box half-length must be positive");
    }

    int n() const { return n_; }
    double half_length() const { return L_; }
    double spacing() const { return 2.0 * L_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    double cell_volume() const { return spacing() * spacing() * spacing(); }
    double box_volume() const { return 8.0 * L_ * L_ * L_; }

    // Physical coordinate of index i along one axis.
    double coord(int i) const { return -L_ + spacing() * i; }

    // Signed integer mode for FFT slot i along one axis.
    int mode(int i) const { return (i <= n_ / 2 - 1) ? i : i - n_; }

    // Frequency of FFT slot i along one axis.
    double freq(int i) const { return (M_PI / L_) * mode(i); }

    double freq_sq(int i, int j, int k) const {
        const double a = freq(i), b = freq(j), c = freq(k);
        return a * a + b * b + c * c;
    }

    double nyquist() const { return (M_PI / L_) * (n_ / 2); }

    bool operator==(const SpectralGrid& o) const { return n_ == o.n_ && L_ == o.L_; }
    bool operator!=(const SpectralGrid& o) const { return !(*this == o); }

  private:
    int n_;
    double L_;
};

inline void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
    if (a != b) throw DimensionError("fields live on different grids");
}

}  // namespace wslab
