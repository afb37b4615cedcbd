#pragma once

#include <vector>

#include "wslab/common.hpp"

namespace wslab {

// Dense-coefficient polynomial, p(x) = sum_j c[j] x^j.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);
    static Poly constant(double c);

    double operator()(double x) const;
    Poly derivative() const;
    Poly antiderivative() const;  // constant term zero
    double integral(double a, double b) const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(double a) const;  // a * p

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

  private:
    std::vector<double> c_;
};

// Compactly supported even radial profile: piecewise polynomial in r on
// [knots[j], knots[j+1]], zero beyond the last knot, f(-r) = f(r).
class RadialProfile {
  public:
    RadialProfile() = default;
    RadialProfile(std::vector<double> knots, std::vector<Poly> pieces);

    // amplitude * (1 - (r/radius)^2)^power on [0, radius].
    static RadialProfile bump(double amplitude, double radius, int power);

    double operator()(double r) const;  // even extension, 0 beyond support
    double support_radius() const { return knots_.empty() ? 0.0 : knots_.back(); }
    bool empty() const { return pieces_.empty(); }

    RadialProfile scaled(double a) const;
    RadialProfile laplacian3d() const;  // f'' + 2 f'/r; needs even pieces
    double l2_norm3d() const;           // sqrt(4 pi Int f^2 r^2 dr), exact
    double grad_l2_norm3d() const;      // sqrt(4 pi Int f'^2 r^2 dr), exact
    double mass3d() const;              // Int f dx = 4 pi Int f r^2 dr, exact

    // I(kappa) = Int_0^inf f(r) r sin(kappa r) dr, closed form per piece
    // (series below kappa * support < 1/2 to dodge cancellation).
    double sin_moment(double kappa) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Poly>& pieces() const { return pieces_; }

  private:
    std::vector<double> knots_;
    std::vector<Poly> pieces_;
    std::vector<double> moments_;  // Int f(r) r^{2j+2} dr, for the small-kappa series
};

// || omega^s f ||_2 over free space for an even radial profile, via
// 8 Int_0^inf kappa^{2s} I(kappa)^2 dkappa with I the sine moment.
// Requires 2s > -3 near zero; the upper cutoff is grown until the last
// octave contributes below 1e-12 of the total.
double radial_weighted_l2(const RadialProfile& f, double s);

// Free-space spherical wave from compact radial data, evaluated through the
// 1-D reduction r A = ((r+t) G(r+t) + (r-t) G(r-t))/2 + (P(r+t) - P(r-t))/2
// with G the position profile (even) and P the even primitive of s H(s).
// Strong Huygens holds exactly: A(t, r) = 0 for |r - t| > support radius.
class RadialWave {
  public:
    RadialWave(RadialProfile position, RadialProfile velocity);

    double operator()(double t, double r) const;
    double time_derivative(double t, double r) const;
    double support_radius() const { return radius_; }
    const RadialProfile& position() const { return g_; }
    const RadialProfile& velocity() const { return h_; }

    // sqrt(4 pi Int A(t,r)^2 r^2 dr), composite Simpson over the support
    // shell [max(0, t - R), t + R].
    double l2_norm3d(double t, int panels = 4096) const;

  private:
    double primitive(double s) const;       // P, even, constant beyond R
    double g_term(double t, double r) const;
    RadialProfile g_;
    RadialProfile h_;
    std::vector<double> pknots_;
    std::vector<Poly> ppieces_;  // antiderivatives of s h(s) with continuity
    double ptail_ = 0.0;         // P(R)
    double radius_ = 0.0;
};

// Sine-series frame for radial fields on [0, radius]: a field f rides as the
// interior samples of g = r f, and analyze/synthesize move between those
// samples and the coefficients of g in sin(k_j r), k_j = pi (j + 1) / radius.
// The full-space Fourier transform of radial f is (4 pi / k) times the sine
// transform of g, so omega powers and the free phase act diagonally on the
// coefficients and no box lattice enters.  The sample/coefficient pair is an
// exact bijection (type-I DST both ways); norms below read the coefficients
// as the continuum transform of the sine interpolant.
class RadialSpectral {
  public:
    // intervals >= 4 subdivisions of [0, radius]; interior points = intervals - 1
    RadialSpectral(std::size_t intervals, double radius);

    std::size_t points() const { return n_ - 1; }
    double radius() const { return radius_; }
    double node(std::size_t i) const;  // r_i = (i + 1) radius / intervals
    double mode(std::size_t j) const;  // k_j = pi (j + 1) / radius

    // interior samples of r f(r)  <->  sine coefficients G(k_j)
    std::vector<complexd> analyze(const std::vector<complexd>& samples) const;
    std::vector<complexd> synthesize(const std::vector<complexd>& coeffs) const;

    std::vector<complexd> sample(const RadialProfile& f) const;  // g on the nodes

    void schrodinger_phase(std::vector<complexd>& coeffs, double t) const;  // e^{-i t k^2 / 2}
    void omega_power(std::vector<complexd>& coeffs, double m) const;        // k^m

    // || omega^m f ||_2 over full space: sqrt(8 dk sum k_j^{2m} |G_j|^2)
    double omega_norm_3d(const std::vector<complexd>& coeffs, double m) const;

  private:
    std::size_t n_;
    double radius_;
};

}  // namespace wslab
