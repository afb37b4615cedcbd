#include "wslab/radial.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wslab {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

Poly Poly::constant(double c) { return Poly(std::vector<double>{c}); }

double Poly::operator()(double x) const {
    double v = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) v = v * x + c_[j];
    return v;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly::constant(0.0);
    std::vector<double> d(c_.size() - 1);
    for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = j * c_[j];
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t j = 0; j < c_.size(); ++j) a[j + 1] = c_[j] / (j + 1);
    return Poly(std::move(a));
}

double Poly::integral(double a, double b) const {
    Poly p = antiderivative();
    return p(b) - p(a);
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> s(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t j = 0; j < c_.size(); ++j) s[j] += c_[j];
    for (std::size_t j = 0; j < o.c_.size(); ++j) s[j] += o.c_[j];
    return Poly(std::move(s));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(-1.0); }

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly::constant(0.0);
    std::vector<double> p(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(p));
}

Poly Poly::scaled(double a) const {
    std::vector<double> s = c_;
    for (double& v : s) v *= a;
    return Poly(std::move(s));
}

RadialProfile::RadialProfile(std::vector<double> knots, std::vector<Poly> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
    if (knots_.size() != pieces_.size() + 1)
        throw DimensionError("radial profile needs one more knot than pieces");
    if (knots_.front() != 0.0) throw RangeError("radial profile must start at r = 0");
    for (std::size_t j = 1; j < knots_.size(); ++j)
        if (knots_[j] <= knots_[j - 1]) throw RangeError("radial knots must increase");
    moments_.resize(64);
    for (int j = 0; j < 64; ++j) {
        double acc = 0.0;
        for (std::size_t q = 0; q < pieces_.size(); ++q) {
            const auto& c = pieces_[q].coeffs();
            const double a = knots_[q], b = knots_[q + 1];
            for (std::size_t i = 0; i < c.size(); ++i) {
                const double p = static_cast<double>(i + 2 * j + 3);
                acc += c[i] * (std::pow(b, p) - std::pow(a, p)) / p;
            }
        }
        moments_[j] = acc;
    }
}

RadialProfile RadialProfile::bump(double amplitude, double radius, int power) {
    if (radius <= 0.0) throw RangeError("bump radius must be positive");
    if (power < 1) throw RangeError("bump power must be at least 1");
    // (1 - (r/radius)^2)^power expanded in r.
    Poly base(std::vector<double>{1.0, 0.0, -1.0 / (radius * radius)});
    Poly p = Poly::constant(amplitude);
    for (int i = 0; i < power; ++i) p = p * base;
    return RadialProfile({0.0, radius}, {p});
}

double RadialProfile::operator()(double r) const {
    r = std::abs(r);
    if (pieces_.empty() || r > knots_.back()) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
    std::size_t j = (it == knots_.begin()) ? 0 : (it - knots_.begin()) - 1;
    if (j >= pieces_.size()) j = pieces_.size() - 1;
    return pieces_[j](r);
}

RadialProfile RadialProfile::scaled(double a) const {
    std::vector<Poly> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(q.scaled(a));
    return RadialProfile(knots_, std::move(p));
}

RadialProfile RadialProfile::laplacian3d() const {
    std::vector<Poly> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        const auto& c = p.coeffs();
        for (std::size_t j = 1; j < c.size(); j += 2)
            if (c[j] != 0.0)
                throw RangeError("3-D radial laplacian needs even polynomial pieces");
        // p = sum c_{2m} r^{2m}:  p'' + 2 p'/r = sum c_{2m} 2m (2m+1) r^{2m-2}
        std::vector<double> l(c.size() >= 2 ? c.size() - 2 : 1, 0.0);
        for (std::size_t j = 2; j < c.size(); j += 2)
            l[j - 2] = c[j] * static_cast<double>(j) * static_cast<double>(j + 1);
        out.push_back(Poly(std::move(l)));
    }
    return RadialProfile(knots_, std::move(out));
}

double RadialProfile::l2_norm3d() const {
    double acc = 0.0;
    Poly r2(std::vector<double>{0.0, 0.0, 1.0});
    for (std::size_t j = 0; j < pieces_.size(); ++j)
        acc += (pieces_[j] * pieces_[j] * r2).integral(knots_[j], knots_[j + 1]);
    return std::sqrt(4.0 * M_PI * acc);
}

double RadialProfile::grad_l2_norm3d() const {
    double acc = 0.0;
    Poly r2(std::vector<double>{0.0, 0.0, 1.0});
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        Poly d = pieces_[j].derivative();
        acc += (d * d * r2).integral(knots_[j], knots_[j + 1]);
    }
    return std::sqrt(4.0 * M_PI * acc);
}

double RadialProfile::mass3d() const {
    double acc = 0.0;
    Poly r2(std::vector<double>{0.0, 0.0, 1.0});
    for (std::size_t j = 0; j < pieces_.size(); ++j)
        acc += (pieces_[j] * r2).integral(knots_[j], knots_[j + 1]);
    return 4.0 * M_PI * acc;
}

namespace {

// Int_a^b p(r) sin(kappa r) dr by repeated integration by parts.
double sin_integral(const Poly& p, double a, double b, double kappa);

double cos_integral(const Poly& p, double a, double b, double kappa) {
    if (p.degree() < 0) return 0.0;
    const double head = (p(b) * std::sin(kappa * b) - p(a) * std::sin(kappa * a)) / kappa;
    if (p.degree() == 0) return head;
    return head - sin_integral(p.derivative(), a, b, kappa) / kappa;
}

double sin_integral(const Poly& p, double a, double b, double kappa) {
    const double head = (p(a) * std::cos(kappa * a) - p(b) * std::cos(kappa * b)) / kappa;
    if (p.degree() <= 0) return head;
    return head + cos_integral(p.derivative(), a, b, kappa) / kappa;
}

}  // namespace

double RadialProfile::sin_moment(double kappa) const {
    if (pieces_.empty()) return 0.0;
    const double R = knots_.back();
    if (kappa < 0.0) return -sin_moment(-kappa);
    if (kappa * R < 10.0) {
        // Alternating series sum_j (-1)^j kappa^{2j+1}/(2j+1)! Int f r^{2j+2}.
        // The integration-by-parts closed form cancels catastrophically for
        // kappa R below the polynomial degree, the series does not.
        double acc = 0.0, peak = 0.0, term = kappa;
        for (int j = 0; j < 64; ++j) {
            if (j > 0) term *= kappa * kappa / ((2.0 * j) * (2.0 * j + 1.0));
            const double contrib = ((j % 2 == 0) ? 1.0 : -1.0) * term * moments_[j];
            acc += contrib;
            peak = std::max(peak, std::abs(acc));
            if (2.0 * j > kappa * R && std::abs(contrib) < 1e-18 * (peak + 1e-300)) break;
        }
        return acc;
    }
    Poly r1(std::vector<double>{0.0, 1.0});
    double acc = 0.0;
    for (std::size_t j = 0; j < pieces_.size(); ++j)
        acc += sin_integral(pieces_[j] * r1, knots_[j], knots_[j + 1], kappa);
    return acc;
}

double radial_weighted_l2(const RadialProfile& f, double s) {
    if (2.0 * s <= -3.0) throw RangeError("frequency weight too singular at zero");
    if (f.empty()) return 0.0;
    // Simpson in kappa on [0, K], K doubled until the last octave is noise.
    auto integrand = [&](double kappa) {
        if (kappa == 0.0) {
            // kappa^{2s} I^2 ~ kappa^{2s+2}: zero for s > -1, finite at s = -1,
            // an integrable spike below that (dropping the node keeps Simpson
            // convergent there).
            if (std::abs(s + 1.0) < 1e-12) {
                const double slope = f.sin_moment(1e-6) / 1e-6;
                return slope * slope;
            }
            return 0.0;
        }
        const double I = f.sin_moment(kappa);
        return std::pow(kappa, 2.0 * s) * I * I;
    };
    const double R = f.support_radius();
    double K = std::max(64.0, 32.0 / R);
    double total = 0.0;
    double lo = 0.0;
    for (int oct = 0; oct < 24; ++oct) {
        const double hi = (oct == 0) ? K : 2.0 * lo;
        const int panels =
            std::clamp(static_cast<int>((hi - lo) * R * 128.0), 2048, 1 << 21);
        const double h = (hi - lo) / (2 * panels);
        double acc = integrand(lo) + integrand(hi);
        for (int i = 1; i < 2 * panels; ++i) acc += integrand(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
        const double piece = acc * h / 3.0;
        total += piece;
        lo = hi;
        if (oct >= 1 && std::abs(piece) < 1e-12 * std::abs(total)) break;
    }
    return std::sqrt(8.0 * total);
}

RadialWave::RadialWave(RadialProfile position, RadialProfile velocity)
    : g_(std::move(position)), h_(std::move(velocity)) {
    radius_ = std::max(g_.support_radius(), h_.support_radius());
    // primitive of s h(s), glued continuously across the knots
    double carry = 0.0;
    for (std::size_t j = 0; j + 1 < h_.knots().size(); ++j) {
        Poly sh = h_.pieces()[j] * Poly(std::vector<double>{0.0, 1.0});
        Poly anti = sh.antiderivative();
        pknots_.push_back(h_.knots()[j]);
        ppieces_.push_back(anti + Poly::constant(carry - anti(h_.knots()[j])));
        carry = ppieces_.back()(h_.knots()[j + 1]);
    }
    if (!h_.knots().empty()) pknots_.push_back(h_.knots().back());
    ptail_ = carry;
}

double RadialWave::primitive(double s) const {
    s = std::abs(s);
    if (ppieces_.empty()) return 0.0;
    if (s >= pknots_.back()) return ptail_;
    auto it = std::upper_bound(pknots_.begin(), pknots_.end(), s);
    std::size_t j = (it == pknots_.begin()) ? 0 : (it - pknots_.begin()) - 1;
    if (j >= ppieces_.size()) j = ppieces_.size() - 1;
    return ppieces_[j](s);
}

double RadialWave::operator()(double t, double r) const {
    r = std::abs(r);
    if (r < 1e-9) {
        // r -> 0 limit: G(t) + t G'(t) + t H(t)
        const double eps = 1e-6;
        const double gp = (g_(t + eps) - g_(t - eps)) / (2.0 * eps);
        return g_(t) + t * gp + t * h_(t);
    }
    const double plus = (r + t) * g_(r + t);
    const double minus = (r - t) * g_(std::abs(r - t));
    const double ih = primitive(r + t) - primitive(r - t);
    return (plus + minus + ih) / (2.0 * r);
}

double RadialWave::time_derivative(double t, double r) const {
    const double eps = 1e-6 * std::max(1.0, t);
    return ((*this)(t + eps, r) - (*this)(t - eps, r)) / (2.0 * eps);
}

double RadialWave::l2_norm3d(double t, int panels) const {
    const double lo = std::max(0.0, t - radius_);
    const double hi = t + radius_;
    const double h = (hi - lo) / (2 * panels);
    auto f = [&](double r) {
        const double a = (*this)(t, r);
        return a * a * r * r;
    };
    double acc = f(lo) + f(hi);
    for (int i = 1; i < 2 * panels; ++i) acc += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
    return std::sqrt(4.0 * M_PI * acc * h / 3.0);
}

namespace {

// Plan creation is not thread safe; execution through the new-array interface
// is.  RODFT00 of length m applied twice scales by 2 (m + 1).
fftw_plan dst_plan_for(std::size_t m) {
    static std::map<std::size_t, fftw_plan> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<double> scratch(m);
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(m), scratch.data(), scratch.data(),
                                   FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw DataError("sine transform plan creation failed");
    return cache.emplace(m, p).first->second;
}

void dst_i(std::size_t m, double* data) { fftw_execute_r2r(dst_plan_for(m), data, data); }

}  // namespace

RadialSpectral::RadialSpectral(std::size_t intervals, double radius)
    : n_(intervals), radius_(radius) {
    if (intervals < 4) throw RangeError("radial frame needs at least 4 intervals");
    if (!(radius > 0.0)) throw RangeError("radial frame radius must be positive");
}

double RadialSpectral::node(std::size_t i) const {
    if (i >= points()) throw RangeError("radial node index out of range");
    return static_cast<double>(i + 1) * radius_ / static_cast<double>(n_);
}

double RadialSpectral::mode(std::size_t j) const {
    if (j >= points()) throw RangeError("radial mode index out of range");
    return M_PI * static_cast<double>(j + 1) / radius_;
}

namespace {

std::vector<complexd> dst_complex(std::size_t m, const std::vector<complexd>& in, double w) {
    std::vector<double> re(m), im(m);
    for (std::size_t i = 0; i < m; ++i) {
        re[i] = in[i].real();
        im[i] = in[i].imag();
    }
    dst_i(m, re.data());
    dst_i(m, im.data());
    std::vector<complexd> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = complexd(re[i] * w, im[i] * w);
    return out;
}

}  // namespace

std::vector<complexd> RadialSpectral::analyze(const std::vector<complexd>& samples) const {
    if (samples.size() != points()) throw DimensionError("sample count does not match frame");
    // G_j = dr sum_i g_i sin(k_j r_i); the transform supplies twice the sum
    return dst_complex(points(), samples, 0.5 * radius_ / static_cast<double>(n_));
}

std::vector<complexd> RadialSpectral::synthesize(const std::vector<complexd>& coeffs) const {
    if (coeffs.size() != points()) throw DimensionError("coefficient count does not match frame");
    // g_i = (2 / pi) dk sum_j G_j sin(k_j r_i)
    return dst_complex(points(), coeffs, 1.0 / radius_);
}

std::vector<complexd> RadialSpectral::sample(const RadialProfile& f) const {
    std::vector<complexd> g(points());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = node(i);
        g[i] = complexd(r * f(r), 0.0);
    }
    return g;
}

void RadialSpectral::schrodinger_phase(std::vector<complexd>& coeffs, double t) const {
    if (coeffs.size() != points()) throw DimensionError("coefficient count does not match frame");
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double k = mode(j);
        coeffs[j] *= std::exp(complexd(0.0, -0.5 * t * k * k));
    }
}

void RadialSpectral::omega_power(std::vector<complexd>& coeffs, double m) const {
    if (coeffs.size() != points()) throw DimensionError("coefficient count does not match frame");
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] *= std::pow(mode(j), m);
}

double RadialSpectral::omega_norm_3d(const std::vector<complexd>& coeffs, double m) const {
    if (coeffs.size() != points()) throw DimensionError("coefficient count does not match frame");
    const double dk = M_PI / radius_;
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        acc += std::pow(mode(j), 2.0 * m) * std::norm(coeffs[j]);
    return std::sqrt(8.0 * dk * acc);
}

}  // namespace wslab
