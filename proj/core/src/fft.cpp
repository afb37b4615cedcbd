#include "wslab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace wslab {

namespace {

struct PlanPair {
    fftw_plan fwd;
    fftw_plan bwd;
};

// FFTW plan creation is not thread safe; execution through the new-array
// interface is.  Plans are unaligned so they accept any vector storage.
PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<complexd> scratch_in(static_cast<std::size_t>(n) * n * n);
    std::vector<complexd> scratch_out(scratch_in.size());
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw DataError("fft plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

void dft_forward(const SpectralGrid& grid, const complexd* in, complexd* out) {
    PlanPair& p = plans_for(grid.n());
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void dft_inverse(const SpectralGrid& grid, const complexd* in, complexd* out) {
    PlanPair& p = plans_for(grid.n());
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / static_cast<double>(grid.size());
    const std::size_t total = grid.size();
    for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

std::vector<complexd> dft_forward(const ComplexField& f) {
    std::vector<complexd> spec(f.size());
    dft_forward(f.grid(), f.data(), spec.data());
    return spec;
}

ComplexField dft_inverse(const SpectralGrid& grid, const std::vector<complexd>& spec) {
    if (spec.size() != grid.size()) throw DimensionError("spectrum size does not match grid");
    ComplexField f(grid);
    dft_inverse(grid, spec.data(), f.data());
    return f;
}

double spectral_norm_l2(const SpectralGrid& grid, const std::vector<complexd>& spec) {
    if (spec.size() != grid.size()) throw DimensionError("spectrum size does not match grid");
    double s = 0.0;
    for (const auto& v : spec) s += std::norm(v);
    // h^3/n^3 * sum |G|^2  ==  h^3 * sum |f|^2
    const double w = grid.cell_volume() / static_cast<double>(grid.size());
    return std::sqrt(s * w);
}

}  // namespace wslab
