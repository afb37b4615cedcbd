#include "wslab/state.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

namespace wslab {

// ---- common.hpp backing ----------------------------------------------------

WarningSink& global_warnings() {
    static WarningSink sink;
    return sink;
}

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n); }
unsigned worker_count() { return g_workers.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(g_workers.load(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        constexpr std::size_t chunk = 8;
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(begin + chunk, count);
            for (std::size_t i = begin; i < end; ++i) body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

// ---- time grids -------------------------------------------------------------

TimeGrid TimeGrid::geometric(double t_begin, double t_end, int nodes_per_decade) {
    if (!(t_begin > 0.0) || !(t_end > t_begin)) throw RangeError("bad time grid endpoints");
    if (nodes_per_decade < 2) throw ConfigError("need at least 2 nodes per decade");
    const double decades = std::log10(t_end / t_begin);
    const int steps = std::max(1, static_cast<int>(std::ceil(decades * nodes_per_decade)));
    TimeGrid g;
    g.nodes_.resize(steps + 1);
    const double logb = std::log(t_begin), loge = std::log(t_end);
    for (int i = 0; i <= steps; ++i) {
        g.nodes_[i] = std::exp(logb + (loge - logb) * i / steps);
    }
    g.nodes_.front() = t_begin;
    g.nodes_.back() = t_end;
    return g;
}

double TimeGrid::ratio() const {
    if (nodes_.size() < 2) throw RangeError("time grid too short for a ratio");
    return nodes_[1] / nodes_[0];
}

void TimeGrid::check_uniform_log() const {
    if (nodes_.size() < 3) return;
    const double r = ratio();
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
        const double ri = nodes_[i + 1] / nodes_[i];
        if (std::abs(ri / r - 1.0) > 1e-12) throw DataError("time grid ratio drifts");
    }
}

std::size_t TimeGrid::lower_index(double t) const {
    if (t < nodes_.front() - 1e-12 * nodes_.front() ||
        t > nodes_.back() + 1e-12 * nodes_.back())
        throw RangeError("time outside the grid; extrapolation refused");
    // geometric grid: index from logs, then clamp and fix up
    const double r = std::log(nodes_[1] / nodes_[0]);
    auto idx = static_cast<std::ptrdiff_t>(std::floor(std::log(t / nodes_[0]) / r));
    idx = std::max<std::ptrdiff_t>(0, std::min<std::ptrdiff_t>(idx, nodes_.size() - 2));
    while (idx > 0 && t < nodes_[idx]) --idx;
    while (idx + 2 < static_cast<std::ptrdiff_t>(nodes_.size()) && t > nodes_[idx + 1]) ++idx;
    return static_cast<std::size_t>(idx);
}

// ---- norms ------------------------------------------------------------------

XNorm::XNorm(double k, double ell) : k_(k), ell_(ell) {
    if (!(k > 1.0)) throw ConfigError("regularity index k must exceed 1");
    if (!(ell > 1.5)) throw ConfigError("regularity index ell must exceed 3/2");
    if (!(k <= ell)) throw ConfigError("k must not exceed ell");
}

double XNorm::w_norm(const ComplexField& w) const { return sobolev_norm(w, k_); }
double XNorm::s_norm(const VectorField& s) const { return sobolev_grad_norm(s, ell_); }

double x_norm(const PhasePair& p, const XNorm& norm) {
    return std::max(norm.w_norm(p.w), norm.s_norm(p.s));
}

// ---- trajectories -----------------------------------------------------------

namespace {
std::uint64_t hash_pair(const PhasePair& p) {
    std::uint64_t h = fnv1a(&p.t, sizeof(double));
    h = fnv1a(p.w.data(), p.w.size() * sizeof(complexd), h);
    h = fnv1a(p.s.data(), 3 * p.s.size() * sizeof(double), h);
    return h;
}
}  // namespace

Trajectory::Trajectory(TimeGrid grid) : grid_(std::move(grid)) {}

void Trajectory::append(PhasePair state) {
    if (size() >= grid_.size()) throw RangeError("trajectory already complete");
    const double expect = grid_[size()];
    if (std::abs(state.t / expect - 1.0) > 1e-12)
        throw DataError("appended state time does not match the grid node");
    hashes_.push_back(hash_pair(state));
    states_.push_back(std::move(state));
}

const PhasePair& Trajectory::at(std::size_t i) const {
    if (i >= states_.size()) throw RangeError("trajectory index out of range");
    return states_[i];
}

void Trajectory::verify_integrity() const {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (hash_pair(states_[i]) != hashes_[i])
            throw DataError("trajectory snapshot mutated after append");
    }
}

PhasePair Trajectory::interpolate(double t) const {
    if (states_.empty()) throw RangeError("empty trajectory");
    if (states_.size() < grid_.size()) {
        if (t > states_.back().t * (1.0 + 1e-12)) throw RangeError("time beyond recorded range");
    }
    const std::size_t i = grid_.lower_index(t);
    if (i + 1 >= states_.size()) {
        if (std::abs(t / states_.back().t - 1.0) <= 1e-12) {
            return states_.back();
        }
        throw RangeError("time beyond recorded range");
    }
    const PhasePair& a = states_[i];
    const PhasePair& b = states_[i + 1];
    if (std::abs(t / a.t - 1.0) <= 1e-12) return a;
    if (std::abs(t / b.t - 1.0) <= 1e-12) return b;
    const double lam = std::log(t / a.t) / std::log(b.t / a.t);
    PhasePair out{ComplexField(a.w.grid()), VectorField(a.s.grid()), t};
    for (std::size_t j = 0; j < out.w.size(); ++j)
        out.w[j] = a.w[j] * (1.0 - lam) + b.w[j] * lam;
    double* od = out.s.data();
    const double* ad = a.s.data();
    const double* bd = b.s.data();
    for (std::size_t j = 0; j < 3 * out.s.size(); ++j) od[j] = ad[j] * (1.0 - lam) + bd[j] * lam;
    return out;
}

// ---- scalar series ----------------------------------------------------------

double ScalarSeries::at(double t) const {
    if (values.size() != grid.size()) throw DataError("series length does not match its grid");
    const std::size_t i = grid.lower_index(t);
    const double ta = grid[i];
    if (std::abs(t / ta - 1.0) <= 1e-12) return values[i];
    if (i + 1 >= values.size()) throw RangeError("time beyond recorded range");
    const double tb = grid[i + 1];
    if (std::abs(t / tb - 1.0) <= 1e-12) return values[i + 1];
    const double lam = std::log(t / ta) / std::log(tb / ta);
    return values[i] * (1.0 - lam) + values[i + 1] * lam;
}

// ---- asymptotic state -------------------------------------------------------

AsymptoticState::AsymptoticState(ComplexField w_plus, double eta)
    : w_plus_(std::move(w_plus)), eta_(eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("support gap eta must lie in (0,1)");
    const auto& grid = w_plus_.grid();
    const int n = grid.n();
    double inside = 0.0, total = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                const double m = std::norm(w_plus_[idx]);
                total += m;
                if (std::abs(r - 1.0) < eta) inside += m;
            }
    if (total > 0.0 && inside / total >= 1e-10)
        throw DataError("scattering datum carries mass inside the unit-sphere gap");
}

}  // namespace wslab
