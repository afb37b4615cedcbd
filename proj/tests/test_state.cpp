#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "wslab/snapshot.hpp"
#include "wslab/state.hpp"

using namespace wslab;

namespace {

ComplexField ripple(const SpectralGrid& g, double amp) {
    ComplexField f(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k, ++idx) {
                f[idx] = amp * complexd(std::sin(0.5 * g.coord(i)),
                                        std::cos(0.5 * g.coord(j)) * g.coord(k) / 4.0);
            }
    return f;
}

}  // namespace

TEST_CASE("geometric grid has a constant ratio and pinned endpoints") {
    auto g = TimeGrid::geometric(1.0, 1.0e4, 32);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 1.0e4);
    CHECK(g.size() == 129);
    g.check_uniform_log();
    CHECK(g.ratio() == doctest::Approx(std::pow(10.0, 1.0 / 32.0)).epsilon(1e-12));
}

TEST_CASE("norm indices are validated") {
    CHECK_THROWS_AS(XNorm(0.9, 1.6), ConfigError);
    CHECK_THROWS_AS(XNorm(1.2, 1.4), ConfigError);
    CHECK_THROWS_AS(XNorm(1.8, 1.6), ConfigError);
    XNorm ok(1.2, 1.6);
    CHECK(ok.k() == 1.2);
}

TEST_CASE("trajectory interpolation is exact at nodes and log-linear between") {
    SpectralGrid sg(8, 4.0);
    auto tg = TimeGrid::geometric(1.0, 10.0, 8);
    Trajectory traj(tg);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        PhasePair p{ComplexField(sg), VectorField(sg), tg[i]};
        const double v = std::log(tg[i]);  // field value linear in log t
        for (std::size_t q = 0; q < p.w.size(); ++q) p.w[q] = complexd(v, -2.0 * v);
        for (std::size_t q = 0; q < 3 * p.s.size(); ++q) p.s.data()[q] = 3.0 * v;
        traj.append(std::move(p));
    }
    traj.verify_integrity();

    auto node = traj.interpolate(tg[3]);
    CHECK(node.w[0] == traj.at(3).w[0]);  // bitwise at nodes

    const double tmid = std::sqrt(tg[2] * tg[3]);
    auto mid = traj.interpolate(tmid);
    CHECK(mid.w[5].real() == doctest::Approx(std::log(tmid)).epsilon(1e-12));
    CHECK(mid.s.data()[7] == doctest::Approx(3.0 * std::log(tmid)).epsilon(1e-12));

    CHECK_THROWS_AS(traj.interpolate(0.5), RangeError);
    CHECK_THROWS_AS(traj.interpolate(10.5), RangeError);
}

TEST_CASE("trajectory appends must follow the grid") {
    SpectralGrid sg(8, 4.0);
    auto tg = TimeGrid::geometric(1.0, 10.0, 4);
    Trajectory traj(tg);
    traj.append({ComplexField(sg), VectorField(sg), tg[0]});
    CHECK_THROWS_AS(traj.append({ComplexField(sg), VectorField(sg), tg[0] * 1.5}), DataError);
}

TEST_CASE("scattering datum rejects mass inside the spherical gap") {
    SpectralGrid g(32, 6.0);
    ComplexField bad(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k, ++idx) {
                const double r = std::sqrt(g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j) +
                                           g.coord(k) * g.coord(k));
                bad[idx] = std::exp(-8.0 * (r - 1.0) * (r - 1.0));  // sits on the sphere
            }
    CHECK_THROWS_AS(AsymptoticState(std::move(bad), 0.3), DataError);

    ComplexField good(g);
    idx = 0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k, ++idx) {
                const double r = std::sqrt(g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j) +
                                           g.coord(k) * g.coord(k));
                const double u2 = (r - 2.0) * (r - 2.0) / 0.36;
                good[idx] = (u2 < 1.0) ? std::pow(1.0 - u2, 4) : 0.0;  // shell at r = 2
            }
    AsymptoticState ok(std::move(good), 0.3);
    CHECK(ok.eta() == 0.3);
}

TEST_CASE("snapshots round-trip bit-exactly") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "wslab_snap_test";
    fs::create_directories(dir);
    SpectralGrid g(8, 4.0);

    auto f = ripple(g, 0.37);
    const std::string stem = (dir / "c").string();
    save_snapshot(stem, f, 2.5);
    double t = 0.0;
    auto back = load_complex_snapshot(stem, &t);
    CHECK(t == 2.5);
    CHECK(std::memcmp(back.data(), f.data(), f.size() * sizeof(complexd)) == 0);

    VectorField v(g);
    for (std::size_t i = 0; i < 3 * v.size(); ++i) v.data()[i] = std::sqrt(2.0) * i;
    const std::string vstem = (dir / "v").string();
    save_snapshot(vstem, v, 1.0);
    auto vb = load_vector_snapshot(vstem);
    CHECK(std::memcmp(vb.data(), v.data(), 3 * v.size() * sizeof(double)) == 0);

    CHECK_THROWS_AS(load_real_snapshot(stem), DataError);  // kind mismatch
    fs::remove_all(dir);
}
