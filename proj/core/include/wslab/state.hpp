#pragma once

#include <cstdint>

#include "wslab/multiplier.hpp"

namespace wslab {

// Geometric time grid; node ratio is constant to 1e-12 by construction.
class TimeGrid {
  public:
    static TimeGrid geometric(double t_begin, double t_end, int nodes_per_decade = 32);

    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }
    double ratio() const;
    void check_uniform_log() const;

    // Largest i with nodes_[i] <= t (within tolerance); throws RangeError for
    // t outside [front, back].
    std::size_t lower_index(double t) const;

    const std::vector<double>& nodes() const { return nodes_; }

  private:
    std::vector<double> nodes_;
};

// Amplitude/phase-gradient pair at one time.
struct PhasePair {
    ComplexField w;
    VectorField s;
    double t;
};

// Norm pair for the working spaces: k for the amplitude, ell for the phase
// gradient; k > 1, ell > 3/2, k <= ell.
class XNorm {
  public:
    XNorm(double k, double ell);
    double k() const { return k_; }
    double ell() const { return ell_; }
    double w_norm(const ComplexField& w) const;   // ||<omega>^k w||_2
    double s_norm(const VectorField& s) const;    // ||<omega>^ell grad s||_2

  private:
    double k_;
    double ell_;
};

double x_norm(const PhasePair& p, const XNorm& norm);

// Append-only time series of PhasePairs on a fixed grid; snapshots are hashed
// at append time and verified on demand.  Interpolation is linear in log t,
// exact at the nodes, and refuses extrapolation.
class Trajectory {
  public:
    explicit Trajectory(TimeGrid grid);

    const TimeGrid& grid() const { return grid_; }
    std::size_t size() const { return states_.size(); }
    bool complete() const { return states_.size() == grid_.size(); }
    void append(PhasePair state);
    const PhasePair& at(std::size_t i) const;
    PhasePair interpolate(double t) const;
    void verify_integrity() const;

  private:
    TimeGrid grid_;
    std::vector<PhasePair> states_;
    std::vector<std::uint64_t> hashes_;
};

// Scalar sample path on a TimeGrid (norms, envelopes, ...); interpolation is
// linear in log t, like Trajectory.
struct ScalarSeries {
    TimeGrid grid;
    std::vector<double> values;
    double at(double t) const;
};

// Scattering datum: amplitude profile plus the width of the spherical gap its
// support must avoid.  Construction enforces the gap.
class AsymptoticState {
  public:
    AsymptoticState(ComplexField w_plus, double eta);
    const ComplexField& w_plus() const { return w_plus_; }
    double eta() const { return eta_; }

  private:
    ComplexField w_plus_;
    double eta_;
};

}  // namespace wslab
