#pragma once

#include "wslab/memory.hpp"
#include "wslab/propagator.hpp"
#include "wslab/state.hpp"

namespace wslab {

// Knobs for the asymptotic-pair construction: the frequency-split exponent,
// the finite stand-in for the infinite upper limit of the time quadratures,
// and the density of the internal geometric node grid.
struct ProfileParams {
    double beta = 0.5;
    double t_cap = 1.0e3;
    int nodes_per_decade = 32;
};

// Backward free flow of the datum, w0(t) = U*(1/t) w_plus.  Unitary, so
// ||w0(t)||_2 = ||w_plus||_2 at every t.
ComplexField build_w0(const ComplexField& w_plus, double t);

// Q(s, w) = s . grad w + (1/2) (div s) w.  For real s this is formally
// anti-self-adjoint: Re <w, Q(s, w)> = 0, which is what keeps the L2 norm of
// the transported flows flat.
ComplexField q_operator(const VectorField& s, const ComplexField& w);

// First- and second-iterate asymptotic pair built from one datum.  The
// constructor runs every internal quadrature once over a geometric node grid
// on [1, t_cap] (single writer); afterwards all accessors are const and safe
// to call concurrently.  Off-node times are served by log-linear blending of
// node data; w0 itself is always exact.
//
// Construction:
//   w0(t)   = U*(1/t) w_plus
//   phi0(t) = -Int_1^t dt'/t' B_long(w0, w0)(t'),         s0 = grad phi0
//   w1(t)   = -U*(1/t) Int_t^cap dt'/t'^2 U(1/t') Q(s0, w0)(t')
//   phi1(t) = -Int_t^cap dt'/(2 t'^2) |s0|^2
//             + 2 Int_t^cap dt'/t' B_long(w0, w1)(t'),    s1 = grad phi1
// The gradient relations hold spectrally because s0, s1 are only ever formed
// as grad of the phase accumulators.  Memory fields for all iterate pairs are
// kept at the nodes; their time split uses the bundle's beta.
class ProfileBundle {
  public:
    ProfileBundle(const ComplexField& w_plus, const ProfileParams& params = {});

    const SpectralGrid& grid() const { return w_plus_.grid(); }
    const ProfileParams& params() const { return params_; }
    const TimeGrid& nodes() const { return nodes_; }
    const ComplexField& w_plus() const { return w_plus_; }

    // t must lie in [1, t_cap] for every evaluator below
    ComplexField w0(double t) const;
    ComplexField w1(double t) const;
    RealField phi0(double t) const;
    RealField phi1(double t) const;
    VectorField s0(double t) const;
    VectorField s1(double t) const;
    PhasePair pair_state(double t) const;  // (w0 + w1, s0 + s1) at t

    // memory field of iterate pair (i, j); b1_pair sums all pairs by
    // bilinearity to the field of (w0 + w1, w0 + w1)
    RealField b1(int i, int j, double t) const;
    RealField b1_pair(double t) const;

    // Measured L2 bounds on how far the named field can still move at time t
    // if the upper limit t_cap were pushed out.  The constructor rebuilds the
    // whole chain a second time with the horizon at the largest node <= cap/2
    // and records the per-node movement delta(t) between the two builds; the
    // bound is 2 * delta(min(t, cap/2)), which dominates the remaining
    // horizon doublings as long as each one moves the field no more than the
    // last.  In particular doubling t_cap moves the field by at most this.
    double phi0_tail(double t) const;
    double s0_tail(double t) const;
    double w1_tail(double t) const;
    double phi1_tail(double t) const;
    double s1_tail(double t) const;

  private:
    RealField interp_real(const std::vector<RealField>& fam, double t) const;
    ComplexField interp_complex(const std::vector<ComplexField>& fam, double t) const;
    double cert(const std::vector<double>& deltas, double t) const;

    ComplexField w_plus_;
    ProfileParams params_;
    TimeGrid nodes_;
    std::vector<RealField> b100_, b101_, b111_;  // memory fields at the nodes
    std::vector<RealField> phi0n_, phi1n_;       // phase accumulators at the nodes
    std::vector<ComplexField> gint_;             // Int_t^cap dt'/t'^2 U(1/t') Q(s0, w0)

    // horizon-halving movement per node on [1, cap_half]
    std::size_t half_top_ = 0;  // index of the largest node <= t_cap / 2
    double cap_half_ = 0.0;     // that node's time
    std::vector<double> dphi0_, ds0_, dw1_, dphi1_, ds1_;
};

// Second-profile quadrature alone, with the phase source frozen: the outer
// integral runs over every stride-th node of the builder's grid between t and
// t_cap (composite Simpson in log time, quadratic end correction), while s0
// is read from the builder unchanged and the first profile is the backward
// free flow of the given datum.  With t on a node and stride 2 vs 1 this
// isolates pure quadrature convergence of the outer rule.
ComplexField build_w1(const ComplexField& w_plus, const ProfileBundle& s0_builder, double t,
                      double t_cap, int stride = 1);

// Defect of the asymptotic pair in the transported equations, assembled from
// the constructed pieces:
//   R1 = -t^{-2} { Q(s0, w1) + Q(s1, w0) + Q(s1, w1) }
//        - i t^{-1} (b0 + B_short(W, W)) W
//   R2 = -t^{-2} { (s0.grad) s1 + (s1.grad) s0 + (s1.grad) s1 }
//        + t^{-1} grad B_long(w1, w1)
// with W = w0 + w1.  b0 is the sampled external wave field at time t (pass a
// zero field when no external wave is present).
ComplexField remainder_r1(const ProfileBundle& bundle, const RealField& b0, double t);
VectorField remainder_r2(const ProfileBundle& bundle, double t);

// The same defects read off the flow equations they measure,
//   R1 = U*(1/t) d/dt [ U(1/t) W ] - t^{-2} Q(S, W) - i t^{-1} (b0 + B_short(W, W)) W
//   R2 = d/dt S - t^{-2} (S.grad) S + t^{-1} grad B_long(W, W)
// with the time derivative taken by centered second-order differencing over
// one node spacing of the bundle grid.  Requires t * ratio <= t_cap and
// t / ratio >= 1 for the bundle's node ratio.
ComplexField remainder_r1_flow(const ProfileBundle& bundle, const RealField& b0, double t);
VectorField remainder_r2_flow(const ProfileBundle& bundle, double t);

}  // namespace wslab
