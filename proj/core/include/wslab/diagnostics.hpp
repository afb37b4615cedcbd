#pragma once

#include <cstdint>
#include <string>

#include "wslab/memory.hpp"

namespace wslab {

// Power-law fit of a positive series: log y against log t, optionally with an
// additive log(1 + log t) nuisance regressor for slowly varying envelopes.
struct DecayReport {
    std::string norm_name;
    double t_a = 0.0;
    double t_b = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
    bool log_correction = false;
    double residual_rms = 0.0;
};

DecayReport fit_slope(const ScalarSeries& series, double t_a, double t_b,
                      bool with_log_correction = false, std::string norm_name = "");

// Window policy for asymptotic fits: the last 1.5 decades of the series,
// never reaching into its first quarter (the transient).
std::pair<double, double> default_fit_window(const ScalarSeries& series);

std::string decay_csv(const std::vector<DecayReport>& reports);  // one row per norm

// Empirical-constant probes.  Each probe draws a battery of randomized
// samples, forms the ratio LHS / (RHS without its constant) for an inequality
// the estimates rely on, and records the largest ratio seen.  Samples whose
// RHS vanishes are skipped and counted; sample 0 of every battery is the
// degenerate zero sample so that path stays exercised.
//
//   memory_gain      smoothing of the memory integral:
//                    |omega^{2k-1/2} B1(w,w)|_2 vs the kernel functional of
//                    |omega^k w|_2^2
//   long_range_gain  the low-band part gains t^{beta(m+3/2)}:
//                    |omega^{m+1} B_L(w,w)|_2 vs t^{beta(m+3/2)} I(|w|_2^2)
//   settling_rate    small-time free-flow settling:
//                    |(U(1/t) - 1) w|_2 vs t^{-1}
//   product_decay    stretched wave field times datum derivatives:
//                    |(d^a B0)(d^b w)|_2 vs t^{-lambda0 + |a| + |b|/2},
//                    scale-normalized, on the radial fine grid
enum class ProbeKind { memory_gain, long_range_gain, settling_rate, product_decay };

struct ProbeSample {
    int index;
    double lhs;
    double rhs;
    double ratio;
    bool skipped;
};

struct ProbeReport {
    ProbeKind kind;
    std::string name;
    int battery = 0;
    int skipped = 0;
    double max_ratio = 0.0;
    std::vector<ProbeSample> samples;
};

ProbeReport inequality_probe(ProbeKind kind, int battery_size, std::uint64_t seed = 1234);

std::string probe_csv(const std::vector<ProbeReport>& reports);

}  // namespace wslab
