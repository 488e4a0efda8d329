#ifndef LATWALK_SEARCH_HPP
#define LATWALK_SEARCH_HPP

#include <vector>

#include "latwalk/grid_state.hpp"

namespace latwalk {

enum class StepPolicy { Auto, Fixed, Sweep };

struct RunConfig {
    GridDims dims{2, 2};
    int marked_i = 0, marked_j = 0;
    double s = 1.0;
    StepPolicy policy = StepPolicy::Auto;
    long steps = 0; // Fixed: exact count; Sweep: horizon
};

// Per-step record of a walk; index 0 is the initial state.
struct SearchTrajectory {
    long steps = 0;
    std::vector<double> p_selfloop;
    std::vector<double> p_marked;
    std::vector<double> norm_drift;
    long peak_step = 0;
    double peak_value = 0.0;
    double phi1 = 0.0, beta = 0.0; // filled when the auto policy ran the solver
};

// U applied to |pi>; auto policy stops at floor(pi/beta), peak tracks
// p_selfloop.
SearchTrajectory run_main_walk(const RunConfig& config);

// W F1 applied to |pi_z>; auto policy stops at floor(pi/phi1).
SearchTrajectory run_intermediate_walk(const RunConfig& config);

// s = 1: the selfloop decouples and the peak tracks p_marked.
SearchTrajectory run_baseline(const RunConfig& config);

struct AmplificationResult {
    double final_p_marked = 0.0;
    long steps = 0;          // single reflections applied
    double closed_form = 0.0; // sin^2(2 ceil(steps/2) arcsin(sqrt(1-s)))
    double leakage = 0.0;     // weight outside span{|marked>, |selfloop>}
};

// Alternates the interpolated reflection with the reflection about the
// selfloop, starting from |selfloop>, for
// floor((pi/2) / arcsin(sqrt(1-s))) single reflections.
AmplificationResult amplify_selfloop_to_marked(GridDims dims, double s);

} // namespace latwalk

#endif
