#ifndef LATWALK_OPERATORS_HPP
#define LATWALK_OPERATORS_HPP

#include <functional>
#include <vector>

#include "latwalk/grid_state.hpp"

namespace latwalk {

// Selfloop interpolation weight s together with the derived rotation
// angle eta (sin^2 eta = 3s/4) and eigenvalue lambda = exp(4i eta).
struct InterpolationParams {
    double s;
    double eta;
    Complex lambda;

    explicit InterpolationParams(double s_in);

    static double auto_s(long N) { return 1.0 - 1.0 / (N + 1.0); }
};

struct MarkedConfig {
    int marked_i = 0;
    int marked_j = 0;
    InterpolationParams params;

    MarkedConfig(GridDims dims, int i, int j, double s);
};

// The vectors of the F = F1 F2 decomposition, all living in the span of
// the marked vertex, its even square and the selfloop. `support` lists
// the few amplitude indices the reflections touch.
struct FVectors {
    StateVector f1;
    StateVector f2;
    StateVector kplus;
    StateVector kminus;
    std::vector<long> support;
};

StateVector apply_A(const StateVector& state);
StateVector apply_B(const StateVector& state);
StateVector apply_Gt(const StateVector& state, const MarkedConfig& config);
StateVector apply_U(const StateVector& state, const MarkedConfig& config);
StateVector apply_W(const StateVector& state);

FVectors build_F_vectors(GridDims dims, const MarkedConfig& config);

StateVector apply_F1(const StateVector& state, const FVectors& fvecs);
StateVector apply_F2(const StateVector& state, const FVectors& fvecs);
StateVector apply_F(const StateVector& state, const FVectors& fvecs);

// F computed from its definition as the cz conjugate of A Gt A Gt.
StateVector apply_F_direct(const StateVector& state, const MarkedConfig& config);

// Materializes an operator as an (N+1)^2 matrix by a basis sweep.
// Guarded to N <= 1024; used only by oracles and tests.
Eigen::MatrixXcd dense_matrix(GridDims dims,
                              const std::function<StateVector(const StateVector&)>& op);

} // namespace latwalk

#endif
