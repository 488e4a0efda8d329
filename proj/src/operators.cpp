#include "latwalk/operators.hpp"

#include <cmath>

namespace latwalk {

InterpolationParams::InterpolationParams(double s_in) : s(s_in) {
    if (s < 0.0 || s > 1.0)
        throw config_error("interpolation weight s must lie in [0,1]");
    eta = std::asin(std::sqrt(0.75 * s));
    lambda = std::polar(1.0, 4.0 * eta);
}

MarkedConfig::MarkedConfig(GridDims dims, int i, int j, double s)
    : marked_i(i), marked_j(j), params(s) {
    if (i < 0 || i >= dims.n_rows || j < 0 || j >= dims.n_cols)
        throw config_error("marked vertex out of range");
}

namespace {

// Replaces the four amplitudes of a 2x2 block by (sum)/2 - v.
inline void reflect_block(StateVector& s, int r0, int r1, int c0, int c1) {
    long i00 = s.dims.index(r0, c0), i01 = s.dims.index(r0, c1);
    long i10 = s.dims.index(r1, c0), i11 = s.dims.index(r1, c1);
    Complex half = 0.5 * (s.amps[i00] + s.amps[i01] + s.amps[i10] + s.amps[i11]);
    s.amps[i00] = half - s.amps[i00];
    s.amps[i01] = half - s.amps[i01];
    s.amps[i10] = half - s.amps[i10];
    s.amps[i11] = half - s.amps[i11];
}

} // namespace

StateVector apply_A(const StateVector& state) {
    StateVector out = state;
    for (int i = 0; i < out.dims.n_rows; i += 2)
        for (int j = 0; j < out.dims.n_cols; j += 2)
            reflect_block(out, i, i + 1, j, j + 1);
    return out;
}

StateVector apply_B(const StateVector& state) {
    StateVector out = state;
    int nr = out.dims.n_rows, nc = out.dims.n_cols;
    for (int i = 1; i < nr; i += 2)
        for (int j = 1; j < nc; j += 2)
            reflect_block(out, i, (i + 1) % nr, j, (j + 1) % nc);
    return out;
}

StateVector apply_Gt(const StateVector& state, const MarkedConfig& config) {
    StateVector out = state;
    long g = out.dims.index(config.marked_i, config.marked_j);
    long loop = out.dims.selfloop();
    double rs = std::sqrt(config.params.s);
    double rt = std::sqrt(1.0 - config.params.s);
    Complex overlap = rs * out.amps[g] + rt * out.amps[loop];
    out.amps[g] -= 2.0 * overlap * rs;
    out.amps[loop] -= 2.0 * overlap * rt;
    return out;
}

StateVector apply_U(const StateVector& state, const MarkedConfig& config) {
    return apply_B(apply_Gt(apply_A(apply_Gt(state, config)), config));
}

StateVector apply_W(const StateVector& state) {
    return apply_cz(apply_B(apply_A(apply_cz(state))));
}

FVectors build_F_vectors(GridDims dims, const MarkedConfig& config) {
    // The symmetric F1/F2 split assumes the mark sits at the even-even
    // corner of its square (the one cz negates). Other positions are
    // reduced to this case by a tessellation-preserving relabeling
    // before the spectral analysis ever runs.
    if (config.marked_i % 2 != 0 || config.marked_j % 2 != 0)
        throw config_error("F vectors require the mark at an even-even vertex");
    int bi = config.marked_i, bj = config.marked_j;
    StateVector g = basis_state(dims, config.marked_i, config.marked_j);

    StateVector square(dims);
    square.at(bi, bj) = 0.5;
    square.at(bi, bj + 1) = 0.5;
    square.at(bi + 1, bj) = 0.5;
    square.at(bi + 1, bj + 1) = 0.5;

    StateVector kplus(dims), kminus(dims);
    kplus.amps = (g.amps + square.amps) / std::sqrt(3.0);
    kminus.amps = g.amps - square.amps;

    double s = config.params.s;
    double scale = 1.0 / std::sqrt(4.0 - 3.0 * s);
    StateVector f1(dims);
    f1.amps = scale * (std::sqrt(s) * kminus.amps -
                       2.0 * std::sqrt(1.0 - s) * selfloop_state(dims).amps);

    double two_eta = 2.0 * config.params.eta;
    StateVector f2(dims);
    f2.amps = std::sin(two_eta) * kplus.amps + std::cos(two_eta) * f1.amps;

    std::vector<long> support = {dims.index(bi, bj), dims.index(bi, bj + 1),
                                 dims.index(bi + 1, bj), dims.index(bi + 1, bj + 1),
                                 dims.selfloop()};
    return FVectors{std::move(f1), std::move(f2), std::move(kplus), std::move(kminus),
                    std::move(support)};
}

namespace {

StateVector reflect_about(const StateVector& state, const StateVector& axis,
                          const std::vector<long>& support) {
    StateVector out = state;
    Complex overlap = 0.0;
    for (long m : support)
        overlap += std::conj(axis.amps[m]) * state.amps[m];
    for (long m : support)
        out.amps[m] -= 2.0 * overlap * axis.amps[m];
    return out;
}

} // namespace

StateVector apply_F1(const StateVector& state, const FVectors& fvecs) {
    return reflect_about(state, fvecs.f1, fvecs.support);
}

StateVector apply_F2(const StateVector& state, const FVectors& fvecs) {
    return reflect_about(state, fvecs.f2, fvecs.support);
}

StateVector apply_F(const StateVector& state, const FVectors& fvecs) {
    return apply_F1(apply_F2(state, fvecs), fvecs);
}

StateVector apply_F_direct(const StateVector& state, const MarkedConfig& config) {
    StateVector x = apply_cz(state);
    x = apply_Gt(x, config);
    x = apply_A(x);
    x = apply_Gt(x, config);
    x = apply_A(x);
    return apply_cz(x);
}

Eigen::MatrixXcd dense_matrix(GridDims dims,
                              const std::function<StateVector(const StateVector&)>& op) {
    if (dims.N() > 1024)
        throw config_error("dense matrix builder is guarded to N <= 1024");
    long n = dims.N() + 1;
    Eigen::MatrixXcd m(n, n);
    for (long c = 0; c < n; ++c) {
        StateVector e(dims);
        e.amps[c] = 1.0;
        m.col(c) = op(e).amps;
    }
    return m;
}

} // namespace latwalk
