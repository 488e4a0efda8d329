#include "latwalk/grid_state.hpp"

#include <cmath>
#include <random>

namespace latwalk {

StateVector uniform_state(GridDims dims) {
    StateVector s(dims);
    double amp = 1.0 / std::sqrt(static_cast<double>(dims.N()));
    s.amps.head(dims.N()).setConstant(Complex(amp, 0.0));
    return s;
}

StateVector basis_state(GridDims dims, int i, int j) {
    if (i < 0 || i >= dims.n_rows || j < 0 || j >= dims.n_cols)
        throw config_error("vertex out of range");
    StateVector s(dims);
    s.at(i, j) = 1.0;
    return s;
}

StateVector selfloop_state(GridDims dims) {
    StateVector s(dims);
    s.loop() = 1.0;
    return s;
}

StateVector apply_cz(const StateVector& state) {
    StateVector out = state;
    for (int i = 0; i < out.dims.n_rows; i += 2)
        for (int j = 0; j < out.dims.n_cols; j += 2)
            out.at(i, j) = -out.at(i, j);
    return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (!(a.dims == b.dims))
        throw config_error("dimension mismatch in inner product");
    return a.amps.dot(b.amps);
}

StateVector random_unit_state(GridDims dims, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s(dims);
    for (long m = 0; m <= dims.N(); ++m)
        s.amps[m] = Complex(gauss(rng), gauss(rng));
    s.amps /= s.amps.norm();
    return s;
}

} // namespace latwalk
