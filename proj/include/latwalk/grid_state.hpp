#ifndef LATWALK_GRID_STATE_HPP
#define LATWALK_GRID_STATE_HPP

#include <complex>
#include <stdexcept>
#include <Eigen/Dense>

namespace latwalk {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Torus dimensions. Both sides must be even; N = n_rows * n_cols.
struct GridDims {
    int n_rows;
    int n_cols;

    GridDims(int rows, int cols) : n_rows(rows), n_cols(cols) {
        if (rows <= 0 || cols <= 0 || rows % 2 != 0 || cols % 2 != 0)
            throw config_error("grid dimensions must be positive and even");
    }

    long N() const { return static_cast<long>(n_rows) * n_cols; }
    bool square() const { return n_rows == n_cols; }

    // Row-major vertex index; the selfloop lives at index N.
    long index(int i, int j) const { return static_cast<long>(i) * n_cols + j; }
    long selfloop() const { return N(); }

    bool operator==(const GridDims& o) const {
        return n_rows == o.n_rows && n_cols == o.n_cols;
    }
};

// Amplitude vector over the N grid vertices plus the selfloop state.
struct StateVector {
    GridDims dims;
    Vector amps;

    explicit StateVector(GridDims d) : dims(d), amps(Vector::Zero(d.N() + 1)) {}
    StateVector(GridDims d, Vector a) : dims(d), amps(std::move(a)) {
        if (amps.size() != dims.N() + 1)
            throw config_error("amplitude vector has wrong length");
    }

    Complex& at(int i, int j) { return amps[dims.index(i, j)]; }
    Complex at(int i, int j) const { return amps[dims.index(i, j)]; }
    Complex& loop() { return amps[dims.selfloop()]; }
    Complex loop() const { return amps[dims.selfloop()]; }
    double norm() const { return amps.norm(); }
};

// |pi>: 1/sqrt(N) on every vertex, 0 on the selfloop.
StateVector uniform_state(GridDims dims);

// Single basis state |i,j>.
StateVector basis_state(GridDims dims, int i, int j);

// |selfloop>.
StateVector selfloop_state(GridDims dims);

// Sign flip on vertices with both coordinates even; identity elsewhere.
StateVector apply_cz(const StateVector& state);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

// Deterministic pseudo-random unit state (for property tests).
StateVector random_unit_state(GridDims dims, unsigned long seed);

} // namespace latwalk

#endif
