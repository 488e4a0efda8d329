#ifndef LATWALK_SPECTRA_HPP
#define LATWALK_SPECTRA_HPP

#include <vector>

#include "latwalk/grid_state.hpp"

namespace latwalk {

// Momentum pair (k,l) with the derived quantities of the analytic
// eigensystem of W.
struct SpectralIndex {
    int k, l;
    double k_tilde, l_tilde;
    double eps_k, eps_l;
    double p_kl;
    double theta_kl;

    SpectralIndex(GridDims dims, int k, int l);
};

// The r/c amplitudes of the product eigenvectors, plus their half-sum
// and half-difference forms.
struct EigenvectorComponents {
    double r_plus, r_minus, c_plus, c_minus;
    double s_plus, s_minus, d_plus, d_minus;

    explicit EigenvectorComponents(const SpectralIndex& idx);
};

// B selects the plain (0) or XZ-flipped (1) row/column factor.
struct EigLabel {
    int k, l;
    int B_row, B_col;
};

double eigenphase(GridDims dims, int k, int l);

// Signed eigenphase of the labelled eigenvector:
// theta, 0, 0, -theta for B = 00, 01, 10, 11.
double label_phase(GridDims dims, const EigLabel& label);

StateVector eigenvector_w(GridDims dims, const EigLabel& label);

struct SubspaceDescriptor {
    std::vector<EigLabel> labels;
    bool contains_selfloop = false;
    double theta = 0.0;
    int dim = 0;
    int conjugate_id = -1; // index in the enumeration; self for theta in {0, pi}
    double m_kl = 0.0;     // sqrt(2 dim / N), overlap magnitude of |minus-perp>
};

// Partition of the (N+1)-dimensional domain into invariant subspaces.
// Index 0 is always the (+1)-eigenspace.
std::vector<SubspaceDescriptor> enumerate_subspaces(GridDims dims);

// Closed-form subspace count; may disagree with direct enumeration at
// small sizes, so both numbers are surfaced.
long closed_form_subspace_count(GridDims dims);

StateVector project(const StateVector& state, GridDims dims,
                    const SubspaceDescriptor& subspace);

struct ProjectionReport {
    double max_deviation = 0.0;          // over every checked identity
    double orthogonality = 0.0;          // <+|Pi|-> across subspaces
    double cross_term = 0.0;             // <g|Pi|a00> vs 1/2 (00) or 0
    double norm_plus = 0.0, norm_minus = 0.0;
    double g_self = 0.0;                 // <g|Pi00|g> vs (N+4)/(2N)
};

ProjectionReport verify_projection_identities(GridDims dims);

} // namespace latwalk

#endif
