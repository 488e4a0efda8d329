#ifndef LATWALK_SECULAR_HPP
#define LATWALK_SECULAR_HPP

#include <utility>
#include <vector>

#include "latwalk/grid_state.hpp"
#include "latwalk/spectra.hpp"

namespace latwalk {

// Overlaps of a real unit reflection state with the eigenspaces of a
// real unitary: s0 on (+1), s_k on each of the e^{+-i phi_k} pair,
// s_minus1 on (-1). Phases strictly ascending in (0, pi).
struct ReflectionDecomposition {
    double s0 = 0.0;
    double s_minus1 = 0.0;
    std::vector<std::pair<double, double>> pairs; // (phi_k, s_k)
};

enum class ReflectionTarget { f1, f2 };
enum class SlowOperator { WF1, WF };

// f1 against W, or f2 against W F1, both in the collapsed basis.
ReflectionDecomposition decompose_reflection_state(GridDims dims, ReflectionTarget target,
                                                   double s);

// s0^2 cot(a/2) + sum s_k^2 [cot((a-phi)/2) + cot((a+phi)/2)]
//   - s_minus1^2 tan(a/2); throws on pole proximity.
double secular_eval(double alpha, const ReflectionDecomposition& decomp);

struct SecularSolution {
    double alpha = 0.0;
    // coefficients of e-perp on T0, then (Tk+, Tk-) per pair, then T-1
    std::vector<double> cot_coeffs;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double e_norm = 0.0; // ||e|| = sqrt(1 + ||e-perp||^2)
};

// Unique root in (0, phi_1), bisection between pole-separated brackets.
SecularSolution smallest_eigenphase(const ReflectionDecomposition& decomp);

// Every root in (0, pi], ascending; one per pole interval.
std::vector<SecularSolution> all_eigenphases(const ReflectionDecomposition& decomp);

// Full-space eigenbasis directions carrying the reflection state,
// for reconstruction and oracle tests (guarded to N <= 1024).
struct SecularBasis {
    StateVector T0, T_minus1;
    std::vector<std::pair<StateVector, StateVector>> T_pairs; // (+phi, -phi)
};

SecularBasis secular_basis_f1(GridDims dims, double s);
SecularBasis secular_basis_f2(GridDims dims, double s);

// |e> = |s> + i |e-perp>, unnormalized.
StateVector slow_eigenvector(const ReflectionDecomposition& decomp,
                             const SecularSolution& solution, const SecularBasis& basis);

// zeta = a |minus-perp> + (1/2)|pi_z> + (1/2)|selfloop> + |psi>,
// from the phi1-eigenvector of W F1 scaled to <zeta|pi_z> = 1/2.
struct SlowEigenvectorDecomposition {
    double phi1 = 0.0;
    Complex a;
    Complex loop_overlap;       // <zeta|selfloop>, must equal 1/2
    double psi_real_norm = 0.0;
    double constraint1_residual = 0.0;
    double constraint2_max_residual = 0.0;
};

SlowEigenvectorDecomposition extract_slow_decomposition(GridDims dims, double s);

// || projection of |pi_z> + |selfloop> onto the slowest rotational
// eigenvector pair || of W F1 or W F.
double slow_subspace_overlap(GridDims dims, double s, SlowOperator which);

struct AsymptoticSums {
    double S0 = 0.0; // sum dim cot((theta - alpha)/2), signed theta, kl != 00
    double S4 = 0.0; // sum dim [cot((theta+alpha)/2) - cot((theta-alpha)/2)]^2
};

AsymptoticSums asymptotic_sums(GridDims dims, double alpha);

struct SecularSummary {
    long N = 0;
    double s = 0.0;
    double phi1 = 0.0, beta = 0.0;
    double g0_sq = 0.0, g1_sq = 0.0;
    double overlap_WF1 = 0.0, overlap_WF = 0.0;
    double sum_S0 = 0.0, sum_S4 = 0.0;
};

SecularSummary secular_summary(GridDims dims, double s);

} // namespace latwalk

#endif
