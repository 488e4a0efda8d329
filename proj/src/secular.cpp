#include "latwalk/secular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latwalk/operators.hpp"

namespace latwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroOverlap = 1e-14; // below this an overlap is exactly zero

double cot_half(double x) { return 1.0 / std::tan(0.5 * x); }

// Collapsed coordinates of the spectral analysis: |pi_z>, |selfloop>,
// and per non-(+1) subspace the normalized projections of |minus> and
// |plus> (plus the one of |plus> inside the (+1)-space). f1 and kplus
// have real coordinates there and W is diagonal.
struct Model {
    GridDims dims{2, 2};
    long N;
    double s;
    std::vector<SubspaceDescriptor> subs;
    int m; // non-(+1) subspace count

    double sin2eta, cos2eta;
    double c_pi, c_loop;   // f1 on pi_z, selfloop
    std::vector<double> c; // f1 on n_i^- (size m, subspace i+1)
    double q0;             // kplus on normalized Pi_00 |plus>
    std::vector<double> q; // kplus on n_i^+
};

Model build_model(GridDims dims, double s) {
    if (!dims.square())
        throw config_error("secular analysis requires a square grid");
    Model mod;
    mod.dims = dims;
    mod.N = dims.N();
    mod.s = s;
    mod.subs = enumerate_subspaces(dims);
    mod.m = static_cast<int>(mod.subs.size()) - 1;

    InterpolationParams params(s);
    mod.sin2eta = std::sin(2.0 * params.eta);
    mod.cos2eta = std::cos(2.0 * params.eta);

    double N = static_cast<double>(mod.N);
    double scale = 1.0 / std::sqrt(4.0 - 3.0 * s);
    mod.c_pi = -2.0 * std::sqrt(s) / std::sqrt(N) * scale;
    mod.c_loop = -2.0 * std::sqrt(1.0 - s) * scale;
    mod.q0 = std::sqrt(2.0 * (N + 2.0) / (3.0 * N));
    mod.c.resize(mod.m);
    mod.q.resize(mod.m);
    for (int i = 0; i < mod.m; ++i) {
        const auto& sub = mod.subs[i + 1];
        mod.c[i] = std::sqrt(s) * sub.m_kl * scale;
        mod.q[i] = std::sqrt(2.0 * sub.dim / (3.0 * N));
    }
    return mod;
}

// Builds the (s0, {phi_k, s_k}, s_minus1) form from per-direction
// signed phases and squared weights: positive phases populate the
// pairs (the negative side mirrors them by conjugation), |phase| = pi
// goes to s_minus1.
ReflectionDecomposition aggregate(double s0_sq,
                                  std::vector<std::pair<double, double>> entries) {
    ReflectionDecomposition dec;
    double sm1_sq = 0.0;
    std::vector<std::pair<double, double>> pos;
    for (const auto& [phase, w_sq] : entries) {
        if (w_sq < kZeroOverlap * kZeroOverlap) continue;
        if (std::abs(std::abs(phase) - kPi) < 1e-12)
            sm1_sq += w_sq;
        else if (phase > 0.0)
            pos.push_back({phase, w_sq});
    }
    std::sort(pos.begin(), pos.end());
    for (const auto& [phase, w_sq] : pos) {
        if (!dec.pairs.empty() && phase - dec.pairs.back().first < 1e-12)
            dec.pairs.back().second += w_sq;
        else
            dec.pairs.push_back({phase, w_sq});
    }
    for (auto& [phase, w_sq] : dec.pairs) w_sq = std::sqrt(w_sq);
    dec.s0 = std::sqrt(s0_sq);
    dec.s_minus1 = std::sqrt(sm1_sq);
    return dec;
}

ReflectionDecomposition decompose_f1(const Model& mod) {
    std::vector<std::pair<double, double>> entries;
    for (int i = 0; i < mod.m; ++i)
        entries.push_back({mod.subs[i + 1].theta, mod.c[i] * mod.c[i]});
    return aggregate(mod.c_pi * mod.c_pi + mod.c_loop * mod.c_loop, std::move(entries));
}

std::vector<double> secular_poles(const ReflectionDecomposition& dec) {
    std::vector<double> poles{0.0};
    for (const auto& [phi, sk] : dec.pairs) poles.push_back(phi);
    poles.push_back(kPi);
    return poles;
}

constexpr double kPoleMargin = 1e-13;

double eval_unchecked(double alpha, const ReflectionDecomposition& dec) {
    double v = dec.s0 * dec.s0 * cot_half(alpha);
    for (const auto& [phi, sk] : dec.pairs)
        v += sk * sk * (cot_half(alpha - phi) + cot_half(alpha + phi));
    v -= dec.s_minus1 * dec.s_minus1 * std::tan(0.5 * alpha);
    return v;
}

// One root per pole interval; strictly decreasing from +inf between
// poles, so bisection is safe.
double bisect_root(const ReflectionDecomposition& dec, double lo_pole, double hi_pole) {
    double lo = lo_pole + kPoleMargin;
    double hi = hi_pole - kPoleMargin;
    double f_lo = eval_unchecked(lo, dec);
    double f_hi = eval_unchecked(hi, dec);
    if (f_lo < 0.0) return lo; // root buried inside the pole margin
    if (f_hi > 0.0) {
        // only the last interval can end without a sign change: when the
        // (-1)-overlap vanishes the function reaches 0 exactly at pi
        if (std::abs(hi_pole - kPi) < 1e-15 && dec.s_minus1 < kZeroOverlap) return kPi;
        std::ostringstream msg;
        msg << "secular bracket failure in (" << lo_pole << ", " << hi_pole
            << "): f(lo)=" << f_lo << " f(hi)=" << f_hi;
        throw numeric_error(msg.str());
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (eval_unchecked(mid, dec) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SecularSolution make_solution(const ReflectionDecomposition& dec, double alpha, double lo,
                              double hi) {
    SecularSolution sol;
    sol.alpha = alpha;
    sol.bracket_lo = lo;
    sol.bracket_hi = hi;
    sol.cot_coeffs.push_back(dec.s0 < kZeroOverlap ? 0.0 : dec.s0 * cot_half(alpha));
    for (const auto& [phi, sk] : dec.pairs) {
        sol.cot_coeffs.push_back(sk * cot_half(alpha - phi));
        sol.cot_coeffs.push_back(sk * cot_half(alpha + phi));
    }
    sol.cot_coeffs.push_back(dec.s_minus1 < kZeroOverlap
                                 ? 0.0
                                 : -dec.s_minus1 * std::tan(0.5 * alpha));
    double perp_sq = 0.0;
    for (double ccc : sol.cot_coeffs) perp_sq += ccc * ccc;
    sol.e_norm = std::sqrt(1.0 + perp_sq);
    return sol;
}

struct Stage1 {
    Model mod;
    ReflectionDecomposition dec;
    std::vector<SecularSolution> roots; // ascending
};

Stage1 solve_stage1(GridDims dims, double s) {
    Stage1 st;
    st.mod = build_model(dims, s);
    st.dec = decompose_f1(st.mod);
    auto poles = secular_poles(st.dec);
    for (size_t i = 0; i + 1 < poles.size(); ++i) {
        double alpha = bisect_root(st.dec, poles[i], poles[i + 1]);
        st.roots.push_back(make_solution(st.dec, alpha, poles[i], poles[i + 1]));
    }
    return st;
}

// f2's weights in the eigenbasis of W F1: the (+1)-space keeps
// sin(2 eta) * ||Pi_00 plus||, each surviving n_i^+ keeps
// sin(2 eta) q_i, and each rotational pair of W F1 takes
// cos(2 eta) / ||e_j|| since <A_j | plus> = 0.
ReflectionDecomposition decompose_f2(const Stage1& st) {
    const Model& mod = st.mod;
    std::vector<std::pair<double, double>> entries;
    for (int i = 0; i < mod.m; ++i) {
        double w = mod.sin2eta * mod.q[i];
        entries.push_back({mod.subs[i + 1].theta, w * w});
    }
    for (const auto& root : st.roots) {
        double w = mod.cos2eta / root.e_norm;
        entries.push_back({root.alpha, w * w});
    }
    double g0 = mod.sin2eta * mod.q0;
    return aggregate(g0 * g0, std::move(entries));
}

// <A_j^+ | (pi_z + selfloop)>: both coordinates sit in the phase-0
// block, where e-perp is f1 * cot(alpha/2).
Complex rotation_overlap_x(const Model& mod, const SecularSolution& root) {
    double t = mod.c_pi + mod.c_loop;
    return t * Complex(1.0, -cot_half(root.alpha)) / root.e_norm;
}

} // namespace

ReflectionDecomposition decompose_reflection_state(GridDims dims, ReflectionTarget target,
                                                   double s) {
    if (target == ReflectionTarget::f1) return decompose_f1(build_model(dims, s));
    return decompose_f2(solve_stage1(dims, s));
}

double secular_eval(double alpha, const ReflectionDecomposition& decomp) {
    for (double p : secular_poles(decomp))
        if (std::abs(alpha - p) < 1e-15)
            throw numeric_error("secular evaluation at a pole");
    return eval_unchecked(alpha, decomp);
}

SecularSolution smallest_eigenphase(const ReflectionDecomposition& decomp) {
    if (decomp.s0 < kZeroOverlap)
        throw config_error("secular root in (0, phi_1) needs a (+1)-overlap");
    if (decomp.pairs.empty())
        throw config_error("secular decomposition has no rotational overlaps");
    double hi = decomp.pairs.front().first;
    double alpha = bisect_root(decomp, 0.0, hi);
    return make_solution(decomp, alpha, 0.0, hi);
}

std::vector<SecularSolution> all_eigenphases(const ReflectionDecomposition& decomp) {
    std::vector<SecularSolution> out;
    auto poles = secular_poles(decomp);
    for (size_t i = 0; i + 1 < poles.size(); ++i) {
        double alpha = bisect_root(decomp, poles[i], poles[i + 1]);
        out.push_back(make_solution(decomp, alpha, poles[i], poles[i + 1]));
    }
    return out;
}

namespace {

// Full-space normalized subspace projections, for oracle-scale tests.
struct FullBasis {
    StateVector pi_z, loop, n0_plus;
    std::vector<StateVector> n_minus, n_plus; // per non-(+1) subspace
};

FullBasis build_full_basis(const Model& mod) {
    GridDims dims = mod.dims;
    if (dims.N() > 1024)
        throw config_error("full-space secular basis is guarded to N <= 1024");
    FVectors fv = build_F_vectors(dims, MarkedConfig(dims, 0, 0, mod.s));
    FullBasis fb{apply_cz(uniform_state(dims)), selfloop_state(dims), StateVector(dims),
                 {}, {}};
    StateVector p0 = project(fv.kplus, dims, mod.subs[0]);
    fb.n0_plus.amps = p0.amps / mod.q0;
    for (int i = 0; i < mod.m; ++i) {
        StateVector pm = project(fv.kminus, dims, mod.subs[i + 1]);
        StateVector pp = project(fv.kplus, dims, mod.subs[i + 1]);
        pm.amps /= mod.subs[i + 1].m_kl;
        pp.amps /= mod.q[i];
        fb.n_minus.push_back(std::move(pm));
        fb.n_plus.push_back(std::move(pp));
    }
    return fb;
}

bool same_phase(double a, double b) { return std::abs(a - b) < 1e-12; }

} // namespace

SecularBasis secular_basis_f1(GridDims dims, double s) {
    Model mod = build_model(dims, s);
    FullBasis fb = build_full_basis(mod);
    ReflectionDecomposition dec = decompose_f1(mod);

    SecularBasis basis{StateVector(dims), StateVector(dims), {}};
    basis.T0.amps = (mod.c_pi * fb.pi_z.amps + mod.c_loop * fb.loop.amps) / dec.s0;
    for (const auto& [phi, sk] : dec.pairs) {
        StateVector tp(dims), tm(dims);
        for (int i = 0; i < mod.m; ++i) {
            double theta = mod.subs[i + 1].theta;
            if (same_phase(theta, phi)) tp.amps += mod.c[i] * fb.n_minus[i].amps;
            if (same_phase(theta, -phi)) tm.amps += mod.c[i] * fb.n_minus[i].amps;
        }
        tp.amps /= sk;
        tm.amps /= sk;
        basis.T_pairs.push_back({std::move(tp), std::move(tm)});
    }
    if (dec.s_minus1 >= kZeroOverlap) {
        for (int i = 0; i < mod.m; ++i)
            if (same_phase(std::abs(mod.subs[i + 1].theta), kPi))
                basis.T_minus1.amps += mod.c[i] * fb.n_minus[i].amps;
        basis.T_minus1.amps /= dec.s_minus1;
    }
    return basis;
}

SecularBasis secular_basis_f2(GridDims dims, double s) {
    Stage1 st = solve_stage1(dims, s);
    const Model& mod = st.mod;
    FullBasis fb = build_full_basis(mod);
    ReflectionDecomposition dec1 = st.dec;
    ReflectionDecomposition dec2 = decompose_f2(st);
    SecularBasis b1 = secular_basis_f1(dims, s);

    // rotational eigenvectors of W F1; accumulating them with the
    // signed overlap cos(2 eta)/||e_j|| makes each normalized
    // projection of f2 carry the positive weight g_k
    std::vector<StateVector> A_plus;
    for (const auto& root : st.roots) {
        StateVector e = slow_eigenvector(dec1, root, b1);
        e.amps /= root.e_norm;
        A_plus.push_back(std::move(e));
    }

    SecularBasis basis{fb.n0_plus, StateVector(dims), {}};
    for (const auto& [phi, gk] : dec2.pairs) {
        StateVector tp(dims);
        for (int i = 0; i < mod.m; ++i)
            if (same_phase(mod.subs[i + 1].theta, phi))
                tp.amps += mod.sin2eta * mod.q[i] * fb.n_plus[i].amps;
        for (size_t j = 0; j < st.roots.size(); ++j)
            if (same_phase(st.roots[j].alpha, phi))
                tp.amps += (mod.cos2eta / st.roots[j].e_norm) * A_plus[j].amps;
        tp.amps /= gk;
        StateVector tm(dims, Vector(tp.amps.conjugate()));
        basis.T_pairs.push_back({std::move(tp), std::move(tm)});
    }
    if (dec2.s_minus1 >= kZeroOverlap) {
        for (int i = 0; i < mod.m; ++i)
            if (same_phase(std::abs(mod.subs[i + 1].theta), kPi))
                basis.T_minus1.amps += mod.sin2eta * mod.q[i] * fb.n_plus[i].amps;
        for (size_t j = 0; j < st.roots.size(); ++j)
            if (same_phase(st.roots[j].alpha, kPi))
                basis.T_minus1.amps += (mod.cos2eta / st.roots[j].e_norm) * A_plus[j].amps;
        basis.T_minus1.amps /= dec2.s_minus1;
    }
    return basis;
}

StateVector slow_eigenvector(const ReflectionDecomposition& decomp,
                             const SecularSolution& solution, const SecularBasis& basis) {
    GridDims dims = basis.T0.dims;
    StateVector svec(dims), perp(dims);
    svec.amps = decomp.s0 * basis.T0.amps;
    perp.amps = solution.cot_coeffs[0] * basis.T0.amps;
    for (size_t k = 0; k < decomp.pairs.size(); ++k) {
        double sk = decomp.pairs[k].second;
        svec.amps += sk * (basis.T_pairs[k].first.amps + basis.T_pairs[k].second.amps);
        perp.amps += solution.cot_coeffs[1 + 2 * k] * basis.T_pairs[k].first.amps +
                     solution.cot_coeffs[2 + 2 * k] * basis.T_pairs[k].second.amps;
    }
    svec.amps += decomp.s_minus1 * basis.T_minus1.amps;
    perp.amps += solution.cot_coeffs.back() * basis.T_minus1.amps;
    StateVector e(dims);
    e.amps = svec.amps + Complex(0.0, 1.0) * perp.amps;
    return e;
}

SlowEigenvectorDecomposition extract_slow_decomposition(GridDims dims, double s) {
    Model mod = build_model(dims, s);
    ReflectionDecomposition dec = decompose_f1(mod);
    SecularSolution sol = smallest_eigenphase(dec);
    double alpha = sol.alpha;
    double N = static_cast<double>(mod.N);

    // collapsed coordinates of e = f1 + i e-perp, nonzero only on
    // pi_z, selfloop and the n_i^- directions
    Complex z_pi = mod.c_pi * Complex(1.0, cot_half(alpha));
    Complex z_loop = mod.c_loop * Complex(1.0, cot_half(alpha));
    std::vector<Complex> z(mod.m);
    for (int i = 0; i < mod.m; ++i)
        z[i] = mod.c[i] * Complex(1.0, cot_half(alpha - mod.subs[i + 1].theta));

    Complex scale = 0.5 / z_pi;
    z_pi *= scale;
    z_loop *= scale;
    for (auto& zi : z) zi *= scale;

    // a = <minus-perp|zeta> / ||minus-perp||^2; minus-perp has
    // coordinate m_kl on each n_i^- and nothing else
    Complex a = 0.0;
    for (int i = 0; i < mod.m; ++i) a += mod.subs[i + 1].m_kl * z[i];
    a *= N / (N - 4.0);

    SlowEigenvectorDecomposition out;
    out.phi1 = alpha;
    out.a = a;
    out.loop_overlap = std::conj(z_loop);

    // psi = zeta - a minus-perp - (1/2)pi_z - (1/2)selfloop
    Complex psi_pi = z_pi - 0.5;
    Complex psi_loop = z_loop - 0.5;
    std::vector<Complex> psi(mod.m);
    for (int i = 0; i < mod.m; ++i) psi[i] = z[i] - a * mod.subs[i + 1].m_kl;

    // Re(psi) through the conjugation permutation of the basis
    double re_sq = std::norm(0.5 * (psi_pi + std::conj(psi_pi))) +
                   std::norm(0.5 * (psi_loop + std::conj(psi_loop)));
    for (int i = 0; i < mod.m; ++i) {
        int cj = mod.subs[i + 1].conjugate_id - 1;
        re_sq += std::norm(0.5 * (psi[i] + std::conj(psi[cj])));
    }
    out.psi_real_norm = std::sqrt(re_sq);

    Complex rot = std::polar(1.0, alpha) - 1.0;
    out.constraint1_residual =
        std::abs(8.0 * a * (N - 4.0) / (std::sqrt(N) * (N + 4.0)) - 16.0 / (N + 4.0) - rot);

    // per-subspace form of the eigenvector equation: the psi component
    // on each n_kl^- equals m_kl ((sqrt(N)/4)(e^{ia}-1)/(1-e^{i(a-theta)}) - a)
    double c2 = 0.0;
    for (int i = 0; i < mod.m; ++i) {
        double theta = mod.subs[i + 1].theta;
        Complex want = mod.subs[i + 1].m_kl *
                       (std::sqrt(N) / 4.0 * rot /
                            (1.0 - std::polar(1.0, alpha - theta)) -
                        a);
        c2 = std::max(c2, std::abs(psi[i] - want));
    }
    out.constraint2_max_residual = c2;
    return out;
}

double slow_subspace_overlap(GridDims dims, double s, SlowOperator which) {
    Stage1 st = solve_stage1(dims, s);
    const Model& mod = st.mod;
    const SecularSolution& first = st.roots.front();

    if (which == SlowOperator::WF1) {
        Complex o = rotation_overlap_x(mod, first);
        return std::sqrt(2.0) * std::abs(o);
    }

    ReflectionDecomposition dec2 = decompose_f2(st);
    SecularSolution sol = smallest_eigenphase(dec2);
    double beta = sol.alpha;

    // <E_beta | x> with x = pi_z + selfloop: x meets E_beta only on the
    // rotational directions of W F1
    Complex total = 0.0;
    for (const auto& root : st.roots) {
        double v = mod.cos2eta / root.e_norm;
        Complex xp = rotation_overlap_x(mod, root);
        Complex coeff_p = Complex(1.0, -cot_half(beta - root.alpha));
        Complex coeff_m = Complex(1.0, -cot_half(beta + root.alpha));
        total += v * (coeff_p * xp + coeff_m * std::conj(xp));
    }
    return std::sqrt(2.0) * std::abs(total) / sol.e_norm;
}

AsymptoticSums asymptotic_sums(GridDims dims, double alpha) {
    auto subs = enumerate_subspaces(dims);
    double min_theta = kPi;
    for (size_t i = 1; i < subs.size(); ++i)
        min_theta = std::min(min_theta, std::abs(subs[i].theta));
    if (alpha <= 0.0 || alpha >= min_theta)
        throw config_error("alpha must lie in (0, min theta_kl)");

    AsymptoticSums sums;
    for (size_t i = 1; i < subs.size(); ++i) {
        double theta = subs[i].theta;
        double diff = cot_half(theta + alpha) - cot_half(theta - alpha);
        sums.S0 += subs[i].dim * cot_half(theta - alpha);
        sums.S4 += subs[i].dim * diff * diff;
    }
    return sums;
}

SecularSummary secular_summary(GridDims dims, double s) {
    Stage1 st = solve_stage1(dims, s);
    ReflectionDecomposition dec2 = decompose_f2(st);
    SecularSolution beta_sol = smallest_eigenphase(dec2);

    SecularSummary out;
    out.N = dims.N();
    out.s = s;
    out.phi1 = st.roots.front().alpha;
    out.beta = beta_sol.alpha;
    double g0 = st.mod.sin2eta * st.mod.q0;
    out.g0_sq = g0 * g0;
    out.g1_sq = dec2.pairs.front().second * dec2.pairs.front().second;
    out.overlap_WF1 = slow_subspace_overlap(dims, s, SlowOperator::WF1);
    out.overlap_WF = slow_subspace_overlap(dims, s, SlowOperator::WF);
    AsymptoticSums sums = asymptotic_sums(dims, out.beta);
    out.sum_S0 = sums.S0;
    out.sum_S4 = sums.S4;
    return out;
}

} // namespace latwalk
