// Acceptance gate: one pass/fail line per criterion, exit nonzero if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "latwalk/operators.hpp"
#include "latwalk/search.hpp"
#include "latwalk/secular.hpp"
#include "latwalk/spectra.hpp"

using namespace latwalk;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Gate {
    int failures = 0;

    void report(int id, const std::string& what, bool ok, double worst) {
        std::printf("%s criterion %d: %s (worst %.3e)\n", ok ? "PASS" : "FAIL", id,
                    what.c_str(), worst);
        if (!ok) ++failures;
    }
};

double auto_s(GridDims d) { return InterpolationParams::auto_s(d.N()); }

std::vector<EigLabel> all_labels(GridDims d) {
    std::vector<EigLabel> out;
    for (int k = 0; k < d.n_rows / 2; ++k)
        for (int l = 0; l < d.n_cols / 2; ++l)
            for (int br = 0; br < 2; ++br)
                for (int bc = 0; bc < 2; ++bc)
                    out.push_back({k, l, br, bc});
    return out;
}

// smallest positive eigenphase of a dense unitary
double dense_smallest_phase(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    double best = kPi;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ph = std::arg(es.eigenvalues()[i]);
        if (ph > 1e-8 && ph < best) best = ph;
    }
    return best;
}

void criterion1(Gate& gate) {
    double worst = 0.0;
    for (GridDims d : {GridDims(4, 4), GridDims(8, 8), GridDims(16, 16)}) {
        MarkedConfig cfg(d, 0, 0, auto_s(d));
        FVectors fv = build_F_vectors(d, cfg);
        for (unsigned long seed = 1; seed <= 3; ++seed) {
            StateVector x = random_unit_state(d, seed);
            auto dev = [&](const StateVector& y) {
                worst = std::max(worst, (y.amps - x.amps).norm());
            };
            dev(apply_A(apply_A(x)));
            dev(apply_B(apply_B(x)));
            dev(apply_Gt(apply_Gt(x, cfg), cfg));
            dev(apply_F1(apply_F1(x, fv), fv));
            dev(apply_F2(apply_F2(x, fv), fv));
            worst = std::max(worst, (apply_F(x, fv).amps -
                                     apply_F_direct(x, cfg).amps).norm());
            worst = std::max(
                worst, (apply_U(x, cfg).amps -
                        apply_cz(apply_W(apply_F(apply_cz(x), fv))).amps).norm());
        }
    }
    for (GridDims d : {GridDims(4, 4), GridDims(8, 8)}) {
        MarkedConfig cfg(d, 0, 0, auto_s(d));
        FVectors fv = build_F_vectors(d, cfg);
        long dim = d.N() + 1;
        Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
        auto dense = [&](const std::function<StateVector(const StateVector&)>& op) {
            return dense_matrix(d, op);
        };
        for (const auto& op : {
                 dense([](const StateVector& x) { return apply_A(x); }),
                 dense([](const StateVector& x) { return apply_B(x); }),
                 dense([&](const StateVector& x) { return apply_Gt(x, cfg); }),
                 dense([&](const StateVector& x) { return apply_F1(x, fv); }),
                 dense([&](const StateVector& x) { return apply_F2(x, fv); })})
            worst = std::max(worst, (op * op - I).norm());
    }
    gate.report(1, "operator identities, random states and full matrices", worst <= 1e-12,
                worst);
}

void criterion2(Gate& gate) {
    double worst = 0.0;
    for (GridDims d : {GridDims(8, 8), GridDims(16, 16)}) {
        auto labels = all_labels(d);
        Eigen::MatrixXcd M(d.N() + 1, labels.size());
        for (size_t i = 0; i < labels.size(); ++i) {
            StateVector w = eigenvector_w(d, labels[i]);
            Complex ev = std::polar(1.0, label_phase(d, labels[i]));
            worst = std::max(worst, (apply_W(w).amps - ev * w.amps).norm());
            M.col(i) = w.amps;
        }
        Eigen::MatrixXcd gram = M.adjoint() * M;
        worst = std::max(
            worst, (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                       .cwiseAbs()
                       .maxCoeff());
        auto subs = enumerate_subspaces(d);
        if (subs[0].dim != d.N() / 2 + 3) worst = std::max(worst, 1.0);
        worst = std::max(worst, verify_projection_identities(d).max_deviation);
    }
    gate.report(2, "analytic spectra, Gram matrix and projection identities",
                worst <= 1e-10, worst);
}

void criterion3(Gate& gate) {
    double worst = 0.0;
    for (GridDims d : {GridDims(8, 8), GridDims(16, 16)}) {
        double s = auto_s(d);
        MarkedConfig cfg(d, 0, 0, s);
        FVectors fv = build_F_vectors(d, cfg);
        auto d1 = decompose_reflection_state(d, ReflectionTarget::f1, s);
        auto d2 = decompose_reflection_state(d, ReflectionTarget::f2, s);
        double phi1 = smallest_eigenphase(d1).alpha;
        double beta = smallest_eigenphase(d2).alpha;
        Eigen::MatrixXcd WF1 = dense_matrix(
            d, [&](const StateVector& x) { return apply_W(apply_F1(x, fv)); });
        Eigen::MatrixXcd WF = dense_matrix(
            d, [&](const StateVector& x) { return apply_W(apply_F(x, fv)); });
        worst = std::max(worst, std::abs(phi1 - dense_smallest_phase(WF1)));
        worst = std::max(worst, std::abs(beta - dense_smallest_phase(WF)));
    }
    // interlacing at N=64: one root per pole interval, strictly ordered
    GridDims d(8, 8);
    auto dec = decompose_reflection_state(d, ReflectionTarget::f1, auto_s(d));
    auto roots = all_eigenphases(dec);
    bool interlaced = roots.size() == dec.pairs.size() + 1;
    double prev_pole = 0.0;
    for (size_t i = 0; i < roots.size() && interlaced; ++i) {
        double next_pole = i < dec.pairs.size() ? dec.pairs[i].first : kPi;
        interlaced = roots[i].alpha > prev_pole && roots[i].alpha <= next_pole &&
                     (i == 0 || roots[i].alpha > roots[i - 1].alpha);
        prev_pole = next_pole;
    }
    gate.report(3, "secular roots vs dense oracle and interlacing",
                worst <= 1e-9 && interlaced, worst);
}

void criterion4(Gate& gate) {
    GridDims d(16, 16);
    double worst = 0.0;
    for (double s : {0.3, 0.9, auto_s(d)}) {
        FVectors fv = build_F_vectors(d, MarkedConfig(d, 0, 0, s));
        StateVector u0(d);
        u0.amps = apply_cz(uniform_state(d)).amps -
                  std::sqrt(s / ((1.0 - s) * d.N())) * selfloop_state(d).amps;
        worst = std::max({worst, (apply_W(u0).amps - u0.amps).norm(),
                          (apply_F1(u0, fv).amps - u0.amps).norm(),
                          (apply_F2(u0, fv).amps - u0.amps).norm()});
    }
    gate.report(4, "interpolation fixed point under W, F1, F2", worst <= 1e-12, worst);
}

void criterion5(Gate& gate) {
    double worst = 0.0;
    for (int n : {16, 32}) {
        GridDims d(n, n);
        worst = std::max(worst,
                         extract_slow_decomposition(d, auto_s(d)).constraint1_residual);
    }
    gate.report(5, "slow-eigenvector constraint residual", worst <= 1e-9, worst);
}

void criterion6(Gate& gate) {
    bool ok = true;
    double worst = 0.0;
    auto in_band = [&](double v, double lo, double hi) {
        if (!(v >= lo && v <= hi)) {
            ok = false;
            worst = std::max(worst, std::max(lo - v, v - hi));
        }
    };
    for (int n : {16, 32, 64, 128}) {
        GridDims d(n, n);
        double N = double(d.N());
        double lg = std::log(N);
        double s = auto_s(d);
        SecularSummary sum = secular_summary(d, s);
        SlowEigenvectorDecomposition dec = extract_slow_decomposition(d, s);
        in_band(sum.phi1 * std::sqrt(N * lg), 5.0, 20.0);
        in_band((sum.phi1 - sum.beta) * std::sqrt(N) * std::pow(lg, 1.5), 0.0, 13.9);
        in_band(std::abs(dec.a) * std::sqrt(lg), 0.63, 2.51);
        in_band(dec.psi_real_norm * std::sqrt(lg), 0.0, 0.62);
        in_band(sum.g0_sq, 0.5 - 5.0 / std::sqrt(N), 0.5 + 5.0 / std::sqrt(N));
        in_band(sum.g1_sq * lg, 0.0, 0.78);
        in_band((std::sqrt(2.0) - sum.overlap_WF1) * lg, 0.0, 0.31);
        in_band((std::sqrt(2.0) - sum.overlap_WF) * lg, 0.0, 0.21);
        in_band(sum.sum_S0 / (sum.beta * N * lg), 0.04, 0.16);
        in_band(sum.sum_S4 / (sum.beta * sum.beta * N * N), 0.0043, 0.023);
    }
    gate.report(6, "finite-size scaling bands over N in {256..16384}", ok, worst);
}

void criterion7(Gate& gate) {
    struct Golden { int n; double p; };
    // produced once by this code path; see criterion text for the
    // N=64 cross-validation against dense powers
    const Golden goldens[] = {{16, 0.9723896211309685},
                              {32, 0.97405821039687601},
                              {64, 0.97918140004820697}};
    bool ok = true;
    double worst = 0.0;
    double prev_peak = 0.0;
    for (const Golden& g : goldens) {
        GridDims d(g.n, g.n);
        double lg = std::log(double(d.N()));
        RunConfig cfg;
        cfg.dims = d;
        cfg.s = auto_s(d);
        cfg.policy = StepPolicy::Auto;
        SearchTrajectory traj = run_main_walk(cfg);
        double final_p = traj.p_selfloop[traj.steps];
        worst = std::max(worst, std::abs(final_p - g.p));
        if (std::abs(final_p - g.p) > 1e-9) ok = false;
        if (traj.peak_value <= prev_peak) ok = false;
        prev_peak = traj.peak_value;
        if ((1.0 - traj.peak_value) * lg > 0.5) ok = false;
        SearchTrajectory base = run_baseline(cfg);
        double blg = base.peak_value * lg;
        if (blg < 1.4 || blg > 5.6) ok = false;
        if (base.peak_value >= traj.peak_value) ok = false;
    }
    // dense cross-validation at N=64
    GridDims d(8, 8);
    RunConfig cfg;
    cfg.dims = d;
    cfg.s = auto_s(d);
    cfg.policy = StepPolicy::Auto;
    SearchTrajectory traj = run_main_walk(cfg);
    MarkedConfig mc(d, 0, 0, cfg.s);
    Eigen::MatrixXcd U =
        dense_matrix(d, [&](const StateVector& x) { return apply_U(x, mc); });
    Eigen::VectorXcd v = uniform_state(d).amps;
    for (long t = 0; t <= traj.steps; ++t) {
        double diff = std::abs(std::norm(v[d.selfloop()]) - traj.p_selfloop[t]);
        worst = std::max(worst, diff);
        if (diff > 1e-10) ok = false;
        v = U * v;
    }
    gate.report(7, "end-to-end search goldens, monotone peaks, baseline bands", ok,
                worst);
}

void criterion8(Gate& gate) {
    bool ok = true;
    double worst = 0.0;
    for (int n : {16, 64}) {
        GridDims d(n, n);
        AmplificationResult amp = amplify_selfloop_to_marked(d, auto_s(d));
        worst = std::max(worst, std::abs(amp.final_p_marked - amp.closed_form));
        if (std::abs(amp.final_p_marked - amp.closed_form) > 1e-10) ok = false;
        double ratio = amp.steps / std::sqrt(double(d.N()));
        if (ratio < 1.4 || ratio > 1.8) ok = false;
    }
    gate.report(8, "amplification closed form and step-count band", ok, worst);
}

std::string determinism_record() {
    std::ostringstream out;
    GridDims d(16, 16);
    SecularSummary sum = secular_summary(d, auto_s(d));
    RunConfig cfg;
    cfg.dims = d;
    cfg.s = auto_s(d);
    cfg.policy = StepPolicy::Auto;
    SearchTrajectory traj = run_main_walk(cfg);
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %ld\n", sum.phi1, sum.beta,
                  sum.overlap_WF, traj.peak_value, traj.peak_step);
    out << buf;
    StateVector x = random_unit_state(d, 7);
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", x.amps[0].real(), x.amps[0].imag());
    out << buf;
    return out.str();
}

void criterion9(Gate& gate) {
    std::string a = determinism_record();
    std::string b = determinism_record();
    gate.report(9, "repeated runs are byte-identical", a == b, a == b ? 0.0 : 1.0);
}

} // namespace

int main() {
    Gate gate;
    criterion1(gate);
    criterion2(gate);
    criterion3(gate);
    criterion4(gate);
    criterion5(gate);
    criterion6(gate);
    criterion7(gate);
    criterion8(gate);
    criterion9(gate);
    return gate.failures == 0 ? 0 : 1;
}
