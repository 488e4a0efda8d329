#include "latwalk/search.hpp"

#include <cmath>

#include "latwalk/operators.hpp"
#include "latwalk/secular.hpp"

namespace latwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kStepCap = 10'000'000;

void check_mark(GridDims dims, int i, int j) {
    if (i < 0 || i >= dims.n_rows || j < 0 || j >= dims.n_cols)
        throw config_error("marked vertex outside the grid");
}

long capped(long steps) {
    if (steps < 0 || steps > kStepCap)
        throw config_error("step count outside [0, 1e7]");
    return steps;
}

struct Recorder {
    SearchTrajectory traj;
    long marked_index;
    bool peak_on_marked;

    Recorder(long total, long marked, bool on_marked)
        : marked_index(marked), peak_on_marked(on_marked) {
        traj.steps = total;
        traj.p_selfloop.reserve(total + 1);
        traj.p_marked.reserve(total + 1);
        traj.norm_drift.reserve(total + 1);
        traj.peak_value = -1.0;
    }

    void record(const StateVector& state) {
        double pl = std::norm(state.amps[state.dims.selfloop()]);
        double pm = std::norm(state.amps[marked_index]);
        traj.p_selfloop.push_back(pl);
        traj.p_marked.push_back(pm);
        traj.norm_drift.push_back(std::abs(state.norm() - 1.0));
        double v = peak_on_marked ? pm : pl;
        if (v > traj.peak_value) {
            traj.peak_value = v;
            traj.peak_step = long(traj.p_selfloop.size()) - 1;
        }
    }
};

// Every mark is relabeled to the canonical (0, 0): even-even marks by a
// tessellation-preserving translation, odd coordinates by the square
// flips that fix |pi> and the selfloop, so the recorded probabilities
// are unchanged.
struct Resolved {
    MarkedConfig cfg;
    long steps;
    double phi1 = 0.0, beta = 0.0;
};

Resolved resolve(const RunConfig& config, double s, bool intermediate) {
    check_mark(config.dims, config.marked_i, config.marked_j);
    Resolved r{MarkedConfig(config.dims, 0, 0, s), 0};
    switch (config.policy) {
    case StepPolicy::Auto: {
        if (!config.dims.square())
            throw config_error("auto step policy requires a square grid");
        auto f1 = decompose_reflection_state(config.dims, ReflectionTarget::f1, s);
        r.phi1 = smallest_eigenphase(f1).alpha;
        auto f2 = decompose_reflection_state(config.dims, ReflectionTarget::f2, s);
        r.beta = smallest_eigenphase(f2).alpha;
        r.steps = capped(long(kPi / (intermediate ? r.phi1 : r.beta)));
        break;
    }
    case StepPolicy::Fixed:
    case StepPolicy::Sweep:
        r.steps = capped(config.steps);
        break;
    }
    return r;
}

SearchTrajectory finish(Recorder& rec, const Resolved& res) {
    rec.traj.phi1 = res.phi1;
    rec.traj.beta = res.beta;
    return std::move(rec.traj);
}

} // namespace

SearchTrajectory run_main_walk(const RunConfig& config) {
    Resolved res = resolve(config, config.s, false);
    Recorder rec(res.steps, 0, false);
    StateVector state = uniform_state(config.dims);
    rec.record(state);
    for (long t = 0; t < res.steps; ++t) {
        state = apply_U(state, res.cfg);
        rec.record(state);
    }
    return finish(rec, res);
}

SearchTrajectory run_intermediate_walk(const RunConfig& config) {
    Resolved res = resolve(config, config.s, true);
    FVectors fv = build_F_vectors(config.dims, res.cfg);
    Recorder rec(res.steps, 0, false);
    StateVector state = apply_cz(uniform_state(config.dims));
    rec.record(state);
    for (long t = 0; t < res.steps; ++t) {
        state = apply_W(apply_F1(state, fv));
        rec.record(state);
    }
    return finish(rec, res);
}

SearchTrajectory run_baseline(const RunConfig& config) {
    RunConfig base = config;
    if (base.policy == StepPolicy::Auto) {
        // the s = 1 peak arrives later than pi/beta; sweep past it
        Resolved probe = resolve(config, InterpolationParams::auto_s(config.dims.N()), false);
        base.policy = StepPolicy::Sweep;
        base.steps = capped(4 * probe.steps);
        Resolved res{MarkedConfig(config.dims, 0, 0, 1.0), base.steps, probe.phi1, probe.beta};
        Recorder rec(res.steps, 0, true);
        StateVector state = uniform_state(config.dims);
        rec.record(state);
        for (long t = 0; t < res.steps; ++t) {
            state = apply_U(state, res.cfg);
            rec.record(state);
        }
        return finish(rec, res);
    }
    Resolved res = resolve(base, 1.0, false);
    Recorder rec(res.steps, 0, true);
    StateVector state = uniform_state(config.dims);
    rec.record(state);
    for (long t = 0; t < res.steps; ++t) {
        state = apply_U(state, res.cfg);
        rec.record(state);
    }
    return finish(rec, res);
}

AmplificationResult amplify_selfloop_to_marked(GridDims dims, double s) {
    if (!(s > 0.0 && s < 1.0))
        throw config_error("amplification needs s in (0, 1)");
    double xi = std::asin(std::sqrt(1.0 - s));
    MarkedConfig cfg(dims, 0, 0, s);

    AmplificationResult out;
    out.steps = capped(long((kPi / 2.0) / xi));
    StateVector state = selfloop_state(dims);
    for (long t = 0; t < out.steps; ++t) {
        if (t % 2 == 0) {
            state = apply_Gt(state, cfg);
        } else {
            state.loop() = -state.loop();
        }
    }
    out.final_p_marked = std::norm(state.at(0, 0));
    out.closed_form = std::pow(std::sin(2.0 * ((out.steps + 1) / 2) * xi), 2);
    out.leakage = 1.0 - out.final_p_marked - std::norm(state.loop());
    return out;
}

} // namespace latwalk
