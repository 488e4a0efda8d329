#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latwalk/operators.hpp"
#include "latwalk/search.hpp"
#include "latwalk/secular.hpp"
#include "latwalk/spectra.hpp"

using namespace latwalk;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    std::string mode;
    int rows = 8, cols = 8;
    std::string marked = "0,0";
    std::string s = "auto";
    std::string steps = "auto";
    std::string out = "-";
    std::string format = "json";
    unsigned long seed = 1;
    std::vector<int> sweep;
};

void parse_marked(const std::string& text, int& i, int& j) {
    std::istringstream in(text);
    char comma = 0;
    if (!(in >> i >> comma >> j) || comma != ',' || !in.eof())
        throw config_error("marked must be of the form i,j");
}

double resolve_s(const std::string& text, long N) {
    if (text == "auto") return InterpolationParams::auto_s(N);
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !(v > 0.0) || v > 1.0)
        throw config_error("s must be in (0, 1] or \"auto\"");
    return v;
}

void require_square(GridDims d) {
    if (!d.square()) throw config_error("this mode requires rows == cols");
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
    if (!f) throw config_error("cannot open output file " + opt.out);
    f << text;
}

RunConfig make_run_config(const Options& opt, GridDims d) {
    RunConfig cfg;
    cfg.dims = d;
    parse_marked(opt.marked, cfg.marked_i, cfg.marked_j);
    cfg.s = resolve_s(opt.s, d.N());
    if (opt.steps == "auto") {
        cfg.policy = StepPolicy::Auto;
    } else {
        cfg.policy = StepPolicy::Fixed;
        size_t used = 0;
        cfg.steps = std::stol(opt.steps, &used);
        if (used != opt.steps.size())
            throw config_error("steps must be an integer or \"auto\"");
    }
    return cfg;
}

std::string search_json(GridDims d, const RunConfig& cfg, const SearchTrajectory& traj) {
    std::ostringstream out;
    out << "{\"n\":" << d.n_rows << ",\"N\":" << d.N() << ",\"s\":" << num(cfg.s)
        << ",\"policy\":\"" << (cfg.policy == StepPolicy::Auto ? "auto" : "fixed")
        << "\",\"steps\":" << traj.steps << ",\"p_peak\":" << num(traj.peak_value)
        << ",\"peak_step\":" << traj.peak_step << ",\"phi1\":" << num(traj.phi1)
        << ",\"beta\":" << num(traj.beta) << "}\n";
    return out.str();
}

std::string trajectory_csv(const SearchTrajectory& traj) {
    std::ostringstream out;
    out << "step,p_selfloop,p_marked,norm_drift\n";
    long stride = std::max(1L, traj.steps / 10000);
    for (long t = 0; t <= traj.steps; t += stride)
        out << t << ',' << num(traj.p_selfloop[t]) << ',' << num(traj.p_marked[t]) << ','
            << num(traj.norm_drift[t]) << '\n';
    return out.str();
}

int run_search(const Options& opt) {
    GridDims d(opt.rows, opt.cols);
    require_square(d);
    RunConfig cfg = make_run_config(opt, d);
    SearchTrajectory traj = run_main_walk(cfg);
    write_output(opt, opt.format == "csv" ? trajectory_csv(traj) : search_json(d, cfg, traj));
    return 0;
}

int run_spectra(const Options& opt) {
    GridDims d(opt.rows, opt.cols);
    auto subs = enumerate_subspaces(d);
    std::ostringstream out;
    out << "id,theta,dim,conjugate_id,m_kl\n";
    for (size_t i = 0; i < subs.size(); ++i)
        out << i << ',' << num(subs[i].theta) << ',' << subs[i].dim << ','
            << subs[i].conjugate_id << ',' << num(subs[i].m_kl) << '\n';
    write_output(opt, out.str());
    return 0;
}

int run_secular(const Options& opt) {
    GridDims d(opt.rows, opt.cols);
    require_square(d);
    SecularSummary sum = secular_summary(d, resolve_s(opt.s, d.N()));
    std::ostringstream out;
    out << "{\"N\":" << sum.N << ",\"s\":" << num(sum.s) << ",\"phi1\":" << num(sum.phi1)
        << ",\"beta\":" << num(sum.beta) << ",\"g0_sq\":" << num(sum.g0_sq)
        << ",\"g1_sq\":" << num(sum.g1_sq) << ",\"overlap_WF1\":" << num(sum.overlap_WF1)
        << ",\"overlap_WF\":" << num(sum.overlap_WF) << ",\"sum_S0\":" << num(sum.sum_S0)
        << ",\"sum_S4\":" << num(sum.sum_S4) << "}\n";
    write_output(opt, out.str());
    return 0;
}

int run_scaling(const Options& opt) {
    if (opt.sweep.empty()) throw config_error("scaling needs a non-empty --sweep");
    std::ostringstream out;
    out << "N,phi1,beta,phi1_sqrtNlogN,beta_sqrtNlogN,p_peak,one_minus_p_times_logN,"
           "baseline_peak_times_logN\n";
    for (int n : opt.sweep) {
        GridDims d(n, n);
        double N = double(d.N());
        Options local = opt;
        local.rows = local.cols = n;
        local.steps = "auto";
        RunConfig cfg = make_run_config(local, d);
        SearchTrajectory main = run_main_walk(cfg);
        SearchTrajectory base = run_baseline(cfg);
        double root = std::sqrt(N * std::log(N));
        out << d.N() << ',' << num(main.phi1) << ',' << num(main.beta) << ','
            << num(main.phi1 * root) << ',' << num(main.beta * root) << ','
            << num(main.peak_value) << ',' << num((1.0 - main.peak_value) * std::log(N))
            << ',' << num(base.peak_value * std::log(N)) << '\n';
    }
    write_output(opt, out.str());
    return 0;
}

int run_verify(const Options& opt) {
    GridDims d(opt.rows, opt.cols);
    double s = resolve_s(opt.s, d.N());
    MarkedConfig cfg(d, 0, 0, s);
    FVectors fv = build_F_vectors(d, cfg);

    double involutions = 0.0;
    for (unsigned long k = 0; k < 4; ++k) {
        StateVector x = random_unit_state(d, opt.seed + k);
        auto dev = [&](const StateVector& y) {
            return (y.amps - x.amps).norm();
        };
        involutions = std::max({involutions, dev(apply_A(apply_A(x))),
                                dev(apply_B(apply_B(x))),
                                dev(apply_Gt(apply_Gt(x, cfg), cfg)),
                                dev(apply_F1(apply_F1(x, fv), fv)),
                                dev(apply_F2(apply_F2(x, fv), fv))});
    }

    StateVector x = random_unit_state(d, opt.seed);
    double f_split = (apply_F(x, fv).amps - apply_F_direct(x, cfg).amps).norm();
    StateVector u = apply_U(x, cfg);
    StateVector via =
        apply_cz(apply_W(apply_F(apply_cz(x), fv)));
    double conjugation = (u.amps - via.amps).norm();

    double eig_residual = 0.0;
    for (int k = 0; k < d.n_rows / 2; ++k)
        for (int l = 0; l < d.n_cols / 2; ++l)
            for (int br = 0; br < 2; ++br)
                for (int bc = 0; bc < 2; ++bc) {
                    StateVector w = eigenvector_w(d, {k, l, br, bc});
                    Complex ev = std::polar(1.0, label_phase(d, {k, l, br, bc}));
                    eig_residual =
                        std::max(eig_residual, (apply_W(w).amps - ev * w.amps).norm());
                }

    double projections = verify_projection_identities(d).max_deviation;

    std::ostringstream out;
    out << "{\"rows\":" << d.n_rows << ",\"cols\":" << d.n_cols << ",\"s\":" << num(s)
        << ",\"seed\":" << opt.seed << ",\"involution_max\":" << num(involutions)
        << ",\"f_split_max\":" << num(f_split)
        << ",\"conjugation_max\":" << num(conjugation)
        << ",\"eigenvector_residual_max\":" << num(eig_residual)
        << ",\"projection_identity_max\":" << num(projections) << "}\n";
    write_output(opt, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"staggered lattice walk toolkit"};
    Options opt;
    app.add_option("mode", opt.mode, "search | spectra | secular | scaling | verify")
        ->required()
        ->check(CLI::IsMember({"search", "spectra", "secular", "scaling", "verify"}));
    app.add_option("--rows", opt.rows, "grid rows (even)");
    app.add_option("--cols", opt.cols, "grid cols (even)");
    app.add_option("--marked", opt.marked, "marked vertex as i,j");
    app.add_option("--s", opt.s, "selfloop weight in (0,1] or auto");
    app.add_option("--steps", opt.steps, "step count or auto");
    app.add_option("--out", opt.out, "output path, - for stdout");
    app.add_option("--format", opt.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", opt.seed, "seed for random-state checks");
    app.add_option("--sweep", opt.sweep, "grid sides for scaling mode")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // LATWALK_THREADS caps fan-out; runs are serial, so any cap >= 1 holds
    if (const char* t = std::getenv("LATWALK_THREADS")) {
        if (std::atol(t) < 1) {
            std::cerr << "LATWALK_THREADS must be >= 1\n";
            return 2;
        }
    }

    try {
        if (opt.mode == "search") return run_search(opt);
        if (opt.mode == "spectra") return run_spectra(opt);
        if (opt.mode == "secular") return run_secular(opt);
        if (opt.mode == "scaling") return run_scaling(opt);
        return run_verify(opt);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
}
