#include "latwalk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace latwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// cos(2 pi k / n) with the quarter-period zero made exact.
double cos_tilde(int k, int n) {
    if (4 * k == n) return 0.0;
    return std::cos(2.0 * kPi * k / n);
}

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

} // namespace

SpectralIndex::SpectralIndex(GridDims dims, int k_in, int l_in) : k(k_in), l(l_in) {
    if (k < 0 || k >= dims.n_rows / 2 || l < 0 || l >= dims.n_cols / 2)
        throw config_error("spectral index out of range");
    k_tilde = 2.0 * kPi * k / dims.n_rows;
    l_tilde = 2.0 * kPi * l / dims.n_cols;
    double ck = cos_tilde(k, dims.n_rows);
    double cl = cos_tilde(l, dims.n_cols);
    eps_k = ck >= 0.0 ? 1.0 : -1.0; // sign(0) = +1
    eps_l = cl >= 0.0 ? 1.0 : -1.0;
    p_kl = safe_sqrt(1.0 - ck * ck * cl * cl);
    theta_kl = eps_k * eps_l * std::acos(std::clamp(1.0 - 2.0 * p_kl * p_kl, -1.0, 1.0));
}

EigenvectorComponents::EigenvectorComponents(const SpectralIndex& idx) {
    if (idx.k == 0 && idx.l == 0) {
        r_plus = r_minus = c_plus = c_minus = std::sqrt(2.0);
        s_plus = d_plus = std::sqrt(2.0);
        s_minus = d_minus = 0.0;
        return;
    }
    double sk = std::sin(idx.k_tilde), sl = std::sin(idx.l_tilde);
    double ck = std::cos(idx.k_tilde), cl = std::cos(idx.l_tilde);
    double p = idx.p_kl;
    s_plus = safe_sqrt(1.0 + sl / p);
    d_plus = safe_sqrt(1.0 + sk / p);
    // 1 - sin/p cancels near the top of the band; use
    // p^2 - sin^2(l) = cos^2(l) sin^2(k) instead
    s_minus = idx.eps_l * std::abs(cl * sk) / safe_sqrt(p * (p + sl));
    d_minus = idx.eps_k * std::abs(ck * sl) / safe_sqrt(p * (p + sk));
    r_plus = s_plus + s_minus;
    r_minus = s_plus - s_minus;
    c_plus = d_plus + d_minus;
    c_minus = d_plus - d_minus;
}

double eigenphase(GridDims dims, int k, int l) {
    return SpectralIndex(dims, k, l).theta_kl;
}

double label_phase(GridDims dims, const EigLabel& label) {
    if (label.B_row != label.B_col) return 0.0;
    double theta = eigenphase(dims, label.k, label.l);
    return label.B_row == 0 ? theta : -theta;
}

StateVector eigenvector_w(GridDims dims, const EigLabel& label) {
    if (label.B_row < 0 || label.B_row > 1 || label.B_col < 0 || label.B_col > 1)
        throw config_error("invalid eigenvector label");
    SpectralIndex idx(dims, label.k, label.l);
    EigenvectorComponents comp(idx);

    // 2-periodic factors: r for B=0, XZ r for B=1
    double r0 = 0.5 * comp.r_minus, r1 = 0.5 * comp.r_plus;
    if (label.B_row == 1) { double t = r0; r0 = -r1; r1 = t; }
    double c0 = 0.5 * comp.c_minus, c1 = 0.5 * comp.c_plus;
    if (label.B_col == 1) { double t = c0; c0 = -c1; c1 = t; }

    int nr = dims.n_rows, nc = dims.n_cols;
    Eigen::VectorXcd u(nr), v(nc);
    double fr = std::sqrt(2.0 / nr), fc = std::sqrt(2.0 / nc);
    for (int i = 0; i < nr; ++i)
        u[i] = fr * std::polar(1.0, 2.0 * kPi * i * label.k / nr) * (i % 2 ? r1 : r0);
    for (int j = 0; j < nc; ++j)
        v[j] = fc * std::polar(1.0, 2.0 * kPi * j * label.l / nc) * (j % 2 ? c1 : c0);

    StateVector w(dims);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            w.at(i, j) = u[i] * v[j];
    return w;
}

namespace {

// 00-labels of a subspace determine its identity; 11-labels determine
// its conjugate. Key = lexicographically smallest (k,l).
std::pair<int, int> lexmin_pair(const std::vector<EigLabel>& labels, int B) {
    std::pair<int, int> best{-1, -1};
    for (const auto& lab : labels)
        if (lab.B_row == B && lab.B_col == B) {
            std::pair<int, int> p{lab.k, lab.l};
            if (best.first < 0 || p < best) best = p;
        }
    return best;
}

void push_unique(std::vector<EigLabel>& labels, EigLabel lab) {
    for (const auto& e : labels)
        if (e.k == lab.k && e.l == lab.l && e.B_row == lab.B_row && e.B_col == lab.B_col)
            return;
    labels.push_back(lab);
}

} // namespace

std::vector<SubspaceDescriptor> enumerate_subspaces(GridDims dims) {
    int nr = dims.n_rows, nc = dims.n_cols;
    long N = dims.N();
    auto kprime = [nr](int k) { return k == 0 ? 0 : nr / 2 - k; };
    auto lprime = [nc](int l) { return l == 0 ? 0 : nc / 2 - l; };

    std::vector<SubspaceDescriptor> subs;

    SubspaceDescriptor zero;
    for (int k = 0; k < nr / 2; ++k)
        for (int l = 0; l < nc / 2; ++l) {
            zero.labels.push_back({k, l, 0, 1});
            zero.labels.push_back({k, l, 1, 0});
        }
    zero.labels.push_back({0, 0, 0, 0});
    zero.labels.push_back({0, 0, 1, 1});
    zero.contains_selfloop = true;
    zero.theta = 0.0;
    zero.dim = static_cast<int>(zero.labels.size()) + 1;
    subs.push_back(std::move(zero));

    for (int l = 1; l < nc / 2; ++l) { // k = 0 row
        SubspaceDescriptor d;
        d.labels.push_back({0, l, 0, 0});
        push_unique(d.labels, {0, lprime(l), 1, 1});
        d.theta = eigenphase(dims, 0, l);
        subs.push_back(std::move(d));
    }
    for (int k = 1; k < nr / 2; ++k) { // l = 0 column
        SubspaceDescriptor d;
        d.labels.push_back({k, 0, 0, 0});
        push_unique(d.labels, {kprime(k), 0, 1, 1});
        d.theta = eigenphase(dims, k, 0);
        subs.push_back(std::move(d));
    }
    for (int k = 1; k < nr / 2; ++k)
        for (int l = 1; l < nc / 2; ++l) {
            int kp = kprime(k), lp = lprime(l);
            if (std::make_pair(kp, lp) < std::make_pair(k, l)) continue;
            SubspaceDescriptor d;
            push_unique(d.labels, {k, l, 0, 0});
            push_unique(d.labels, {kp, lp, 0, 0});
            push_unique(d.labels, {kp, l, 1, 1});
            push_unique(d.labels, {k, lp, 1, 1});
            d.theta = eigenphase(dims, k, l);
            subs.push_back(std::move(d));
        }

    std::map<std::pair<int, int>, int> by_key;
    for (size_t i = 0; i < subs.size(); ++i) {
        auto& d = subs[i];
        if (d.dim == 0) d.dim = static_cast<int>(d.labels.size());
        d.m_kl = i == 0 ? 0.0 : std::sqrt(2.0 * d.dim / N);
        if (i > 0) by_key[lexmin_pair(d.labels, 0)] = static_cast<int>(i);
    }
    subs[0].conjugate_id = 0;
    for (size_t i = 1; i < subs.size(); ++i)
        subs[i].conjugate_id = by_key.at(lexmin_pair(subs[i].labels, 1));
    return subs;
}

long closed_form_subspace_count(GridDims dims) {
    long nr = dims.n_rows, nc = dims.n_cols;
    if ((nc / 2) % 2 == 1)
        return (nr + 2) * (nc - 2) / 8 + 1;
    return (nr + 2) * nc / 8 + nr / 4 - 1;
}

StateVector project(const StateVector& state, GridDims dims,
                    const SubspaceDescriptor& subspace) {
    StateVector out(dims);
    for (const auto& lab : subspace.labels) {
        StateVector w = eigenvector_w(dims, lab);
        out.amps += w.amps.dot(state.amps) * w.amps;
    }
    if (subspace.contains_selfloop)
        out.amps[dims.selfloop()] += state.amps[dims.selfloop()];
    return out;
}

ProjectionReport verify_projection_identities(GridDims dims) {
    long N = dims.N();
    auto subs = enumerate_subspaces(dims);

    StateVector g = basis_state(dims, 0, 0);
    StateVector a00(dims);
    a00.at(0, 0) = a00.at(0, 1) = a00.at(1, 0) = a00.at(1, 1) = 0.5;
    StateVector kplus(dims), kminus(dims);
    kplus.amps = (g.amps + a00.amps) / std::sqrt(3.0);
    kminus.amps = g.amps - a00.amps;

    ProjectionReport rep;
    for (size_t i = 0; i < subs.size(); ++i) {
        StateVector pp = project(kplus, dims, subs[i]);
        StateVector pm = project(kminus, dims, subs[i]);
        rep.orthogonality = std::max(rep.orthogonality, std::abs(inner(pp, pm)));

        double np = std::pow(pp.norm(), 2), nm = std::pow(pm.norm(), 2);
        double want_p = i == 0 ? 2.0 * (N + 2) / (3.0 * N)
                               : 2.0 * subs[i].dim / (3.0 * N);
        double want_m = i == 0 ? 4.0 / N : 2.0 * subs[i].dim / N;
        rep.norm_plus = std::max(rep.norm_plus, std::abs(np - want_p));
        rep.norm_minus = std::max(rep.norm_minus, std::abs(nm - want_m));

        Complex cross = inner(g, project(a00, dims, subs[i]));
        double want_c = i == 0 ? 0.5 : 0.0;
        rep.cross_term = std::max(rep.cross_term, std::abs(cross - want_c));
    }
    rep.g_self = std::abs(inner(g, project(g, dims, subs[0])).real() -
                          (N + 4.0) / (2.0 * N));
    rep.max_deviation = std::max({rep.orthogonality, rep.cross_term, rep.norm_plus,
                                  rep.norm_minus, rep.g_self});
    return rep;
}

} // namespace latwalk
