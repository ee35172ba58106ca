#pragma once
// Non-contextual and local-deterministic bounds: exact enumeration for
// small d, simulated annealing on the character-sum landscape for
// larger d.

#include <chrono>
#include <string>

#include "bell.hpp"
#include "rng.hpp"

namespace qbell {

// Non-contextual bound d^n max_u |W_u|: the best any single joint
// phase-point assignment can score against coefficients W.
inline double nc_bound(const PhaseSpaceTable& W) {
    if (W.kind != TableKind::wigner) throw std::domain_error("nc_bound needs a wigner table");
    double m = 0;
    for (auto& v : W.values) m = std::max(m, std::abs(v.real()));
    return double(detail::pow_sz(W.d, W.n)) * m;
}

struct LhvResult {
    double bound = 0;
    std::vector<int> alpha, beta; // one entry per measurement group, Z-group last
    std::string method;
    int restarts = 1;
    uint64_t seed = 0;
    double wall_ms = 0;
};

namespace detail {

// Local index of the nonidentity point s * (1, r) of group r (or (0,s)
// for the Z group r = d): groups 0..d, s = 1..d-1.
inline size_t group_pt(int r, int s, int d) { return (size_t)r * (d - 1) + s - 1; }

inline PhasePoint point_of(int r, int s, int d) {
    return r < d ? PhasePoint{s, (int)mod((long)s * r, d)} : PhasePoint{0, s};
}

} // namespace detail

// Exact local-deterministic bound of the two-party Bell operator with
// coefficients chi_{u1,u2}/d^2, by exhaustive enumeration of party-1
// character assignments alpha in Z_d^{d+1} (value of s*(1,r) is
// omega^{s alpha_r}); party 2's best response is maximized in closed
// form per group. Feasible through d = 7.
inline LhvResult lhv_exact(const PhaseSpaceTable& chi, int d) {
    if (chi.kind != TableKind::characteristic || chi.n != 2 || chi.d != d)
        throw std::invalid_argument("lhv_exact needs a bipartite characteristic table");
    if (d > 7) throw std::domain_error("exact enumeration budget exceeded for d > 7");
    auto t_start = std::chrono::steady_clock::now();
    const int G = d + 1, S = d - 1;
    const size_t npts = (size_t)G * S; // nonidentity party-2 points
    const double norm = 1.0 / double(d * d);

    // base[q] / base_id: party-1 identity contribution to each party-2 point
    // P[r][a][q]: contribution of party-1 group r at assignment a
    std::vector<cplx> base(npts);
    cplx base_id = chi.at({{0, 0}, {0, 0}}) * norm;
    std::vector<std::vector<std::vector<cplx>>> P(
        G, std::vector<std::vector<cplx>>(d, std::vector<cplx>(npts)));
    std::vector<cplx> Pid(G * (size_t)d);
    for (int r2 = 0; r2 <= d; ++r2)
        for (int s2 = 1; s2 < d; ++s2) {
            PhasePoint u2 = detail::point_of(r2, s2, d);
            base[detail::group_pt(r2, s2, d)] = chi.at({{0, 0}, u2}) * norm;
        }
    for (int r1 = 0; r1 <= d; ++r1)
        for (int a = 0; a < d; ++a) {
            cplx pid = 0;
            for (int s1 = 1; s1 < d; ++s1) {
                PhasePoint u1 = detail::point_of(r1, s1, d);
                cplx w = omega_pow((long)s1 * a, d);
                pid += w * chi.at({u1, {0, 0}}) * norm;
                auto& row = P[r1][a];
                for (int r2 = 0; r2 <= d; ++r2)
                    for (int s2 = 1; s2 < d; ++s2)
                        row[detail::group_pt(r2, s2, d)] +=
                            w * chi.at({u1, detail::point_of(r2, s2, d)}) * norm;
            }
            Pid[(size_t)r1 * d + a] = pid;
        }

    std::vector<std::vector<cplx>> Wb(d, std::vector<cplx>(d)); // omega^{s b}
    for (int b = 0; b < d; ++b)
        for (int s = 1; s < d; ++s) Wb[b][s] = omega_pow((long)s * b, d);

    std::vector<int> alpha(G, 0);
    std::vector<cplx> g(npts);
    cplx g_id = base_id;
    for (size_t q = 0; q < npts; ++q) g[q] = base[q];
    for (int r = 0; r < G; ++r) {
        g_id += Pid[(size_t)r * d];
        for (size_t q = 0; q < npts; ++q) g[q] += P[r][0][q];
    }

    LhvResult res{-1e300, {}, {}, "exact", 1, 0, 0};
    std::vector<int> beta(G, 0);
    for (;;) {
        double total = g_id.real();
        for (int r2 = 0; r2 < G; ++r2) {
            double bestg = -1e300;
            int bestb = 0;
            const cplx* gr = g.data() + detail::group_pt(r2, 1, d);
            for (int b = 0; b < d; ++b) {
                double v = 0;
                const cplx* w = Wb[b].data();
                for (int s = 1; s < d; ++s)
                    v += gr[s - 1].real() * w[s].real() - gr[s - 1].imag() * w[s].imag();
                if (v > bestg) { bestg = v; bestb = b; }
            }
            total += bestg;
            beta[r2] = bestb;
        }
        if (total > res.bound) {
            res.bound = total;
            res.alpha = alpha;
            res.beta = beta;
        }
        // odometer step with incremental g update
        int r = 0;
        while (r < G) {
            int old = alpha[r], nw = (old + 1) % d;
            alpha[r] = nw;
            g_id += Pid[(size_t)r * d + nw] - Pid[(size_t)r * d + old];
            const auto& pn = P[r][nw];
            const auto& po = P[r][old];
            for (size_t q = 0; q < npts; ++q) g[q] += pn[q] - po[q];
            if (nw != 0) break;
            ++r;
        }
        if (r == G) break;
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start).count();
    return res;
}

// Fourier coefficients of the score landscape of the compact cubed
// Bell operator at the canonical cube parameters:
// C_m = Re[eps_d/(d^2 sqrt d) sum_{n != 0} legendre(-2^{-1} n)
//          omega^{24^{-1}(n - n^3)} omega^{n m}].
inline std::vector<double> build_C(int d) {
    if (d <= 3) throw std::domain_error("build_C needs d >= 5 (24 must be invertible)");
    require_prime(d);
    cplx eps = gauss_phase(d);
    long i2 = inv_mod(2, d), i24 = inv_mod(24, d);
    double norm = 1.0 / (double(d) * d * std::sqrt(double(d)));
    std::vector<double> C(d);
    for (int m = 0; m < d; ++m) {
        cplx s = 0;
        for (long n = 1; n < d; ++n) {
            long ph = mod(i24 * mod(n - n * n % d * n, d), d);
            s += double(legendre(mod(-i2 * n, d), d)) * omega_pow(ph + n * m, d);
        }
        C[m] = (eps * s).real() * norm;
    }
    return C;
}

// Strategy over the d + 1 measurement groups per party; index d is the
// Z group.
struct LocalStrategy {
    std::vector<int> a, b; // length d + 1
};

namespace detail {
inline long e_quad(int i, int d) { return mod((long)i * i - i, d); }
} // namespace detail

// Score of a strategy: sum over the d^2 x-type cells of
// C[e_i + a_{i-j} + b_j] plus the Z-group slot (1/d) delta_{a_d, b_d}.
inline double score(const LocalStrategy& st, const std::vector<double>& C, int d) {
    if ((int)st.a.size() != d + 1 || (int)st.b.size() != d + 1)
        throw std::invalid_argument("strategy needs d+1 slots per party");
    double s = st.a[d] == st.b[d] ? 1.0 / d : 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s += C[mod(detail::e_quad(i, d) + st.a[(size_t)mod(i - j, d)] + st.b[j], d)];
    return s;
}

// Change of score when one slot is reassigned; touches exactly d cells
// (or just the Z slot).
inline double score_delta(const LocalStrategy& st, const std::vector<double>& C, int d,
                          bool party_a, int index, int value) {
    if (index == d) {
        int other = party_a ? st.b[d] : st.a[d];
        int old = party_a ? st.a[d] : st.b[d];
        return ((value == other) - (old == other)) / double(d);
    }
    double delta = 0;
    if (party_a) {
        // a[k] appears in cells (i, j) with i - j = k
        for (int j = 0; j < d; ++j) {
            long e = detail::e_quad((int)mod(j + index, d), d);
            delta += C[mod(e + value + st.b[j], d)] - C[mod(e + st.a[index] + st.b[j], d)];
        }
    } else {
        for (int i = 0; i < d; ++i) {
            long e = detail::e_quad(i, d);
            int ak = st.a[(size_t)mod(i - index, d)];
            delta += C[mod(e + ak + value, d)] - C[mod(e + ak + st.b[index], d)];
        }
    }
    return delta;
}

struct AnnealConfig {
    int restarts = 10000;
    int iters = 100;
    double t0 = 1.5;
    uint64_t seed = 0;
};

// Simulated annealing over strategies. The acceptance test runs on the
// raw character-sum scale (delta * d^2 sqrt d): on the normalized scale
// every move is within a fraction of t0 of neutral and the schedule
// would degenerate into a random walk. The Z slots are pinned equal
// (a_d = b_d = 0), which is always optimal since that slot contributes
// +1/d independently of the rest.
inline LhvResult lhv_anneal(const std::vector<double>& C, int d, const AnnealConfig& cfg) {
    if ((int)C.size() != d) throw std::invalid_argument("coefficient vector length != d");
    auto t_start = std::chrono::steady_clock::now();
    const double scale = double(d) * d * std::sqrt(double(d));
    std::vector<long> e(d);
    for (int i = 0; i < d; ++i) e[i] = detail::e_quad(i, d);

    double global_best = -1e300;
    LocalStrategy global_st;
    std::vector<int> cur(d);
    for (int r = 0; r < cfg.restarts; ++r) {
        SplitMix64 rng(SplitMix64::split(cfg.seed, (uint64_t)r));
        LocalStrategy st{std::vector<int>(d + 1, 0), std::vector<int>(d + 1, 0)};
        for (int i = 1; i < d; ++i) st.a[i] = rng.below(d);
        for (int j = 0; j < d; ++j) st.b[j] = rng.below(d);
        double S = score(st, C, d);
        double best = S;
        LocalStrategy best_st = st;
        for (int t = 1; t <= cfg.iters; ++t) {
            double T = cfg.t0 / (1.0 + t / 5.0);
            for (int pass = 0; pass < 2; ++pass) {
                bool party_a = pass == 0;
                auto& slots = party_a ? st.a : st.b;
                for (int k = 0; k < d; ++k) {
                    double bestD = -1e300;
                    int bestv = slots[k];
                    for (int v = 0; v < d; ++v) {
                        if (v == slots[k]) continue;
                        double dS = score_delta(st, C, d, party_a, k, v);
                        if (dS > bestD) { bestD = dS; bestv = v; }
                    }
                    if (bestD > 0 || rng.uniform() < std::exp(bestD * scale / T)) {
                        slots[k] = bestv;
                        S += bestD;
                        if (S > best) { best = S; best_st = st; }
                    }
                }
            }
        }
        if (best > global_best) {
            global_best = best;
            global_st = best_st;
        }
    }
    double check = score(global_st, C, d);
    if (std::abs(check - global_best) > 1e-9)
        throw std::logic_error("annealer bookkeeping drifted from recomputed score");
    LhvResult res{global_best, global_st.a, global_st.b, "anneal", cfg.restarts, cfg.seed, 0};
    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start).count();
    return res;
}

// Deterministic bound for an arbitrary term-decomposed operator: each
// party assigns an outcome in Z_d per setting; a local factor of power
// k contributes omega^{k m}. Exhaustive over d^{total settings}.
inline double lhv_exact_generic(const BellOperator& B, size_t budget = 100000000) {
    int d = B.d;
    std::vector<int> counts = B.settings_per_party;
    int total = 0;
    for (int c : counts) total += c;
    double combos = std::pow(double(d), total);
    if (combos > double(budget)) throw std::domain_error("enumeration budget exceeded");
    std::vector<int> offset(counts.size(), 0);
    for (size_t p = 1; p < counts.size(); ++p) offset[p] = offset[p - 1] + counts[p - 1];
    std::vector<int> m(total, 0);
    double best = -1e300;
    for (;;) {
        cplx s = 0;
        for (auto& t : B.terms) {
            long ex = 0;
            for (size_t p = 0; p < t.locals.size(); ++p)
                ex += (long)t.locals[p].power * m[offset[p] + t.locals[p].setting];
            s += t.coeff * omega_pow(ex, d);
        }
        best = std::max(best, s.real());
        int i = 0;
        while (i < total && ++m[i] == d) m[i++] = 0;
        if (i == total) break;
    }
    return best;
}

} // namespace qbell
