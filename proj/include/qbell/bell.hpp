#pragma once
// Constructors for the Bell operator families and their quantum
// expectation values.

#include <optional>

#include "phase_space.hpp"

namespace qbell {

// One local factor of a term: dense matrix plus the measurement-setting
// id and character power used by the deterministic-strategy enumerator.
// power = 0 marks a constant (identity) factor.
struct LocalOp {
    Mat mat;
    int setting = 0;
    int power = 1;
};

struct Term {
    cplx coeff;
    std::vector<LocalOp> locals;
    std::vector<PhasePoint> points; // displacement labels where applicable
};

struct BellOperator {
    int d = 3, n = 2;
    Mat matrix;
    std::vector<Term> terms;
    std::vector<int> settings_per_party;

    Mat expansion() const {
        Eigen::Index dim = 1;
        if (terms.empty())
            dim = matrix.rows();
        else
            for (auto& l : terms.front().locals) dim *= l.mat.rows();
        Mat M = Mat::Zero(dim, dim);
        for (auto& t : terms) {
            std::vector<Mat> fs;
            fs.reserve(t.locals.size());
            for (auto& l : t.locals) fs.push_back(l.mat);
            M += t.coeff * tensor(fs);
        }
        return M;
    }

    double expect(const Mat& rho) const { return (matrix * rho).trace().real(); }
    double expect(const Vec& psi) const { return (psi.adjoint() * matrix * psi)(0).real(); }

    size_t nonzero_terms(double tol = 1e-12) const {
        size_t c = 0;
        for (auto& t : terms) c += std::abs(t.coeff) > tol;
        return c;
    }
};

// Distinct joint measurement settings, classifying each displacement
// label by its commuting group r(u).
inline size_t joint_setting_count(const BellOperator& B) {
    std::vector<std::pair<int, int>> seen;
    for (auto& t : B.terms) {
        if (t.points.size() != 2 || std::abs(t.coeff) < 1e-12) continue;
        if (t.points[0] == PhasePoint{0, 0} && t.points[1] == PhasePoint{0, 0}) continue;
        std::pair<int, int> key{setting_r(t.points[0], B.d), setting_r(t.points[1], B.d)};
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) seen.push_back(key);
    }
    return seen.size();
}

// B[rho] = rho expanded in displacement operators with chi/d^2
// coefficients; the reassembled matrix is rho itself.
inline BellOperator bell_from_state(const Mat& rho, int d) {
    PhaseSpaceTable chi = characteristic_fn(rho, 2, d);
    BellOperator B{d, 2, rho, {}, {d + 1, d + 1}};
    double norm = 1.0 / double(d * d);
    for (size_t i = 0; i < chi.size(); ++i) {
        MultiPoint u = chi.point_at(i);
        B.terms.push_back({chi.values[i] * norm,
                           {{displacement(u[0], d), setting_r(u[0], d), u[0].x ? u[0].x : u[0].z},
                            {displacement(u[1], d), setting_r(u[1], d), u[1].x ? u[1].x : u[1].z}},
                           {u[0], u[1]}});
    }
    return B;
}

// Rotated-Bell operator: chi is taken of (U^dag x 1)|Phi> and party 1
// measures the conjugated displacements, so that Tr(B_U rho) is the
// singlet fraction <Phi|rho|Phi> for every rho.
inline BellOperator bell_rotated(const Mat& U, int d) {
    if (!is_unitary(U)) throw std::invalid_argument("bell_rotated: U not unitary");
    Vec psi = rotated_bell(U.adjoint(), d, Side::first);
    PhaseSpaceTable chi = characteristic_fn(psi * psi.adjoint(), 2, d);
    BellOperator B{d, 2, Mat(), {}, {d + 1, d + 1}};
    double norm = 1.0 / double(d * d);
    for (size_t i = 0; i < chi.size(); ++i) {
        if (std::abs(chi.values[i]) < 1e-14) continue;
        MultiPoint u = chi.point_at(i);
        B.terms.push_back({chi.values[i] * norm,
                           {{U * displacement(u[0], d) * U.adjoint(), setting_r(u[0], d), 1},
                            {displacement(u[1], d), setting_r(u[1], d), 1}},
                           {u[0], u[1]}});
    }
    B.matrix = B.expansion();
    return B;
}

// Compact form: only the d^3 stabilizer-support terms (x, z, t), which
// reduces the joint settings from (d+1)^2 to d^2 + 1.
inline BellOperator bell_compact(CubeParams p, int d) {
    if (d < 3) throw std::domain_error("bell_compact needs d >= 3");
    Mat U = cube_unitary(p, d);
    Vec psi = rotated_bell(U.adjoint(), d, Side::first);
    PhaseSpaceTable chi = characteristic_fn(psi * psi.adjoint(), 2, d);
    BellOperator B{d, 2, Mat(), {}, {d + 1, d + 1}};
    double norm = 1.0 / double(d * d);
    for (int x = 0; x < d; ++x)
        for (int z = 0; z < d; ++z)
            for (int t = 0; t < d; ++t) {
                PhasePoint u1{x, z}, u2{x, t};
                cplx c = chi.at({u1, u2}) * norm;
                B.terms.push_back({c,
                                   {{U * displacement(u1, d) * U.adjoint(), setting_r(u1, d), 1},
                                    {displacement(u2, d), setting_r(u2, d), 1}},
                                   {u1, u2}});
            }
    B.matrix = B.expansion();
    return B;
}

// Stabilizer-state generalization: terms run over the full stabilizer
// support shifted by (0,t) on the first qudit, coefficients from the
// characteristic function of (U^dag x 1...)|S>.
inline BellOperator bell_stabilizer(const StabilizerGroup& S, CubeParams p) {
    int d = S.d, n = S.n;
    auto elems = S.closure();
    // entangled across the first-qudit cut: no nontrivial pure-Z
    // first-slot element may stabilize |S>
    for (auto& [u, t] : elems) {
        bool rest_id = u[0].x == 0;
        for (int q = 1; q < n && rest_id; ++q)
            rest_id = u[q].x == 0 && u[q].z == 0;
        if (rest_id && u[0].z != 0)
            throw std::domain_error("state is a product across the first-qudit cut");
    }
    Mat U = cube_unitary(p, d);
    Vec s = stabilizer_state(S);
    std::vector<Mat> rot{U.adjoint()};
    for (int q = 1; q < n; ++q) rot.push_back(Mat::Identity(d, d));
    Vec psi = tensor(rot) * s;
    PhaseSpaceTable chi = characteristic_fn(psi * psi.adjoint(), n, d);
    Eigen::Index dim = psi.size();
    BellOperator B{d, n, Mat::Zero(dim, dim), {}, std::vector<int>(n, d + 1)};
    double norm = 1.0 / double(dim);
    for (auto& [u, tph] : elems)
        for (int t = 0; t < d; ++t) {
            MultiPoint shifted = u;
            shifted[0].z = (int)mod(shifted[0].z + t, d);
            Term term{chi.at(shifted) * norm, {}, {}};
            term.locals.push_back({U * displacement(shifted[0], d) * U.adjoint(),
                                   setting_r(shifted[0], d), 1});
            term.points.push_back(shifted[0]);
            for (int q = 1; q < n; ++q) {
                term.locals.push_back({displacement(u[q], d), setting_r(u[q], d), 1});
                term.points.push_back(u[q]);
            }
            B.terms.push_back(std::move(term));
        }
    B.matrix = B.expansion();
    return B;
}

// Qutrit operator with third-root-of-character spectrum:
// B3 = XxX + w X13xX13 + XxX13 + X13xX + h.c.
inline BellOperator bell_qutrit_noncharacter() {
    const int d = 3;
    auto [X, Z] = pauli_xz(d);
    Mat U = Mat::Zero(d, d);
    U(0, 0) = 1.0;
    U(1, 1) = omega_pow(Rational(2, 3), d);
    U(2, 2) = omega_pow(Rational(1, 3), d);
    Mat X13 = U * X * U.adjoint();
    cplx w = omega_pow(1, d);
    BellOperator B{d, 2, Mat(), {}, {2, 2}};
    auto add = [&](cplx c, const Mat& A, int sa, const Mat& Bm, int sb, int pw) {
        B.terms.push_back({c, {{mat_pow(A, pw), sa, pw}, {mat_pow(Bm, pw), sb, pw}}, {}});
    };
    add(1.0, X, 0, X, 0, 1);
    add(w, X13, 1, X13, 1, 1);
    add(1.0, X, 0, X13, 1, 1);
    add(1.0, X13, 1, X, 0, 1);
    add(1.0, X, 0, X, 0, 2);
    add(std::conj(w), X13, 1, X13, 1, 2);
    add(1.0, X, 0, X13, 1, 2);
    add(1.0, X13, 1, X, 0, 2);
    B.matrix = B.expansion();
    return B;
}

struct CglmpConfig {
    Rational q0{0}, q1{1, 2}, p0{1, 4}, p1{-1, 4};
    std::vector<double> weights; // gamma_k, index k in Z_d, gamma_0 unused

    static std::vector<double> ramp_weights(int d) {
        std::vector<double> g(d, 0.0);
        for (int k = 1; k < d; ++k)
            g[k] = 1.0 - 2.0 * std::min(k, d - k) / double(d - 1);
        return g;
    }
    static std::vector<double> ramp_outcome_weights(int d) {
        std::vector<double> W(d);
        for (int r = 0; r < d; ++r)
            W[r] = 1.0 - 2.0 * std::min(r, d - r) / double(d - 1);
        return W;
    }
    void validate(int d) const {
        if ((int)weights.size() != d) throw std::invalid_argument("weight vector length != d");
        for (int k = 1; k < d; ++k)
            if (std::abs(weights[k] - weights[d - k]) > 1e-12)
                throw std::invalid_argument("weights must satisfy gamma_k = gamma_{-k}");
    }
};

inline CglmpConfig cglmp_default(int d) {
    return {{0}, {1, 2}, {1, 4}, {-1, 4}, CglmpConfig::ramp_weights(d)};
}

// Outcome weights dual to the operator weights: W_r = sum_k gamma_k
// omega^{-kr}, k != 0. The k = 0 Fourier mode of W is a free additive
// constant killed by probability normalization; it is fixed to 0 here,
// which makes the probability functional equal Tr(B_gamma rho) exactly.
inline std::vector<double> cglmp_outcome_weights(const CglmpConfig& cfg, int d) {
    std::vector<double> W(d, 0.0);
    for (int r = 0; r < d; ++r) {
        cplx s = 0;
        for (int k = 1; k < d; ++k) s += cfg.weights[k] * omega_pow(-(long)k * r, d);
        W[r] = s.real();
    }
    return W;
}

// Inverse direction; the dropped constant (mean of W) is returned so
// callers can relate functional and operator values:
// I_W(rho) = Tr(B_gamma rho) + 2 * constant.
inline std::pair<std::vector<double>, double>
cglmp_weights_from_outcome(const std::vector<double>& W, int d) {
    std::vector<double> g(d, 0.0);
    double c0 = 0;
    for (double w : W) c0 += w;
    c0 /= d;
    for (int k = 1; k < d; ++k) {
        cplx s = 0;
        for (int r = 0; r < d; ++r) s += W[r] * omega_pow((long)k * r, d);
        g[k] = s.real() / d;
    }
    return {g, c0};
}

// B_gamma = sum_{k != 0} gamma_k [ X^k_(q0) x (X^k_(p0) + X^k_(p1))
//                                + X^k_(q1) x (X^k_(p0) - X^k_(p1)) ]
// with X_(q) = V_q X V_q^dag. Party 1's rotation carries exponent -q:
// only then do the Bell-state correlators depend on the differences
// p - q, which is what pairs this operator with the outcome functional.
inline BellOperator bell_cglmp(const CglmpConfig& cfg, int d) {
    cfg.validate(d);
    auto [X, Z] = pauli_xz(d);
    auto rotated_pow = [&](Rational q, int k) {
        Mat V = rational_diag(q, d);
        return Mat(V * mat_pow(X, k) * V.adjoint());
    };
    BellOperator B{d, 2, Mat(), {}, {2, 2}};
    for (int k = 1; k < d; ++k) {
        if (std::abs(cfg.weights[k]) < 1e-15) continue;
        Mat A0 = rotated_pow(-cfg.q0, k), A1 = rotated_pow(-cfg.q1, k);
        Mat B0 = rotated_pow(cfg.p0, k), B1 = rotated_pow(cfg.p1, k);
        double g = cfg.weights[k];
        B.terms.push_back({g, {{A0, 0, k}, {B0, 0, k}}, {}});
        B.terms.push_back({g, {{A0, 0, k}, {B1, 1, k}}, {}});
        B.terms.push_back({g, {{A1, 1, k}, {B0, 0, k}}, {}});
        B.terms.push_back({-g, {{A1, 1, k}, {B1, 1, k}}, {}});
    }
    Eigen::Index dim = (Eigen::Index)d * d;
    B.matrix = B.terms.empty() ? Mat::Zero(dim, dim) : B.expansion();
    return B;
}

// The mode-sum value sum_k gamma_k [w^{k(p0-q0)} + w^{k(p1-q0)}
// + w^{k(p0-q1)} - w^{k(p1-q1)}]. Exact for integer phase differences;
// for fractional differences the finite shift operator wraps around
// and the true <Phi|B_gamma|Phi> deviates at order k/d.
inline double cglmp_modes_value(const CglmpConfig& cfg, int d) {
    cplx s = 0;
    for (long k = 1; k < d; ++k) {
        auto m = [&](Rational p, Rational q) {
            return omega_pow(Rational(k * (p - q).num, (p - q).den), d);
        };
        s += cfg.weights[k] * (m(cfg.p0, cfg.q0) + m(cfg.p1, cfg.q0)
                             + m(cfg.p0, cfg.q1) - m(cfg.p1, cfg.q1));
    }
    return s.real();
}

// Measurement bases of the functional. Party 1 measures in
// {V_{-q} |chi_m>}, party 2 in {V_p |chi_{-m}>}, where
// |chi_m> = sum_k omega^{mk} |k>/sqrt(d). These labelings are exactly
// the ones under which sum_m omega^{-km} Pi_m reproduces the operator's
// local powers.
inline Vec cglmp_basis_vector(Rational offset, int m, bool party1, int d) {
    Vec v(d);
    int label = party1 ? m : (int)mod(-m, d);
    Rational off = party1 ? -offset : offset;
    for (int k = 0; k < d; ++k)
        v[k] = omega_pow(Rational((long)label * k * off.den + off.num * k, off.den), d)
             / std::sqrt(double(d));
    return v;
}

// I = sum_r W_r [P(r00 = r) + P(r01 = r) + P(r10 = r) - P(r11 = r)]
// with r_ab = m1 - m2 mod d and W derived from cfg.weights (constant
// fixed to 0, so the value equals Tr(B_gamma rho)).
inline double cglmp_probability_functional(const CglmpConfig& cfg, const Mat& rho, int d) {
    cfg.validate(d);
    std::vector<double> W = cglmp_outcome_weights(cfg, d);
    Rational qs[2] = {cfg.q0, cfg.q1}, ps[2] = {cfg.p0, cfg.p1};
    double total = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double sgn = (a == 1 && b == 1) ? -1.0 : 1.0;
            for (int m1 = 0; m1 < d; ++m1) {
                Vec v1 = cglmp_basis_vector(qs[a], m1, true, d);
                for (int m2 = 0; m2 < d; ++m2) {
                    Vec v2 = cglmp_basis_vector(ps[b], m2, false, d);
                    Vec v = tensor({Mat(v1), Mat(v2)}).col(0);
                    double prob = (v.adjoint() * rho * v)(0).real();
                    total += sgn * W[(size_t)mod(m1 - m2, d)] * prob;
                }
            }
        }
    return total;
}

inline double cglmp_probability_functional(const CglmpConfig& cfg, const Vec& psi, int d) {
    return cglmp_probability_functional(cfg, Mat(psi * psi.adjoint()), d);
}

// Deterministic local bound of the outcome functional by enumeration
// over per-setting outcomes (d^4 assignments).
inline double cglmp_lhv_bound(const std::vector<double>& W, int d) {
    double best = -1e300;
    for (int a0 = 0; a0 < d; ++a0)
        for (int a1 = 0; a1 < d; ++a1)
            for (int b0 = 0; b0 < d; ++b0)
                for (int b1 = 0; b1 < d; ++b1)
                    best = std::max(best, W[(size_t)mod(a0 - b0, d)] + W[(size_t)mod(a0 - b1, d)]
                                        + W[(size_t)mod(a1 - b0, d)] - W[(size_t)mod(a1 - b1, d)]);
    return best;
}

// Term decomposition of the outcome functional itself: the operator of
// the mean-free weight part plus the constant 2 * mean(W) as a
// power-zero term, so a generic deterministic enumeration of it yields
// the functional's local bound.
inline BellOperator cglmp_functional_operator(const std::vector<double>& W,
                                              const CglmpConfig& base, int d) {
    auto [g, c0] = cglmp_weights_from_outcome(W, d);
    CglmpConfig cfg = base;
    cfg.weights = g;
    BellOperator B = bell_cglmp(cfg, d);
    Mat I = Mat::Identity(d, d);
    B.terms.push_back({2.0 * c0, {{I, 0, 0}, {I, 0, 0}}, {}});
    B.matrix += 2.0 * c0 * tensor({I, I});
    return B;
}

// Qubit correspondence: B2 = 1x1 + sz x sz
// - (T sy T^dag x sy + T sx T^dag x sy + T sy T^dag x sx - T sx T^dag x sx)/sqrt(2).
inline BellOperator qubit_chsh_t() {
    const int d = 2;
    Mat sx(2, 2), sy(2, 2), sz(2, 2), T = Mat::Zero(2, 2), I = Mat::Identity(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    sz << 1, 0, 0, -1;
    T(0, 0) = 1.0;
    T(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    Mat Tx = T * sx * T.adjoint(), Ty = T * sy * T.adjoint();
    const double rt2 = std::sqrt(2.0);
    // settings: party 1 {0: TsyT, 1: TsxT, 2: sz}; party 2 {0: sy, 1: sx, 2: sz}
    BellOperator B{d, 2, Mat(), {}, {3, 3}};
    B.terms.push_back({1.0, {{I, 0, 0}, {I, 0, 0}}, {}});
    B.terms.push_back({1.0, {{sz, 2, 1}, {sz, 2, 1}}, {}});
    B.terms.push_back({-1.0 / rt2, {{Ty, 0, 1}, {sy, 0, 1}}, {}});
    B.terms.push_back({-1.0 / rt2, {{Tx, 1, 1}, {sy, 0, 1}}, {}});
    B.terms.push_back({-1.0 / rt2, {{Ty, 0, 1}, {sx, 1, 1}}, {}});
    B.terms.push_back({1.0 / rt2, {{Tx, 1, 1}, {sx, 1, 1}}, {}});
    B.matrix = B.expansion();
    return B;
}

} // namespace qbell
