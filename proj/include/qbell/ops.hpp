#pragma once
// Dense complex operators on (C^d)^{tensor n}: Pauli/displacement
// operators, cube unitaries, rational-phase diagonals, stabilizer
// states, rotated Bell states.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "field.hpp"

namespace qbell {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct PhasePoint {
    int x = 0, z = 0;
    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

// One phase point per qudit; party 1 owns the most significant tensor index.
using MultiPoint = std::vector<PhasePoint>;

inline PhasePoint neg(PhasePoint u, int d) {
    return {(int)mod(-u.x, d), (int)mod(-u.z, d)};
}

inline MultiPoint neg(const MultiPoint& u, int d) {
    MultiPoint r(u.size());
    for (size_t i = 0; i < u.size(); ++i) r[i] = neg(u[i], d);
    return r;
}

inline long symp(PhasePoint u, PhasePoint v, int d) {
    return mod((long)u.z * v.x - (long)u.x * v.z, d);
}

inline long symp(const MultiPoint& u, const MultiPoint& v, int d) {
    long s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += symp(u[i], v[i], d);
    return mod(s, d);
}

inline std::pair<Mat, Mat> pauli_xz(int d) {
    Mat X = Mat::Zero(d, d), Z = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        X((k + 1) % d, k) = 1.0;
        Z(k, k) = omega_pow(k, d);
    }
    return {X, Z};
}

// Heisenberg-Weyl displacement T_u = omega^{2^{-1} x z} X^x Z^z for odd
// prime d; for d = 2 the phase is i^{xz} (so (1,1) is the Pauli Y).
inline Mat displacement(PhasePoint u, int d) {
    int x = (int)mod(u.x, d), z = (int)mod(u.z, d);
    cplx ph = d == 2 ? std::pow(cplx(0, 1), x * z)
                     : omega_pow(inv_mod(2, d) * x * z, d);
    Mat T = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        T((k + x) % d, k) = ph * omega_pow((long)z * k, d);
    return T;
}

inline Mat tensor(const std::vector<Mat>& ops) {
    if (ops.empty()) throw std::domain_error("tensor of empty list");
    Mat M = ops[0];
    for (size_t i = 1; i < ops.size(); ++i) {
        Mat K(M.rows() * ops[i].rows(), M.cols() * ops[i].cols());
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            for (Eigen::Index c = 0; c < M.cols(); ++c)
                K.block(r * ops[i].rows(), c * ops[i].cols(),
                        ops[i].rows(), ops[i].cols()) = M(r, c) * ops[i];
        M = std::move(K);
    }
    return M;
}

inline Mat displacement(const MultiPoint& u, int d) {
    std::vector<Mat> fs;
    fs.reserve(u.size());
    for (auto& p : u) fs.push_back(displacement(p, d));
    return tensor(fs);
}

inline Mat mat_pow(const Mat& M, long k) {
    Mat R = Mat::Identity(M.rows(), M.cols());
    for (long i = 0; i < k; ++i) R = R * M;
    return R;
}

inline bool is_unitary(const Mat& U, double tol = 1e-10) {
    return (U * U.adjoint() - Mat::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() < tol;
}

inline bool is_hermitian(const Mat& M, double tol = 1e-10) {
    return (M - M.adjoint()).cwiseAbs().maxCoeff() < tol;
}

struct CubeParams {
    int gamma = 1, z = 0, eps = 0;
};

// Exponent nu_k of the cube unitary's diagonal. For d > 3 this is an
// integer mod d; for d = 3 it is a rational with denominator 3 (third
// roots of the characters).
inline Rational cube_exponent(CubeParams p, int d, long k) {
    if (d == 3)
        return Rational(mod(6L * p.z * k * k + 2L * p.gamma * k + 3L * k * p.eps, 3L * d), 3);
    long i12 = inv_mod(12, d);
    long e = mod(i12 * k % d * mod(p.gamma + k * mod(6L * p.z + (2 * k + 3) * p.gamma, d), d)
                 + (long)p.eps * k, d);
    return Rational(e);
}

inline Mat cube_unitary(CubeParams p, int d) {
    if (d == 2) throw std::domain_error("cube unitary needs d >= 3");
    if (mod(p.gamma, d) == 0) throw std::invalid_argument("gamma must be nonzero");
    Mat U = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) U(k, k) = omega_pow(cube_exponent(p, d, k), d);
    return U;
}

// V_q = sum_k omega^{k q} |k><k| for rational q.
inline Mat rational_diag(Rational q, int d) {
    Mat V = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) V(k, k) = omega_pow(Rational(q.num * k, q.den), d);
    return V;
}

inline Vec bell_state(int d) {
    Vec v = Vec::Zero((Eigen::Index)d * d);
    for (int k = 0; k < d; ++k) v[(Eigen::Index)k * d + k] = 1.0 / std::sqrt(double(d));
    return v;
}

enum class Side { first, second };

inline Vec rotated_bell(const Mat& U, int d, Side side = Side::first) {
    if (!is_unitary(U, 1e-8)) throw std::invalid_argument("rotated_bell: U not unitary");
    Mat I = Mat::Identity(d, d);
    Mat M = side == Side::first ? tensor({U, I}) : tensor({I, U});
    return M * bell_state(d);
}

// Stabilizer group by generators (phase-space point, phase exponent t),
// meaning the group element omega^t T_u. Closure is computed lazily by
// multiplying out generator powers and reading the accumulated phase
// off the product matrix (the dimensions involved are tiny).
struct StabilizerGroup {
    int d = 3, n = 1;
    std::vector<std::pair<MultiPoint, int>> generators;

    StabilizerGroup(int dim, int qudits, std::vector<std::pair<MultiPoint, int>> gens)
        : d(dim), n(qudits), generators(std::move(gens)) {
        for (auto& [u, t] : generators) {
            if ((int)u.size() != n) throw std::invalid_argument("generator arity mismatch");
            (void)t;
        }
        for (size_t i = 0; i < generators.size(); ++i)
            for (size_t j = i + 1; j < generators.size(); ++j)
                if (symp(generators[i].first, generators[j].first, d) != 0)
                    throw std::invalid_argument("generators do not commute");
    }

    Mat element_matrix(const MultiPoint& u, int t) const {
        return omega_pow(t, d) * displacement(u, d);
    }

    // All d^g products of generator powers as (point, phase exponent).
    // The phase of each product is recovered numerically from the matrix.
    std::vector<std::pair<MultiPoint, int>> closure() const {
        size_t g = generators.size();
        std::vector<long> counter(g, 0);
        std::vector<std::pair<MultiPoint, int>> out;
        Eigen::Index dim = 1;
        for (int i = 0; i < n; ++i) dim *= d;
        for (;;) {
            MultiPoint u(n);
            Mat M = Mat::Identity(dim, dim);
            for (size_t i = 0; i < g; ++i) {
                for (long c = 0; c < counter[i]; ++c)
                    M = M * element_matrix(generators[i].first, generators[i].second);
                for (int q = 0; q < n; ++q) {
                    u[q].x = (int)mod(u[q].x + counter[i] * generators[i].first[q].x, d);
                    u[q].z = (int)mod(u[q].z + counter[i] * generators[i].first[q].z, d);
                }
            }
            Mat ref = displacement(u, d);
            // M = omega^t * T_u; find t from any entry of maximal modulus
            Eigen::Index r = 0, c = 0;
            ref.cwiseAbs().maxCoeff(&r, &c);
            cplx ratio = M(r, c) / ref(r, c);
            int t = (int)mod(std::lround(std::arg(ratio) * d / (2 * std::numbers::pi)), d);
            out.push_back({u, t});
            size_t i = 0;
            while (i < g && ++counter[i] == d) counter[i++] = 0;
            if (i == g) break;
        }
        return out;
    }
};

// Unique joint +1 eigenstate via the projector product
// prod_g (1/d) sum_k S_g^k applied to a reference vector.
inline Vec stabilizer_state(const StabilizerGroup& S) {
    Eigen::Index dim = 1;
    for (int i = 0; i < S.n; ++i) dim *= S.d;
    Mat P = Mat::Identity(dim, dim);
    for (auto& [u, t] : S.generators) {
        Mat g = S.element_matrix(u, t);
        Mat proj = Mat::Zero(dim, dim), gk = Mat::Identity(dim, dim);
        for (int k = 0; k < S.d; ++k) {
            proj += gk;
            gk = gk * g;
        }
        P = P * (proj / double(S.d));
    }
    for (Eigen::Index ref = 0; ref < dim; ++ref) {
        Vec v = P.col(ref);
        double nrm = v.norm();
        if (nrm > 1e-8) return v / nrm;
    }
    throw std::domain_error("inconsistent stabilizer generators: projector vanishes");
}

} // namespace qbell
