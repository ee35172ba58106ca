#pragma once
// Characteristic function, discrete Wigner function, phase-point
// operators, negativity volume, closed-form Wigner tables for rotated
// Bell states, and strategy Fourier transforms.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ops.hpp"

namespace qbell {

enum class TableKind { characteristic, wigner };

// Array over Z_d^{2n}; per-qudit sub-index is x*d + z, qudit 1 most
// significant.
struct PhaseSpaceTable {
    int d = 3, n = 1;
    TableKind kind = TableKind::wigner;
    std::vector<cplx> values;

    size_t size() const { return values.size(); }

    size_t index(const MultiPoint& u) const {
        size_t idx = 0;
        for (auto& p : u) idx = idx * d * d + (size_t)p.x * d + p.z;
        return idx;
    }
    MultiPoint point_at(size_t idx) const {
        MultiPoint u(n);
        for (int i = n - 1; i >= 0; --i) {
            u[i].z = int(idx % d); idx /= d;
            u[i].x = int(idx % d); idx /= d;
        }
        return u;
    }
    cplx at(const MultiPoint& u) const { return values[index(u)]; }

    void validate() const {
        if (kind == TableKind::wigner) {
            double imax = 0, sum = 0;
            for (auto& v : values) { imax = std::max(imax, std::abs(v.imag())); sum += v.real(); }
            if (imax > 1e-10) throw std::domain_error("wigner table has imaginary residue");
            if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("wigner table does not sum to 1");
        }
    }
};

namespace detail {
inline size_t pow_sz(int b, int e) {
    size_t r = 1;
    for (int i = 0; i < e; ++i) r *= (size_t)b;
    return r;
}
inline void check_state(const Mat& rho, int n, int d) {
    size_t dim = pow_sz(d, n);
    if ((size_t)rho.rows() != dim || (size_t)rho.cols() != dim)
        throw std::domain_error("operator dimension mismatch");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-8 || !is_hermitian(rho, 1e-8))
        throw std::domain_error("input is not a unit-trace Hermitian operator");
}
} // namespace detail

// chi_u = Tr(rho T_{-u}), evaluated without forming T (the displacement
// is a weighted permutation).
inline PhaseSpaceTable characteristic_fn(const Mat& rho, int n, int d) {
    detail::check_state(rho, n, d);
    PhaseSpaceTable t{d, n, TableKind::characteristic, {}};
    size_t npts = detail::pow_sz(d, 2 * n), dim = detail::pow_sz(d, n);
    t.values.resize(npts);
    for (size_t idx = 0; idx < npts; ++idx) {
        MultiPoint m = neg(t.point_at(idx), d);
        cplx lead = 1.0;
        for (auto& p : m)
            lead *= d == 2 ? std::pow(cplx(0, 1), p.x * p.z)
                           : omega_pow(inv_mod(2, d) * p.x * p.z, d);
        cplx s = 0;
        for (size_t row = 0; row < dim; ++row) {
            size_t col = 0, rr = row;
            cplx ph = lead;
            for (int q = n - 1; q >= 0; --q) {
                size_t k = rr % d; rr /= d;
                ph *= omega_pow((long)m[q].z * (long)k, d);
                col += detail::pow_sz(d, n - 1 - q) * ((k + m[q].x) % d);
            }
            s += rho((Eigen::Index)row, (Eigen::Index)col) * ph;
        }
        t.values[idx] = s;
    }
    return t;
}

// W_u = d^{-2n} sum_v omega^{-[u,v]} chi_v; for n = 2 this is the
// 1/d^2 phase-point normalization.
inline PhaseSpaceTable wigner_from_characteristic(const PhaseSpaceTable& chi) {
    int d = chi.d, n = chi.n;
    PhaseSpaceTable w{d, n, TableKind::wigner, std::vector<cplx>(chi.size())};
    double norm = 1.0 / double(detail::pow_sz(d, 2 * n));
    for (size_t i = 0; i < w.size(); ++i) {
        MultiPoint u = w.point_at(i);
        cplx s = 0;
        for (size_t j = 0; j < chi.size(); ++j) {
            if (std::abs(chi.values[j]) < 1e-15) continue;
            s += omega_pow(-symp(u, chi.point_at(j), d), d) * chi.values[j];
        }
        w.values[i] = s * norm;
    }
    w.validate();
    return w;
}

inline PhaseSpaceTable wigner_fn(const Mat& rho, int n, int d) {
    return wigner_from_characteristic(characteristic_fn(rho, n, d));
}

// A_u = d^{-n} sum_v omega^{[u,v]} T_v, so that W_u = Tr(A_u rho)/d^n.
inline Mat phase_point_op(const MultiPoint& u, int d) {
    int n = (int)u.size();
    size_t dim = detail::pow_sz(d, n), npts = detail::pow_sz(d, 2 * n);
    Mat A = Mat::Zero((Eigen::Index)dim, (Eigen::Index)dim);
    PhaseSpaceTable idx{d, n, TableKind::characteristic, {}};
    for (size_t j = 0; j < npts; ++j) {
        MultiPoint v = idx.point_at(j);
        A += omega_pow(symp(u, v, d), d) * displacement(v, d);
    }
    return A / double(dim);
}

inline double negativity_volume(const PhaseSpaceTable& W) {
    if (W.kind != TableKind::wigner) throw std::domain_error("negativity needs a wigner table");
    double s = 0;
    for (auto& v : W.values) s += std::abs(v.real());
    double N = (s - 1.0) / 2.0;
    return N < 0 && N > -1e-12 ? 0.0 : N;
}

// Setting index r(u) = u_z * u_x^{-1} for u_x != 0, r = d for the
// Z-axis group.
inline int setting_r(PhasePoint u, int d) {
    return u.x != 0 ? (int)mod((long)u.z * inv_mod(u.x, d), d) : d;
}

// Character sum behind the rotated-Bell Wigner values: for d > 3
// S(a1,a3) = sum_k omega^{a3 k^3 + a1 k}; for d = 3 the cubic term is
// replaced by the third-root phases, k running over {-1, 0, 1}.
// Conjugate symmetry k <-> -k makes the sum real.
inline double char_sum(long a1, long a3, int d) {
    cplx s = 0;
    if (d == 3) {
        for (long k = -1; k <= 1; ++k)
            s += omega_pow(Rational(3 * a1 * k + a3 * k, 3), 3);
    } else {
        for (long k = 0; k < d; ++k)
            s += omega_pow(mod(a3 * k % d * k % d * k + a1 * k, d), d);
    }
    return s.real();
}

// Closed-form Wigner table of (U_nu x 1)|Phi>. Nonzero only on the
// d^3 points with matching x-components; there the value is a pure
// character sum in the nu-exponent differences. d = 2 uses the fixed
// qubit T-gate form.
inline PhaseSpaceTable wigner_rotated_bell_closed(CubeParams p, int d) {
    PhaseSpaceTable w{d, 2, TableKind::wigner, {}};
    w.values.assign(detail::pow_sz(d, 4), 0.0);
    if (d == 2) {
        const double rt2 = std::sqrt(2.0);
        for (size_t i = 0; i < w.size(); ++i) {
            MultiPoint u = w.point_at(i);
            double sx = (u[0].x + u[1].x) % 2 ? -1 : 1;
            double sz = (u[0].z + u[1].z) % 2 ? -1 : 1;
            double s1 = u[0].x ? -1 : 1, s2 = u[1].x ? -1 : 1;
            w.values[i] = (1.0 + sx + sz * (1.0 - sx + s1 + s2) / rt2) / 16.0;
        }
        w.validate();
        return w;
    }
    long i2 = inv_mod(2, d);
    double cell = 1.0 / double(detail::pow_sz(d, 3));
    for (size_t i = 0; i < w.size(); ++i) {
        MultiPoint u = w.point_at(i);
        if (u[0].x != u[1].x) continue;
        cplx s = 0;
        for (long v = 0; v < d; ++v) {
            double expo = (double)mod(-(long)(u[0].z + u[1].z) * v, d)
                        + cube_exponent(p, d, mod(u[0].x + i2 * v, d)).value()
                        - cube_exponent(p, d, mod(u[0].x - i2 * v, d)).value();
            s += std::polar(1.0, 2.0 * std::numbers::pi * expo / d);
        }
        w.values[i] = cell * s;
    }
    w.validate();
    return w;
}

struct ScanResult {
    double d2_max_w = 0, d3_min_w = 0;
    long argmax_a1 = 0, argmax_a3 = 1, argmin_a1 = 0, argmin_a3 = 1;
};

// Exhaustive scan over (a1, a3) in Z_d x Z_d^*, which covers all cube
// parameter triples (the d^3-point parameter grid collapses onto these
// d(d-1) character sums).
inline ScanResult extremal_character_scan(int d) {
    if (d < 3) throw std::domain_error("scan needs d >= 3");
    double smax = -1e300, smin = 1e300;
    ScanResult r;
    for (long a3 = 1; a3 < (d == 3 ? 3 : d); ++a3)
        for (long a1 = 0; a1 < d; ++a1) {
            double s = char_sum(a1, a3, d);
            if (s > smax) { smax = s; r.argmax_a1 = a1; r.argmax_a3 = a3; }
            if (s < smin) { smin = s; r.argmin_a1 = a1; r.argmin_a3 = a3; }
        }
    r.d2_max_w = smax / d;
    r.d3_min_w = smin;
    return r;
}

// Negativity volume of the rotated Bell state at cube parameter gamma
// (independent of z and eps, which only shift a1 bijectively).
inline double negativity_by_gamma(int gamma, int d) {
    if (d == 2) return 1.0 / (2.0 * std::sqrt(2.0));
    long a3 = d == 3 ? mod(gamma, 3) : mod(inv_mod(24, d) * gamma, d);
    if (a3 == 0) throw std::domain_error("gamma must be nonzero");
    double s = 0;
    for (long a1 = 0; a1 < d; ++a1) s += std::abs(char_sum(a1, a3, d));
    return (s / d - 1.0) / 2.0;
}

// Minimal phase-point correlator: 1 - (d-1)cos(pi/d) for d >= 5, with the
// d = 3 third-root and d = 2 qubit special cases.
inline double c_min(int d) {
    if (d == 2) return -1.0 / std::sqrt(2.0);
    if (d == 3) return 1.0 + 2.0 * std::cos(8.0 * std::numbers::pi / 9.0);
    return 1.0 - (d - 1) * std::cos(std::numbers::pi / d);
}

// F(alpha)_u = (1/d)[1 + sum_{v != 0} omega^{[u,v] + s alpha_{r(v)}}]
// where v = (s, s r) in the group of setting r. Real by the v <-> -v
// pairing; the identity point carries the fixed value 1.
inline std::vector<double> strategy_fourier(const std::vector<int>& alpha, int d) {
    if ((int)alpha.size() != d + 1) throw std::invalid_argument("alpha needs d+1 entries");
    std::vector<double> F((size_t)d * d);
    for (int ux = 0; ux < d; ++ux)
        for (int uz = 0; uz < d; ++uz) {
            cplx s = 1.0;
            for (int vx = 0; vx < d; ++vx)
                for (int vz = 0; vz < d; ++vz) {
                    if (vx == 0 && vz == 0) continue;
                    PhasePoint v{vx, vz};
                    long sv = vx != 0 ? vx : vz;
                    s += omega_pow(symp({ux, uz}, v, d) + sv * alpha[setting_r(v, d)], d);
                }
            if (std::abs(s.imag()) > 1e-9) throw std::domain_error("strategy transform not real");
            F[(size_t)ux * d + uz] = s.real() / d;
        }
    return F;
}

} // namespace qbell
