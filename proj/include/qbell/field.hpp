#pragma once
// Exact modular arithmetic over Z_d for odd prime d, plus the
// number-theoretic constants (Legendre symbol, quadratic Gauss-sum
// phase, roots of unity with rational exponents) used throughout.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qbell {

using cplx = std::complex<double>;

inline bool is_prime(long d) {
    if (d < 2) return false;
    for (long k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

// Validated prime dimension. d = 2 is allowed only for the qubit
// correspondence paths; everything else requires an odd prime.
struct PrimeDim {
    int d;
    explicit PrimeDim(int dim) : d(dim) {
        if (!is_prime(d))
            throw std::invalid_argument("dimension " + std::to_string(d) + " is not prime");
    }
    operator int() const { return d; }
};

inline void require_prime(int d) { (void)PrimeDim(d); }

inline long mod(long a, long d) {
    long r = a % d;
    return r < 0 ? r + d : r;
}

inline long pow_mod(long b, long e, long m) {
    long r = 1;
    b = mod(b, m);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
    }
    return r;
}

inline long inv_mod(long k, long d) {
    if (mod(k, d) == 0) throw std::domain_error("inv_mod of 0");
    return pow_mod(k, d - 2, d);
}

// Legendre symbol via Euler's criterion: 0 for k ≡ 0, +1 for nonzero
// quadratic residues, -1 otherwise.
inline int legendre(long k, long d) {
    k = mod(k, d);
    if (k == 0) return 0;
    return pow_mod(k, (d - 1) / 2, d) == 1 ? 1 : -1;
}

// Exponent of omega = exp(2*pi*i/d) as a reduced rational num/den.
struct Rational {
    long num = 0;
    long den = 1;
    Rational() = default;
    Rational(long n, long de = 1) : num(n), den(de) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    double value() const { return double(num) / double(den); }
    bool is_integer() const { return den == 1; }
    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// omega^e for rational exponent e, with integer exponents reduced mod d
// first so long character sums do not accumulate phase error.
inline cplx omega_pow(Rational e, int d) {
    double x = e.is_integer() ? double(mod(e.num, d))
                              : double(mod(e.num, (long)d * e.den)) / double(e.den);
    return std::polar(1.0, 2.0 * std::numbers::pi * x / d);
}

inline cplx omega_pow(long e, int d) { return omega_pow(Rational(e), d); }

// epsilon_d with sum_k omega^{k^2} = epsilon_d * sqrt(d), computed
// numerically rather than via the d mod 4 case rule (self-verifying).
inline cplx gauss_phase(int d) {
    cplx s = 0;
    for (long k = 0; k < d; ++k) s += omega_pow(k * k, d);
    return s / std::sqrt(double(d));
}

} // namespace qbell
