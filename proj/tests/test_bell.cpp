#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qbell/bounds.hpp"

using namespace qbell;
using Catch::Approx;

namespace {
Mat random_density(int dim, std::mt19937& gen) {
    std::normal_distribution<double> nd;
    Mat G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = cplx(nd(gen), nd(gen));
    Mat rho = G * G.adjoint();
    return rho / rho.trace();
}

Vec random_pure(int dim, std::mt19937& gen) {
    std::normal_distribution<double> nd;
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cplx(nd(gen), nd(gen));
    return v / v.norm();
}

double expansion_defect(const BellOperator& B) {
    return (B.matrix - B.expansion()).cwiseAbs().maxCoeff();
}
} // namespace

TEST_CASE("Bell operator from a state") {
    int d = 3;
    Vec phi = bell_state(d);
    Mat rho = phi * phi.adjoint();
    BellOperator B = bell_from_state(rho, d);
    CHECK((B.matrix - rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(expansion_defect(B) < 1e-10);
    CHECK(B.nonzero_terms() == 9);
    CHECK(B.expect(rho) == Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(bell_from_state(Mat::Identity(9, 9), 3), std::domain_error);
}

TEST_CASE("rotated Bell operator measures the singlet fraction") {
    std::mt19937 gen(13);
    SECTION("unit expectation on the rotated source state") {
        int d = 5;
        std::uniform_int_distribution<int> uz(0, d - 1), ug(1, d - 1);
        for (int trial = 0; trial < 3; ++trial) {
            BellOperator B = bell_rotated(cube_unitary({ug(gen), uz(gen), uz(gen)}, d), d);
            CHECK(expansion_defect(B) < 1e-10);
            CHECK(B.expect(bell_state(d)) == Approx(1.0).margin(1e-9));
        }
    }
    SECTION("reference states") {
        int d = 3;
        BellOperator B = bell_rotated(cube_unitary({1, 0, 0}, d), d);
        CHECK(B.expect(Mat(Mat::Identity(9, 9) / 9.0)) == Approx(1.0 / 9).margin(1e-10));
        Vec v00 = Vec::Unit(9, 0);
        CHECK(B.expect(Mat(v00 * v00.adjoint())) == Approx(1.0 / 3).margin(1e-10));
    }
    SECTION("singlet fraction on random mixed states") {
        Vec phi3 = bell_state(3), phi5 = bell_state(5);
        for (int d : {3, 5}) {
            std::uniform_int_distribution<int> uz(0, d - 1), ug(1, d - 1);
            Vec phi = d == 3 ? phi3 : phi5;
            for (int trial = 0; trial < 20; ++trial) {
                BellOperator B = bell_rotated(cube_unitary({ug(gen), uz(gen), uz(gen)}, d), d);
                Mat rho = random_density(d * d, gen);
                double direct = (phi.adjoint() * rho * phi)(0).real();
                CHECK(std::abs(B.expect(rho) - direct) < 1e-9);
            }
        }
    }
    SECTION("negativity-volume bound") {
        int d = 3;
        std::uniform_int_distribution<int> uz(0, d - 1), ug(1, d - 1);
        for (int trial = 0; trial < 10; ++trial) {
            Mat U = cube_unitary({ug(gen), uz(gen), uz(gen)}, d);
            BellOperator B = bell_rotated(U, d);
            Mat rho = random_density(d * d, gen);
            Mat I = Mat::Identity(d, d);
            Mat rot = tensor({U, I}).adjoint() * rho * tensor({U, I});
            PhaseSpaceTable w = wigner_fn(rot, 2, d);
            double nc = nc_bound(w);
            CHECK(B.expect(rho) <= nc * (1.0 + 2.0 * negativity_volume(w)) + 1e-9);
        }
    }
    CHECK_THROWS_AS(bell_rotated(Mat(2.0 * Mat::Identity(3, 3)), 3), std::invalid_argument);
}

TEST_CASE("compact cubed Bell operator") {
    SECTION("d = 3 has 10 joint settings") {
        BellOperator B = bell_compact({1, 0, 0}, 3);
        CHECK(joint_setting_count(B) == 10);
        CHECK(B.terms.size() == 27);
        CHECK(expansion_defect(B) < 1e-10);
    }
    SECTION("Bell state keeps unit expectation") {
        BellOperator B = bell_compact({1, 0, 0}, 5);
        CHECK(B.expect(bell_state(5)) == Approx(1.0).margin(1e-9));
    }
    SECTION("identity coefficient is the identity characteristic value") {
        int d = 3;
        BellOperator B = bell_compact({2, 1, 0}, d);
        for (auto& t : B.terms)
            if (t.points[0] == PhasePoint{0, 0} && t.points[1] == PhasePoint{0, 0})
                CHECK(std::abs(t.coeff - cplx(1.0 / (d * d))) < 1e-12);
    }
    CHECK_THROWS_AS(bell_compact({1, 0, 0}, 2), std::domain_error);
}

TEST_CASE("stabilizer-state Bell operator") {
    SECTION("Bell-state stabilizer reproduces the compact operator") {
        StabilizerGroup S(3, 2, {{{{1, 0}, {1, 0}}, 0}, {{{0, 1}, {0, 2}}, 0}});
        BellOperator BS = bell_stabilizer(S, {1, 0, 0});
        BellOperator BC = bell_compact({1, 0, 0}, 3);
        CHECK((BS.matrix - BC.matrix).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("qutrit GHZ") {
        StabilizerGroup S(3, 3,
                          {{{{1, 0}, {1, 0}, {1, 0}}, 0},
                           {{{0, 1}, {0, 2}, {0, 0}}, 0},
                           {{{0, 0}, {0, 1}, {0, 2}}, 0}});
        BellOperator B = bell_stabilizer(S, {1, 0, 0});
        CHECK(B.matrix.rows() == 27);
        CHECK(expansion_defect(B) < 1e-10);
        Vec s = stabilizer_state(S);
        CHECK(B.expect(s) == Approx(1.0).margin(1e-9));
        std::mt19937 gen(31);
        for (int trial = 0; trial < 5; ++trial) {
            Vec psi = random_pure(27, gen);
            double overlap = std::norm((s.adjoint() * psi)(0));
            CHECK(B.expect(psi) == Approx(overlap).margin(1e-9));
        }
    }
    SECTION("product state across the first cut is rejected") {
        // |0> x |Phi>: the first-slot Z is a pure-Z stabilizer element
        StabilizerGroup S(3, 3,
                          {{{{0, 1}, {0, 0}, {0, 0}}, 0},
                           {{{0, 0}, {1, 0}, {1, 0}}, 0},
                           {{{0, 0}, {0, 1}, {0, 2}}, 0}});
        CHECK_THROWS_AS(bell_stabilizer(S, {1, 0, 0}), std::domain_error);
    }
}

TEST_CASE("qutrit third-root operator") {
    BellOperator B = bell_qutrit_noncharacter();
    CHECK((B.matrix - B.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(expansion_defect(B) < 1e-10);
    cplx w13 = omega_pow(Rational(1, 3), 3), w23 = omega_pow(Rational(-2, 3), 3);
    cplx pred = 1.0 + 2.0 * w13 + w23;
    double expect = B.expect(bell_state(3));
    CHECK(expect == Approx(2.0 * pred.real()).margin(1e-10));
    CHECK(expect == Approx(5.412).margin(1e-3));
    CHECK(lhv_exact_generic(B) == Approx(5.0).margin(1e-9));
}

TEST_CASE("CGLMP operators and functionals") {
    SECTION("weight validation") {
        CglmpConfig cfg = cglmp_default(5);
        cfg.weights[1] += 0.3; // breaks gamma_k = gamma_{-k}
        CHECK_THROWS_AS(bell_cglmp(cfg, 5), std::invalid_argument);
        cfg.weights = {0, 1, 1};
        CHECK_THROWS_AS(bell_cglmp(cfg, 5), std::invalid_argument);
    }
    SECTION("d = 3 ramp weights annihilate the operator") {
        CglmpConfig cfg = cglmp_default(3);
        BellOperator B = bell_cglmp(cfg, 3);
        CHECK(B.matrix.cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("hermiticity and expansion") {
        BellOperator B = bell_cglmp(cglmp_default(5), 5);
        CHECK((B.matrix - B.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(expansion_defect(B) < 1e-10);
    }
    SECTION("all-equal offsets collapse to 2 sum gamma_k") {
        int d = 5;
        CglmpConfig cfg = cglmp_default(d);
        cfg.weights = {0, 1, 0.5, 0.5, 1}; // ramp weights sum to zero at d = 5
        cfg.q0 = cfg.q1 = cfg.p0 = cfg.p1 = Rational(0);
        // equal q0 = q1 makes the minus pair cancel; remaining terms
        // are X^k x X^k with unit Bell-state correlator
        BellOperator B = bell_cglmp(cfg, d);
        double sum = 0;
        for (double g : cfg.weights) sum += g;
        CHECK(B.expect(bell_state(d)) == Approx(2.0 * sum).margin(1e-10));
        CHECK(cglmp_modes_value(cfg, d) == Approx(2.0 * sum).margin(1e-12));
    }
    SECTION("mode-sum value is exact for integer offsets") {
        int d = 5;
        CglmpConfig cfg{{0}, {1}, {2}, {4}, CglmpConfig::ramp_weights(5)};
        BellOperator B = bell_cglmp(cfg, d);
        CHECK(B.expect(bell_state(d)) == Approx(cglmp_modes_value(cfg, d)).margin(1e-10));
    }
    SECTION("fractional offsets: wrap-corrected correlators, mode sum still violates") {
        int d = 5;
        CglmpConfig cfg = cglmp_default(d);
        BellOperator B = bell_cglmp(cfg, d);
        auto wrap = [&](Rational pq, int k) {
            auto ph = [&](long mult) {
                return std::polar(1.0, 2 * std::numbers::pi * mult * pq.value() / d);
            };
            return (double(d - k) * ph(k) + double(k) * ph(k - d)) / double(d);
        };
        cplx pred = 0;
        for (int k = 1; k < d; ++k)
            pred += cfg.weights[k]
                  * (wrap(cfg.p0 - cfg.q0, k) + wrap(cfg.p1 - cfg.q0, k)
                     + wrap(cfg.p0 - cfg.q1, k) - wrap(cfg.p1 - cfg.q1, k));
        double quantum = B.expect(bell_state(d));
        CHECK(quantum == Approx(pred.real()).margin(1e-10));
        CHECK(quantum > 2.0);
        CHECK(cglmp_modes_value(cfg, d) > 2.0);
    }
    SECTION("operator and probability functional agree on random states") {
        int d = 5;
        std::mt19937 gen(37);
        auto [g, c0] = cglmp_weights_from_outcome(CglmpConfig::ramp_outcome_weights(d), d);
        CglmpConfig cfg = cglmp_default(d);
        cfg.weights = g;
        BellOperator B = bell_cglmp(cfg, d);
        for (int trial = 0; trial < 5; ++trial) {
            Mat rho = random_density(d * d, gen);
            double func = cglmp_probability_functional(cfg, rho, d);
            CHECK(std::abs(func - B.expect(rho)) < 1e-9);
        }
    }
    SECTION("weights and outcome weights are Fourier duals") {
        int d = 7;
        std::vector<double> W = CglmpConfig::ramp_outcome_weights(d);
        auto [g, c0] = cglmp_weights_from_outcome(W, d);
        CglmpConfig cfg = cglmp_default(d);
        cfg.weights = g;
        std::vector<double> W2 = cglmp_outcome_weights(cfg, d);
        for (int r = 0; r < d; ++r) CHECK(W2[r] == Approx(W[r] - c0).margin(1e-12));
    }
    SECTION("ramp local bound is 2, quantum value beats it") {
        for (int d : {3, 5}) {
            std::vector<double> W = CglmpConfig::ramp_outcome_weights(d);
            CHECK(cglmp_lhv_bound(W, d) == Approx(2.0).margin(1e-12));
            auto [g, c0] = cglmp_weights_from_outcome(W, d);
            CglmpConfig cfg = cglmp_default(d);
            cfg.weights = g;
            double quantum = cglmp_probability_functional(cfg, bell_state(d), d) + 2.0 * c0;
            CHECK(quantum > 2.0);
        }
    }
    SECTION("functional term decomposition matches the matrix route") {
        int d = 5;
        std::vector<double> W = CglmpConfig::ramp_outcome_weights(d);
        BellOperator F = cglmp_functional_operator(W, cglmp_default(d), d);
        CHECK(expansion_defect(F) < 1e-10);
        std::mt19937 gen(43);
        auto [g, c0] = cglmp_weights_from_outcome(W, d);
        CglmpConfig cfg = cglmp_default(d);
        cfg.weights = g;
        for (int trial = 0; trial < 3; ++trial) {
            Mat rho = random_density(d * d, gen);
            CHECK(std::abs(F.expect(rho)
                           - (cglmp_probability_functional(cfg, rho, d) + 2 * c0)) < 1e-9);
        }
    }
}

TEST_CASE("qubit CHSH correspondence") {
    BellOperator B = qubit_chsh_t();
    CHECK((B.matrix - B.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(expansion_defect(B) < 1e-10);
    CHECK(B.expect(bell_state(2)) == Approx(4.0).margin(1e-12));
    CHECK(lhv_exact_generic(B) == Approx(2.0 + std::sqrt(2.0)).margin(1e-9));
}
