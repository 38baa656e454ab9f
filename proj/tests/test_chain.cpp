#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcm/chain.hpp"
#include "test_helpers.hpp"

using namespace gcm;

TEST_CASE("R-matrix basics") {
    SUBCASE("eta = 0 gives the identity") {
        const auto R = r_matrix(1.3, 0.0, GL11);
        CHECK(testing::max_entry_diff(R.mat, Matrix::Identity(4, 4)) < 1e-15);
    }
    SUBCASE("unitarity R(u) R(-u) = (1 - eta^2/u^2) I") {
        testing::Rng rng(5);
        for (const Grading& g : {GL20, GL11, GL02}) {
            const cplx u = rng.c() + cplx(2.0), eta = rng.c();
            const auto lhs = r_matrix(u, eta, g).mat * r_matrix(-u, eta, g).mat;
            const cplx f = 1.0 - eta * eta / (u * u);
            CHECK(testing::max_entry_diff(lhs, Matrix(f * Matrix::Identity(4, 4))) < 1e-14);
        }
    }
    SUBCASE("gl(2|0) at u = eta = 1 is I + P") {
        const auto R = r_matrix(1.0, 1.0, GL20);
        const auto P = graded_permutation(GL20);
        CHECK(testing::max_entry_diff(R.mat, Matrix(Matrix::Identity(4, 4) + P.mat)) < 1e-15);
    }
    SUBCASE("pole at u = 0") { CHECK_THROWS_AS(r_matrix(0.0, 1.0, GL11), std::invalid_argument); }
}

TEST_CASE("graded Yang-Baxter equation") {
    testing::Rng rng(7);
    for (const Grading& g : {GL20, GL11, GL02})
        for (int t = 0; t < 10; ++t) {
            const cplx u1 = 3.0 * rng.c(), u2 = 3.0 * rng.c() + cplx(4.0), u3 = 3.0 * rng.c() - cplx(4.0);
            CHECK(check_ybe(u1, u2, u3, rng.c(), g) < 1e-12);
        }
    SUBCASE("eta = 0 residual is exactly zero") {
        CHECK(check_ybe(1.0, 2.0, 3.0, 0.0, GL02) == 0.0);
    }
    SUBCASE("argument collision rejected") {
        CHECK_THROWS_AS(check_ybe(1.0, 1.0, 2.0, 0.3, GL11), std::invalid_argument);
    }
}

TEST_CASE("K-matrices") {
    SUBCASE("alpha = 0") {
        const auto [km, kp] = k_matrices(0.7, {0.0, 0.5, 0.3}, GL11);
        Matrix expect(2, 2);
        expect << 1, 0, 0, -1;
        CHECK(testing::max_entry_diff(km, expect) < 1e-15);
    }
    SUBCASE("beta = 0") {
        const auto [km, kp] = k_matrices(0.7, {0.5, 0.0, 0.3}, GL20);
        Matrix expect(2, 2);
        expect << 1, 0, 0, -1;
        CHECK(testing::max_entry_diff(kp, expect) < 1e-15);
    }
    SUBCASE("gl(1|1): the K+ shift vanishes") {
        const cplx u = 0.9, beta = 0.8, eta = 0.41;
        const auto [km, kp] = k_matrices(u, {0.0, beta, eta}, GL11);
        Matrix expect(2, 2);
        expect << 1.0 - beta * eta / u, 0, 0, -1.0 - beta * eta / u;
        CHECK(testing::max_entry_diff(kp, expect) < 1e-15);
    }
    SUBCASE("pole detection at the shifted argument") {
        const cplx eta = 0.6;
        CHECK_THROWS_AS(k_matrices(-eta, BoundaryParams{1.0, 1.0, eta}, GL20),
                        std::invalid_argument);
    }
}

TEST_CASE("reflection equations") {
    testing::Rng rng(9);
    for (const Grading& g : {GL20, GL11, GL02})
        for (int t = 0; t < 10; ++t) {
            const BoundaryParams p{rng.c(), rng.c(), 0.3 * rng.c() + cplx(0.4)};
            const auto [rm, rp] = check_reflection(2.0 + rng.c(), -1.5 + rng.c(), p, g);
            CHECK(rm < 1e-12);
            CHECK(rp < 1e-12);
        }
    SUBCASE("eta = 0 residuals vanish") {
        const auto [rm, rp] = check_reflection(1.1, 0.7, {1.0, 2.0, 0.0}, GL11);
        CHECK(rm == 0.0);
        CHECK(rp == 0.0);
    }
    SUBCASE("constant diagonal K (alpha = beta = 0)") {
        const auto [rm, rp] = check_reflection(1.1, 0.7, {0.0, 0.0, 0.37}, GL02);
        CHECK(rm < 1e-13);
        CHECK(rp < 1e-13);
    }
}

TEST_CASE("double-row transfer matrix") {
    testing::Rng rng(13);
    SUBCASE("commutativity in the spectral parameter") {
        for (const Grading& g : {GL20, GL11, GL02}) {
            const std::vector<cplx> z = testing::separated_points(rng, 2);
            const BoundaryParams p{rng.c(), rng.c(), 0.2 * rng.c() + cplx(0.3)};
            const cplx u = 4.0 + rng.c(), v = -5.0 + rng.c();
            const Matrix Tu = transfer_matrix(u, z, p, g).mat;
            const Matrix Tv = transfer_matrix(v, z, p, g).mat;
            CHECK(testing::max_entry_diff(Tu * Tv, Tv * Tu) < 1e-11);
        }
    }
    SUBCASE("eta = 0 collapses to the supertrace constant") {
        for (const Grading& g : {GL20, GL11, GL02}) {
            const double s12 = (parity(1, g) ? -1 : 1) + (parity(2, g) ? -1 : 1);
            const Matrix T = transfer_matrix(1.7, {1.0, 2.0}, {0.4, 0.2, 0.0}, g).mat;
            CHECK(testing::max_entry_diff(T, Matrix(s12 * Matrix::Identity(4, 4))) < 1e-14);
        }
    }
    SUBCASE("gl(2|0), N = 1: 2x2 and commutes with sigma3") {
        const Matrix T = transfer_matrix(2.3, {0.9}, {0.7, 0.2, 0.31}, GL20).mat;
        REQUIRE(T.rows() == 2);
        Matrix s3(2, 2);
        s3 << 1, 0, 0, -1;
        CHECK(testing::max_entry_diff(T * s3, s3 * T) < 1e-13);
    }
}

TEST_CASE("Gaudin Hamiltonians") {
    SUBCASE("gl(1|1), N = 1 closed form hbar (xi+1) sigma3 / z") {
        GaudinSpec spec;
        spec.grading = GL11;
        spec.z = {cplx(1.4, 0.3)};
        spec.xi = cplx(0.8, -0.2);
        spec.hbar = cplx(1.1, 0.5);
        const Matrix H = gaudin_hamiltonian(1, spec).mat;
        Matrix expect(2, 2);
        const cplx f = spec.hbar * (spec.xi + 1.0) / spec.z[0];
        expect << f, 0, 0, -f;
        CHECK(testing::max_entry_diff(H, expect) < 1e-14);
    }
    SUBCASE("gl(2|0) prefactor is xi/z_i") {
        GaudinSpec spec;
        spec.grading = GL20;
        spec.z = {cplx(2.0)};
        spec.xi = cplx(0.6);
        const Matrix H = gaudin_hamiltonian(1, spec).mat;
        CHECK(std::abs(H(0, 0) - spec.xi / spec.z[0]) < 1e-15);
    }
    SUBCASE("commuting family, both geometries, all gradings") {
        testing::Rng rng(17);
        for (const Grading& g : {GL20, GL11, GL02})
            for (Geometry geom : {Geometry::TwoN, Geometry::TwoNPlusOne})
                for (int N : {3, 4}) {
                    GaudinSpec spec;
                    spec.grading = g;
                    spec.z = testing::separated_points(rng, N);
                    spec.geometry = geom;
                    spec.hbar = 1.0 + 0.2 * rng.c();
                    spec.xi = geom == Geometry::TwoNPlusOne ? spec.forced_xi() : rng.c();
                    std::vector<Matrix> H;
                    double scale = 0;
                    for (int i = 1; i <= N; ++i) {
                        H.push_back(gaudin_hamiltonian(i, spec).mat);
                        scale = std::max(scale, H.back().cwiseAbs().maxCoeff());
                    }
                    double worst = 0;
                    for (std::size_t i = 0; i < H.size(); ++i)
                        for (std::size_t j = i + 1; j < H.size(); ++j)
                            worst = std::max(
                                worst, testing::max_entry_diff(H[i] * H[j], H[j] * H[i]));
                    CHECK(worst < 1e-11 * std::max(1.0, scale * scale));
                }
    }
    SUBCASE("spec invariants are enforced") {
        GaudinSpec spec;
        spec.grading = GL11;
        spec.z = {cplx(1.0), cplx(-1.0)};
        CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
        spec.z = {cplx(1.0)};
        spec.geometry = Geometry::TwoNPlusOne;
        spec.xi = 0.3;  // not the forced value
        CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
        spec.xi = spec.forced_xi();
        CHECK_NOTHROW(spec.validate());
        CHECK_THROWS_AS(gaudin_hamiltonian(2, spec), std::out_of_range);
    }
}

TEST_CASE("Gaudin limit of the transfer matrix") {
    testing::Rng rng(19);
    SUBCASE("epsilon coefficients match the Hamiltonian form") {
        for (const Grading& g : {GL20, GL11, GL02}) {
            const std::vector<cplx> z = testing::separated_points(rng, 2);
            const BoundaryParams p{rng.c(), rng.c(), 0.0};
            const cplx hbar = 1.0 + 0.3 * rng.c();
            const cplx u = 5.0 + rng.c();
            const auto rep = check_gaudin_limit(u, z, p, g, hbar);
            CHECK(rep.const_dev < 1e-12);
            CHECK(rep.eps1_scalar_dev < 1e-8);
            CHECK(rep.operator_dev < 1e-8);
            CHECK(rep.scalar_dev < 1e-9);
            CHECK(rep.remainder_exponent > 2.8);
        }
    }
    SUBCASE("alpha = beta = 0, N = 1: operator part alone") {
        const auto rep = check_gaudin_limit(3.1, {cplx(1.2)}, {0.0, 0.0, 0.0}, GL11, 1.0);
        CHECK(rep.operator_dev < 1e-10);
        CHECK(rep.scalar_dev < 1e-12);
    }
}

TEST_CASE("exact diagonalization oracle") {
    SUBCASE("gl(1|1), N = 1: tuples +-hbar(xi+1)/z") {
        GaudinSpec spec;
        spec.grading = GL11;
        spec.z = {cplx(1.7, 0.2)};
        spec.xi = cplx(0.4, 0.6);
        spec.hbar = cplx(0.9, -0.3);
        const auto sp = exact_spectrum(spec);
        REQUIRE(sp.tuples.size() == 2);
        const cplx v = spec.hbar * (spec.xi + 1.0) / spec.z[0];
        const double d0 = std::min(std::abs(sp.tuples[0][0] - v), std::abs(sp.tuples[0][0] + v));
        const double d1 = std::min(std::abs(sp.tuples[1][0] - v), std::abs(sp.tuples[1][0] + v));
        CHECK(d0 < 1e-12);
        CHECK(d1 < 1e-12);
        CHECK(std::abs(sp.tuples[0][0] + sp.tuples[1][0]) < 1e-12);  // one of each sign
    }
    SUBCASE("gl(2|0), N = 1, xi = 0: H vanishes with multiplicity 2") {
        GaudinSpec spec;
        spec.grading = GL20;
        spec.z = {cplx(1.0)};
        spec.xi = 0.0;
        const auto sp = exact_spectrum(spec);
        REQUIRE(sp.tuples.size() == 2);
        CHECK(std::abs(sp.tuples[0][0]) < 1e-13);
        CHECK(std::abs(sp.tuples[1][0]) < 1e-13);
    }
    SUBCASE("multiset invariant under re-randomized combinations") {
        testing::Rng rng(23);
        GaudinSpec spec;
        spec.grading = GL02;
        spec.z = testing::separated_points(rng, 2);
        spec.xi = rng.c();
        const auto a = exact_spectrum(spec, 1);
        const auto b = exact_spectrum(spec, 99);
        REQUIRE(a.tuples.size() == b.tuples.size());
        double worst = 0;
        for (const auto& ta : a.tuples) {
            double best = 1e300;
            for (const auto& tb : b.tuples) {
                double d = 0;
                for (std::size_t i = 0; i < ta.size(); ++i)
                    d = std::max(d, std::abs(ta[i] - tb[i]));
                best = std::min(best, d);
            }
            worst = std::max(worst, best);
        }
        CHECK(worst < 1e-9);
    }
}
