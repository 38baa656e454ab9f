#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcm/bethe.hpp"
#include "test_helpers.hpp"

using namespace gcm;

namespace {

GaudinSpec make_spec(SuperalgebraTag tag, std::vector<cplx> z, cplx xi, Geometry geom,
                     int M, cplx hbar = 1.0) {
    GaudinSpec s;
    s.grading = grading_of(tag);
    s.z = std::move(z);
    s.geometry = geom;
    s.xi = geom == Geometry::TwoNPlusOne ? s.forced_xi() : xi;
    s.hbar = hbar;
    s.M = M;
    return s;
}

double maxabs(const std::vector<cplx>& v) {
    double m = 0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("Bethe residual closed forms") {
    SUBCASE("gl(1|1), 2N, N=1, xi=1: mu = 1/sqrt2 solves") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0)}, 1.0, Geometry::TwoN, 1);
        const auto F = bethe_residual(spec, SuperalgebraTag::GL11, {1.0 / std::sqrt(2.0)});
        REQUIRE(F.size() == 1);
        CHECK(std::abs(F[0]) < 1e-13);
    }
    SUBCASE("M = 0 gives the empty residual vector") {
        const auto spec = make_spec(SuperalgebraTag::GL20, {cplx(1.0)}, 0.3, Geometry::TwoN, 0);
        CHECK(bethe_residual(spec, SuperalgebraTag::GL20, {}).empty());
    }
    SUBCASE("gl(1|1), 2N+1, N=2, z=(1,2): mu = sqrt(5/2) solves") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0), cplx(2.0)}, 0.0,
                                    Geometry::TwoNPlusOne, 1);
        const auto F = bethe_residual(spec, SuperalgebraTag::GL11, {std::sqrt(cplx(2.5))});
        CHECK(std::abs(F[0]) < 1e-13);
    }
    SUBCASE("pole collisions are rejected per root") {
        const auto spec = make_spec(SuperalgebraTag::GL20, {cplx(1.0)}, 0.3, Geometry::TwoN, 1);
        CHECK_THROWS_AS(bethe_residual(spec, SuperalgebraTag::GL20, {cplx(1.0)}),
                        std::invalid_argument);
        CHECK_THROWS_AS(bethe_residual(spec, SuperalgebraTag::GL20, {cplx(0.0)}),
                        std::invalid_argument);
    }
}

TEST_CASE("master equations match the displayed specializations") {
    testing::Rng rng(3);
    for (const auto tag :
         {SuperalgebraTag::GL20, SuperalgebraTag::GL11, SuperalgebraTag::GL02})
        for (Geometry geom : {Geometry::TwoN, Geometry::TwoNPlusOne}) {
            const int N = 3, M = 2;
            const auto z = testing::separated_points(rng, N);
            const auto mu = testing::separated_avoiding(rng, M, z);
            const auto spec = make_spec(tag, z, rng.c(), geom, M);
            const auto disp = bethe_residual(spec, tag, mu);
            const auto master = bethe_residual_master(spec, tag, mu);
            const double sign = parity(1, grading_of(tag)) ? -1.0 : 1.0;
            for (int l = 0; l < M; ++l)
                CHECK(std::abs(master[l] - sign * disp[l]) < 1e-12);
        }
}

TEST_CASE("Gaudin eigenvalue formulas") {
    SUBCASE("gl(1|1), N=1, M=0: hbar (xi+1)/z") {
        const cplx z = cplx(1.3, 0.4), xi = cplx(0.7, -0.1), hb = cplx(1.2, 0.2);
        const auto spec = make_spec(SuperalgebraTag::GL11, {z}, xi, Geometry::TwoN, 0, hb);
        const auto H = gaudin_eigenvalues(spec, SuperalgebraTag::GL11, {});
        CHECK(std::abs(H[0] - hb * (xi + 1.0) / z) < 1e-14);
    }
    SUBCASE("eigenvalue relations across superalgebras") {
        testing::Rng rng(5);
        const int N = 3, M = 2;
        const auto z = testing::separated_points(rng, N);
        const auto mu = testing::separated_avoiding(rng, M, z);
        const cplx xi = rng.c(), hb = 1.0 + 0.3 * rng.c();
        // H^{1|1}(xi) = H^{2|0}(xi+1)
        const auto h11 = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL11, z, xi, Geometry::TwoN, M, hb),
            SuperalgebraTag::GL11, mu);
        const auto h20s = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL20, z, xi + 1.0, Geometry::TwoN, M, hb),
            SuperalgebraTag::GL20, mu);
        // H^{0|2}(xi) = -H^{2|0}(-xi)
        const auto h02 = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL02, z, xi, Geometry::TwoN, M, hb),
            SuperalgebraTag::GL02, mu);
        const auto h20m = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL20, z, -xi, Geometry::TwoN, M, hb),
            SuperalgebraTag::GL20, mu);
        for (int i = 0; i < N; ++i) {
            CHECK(std::abs(h11[i] - h20s[i]) < 1e-13);
            CHECK(std::abs(h02[i] + h20m[i]) < 1e-13);
        }
        // 2N+1 geometry: H~^{1|1} = H~^{2|0} and H~^{0|2} = -H~^{2|0}
        const auto t11 = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL11, z, 0.0, Geometry::TwoNPlusOne, M, hb),
            SuperalgebraTag::GL11, mu);
        const auto t20 = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL20, z, 0.0, Geometry::TwoNPlusOne, M, hb),
            SuperalgebraTag::GL20, mu);
        const auto t02 = gaudin_eigenvalues(
            make_spec(SuperalgebraTag::GL02, z, 0.0, Geometry::TwoNPlusOne, M, hb),
            SuperalgebraTag::GL02, mu);
        for (int i = 0; i < N; ++i) {
            CHECK(std::abs(t11[i] - t20[i]) < 1e-14);
            CHECK(std::abs(t02[i] + t20[i]) < 1e-14);
        }
    }
}

TEST_CASE("solver closed-form sectors") {
    SUBCASE("gl(1|1) C-case: single root 1/sqrt2 to 1e-12") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0)}, 1.0, Geometry::TwoN, 1);
        const auto sets = solve_bethe(spec, SuperalgebraTag::GL11);
        REQUIRE(sets.size() == 1);
        REQUIRE(sets[0].mu.size() == 1);
        CHECK(std::abs(sets[0].mu[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(sets[0].residual < 1e-10);
        CHECK(sets[0].admissible);
    }
    SUBCASE("gl(1|1) B-case N=2: single root sqrt(5/2) to 1e-12") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0), cplx(2.0)}, 0.0,
                                    Geometry::TwoNPlusOne, 1);
        const auto sets = solve_bethe(spec, SuperalgebraTag::GL11);
        REQUIRE(sets.size() == 1);
        CHECK(std::abs(sets[0].mu[0] - std::sqrt(2.5)) < 1e-12);
    }
    SUBCASE("gl(1|1) B-case N=1 M=1: no admissible roots") {
        const auto spec =
            make_spec(SuperalgebraTag::GL11, {cplx(1.0)}, 0.0, Geometry::TwoNPlusOne, 1);
        CHECK(solve_bethe(spec, SuperalgebraTag::GL11).empty());
    }
    SUBCASE("M = 0 returns the single empty set") {
        const auto spec = make_spec(SuperalgebraTag::GL02, {cplx(1.0)}, 0.2, Geometry::TwoN, 0);
        const auto sets = solve_bethe(spec, SuperalgebraTag::GL02);
        REQUIRE(sets.size() == 1);
        CHECK(sets[0].mu.empty());
    }
    SUBCASE("M > N is rejected") {
        const auto spec = make_spec(SuperalgebraTag::GL20, {cplx(1.0)}, 0.2, Geometry::TwoN, 2);
        CHECK_THROWS_AS(solve_bethe(spec, SuperalgebraTag::GL20), std::invalid_argument);
    }
}

TEST_CASE("solver properties") {
    testing::Rng rng(7);
    SUBCASE("every returned set satisfies the residual gate; sign flips also solve") {
        for (const auto tag :
             {SuperalgebraTag::GL20, SuperalgebraTag::GL11, SuperalgebraTag::GL02}) {
            const auto z = testing::separated_points(rng, 2);
            auto spec = make_spec(tag, z, cplx(0.9, 0.3), Geometry::TwoN, 1);
            for (const auto& set : solve_bethe(spec, tag)) {
                CHECK(maxabs(bethe_residual(spec, tag, set.mu)) < 1e-10);
                std::vector<cplx> flipped = set.mu;
                for (cplx& m : flipped) m = -m;
                CHECK(maxabs(bethe_residual(spec, tag, flipped)) < 1e-9);
                // canonical representative has Re > 0 (or Im > 0 on the axis)
                for (const cplx& m : set.mu)
                    CHECK((m.real() > 0 ||
                           (std::abs(m.real()) <= 1e-10 && m.imag() > 0)));
            }
        }
    }
    SUBCASE("determinism under identical options") {
        const auto z = testing::separated_points(rng, 3);
        const auto spec = make_spec(SuperalgebraTag::GL20, z, cplx(0.4, 0.7), Geometry::TwoN, 2);
        const auto a = solve_bethe(spec, SuperalgebraTag::GL20);
        const auto b = solve_bethe(spec, SuperalgebraTag::GL20);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t l = 0; l < a[i].mu.size(); ++l)
                CHECK(a[i].mu[l] == b[i].mu[l]);
    }
}

TEST_CASE("gl(1|1) companion-matrix route") {
    SUBCASE("N=1, xi=1, z=1, 2N geometry") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0)}, 1.0, Geometry::TwoN, 1);
        const auto roots = gl11_roots_exact(spec);
        REQUIRE(roots.size() == 1);
        CHECK(std::abs(roots[0] - 1.0 / std::sqrt(2.0)) < 1e-13);
    }
    SUBCASE("N=2, 2N+1 geometry: sqrt(5/2)") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0), cplx(2.0)}, 0.0,
                                    Geometry::TwoNPlusOne, 1);
        const auto roots = gl11_roots_exact(spec);
        REQUIRE(roots.size() == 1);
        CHECK(std::abs(roots[0] - std::sqrt(2.5)) < 1e-13);
    }
    SUBCASE("xi=0, 2N geometry, N=2, z=(1,2): mu^2 = 5/2") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0), cplx(2.0)}, 0.0,
                                    Geometry::TwoN, 1);
        const auto roots = gl11_roots_exact(spec);
        REQUIRE(roots.size() == 1);
        CHECK(std::abs(roots[0] * roots[0] - cplx(2.5)) < 1e-12);
    }
    SUBCASE("degenerate leading coefficient xi = -N") {
        const auto spec = make_spec(SuperalgebraTag::GL11, {cplx(1.0), cplx(2.0)}, -2.0,
                                    Geometry::TwoN, 1);
        CHECK_THROWS_AS(gl11_roots_exact(spec), std::domain_error);
    }
    SUBCASE("agreement with the Newton solver on admissible single roots") {
        testing::Rng rng(11);
        for (int t = 0; t < 4; ++t) {
            const int N = 1 + t % 3;
            const auto z = testing::separated_points(rng, N);
            const auto spec = make_spec(SuperalgebraTag::GL11, z, rng.c(), Geometry::TwoN, 1);
            auto exact = gl11_roots_exact(spec);
            SolveOptions opt;
            opt.seed_count = 160;
            auto solved = solve_bethe(spec, SuperalgebraTag::GL11, opt);
            REQUIRE(solved.size() == exact.size());
            for (std::size_t i = 0; i < exact.size(); ++i)
                CHECK(std::abs(solved[i].mu[0] - exact[i]) < 1e-9);
        }
    }
}

TEST_CASE("A-type warm-up layer") {
    SUBCASE("N=1, M=1 closed form mu = z - hbar/(2 omega)") {
        const cplx z = cplx(0.8, 0.3), om = cplx(0.9, -0.4), hb = cplx(1.1, 0.2);
        const auto sets = solve_bethe_atype({z}, 1, om, hb);
        REQUIRE(sets.size() == 1);
        CHECK(std::abs(sets[0].mu[0] - (z - hb / (2.0 * om))) < 1e-12);
        CHECK(maxabs(atype_bethe_residual({z}, sets[0].mu, om, hb)) < 1e-10);
    }
    SUBCASE("eigenvalues reduce to the twist for M = 0, N = 1") {
        const auto H = atype_eigenvalues({cplx(2.0)}, {}, cplx(0.5, 0.1), 1.0);
        CHECK(std::abs(H[0] - cplx(0.5, 0.1)) < 1e-15);
    }
}
