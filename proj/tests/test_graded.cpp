#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcm/graded.hpp"
#include "test_helpers.hpp"

using namespace gcm;

namespace {

Matrix unit(int i, int j) {
    Matrix e = Matrix::Zero(2, 2);
    e(i - 1, j - 1) = 1.0;
    return e;
}

GradedOperator gunit(const Grading& g, int i, int j) { return {g, 1, unit(i, j)}; }

int unit_parity(const Grading& g, int i, int j) {
    return (parity(i, g) + parity(j, g)) % 2;
}

}  // namespace

TEST_CASE("parity of basis vectors") {
    CHECK(parity(1, GL11) == 0);
    CHECK(parity(2, GL11) == 1);
    CHECK(parity(3, Grading{2, 2}) == 1);
    CHECK(parity(1, GL02) == 1);
    CHECK(parity(2, GL20) == 0);
    CHECK_THROWS_AS(parity(0, GL11), std::out_of_range);
    CHECK_THROWS_AS(parity(3, GL11), std::out_of_range);
}

TEST_CASE("graded permutation action and P^2 = I") {
    for (const Grading& g : {GL20, GL11, GL02}) {
        const GradedOperator P = graded_permutation(g);
        CHECK((P.mat * P.mat - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
        // action on basis vectors: P(e_a (x) e_b) = (-1)^{p(a)p(b)} e_b (x) e_a
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                CVector v = CVector::Zero(4);
                v((a - 1) * 2 + (b - 1)) = 1.0;
                CVector w = P.mat * v;
                CVector expect = CVector::Zero(4);
                expect((b - 1) * 2 + (a - 1)) =
                    parity(a, g) && parity(b, g) ? -1.0 : 1.0;
                CHECK((w - expect).cwiseAbs().maxCoeff() < 1e-14);
            }
    }
    SUBCASE("gl(1|1) sign values") {
        const GradedOperator P = graded_permutation(GL11);
        CHECK(std::abs(P.mat(2, 1) - cplx(1.0)) < 1e-15);   // P(e1 x e2) = e2 x e1
        CHECK(std::abs(P.mat(3, 3) - cplx(-1.0)) < 1e-15);  // P(e2 x e2) = -e2 x e2
    }
    SUBCASE("gl(2|0) is the ordinary permutation matrix") {
        const GradedOperator P = graded_permutation(GL20);
        Matrix swap = Matrix::Zero(4, 4);
        swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
        CHECK(testing::max_entry_diff(P.mat, swap) < 1e-15);
    }
}

TEST_CASE("graded tensor product: Koszul sign on matrix units") {
    // (E12 x E21)(E21 x E12) = -E11 x E22 in gl(1|1)
    const auto lhs = graded_tensor(gunit(GL11, 1, 2), gunit(GL11, 2, 1)).mat *
                     graded_tensor(gunit(GL11, 2, 1), gunit(GL11, 1, 2)).mat;
    const auto rhs = -graded_tensor(gunit(GL11, 1, 1), gunit(GL11, 2, 2)).mat;
    CHECK(testing::max_entry_diff(lhs, rhs) < 1e-15);

    SUBCASE("identity is even") {
        testing::Rng rng(3);
        Matrix A(2, 2), B(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) { A(i, j) = rng.c(); B(i, j) = rng.c(); }
        const GradedOperator I1 = GradedOperator::identity(GL11, 1);
        const auto ab = graded_tensor({GL11, 1, A}, {GL11, 1, B});
        const auto ii = graded_tensor(I1, I1);
        CHECK(testing::max_entry_diff(ii.mat * ab.mat, ab.mat) < 1e-14);
    }
    SUBCASE("even-even operands reduce to the plain Kronecker product") {
        Matrix A(2, 2), B(2, 2);
        A << 1, 0, 0, 2;
        B << 3, 0, 0, 4;
        const auto t = graded_tensor({GL11, 1, A}, {GL11, 1, B});
        Matrix plain = Matrix::Zero(4, 4);
        plain(0, 0) = 3; plain(1, 1) = 4; plain(2, 2) = 6; plain(3, 3) = 8;
        CHECK(testing::max_entry_diff(t.mat, plain) < 1e-15);
    }
    SUBCASE("product rule over homogeneous matrix units") {
        for (const Grading& g : {GL20, GL11, GL02})
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b)
                    for (int c = 1; c <= 2; ++c)
                        for (int d = 1; d <= 2; ++d)
                            for (int e = 1; e <= 2; ++e)
                                for (int f = 1; f <= 2; ++f) {
                                    const auto L = graded_tensor(gunit(g, a, b), gunit(g, c, d));
                                    const auto R = graded_tensor(gunit(g, e, f), gunit(g, d, c));
                                    const int sign =
                                        (unit_parity(g, c, d) * unit_parity(g, e, f)) % 2;
                                    const auto prod =
                                        graded_tensor({g, 1, Matrix(unit(a, b) * unit(e, f))},
                                                      {g, 1, Matrix(unit(c, d) * unit(d, c))});
                                    CHECK(testing::max_entry_diff(
                                              L.mat * R.mat,
                                              (sign ? -1.0 : 1.0) * prod.mat) < 1e-15);
                                }
    }
    SUBCASE("associativity closes on triple products of matrix units") {
        const Grading g = GL11;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c)
                    for (int d = 1; d <= 2; ++d)
                        for (int e = 1; e <= 2; ++e)
                            for (int f = 1; f <= 2; ++f) {
                                const auto left = graded_tensor(
                                    graded_tensor(gunit(g, a, b), gunit(g, c, d)),
                                    gunit(g, e, f));
                                const auto right = graded_tensor(
                                    gunit(g, a, b),
                                    graded_tensor(gunit(g, c, d), gunit(g, e, f)));
                                CHECK(testing::max_entry_diff(left.mat, right.mat) < 1e-15);
                            }
    }
    SUBCASE("grading mismatch is rejected") {
        CHECK_THROWS_AS(graded_tensor(gunit(GL11, 1, 1), gunit(GL20, 1, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("super transpose") {
    CHECK(testing::max_entry_diff(super_transpose(gunit(GL11, 1, 2)).mat, -unit(2, 1)) < 1e-15);
    CHECK(testing::max_entry_diff(super_transpose(gunit(GL11, 1, 1)).mat, unit(1, 1)) < 1e-15);
    // str(A^t) = str(A) on all matrix units, every grading
    for (const Grading& g : {GL20, GL11, GL02})
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const auto a = gunit(g, i, j);
                CHECK(std::abs(supertrace(super_transpose(a)) - supertrace(a)) < 1e-15);
            }
}

TEST_CASE("supertrace") {
    CHECK(std::abs(supertrace(GradedOperator::identity(GL11, 1))) < 1e-15);
    CHECK(std::abs(supertrace(GradedOperator::identity(GL20, 1)) - cplx(2.0)) < 1e-15);
    CHECK(std::abs(supertrace(graded_permutation(GL11))) < 1e-15);
    SUBCASE("graded cyclicity str(AB) = (-1)^{p(A)p(B)} str(BA)") {
        for (const Grading& g : {GL20, GL11, GL02})
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b)
                    for (int c = 1; c <= 2; ++c)
                        for (int d = 1; d <= 2; ++d) {
                            const GradedOperator AB{g, 1, Matrix(unit(a, b) * unit(c, d))};
                            const GradedOperator BA{g, 1, Matrix(unit(c, d) * unit(a, b))};
                            const int s = (unit_parity(g, a, b) * unit_parity(g, c, d)) % 2;
                            CHECK(std::abs(supertrace(AB) -
                                           (s ? -1.0 : 1.0) * supertrace(BA)) < 1e-15);
                        }
    }
    SUBCASE("partial supertrace over the auxiliary slot") {
        testing::Rng rng(11);
        Matrix A(2, 2), B(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) { A(i, j) = rng.c(); B(i, j) = i == j ? rng.c() : 0.0; }
        // str_1(B (x) A) = str(B) A for diagonal (even) B
        const auto big = graded_tensor({GL11, 1, B}, {GL11, 1, A});
        const auto red = supertrace_site(big, 1);
        CHECK(testing::max_entry_diff(red.mat, Matrix((B(0, 0) - B(1, 1)) * A)) < 1e-14);
        const auto red2 = supertrace_site(graded_tensor({GL11, 1, A}, {GL11, 1, B}), 2);
        CHECK(testing::max_entry_diff(red2.mat, Matrix((B(0, 0) - B(1, 1)) * A)) < 1e-14);
    }
}

TEST_CASE("site embeddings") {
    const GradedOperator P11 = graded_permutation(GL11);
    SUBCASE("two sites is the operator itself") {
        CHECK(testing::max_entry_diff(embed_two_site(P11, 1, 2, 2).mat, P11.mat) < 1e-15);
    }
    SUBCASE("identity embeds to identity") {
        const auto I2 = GradedOperator::identity(GL11, 2);
        CHECK(testing::max_entry_diff(embed_two_site(I2, 1, 3, 4).mat,
                                      Matrix::Identity(16, 16)) < 1e-15);
    }
    SUBCASE("non-adjacent embedding squares to the identity") {
        for (const Grading& g : {GL20, GL11, GL02}) {
            const auto P13 = embed_two_site(graded_permutation(g), 1, 3, 3).mat;
            CHECK(testing::max_entry_diff(P13 * P13, Matrix::Identity(8, 8)) < 1e-14);
        }
    }
    SUBCASE("P_13 equals the adjacent-swap conjugation P_23 P_12 P_23") {
        for (const Grading& g : {GL20, GL11, GL02}) {
            const auto P = graded_permutation(g);
            const auto P12 = embed_two_site(P, 1, 2, 3).mat;
            const auto P23 = embed_two_site(P, 2, 3, 3).mat;
            const auto P13 = embed_two_site(P, 1, 3, 3).mat;
            CHECK(testing::max_entry_diff(P13, P23 * P12 * P23) < 1e-14);
        }
    }
    SUBCASE("swapped site order agrees for the symmetric permutation") {
        const auto a = embed_two_site(P11, 3, 1, 3).mat;
        const auto b = embed_two_site(P11, 1, 3, 3).mat;
        CHECK(testing::max_entry_diff(a, b) < 1e-14);
    }
    SUBCASE("site collisions and ranges are rejected") {
        CHECK_THROWS_AS(embed_two_site(P11, 2, 2, 3), std::invalid_argument);
        CHECK_THROWS_AS(embed_two_site(P11, 1, 4, 3), std::out_of_range);
        CHECK_THROWS_AS(embed_one_site(unit(1, 1), 0, 2, GL11), std::out_of_range);
    }
    SUBCASE("one-site embedding of sigma3 is the plain Kronecker form") {
        Matrix s3(2, 2);
        s3 << 1, 0, 0, -1;
        const auto e = embed_one_site(s3, 2, 3, GL11).mat;
        Matrix expect = Matrix::Zero(8, 8);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    const int idx = a * 4 + b * 2 + c;
                    expect(idx, idx) = b == 0 ? 1.0 : -1.0;
                }
        CHECK(testing::max_entry_diff(e, expect) < 1e-15);
    }
}
