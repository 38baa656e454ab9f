#pragma once

// Kernel for Z2-graded linear algebra on C^{m|n} and its tensor powers:
// parity bookkeeping, graded tensor products, the graded permutation,
// super-transposition, supertraces and graded site embeddings.
//
// Conventions, fixed once for every module built on top:
//  * basis of C^{m|n}: e_1..e_m even, e_{m+1}..e_{m+n} odd;
//  * multi-site basis ordering is lexicographic with site 1 slowest-varying,
//    i.e. |j_1 ... j_S>  <->  row index sum_t (j_t - 1) d^{S-t}, d = m+n;
//  * the matrix of a graded tensor product A (x) B carries the Koszul sign
//    (A (x) B)[(i,k),(j,l)] = A_ij B_kl (-1)^{(p(k)+p(l)) p(j)},
//    which makes (A (x) B)(C (x) D) = (-1)^{p(B)p(C)} (AC) (x) (BD) hold for
//    homogeneous B, C and realizes P(x (x) y) = (-1)^{p(x)p(y)} y (x) x.

#include <complex>
#include <Eigen/Dense>

namespace gcm {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Grading {
    int m = 1;  // number of even basis vectors
    int n = 1;  // number of odd basis vectors

    int dim() const { return m + n; }
    bool operator==(const Grading& o) const { return m == o.m && n == o.n; }
};

inline const Grading GL20{2, 0};
inline const Grading GL11{1, 1};
inline const Grading GL02{0, 2};

/// Parity p(i) of basis vector i (1-based): 0 for i <= m, 1 otherwise.
int parity(int i, const Grading& g);

/// Dense operator on (C^{m|n})^{(x) sites}.
struct GradedOperator {
    Grading grading;
    int sites = 1;
    Matrix mat;

    GradedOperator() = default;
    GradedOperator(Grading g, int s, Matrix m_);

    int dim() const { return mat.rows(); }
    static GradedOperator identity(const Grading& g, int sites);
};

/// Total parity of the multi-index basis state with row index J (0-based).
int multi_parity(long J, const Grading& g, int sites);

/// Graded permutation P = sum_ij (-1)^{p(j)} E_ij (x) E_ji on two sites.
GradedOperator graded_permutation(const Grading& g);

/// Graded tensor product with the Koszul sign convention above.
GradedOperator graded_tensor(const GradedOperator& a, const GradedOperator& b);

/// Super-transpose of a single-site operator: (A^t)_{ji} = (-1)^{p(j)+p(i)p(j)} A_{ij}.
GradedOperator super_transpose(const GradedOperator& a);
Matrix super_transpose(const Matrix& a, const Grading& g);

/// Supertrace over all sites: sum_J (-1)^{p(J)} A_{JJ}.
cplx supertrace(const GradedOperator& a);

/// Partial supertrace over one site (1-based); result lives on sites-1 sites.
GradedOperator supertrace_site(const GradedOperator& a, int site);

/// Embed a single-site operator at `site` of an N-site space with graded signs.
GradedOperator embed_one_site(const Matrix& op, int site, int nsites, const Grading& g);

/// Embed a two-site operator at sites (i, k), i != k, of an N-site space.
/// Realized as the product of graded-embedded matrix units, so that for
/// non-adjacent sites the Koszul signs of odd tensor factors are kept
/// (P_13 = P_23 P_12 P_23, not the sign-free index-permuted Kronecker).
GradedOperator embed_two_site(const GradedOperator& op, int i, int k, int nsites);

}  // namespace gcm
