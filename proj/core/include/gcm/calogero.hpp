#pragma once

// Classical side: BCD Calogero-Moser Lax matrices with the coupling
// constraint, the A-type Lax matrix, conserved Hamiltonians from power
// traces, and the factorization toolkit (Vandermonde, D^0, C_0, C~,
// Frobenius companion matrices, elementary symmetric polynomials,
// Faddeev-LeVerrier characteristic polynomials).

#include <utility>
#include <vector>

#include "gcm/graded.hpp"

namespace gcm {

enum class RootFamily { A, B, C, D };

struct RootSystem {
    RootFamily family = RootFamily::C;
    int N = 1;  // particle count

    /// Lax matrix size: N for A(N-1), 2N for C/D, 2N+1 for B.
    int lax_size() const;
};

struct Couplings {
    cplx g1{0.0};
    cplx g2{0.0};
    cplx g4{0.0};
};

struct PhaseState {
    std::vector<cplx> q;
    std::vector<cplx> qdot;
};

struct ConstraintCheck {
    bool ok = false;
    double defect = 0.0;  // |g1 (g1^2 - 2 g2^2 + sqrt(2) g2 g4)|
};

/// The Lax-representation constraint g1 (g1^2 - 2 g2^2 + sqrt(2) g2 g4) = 0.
ConstraintCheck check_constraint(const Couplings& c);

/// Extended coordinate vector: (q, -q) for C/D, (q, -q, 0) for B, q for A.
std::vector<cplx> extended_coordinates(const RootSystem& rs, const std::vector<cplx>& q);

/// Lax matrix. BCD block form with P_ab = qdot_a delta_ab,
/// A_ab = g2(1-delta)/(q_a-q_b), B_ab = g2(1-delta)/(q_a+q_b) + g4 sqrt2 delta/(2q_a),
/// C_a = g1/q_a; the effective 2Nx2N block is returned for C/D (g1 = 0) and the
/// full (2N+1)x(2N+1) matrix for B. A-type uses only g2 as the coupling g.
/// Enforces the coupling constraint for BCD and the position invariants.
Matrix lax_matrix(const RootSystem& rs, const PhaseState& state, const Couplings& c);

/// Normalized power-trace Hamiltonians H_k, k = 1..kmax:
/// (1/2k) tr L^k for BCD, (1/k) tr L^k for A.
std::vector<cplx> hamiltonians(const Matrix& L, int kmax, const RootSystem& rs);

/// Vandermonde matrix V_ij = x_i^{j-1}.
Matrix vandermonde(const std::vector<cplx>& x);

/// D^0 = diag( prod_{k != i} (x_i - x_k) ); for B the last diagonal entry
/// (the null coordinate) is additionally multiplied by sqrt(2).
Matrix d0_matrix(const std::vector<cplx>& x, const RootSystem& rs);

/// (C_0)_{ij} = i delta_{i+1,j} (1-based) and C~_{ij} = (1+(-1)^j)/2 delta_{i+1,j}.
Matrix c0_matrix(int r);
Matrix ctilde_matrix(int r);

/// Elementary symmetric polynomial e_k(x) by the stable column recurrence.
cplx elementary_symmetric(const std::vector<cplx>& x, int k);

/// Frobenius companion matrix of p(z) = prod_k (z - x_k) and its inverse
/// (the inverse needs all x_k != 0). Eigenvector relation: V J V^{-1} = diag(x).
std::pair<Matrix, Matrix> frobenius(const std::vector<cplx>& x);

/// Companion matrix in the same layout from monic coefficients
/// p(z) = z^r + c_{r-1} z^{r-1} + ... + c_0, passed as [1, c_{r-1}, ..., c_0].
Matrix companion_from_monic(const std::vector<cplx>& coeffs);

/// Monic characteristic polynomial coefficients [1, c_{r-1}, ..., c_0] of L,
/// det(lambda I - L) = sum_j coeffs[j] lambda^{r-j}, via Faddeev-LeVerrier.
std::vector<cplx> charpoly(const Matrix& L);

/// All roots of the monic polynomial given as [1, c_{r-1}, ..., c_0]
/// (companion matrix + dense eigensolver).
std::vector<cplx> polyroots(const std::vector<cplx>& coeffs);

/// Factorized Lax matrices after the canonical velocity substitution:
///   C: hbar (D^0)^{-1} V (C_0 - (1-2xi) C~) V^{-1} D^0   on x = (q,-q),
///   D: the same at xi = 0,
///   B: hbar (D^0)^{-1} V (C_0 + C~) V^{-1} D^0           on x = (q,-q,0),
/// guaranteed similar to a strictly upper-triangular matrix, hence nilpotent.
/// If cond_out is given it receives the condition number of V (reported when
/// it exceeds 1e10; the factorization is still returned).
Matrix factorized_lax(const RootSystem& rs, const std::vector<cplx>& q, cplx xi, cplx hbar,
                      double* cond_out = nullptr);

/// A-type counterpart of the factorization at M = 0:
/// omega I + hbar (D^0)^{-1} V C_0 V^{-1} D^0, all eigenvalues equal to omega.
Matrix factorized_lax_a(const std::vector<cplx>& q, cplx omega, cplx hbar,
                        double* cond_out = nullptr);

}  // namespace gcm
