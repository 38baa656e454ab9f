#pragma once

// Quantum side: Yang's graded R-matrix, diagonal boundary K-matrices, the
// Sklyanin double-row transfer matrix, its Gaudin limit, the boundary Gaudin
// Hamiltonians, and an exact-diagonalization oracle for small site counts.

#include <cstdint>
#include <utility>
#include <vector>

#include "gcm/graded.hpp"

namespace gcm {

enum class Geometry { TwoN, TwoNPlusOne };

/// Boundary parameters of the diagonal K-matrices; eta is the spectral shift
/// that the Gaudin limit sends to zero via eta = eps*hbar.
struct BoundaryParams {
    cplx alpha{0.0};
    cplx beta{0.0};
    cplx eta{0.0};
};

/// One quantum model instance. For Geometry::TwoNPlusOne the marked points are
/// z_1..z_N, 0, -z_1..-z_N and xi is forced to p(1)-p(2); it is not an
/// independent parameter there (validate() enforces this).
struct GaudinSpec {
    Grading grading = GL11;
    std::vector<cplx> z;
    cplx xi{0.0};
    cplx hbar{1.0};
    Geometry geometry = Geometry::TwoN;
    int M = 0;

    int N() const { return static_cast<int>(z.size()); }
    /// Number of tensor factors of the operator realization
    /// (N, or N+1 with the extra site at the origin in the 2N+1 geometry).
    int sites() const { return N() + (geometry == Geometry::TwoNPlusOne ? 1 : 0); }
    /// The forced boundary parameter of the 2N+1 geometry, p(1)-p(2).
    cplx forced_xi() const;
    void validate() const;
};

/// Yang's R-matrix R(u) = I + (eta/u) P on two sites.
GradedOperator r_matrix(cplx u, cplx eta, const Grading& g);

/// Max-entry residual of the graded Yang-Baxter equation on three sites with
/// arguments u1-u2, u1-u3, u2-u3.
double check_ybe(cplx u1, cplx u2, cplx u3, cplx eta, const Grading& g);

/// Diagonal reflection matrices
///   K^-(u) = diag(1 + alpha*eta/u, -1 + alpha*eta/u),
///   K^+(u) = diag(1 - beta*eta/w, -1 - beta*eta/w),  w = u + (m-n)*eta/2.
std::pair<Matrix, Matrix> k_matrices(cplx u, const BoundaryParams& p, const Grading& g);

/// Residuals of the K^- reflection equation and of the super-transposed dual
/// K^+ reflection equation (with shift -(m-n)*eta).
std::pair<double, double> check_reflection(cplx u1, cplx u2, const BoundaryParams& p,
                                           const Grading& g);

/// Double-row transfer matrix
///   T(u) = str_0( K^+_0 R_01(u-z_1)..R_0N(u-z_N) K^-_0 R_0N(u+z_N)..R_01(u+z_1) )
/// as an operator on the N-site quantum space.
GradedOperator transfer_matrix(cplx u, const std::vector<cplx>& z, const BoundaryParams& p,
                               const Grading& g);

/// Boundary Gaudin Hamiltonian attached to marked point z_i (1-based site i):
///   H_i/hbar = (2 xi + (-1)^{p(1)} - (-1)^{p(2)}) sigma3^(i) / (2 z_i)
///            + sum_{k != i} ( P_ik/(z_i - z_k) + sigma3^(i) P_ik sigma3^(i)/(z_i + z_k) ).
/// In the 2N+1 geometry the operator lives on N+1 sites with z_{N+1} = 0 and
/// the forced xi; only i = 1..N are defined (the origin-site operator is not).
GradedOperator gaudin_hamiltonian(int i, const GaudinSpec& spec);

struct GaudinLimitReport {
    double const_dev = 0;          // eps^0 coefficient vs ((-1)^p1 + (-1)^p2) I
    double eps1_scalar_dev = 0;    // non-scalarity of the eps^1 coefficient
    double operator_dev = 0;       // traceless eps^2 coefficient vs traceless hbar^2 T^G
    double scalar_dev = 0;         // identity component vs the alpha*beta scalar
    double remainder_exponent = 0; // log-log slope of the O(eps^3) remainder
};

/// Expand T(u) at eta = eps*hbar around eps = 0 and compare the coefficients
/// against the Gaudin transfer matrix built from gaudin_hamiltonian.
/// (u + (m-n) eta/2) T(u) is a matrix polynomial in eta of degree <= 2N+2, so
/// the coefficients are recovered exactly by interpolation on a small circle
/// of complex eps nodes; the K^+ pole is then divided out as a power series.
GaudinLimitReport check_gaudin_limit(cplx u, const std::vector<cplx>& z,
                                     const BoundaryParams& p, const Grading& g,
                                     cplx hbar);

/// Joint spectrum of the commuting family H_1..H_N: one tuple per joint
/// eigenvector (so tuples repeat with their multiplicity).
struct ExactSpectrum {
    std::vector<std::vector<cplx>> tuples;
    int retries = 0;  // re-randomizations needed to isolate the joint basis
};

/// Simultaneously diagonalize the Hamiltonian family by diagonalizing a random
/// generic unit-circle combination and reading every H_i in that eigenbasis;
/// degenerate combinations (off-diagonal leakage) are retried up to 5 times.
/// Requires dim = 2^sites() <= 256.
ExactSpectrum exact_spectrum(const GaudinSpec& spec, std::uint64_t rng_seed = 12345);

}  // namespace gcm
