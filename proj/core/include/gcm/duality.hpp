#pragma once

// The correspondence bridge: velocity substitution, coupling presets per
// (root system, superalgebra), spectral-collapse verification, off-shell
// determinant identities, dual Lax matrices, the Frobenius-trick reduction
// for gl(1|1), and the g4-evenness lemma check.

#include <map>
#include <string>
#include <vector>

#include "gcm/bethe.hpp"
#include "gcm/calogero.hpp"

namespace gcm {

struct CorrespondenceCase {
    RootSystem rs;  // family B, C, or D
    SuperalgebraTag tag = SuperalgebraTag::GL20;
    GaudinSpec spec;
    BetheRoots roots;

    /// Geometry must match the root family (TwoN for C/D, TwoNPlusOne for B);
    /// for D the boundary parameter is forced to p(1)-p(2).
    void validate() const;
};

struct CollapseReport {
    int lax_size = 0;
    double lax_norm = 0;            // max-entry magnitude of L
    double bethe_residual = 0;      // residual of the roots actually used
    bool bethe_ok = false;          // precondition: residual < 1e-10
    double charpoly_defect = 0;     // max_j |c_j| / ||L||^j (primary certificate)
    double max_abs_eigenvalue = 0;  // dense eigensolver, absolute
    std::map<std::string, double> identity_residuals;
    bool pass_coeffs = false;       // charpoly_defect < tol
    bool pass_eigs = false;         // max |eig| < ||L|| * tol^{1/r}
    bool pass = false;
};

/// Coupling constants per root system and superalgebra:
///   B: (sqrt2 hbar, hbar, 0);  C: (0, hbar, sqrt2 hbar (xi - p(1) + p(2)));
///   D: (0, hbar, 0) with xi forced to p(1)-p(2).
Couplings coupling_preset(const RootSystem& rs, SuperalgebraTag tag, cplx xi, cplx hbar);

/// q_j = z_j and qdot_j = H_j (2N) or H~_j (2N+1) from gaudin_eigenvalues.
PhaseState substitute_velocities(const CorrespondenceCase& c);

/// Build the substituted Lax matrix and certify the spectral collapse:
/// all non-leading characteristic-polynomial coefficients below tol (relative)
/// and all eigenvalue magnitudes below ||L|| tol^{1/r}. Also evaluates the
/// determinant identity at the case's roots when M >= 1.
CollapseReport verify_collapse(const CorrespondenceCase& c, double tol = 1e-8);

/// Dual Lax matrix of size 2M x 2M with the roles of z and mu swapped:
///   C/D gl(2|0):  L(H^{2|0}({mu},{z},1-xi)   | 0, hbar,  sqrt2 hbar (1-xi))
///   C/D gl(1|1):  L(H^{2|0}({mu},{z},-xi)    | 0, hbar, -sqrt2 hbar xi)
///   C/D gl(0|2):  -L(H^{2|0}({mu},{z},1+xi)  | 0, hbar,  sqrt2 hbar (1+xi))
///   B  gl(2|0)/gl(1|1): L(-H^{2|0}({mu},{z},-1) | 0, hbar, sqrt2 hbar)
///   B  gl(0|2):   the negation of the line above
/// (the gl(0|2) forms follow from the g4-evenness + transposition reduction).
Matrix dual_lax(const CorrespondenceCase& c);

struct DetIdentityReport {
    double pointwise = 0;  // max over lambda samples, relative
    double coeffwise = 0;  // Faddeev-LeVerrier vs interpolated product coefficients
};

/// Off-shell determinant identity det(L - lambda I) = lambda^{r-2M} det(L~ - lambda I)
/// (with the B-case sign absorbed; monic form p_L = lambda^{r-2M} p_L~). The roots
/// need not satisfy the Bethe equations. lambda_samples defaults to 16 points on a
/// circle of radius 2 ||L||_inf.
DetIdentityReport check_determinant_identity(const CorrespondenceCase& c,
                                             const std::vector<cplx>& lambda_samples = {});

/// A-type identity det(L - lambda I) = (omega - lambda)^{N-M} det(L~ - lambda I).
DetIdentityReport check_determinant_identity_atype(const std::vector<cplx>& z,
                                                   const std::vector<cplx>& mu, cplx omega,
                                                   cplx hbar,
                                                   const std::vector<cplx>& lambda_samples = {});

struct FrobeniusReductionReport {
    double matrix_residual = 0;    // on-shell dual vs hbar (D0)^-1 V (C0 - (1+2xi)C~ + 2xi J^-1) V^-1 D0
    double row1_max = 0;           // first row of the core combination
    double minor_lower_max = 0;    // below-diagonal part of the (2M-1) minor
    double charpoly_defect = 0;    // core combination char poly vs lambda^{2M}
};

/// The gl(1|1) on-shell reduction of the dual matrix through the Frobenius
/// companion matrix built on (mu_1..mu_M, -mu_1..-mu_M).
FrobeniusReductionReport check_frobenius_reduction(const std::vector<cplx>& mu, cplx xi,
                                                   cplx hbar);

struct G4EvennessReport {
    double evenness_residual = 0;   // char poly of L(g4) vs L(-g4), relative
    double reduction_residual = 0;  // det(L-lambda) = det((B-A-P)(B+A+P)+lambda^2) at random lambda
};

/// The determinant of the C/D Lax matrix is an even function of g4, via the
/// block reduction det_{2N}(L - lambda I) = det_N((B-A-P)(B+A+P) + lambda^2 I).
G4EvennessReport check_g4_evenness(const PhaseState& state, cplx g2, cplx g4,
                                   std::uint64_t rng_seed = 7);

struct ATypeCollapseReport {
    int lax_size = 0;
    double lax_norm = 0;
    double bethe_residual = 0;
    bool bethe_ok = false;
    double multiset_deviation = 0;  // eigenvalues vs {omega x(N-M), -omega xM}
    double coeff_defect = 0;        // char poly vs (lambda-omega)^{N-M} (lambda+omega)^M
    bool pass = false;
};

/// A-type warm-up collapse: on-shell spectrum {omega x(N-M), -omega xM}.
/// The coefficient comparison is the well-conditioned double-precision
/// certificate; the eigenvalue multiset deviation is reported alongside.
ATypeCollapseReport verify_collapse_atype(const std::vector<cplx>& z,
                                          const std::vector<cplx>& mu, cplx omega, cplx hbar,
                                          double tol = 1e-8);

}  // namespace gcm
