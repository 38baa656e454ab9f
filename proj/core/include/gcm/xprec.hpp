#pragma once

// Extended-precision certification of the spectral collapse. A nilpotent r x r
// matrix known to accuracy delta has eigenvalues of size ~ delta^{1/r} ||L||,
// so double precision cannot push eigenvalue magnitudes below ~1e-2 ||L|| at
// r = 9 no matter which eigensolver is used. This path re-polishes the Bethe
// roots by Newton in ~100-digit complex arithmetic, rebuilds the substituted
// Lax matrix and its characteristic polynomial there, and certifies the
// eigenvalue magnitudes both by root finding and by a rigorous Fujiwara bound.

#include <vector>

#include "gcm/duality.hpp"

namespace gcm::xprec {

struct Certificate {
    double polished_residual = 0;  // Bethe residual after the extended polish
    double charpoly_defect = 0;    // max_j |c_j| / ||L||^j in extended precision
    double eig_bound = 0;          // rigorous bound on max |eigenvalue| / ||L||
    double max_eig = 0;            // Durand-Kerner max |root| / ||L||
};

/// Certify the BCD collapse for one correspondence case. The double-precision
/// roots in c.roots seed the extended Newton polish.
Certificate certify_collapse(const CorrespondenceCase& c);

struct ACertificate {
    double polished_residual = 0;
    double coeff_defect = 0;        // char poly vs (lambda-omega)^{N-M} (lambda+omega)^M
    double multiset_deviation = 0;  // max distance of the recovered spectrum to the model
};

/// Certify the A-type collapse spectrum {omega x(N-M), -omega x M}.
ACertificate certify_collapse_atype(const std::vector<cplx>& z, const std::vector<cplx>& mu,
                                    cplx omega, cplx hbar);

}  // namespace gcm::xprec
