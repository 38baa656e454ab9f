#include "gcm/duality.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gcm/detail/kernels.hpp"

namespace gcm {

namespace {

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

int parity1(SuperalgebraTag tag) { return parity(1, grading_of(tag)); }
int parity2(SuperalgebraTag tag) { return parity(2, grading_of(tag)); }

std::vector<cplx> circle_samples(double radius, int count, double phase) {
    std::vector<cplx> out(count);
    for (int t = 0; t < count; ++t)
        out[t] = radius * std::exp(cplx(0, 2.0 * std::numbers::pi * t / count + phase));
    return out;
}

/// Coefficients of det(X - lambda I) in monic form p(lambda) = det(lambda I - X),
/// recovered by interpolation of determinant evaluations on a circle. This is
/// the route independent of the Faddeev-LeVerrier recursion.
std::vector<cplx> charpoly_by_interpolation(const Matrix& X) {
    const int r = static_cast<int>(X.rows());
    const int npts = r + 1;
    const double rho = 2.0 * std::max(max_abs(X), 1e-30) * r;
    std::vector<cplx> c(r + 1, 0.0);
    for (int t = 0; t < npts; ++t) {
        const cplx lam = rho * std::exp(cplx(0, 2.0 * std::numbers::pi * t / npts));
        const cplx val = Eigen::PartialPivLU<Matrix>(lam * Matrix::Identity(r, r) - X)
                             .determinant();
        for (int k = 0; k <= r; ++k)
            c[k] += val * std::exp(cplx(0, -2.0 * std::numbers::pi * (r - k) * t / npts));
    }
    for (int k = 0; k <= r; ++k) c[k] /= double(npts) * std::pow(rho, r - k);
    return c;  // c[0] ~ 1, p(lambda) = sum c[k] lambda^{r-k}
}

double max_eigenvalue_mag(const Matrix& L) {
    Eigen::ComplexEigenSolver<Matrix> es(L, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

void CorrespondenceCase::validate() const {
    spec.validate();
    if (!(grading_of(tag) == spec.grading))
        throw std::invalid_argument("correspondence case: tag/grading mismatch");
    if (rs.N != spec.N())
        throw std::invalid_argument("correspondence case: particle count mismatch");
    switch (rs.family) {
        case RootFamily::B:
            if (spec.geometry != Geometry::TwoNPlusOne)
                throw std::invalid_argument("B_N pairs with the 2N+1 geometry");
            break;
        case RootFamily::C:
        case RootFamily::D:
            if (spec.geometry != Geometry::TwoN)
                throw std::invalid_argument("C_N/D_N pair with the 2N geometry");
            break;
        default:
            throw std::invalid_argument("correspondence case: root family must be B, C or D");
    }
    if (rs.family == RootFamily::D) {
        const cplx forced(parity1(tag) - parity2(tag), 0.0);
        if (std::abs(spec.xi - forced) > 1e-12)
            throw std::invalid_argument("D_N forces xi = p(1) - p(2)");
    }
}

Couplings coupling_preset(const RootSystem& rs, SuperalgebraTag tag, cplx xi, cplx hbar) {
    const double sq2 = std::sqrt(2.0);
    switch (rs.family) {
        case RootFamily::B:
            return {sq2 * hbar, hbar, 0.0};
        case RootFamily::C:
            return {0.0, hbar, sq2 * hbar * (xi - cplx(parity1(tag) - parity2(tag), 0.0))};
        case RootFamily::D: {
            const cplx forced(parity1(tag) - parity2(tag), 0.0);
            if (std::abs(xi - forced) > 1e-12)
                throw std::invalid_argument("coupling_preset: D_N forces xi = p(1) - p(2)");
            return {0.0, hbar, 0.0};
        }
        default:
            throw std::invalid_argument("coupling_preset: root family must be B, C or D");
    }
}

PhaseState substitute_velocities(const CorrespondenceCase& c) {
    c.validate();
    return {c.spec.z, gaudin_eigenvalues(c.spec, c.tag, c.roots.mu)};
}

CollapseReport verify_collapse(const CorrespondenceCase& c, double tol) {
    c.validate();
    CollapseReport rep;
    const auto res = bethe_residual(c.spec, c.tag, c.roots.mu);
    rep.bethe_residual = 0;
    for (const cplx& v : res) rep.bethe_residual = std::max(rep.bethe_residual, std::abs(v));
    rep.bethe_ok = rep.bethe_residual < 1e-10;

    const Couplings g = coupling_preset(c.rs, c.tag, c.spec.xi, c.spec.hbar);
    const Matrix L = lax_matrix(c.rs, substitute_velocities(c), g);
    rep.lax_size = static_cast<int>(L.rows());
    rep.lax_norm = max_abs(L);
    const auto coeffs = charpoly(L);
    for (int j = 1; j <= rep.lax_size; ++j)
        rep.charpoly_defect =
            std::max(rep.charpoly_defect, std::abs(coeffs[j]) / std::pow(rep.lax_norm, j));
    rep.max_abs_eigenvalue = max_eigenvalue_mag(L);

    rep.pass_coeffs = rep.charpoly_defect < tol;
    rep.pass_eigs =
        rep.max_abs_eigenvalue < rep.lax_norm * std::pow(tol, 1.0 / rep.lax_size);
    if (c.spec.M >= 1) {
        const auto det = check_determinant_identity(c);
        rep.identity_residuals["determinant_pointwise"] = det.pointwise;
        rep.identity_residuals["determinant_coeffwise"] = det.coeffwise;
    }
    rep.pass = rep.bethe_ok && rep.pass_coeffs && rep.pass_eigs;
    return rep;
}

Matrix dual_lax(const CorrespondenceCase& c) {
    c.validate();
    if (c.spec.M < 1 || c.roots.mu.empty())
        throw std::invalid_argument("dual_lax: M >= 1 required");
    const std::vector<cplx>& mu = c.roots.mu;
    const std::vector<cplx>& z = c.spec.z;
    const cplx hbar = c.spec.hbar;
    const double sq2 = std::sqrt(2.0);
    const RootSystem dual_rs{RootFamily::C, static_cast<int>(mu.size())};

    if (c.rs.family == RootFamily::B) {
        // (w46): arguments interchanged, parameter xi = -1, coupling sqrt2 hbar,
        // velocities negated; gl(0|2) adds an overall negation
        std::vector<cplx> v = detail::eigenvalues_2n(detail::Tag::GL20, mu, z, cplx(-1.0), hbar);
        for (cplx& x : v) x = -x;
        const Matrix Lt = lax_matrix(dual_rs, {mu, v}, {0.0, hbar, sq2 * hbar});
        return c.tag == SuperalgebraTag::GL02 ? Matrix(-Lt) : Lt;
    }
    cplx arg;
    switch (c.tag) {
        case SuperalgebraTag::GL20: arg = 1.0 - c.spec.xi; break;
        case SuperalgebraTag::GL11: arg = -c.spec.xi; break;
        case SuperalgebraTag::GL02: arg = 1.0 + c.spec.xi; break;
    }
    const std::vector<cplx> v = detail::eigenvalues_2n(detail::Tag::GL20, mu, z, arg, hbar);
    const Matrix Lt = lax_matrix(dual_rs, {mu, v}, {0.0, hbar, sq2 * hbar * arg});
    return c.tag == SuperalgebraTag::GL02 ? Matrix(-Lt) : Lt;
}

namespace {

DetIdentityReport compare_identity(const Matrix& L, const Matrix& Lt, int pinned_power,
                                   const std::vector<cplx>& pinned_roots,
                                   std::vector<cplx> lambda_samples) {
    // monic identity p_L(lambda) = prod_k (lambda - pinned_roots_k)^{...} p_Lt(lambda)
    // with pinned_power zeros at the origin unless pinned_roots overrides.
    const int r = static_cast<int>(L.rows());
    const int rt = static_cast<int>(Lt.rows());
    DetIdentityReport rep;
    const double scale = std::max(max_abs(L), 1e-30);
    if (lambda_samples.empty()) lambda_samples = circle_samples(2.0 * scale * r, 16, 0.123);

    for (const cplx& lam : lambda_samples) {
        const cplx lhs =
            Eigen::PartialPivLU<Matrix>(lam * Matrix::Identity(r, r) - L).determinant();
        cplx rhs = rt > 0 ? Eigen::PartialPivLU<Matrix>(lam * Matrix::Identity(rt, rt) - Lt)
                                .determinant()
                          : cplx(1.0);
        if (pinned_roots.empty()) {
            rhs *= std::pow(lam, double(pinned_power));
        } else {
            for (const cplx& w : pinned_roots) rhs *= lam - w;
        }
        rep.pointwise =
            std::max(rep.pointwise, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }

    // coefficient-wise: Faddeev-LeVerrier on L against the interpolated dual
    // char poly multiplied by the pinned factor
    const auto cl = charpoly(L);
    std::vector<cplx> rhs_poly{1.0};
    if (rt > 0) rhs_poly = charpoly_by_interpolation(Lt);
    if (pinned_roots.empty()) {
        rhs_poly.resize(rhs_poly.size() + pinned_power, 0.0);
    } else {
        for (const cplx& w : pinned_roots) {
            rhs_poly.push_back(0.0);
            for (int j = static_cast<int>(rhs_poly.size()) - 1; j >= 1; --j)
                rhs_poly[j] -= w * rhs_poly[j - 1];
        }
    }
    for (int k = 0; k <= r; ++k) {
        const double num = std::abs(cl[k] - rhs_poly[k]);
        const double den = std::max({std::pow(scale * r, k), std::abs(cl[k]),
                                     std::abs(rhs_poly[k])});
        rep.coeffwise = std::max(rep.coeffwise, num / den);
    }
    return rep;
}

}  // namespace

DetIdentityReport check_determinant_identity(const CorrespondenceCase& c,
                                             const std::vector<cplx>& lambda_samples) {
    c.validate();
    const Couplings g = coupling_preset(c.rs, c.tag, c.spec.xi, c.spec.hbar);
    const Matrix L = lax_matrix(c.rs, substitute_velocities(c), g);
    const int M = static_cast<int>(c.roots.mu.size());
    Matrix Lt;
    if (M >= 1) Lt = dual_lax(c);
    return compare_identity(L, Lt, c.rs.lax_size() - 2 * M, {}, lambda_samples);
}

DetIdentityReport check_determinant_identity_atype(const std::vector<cplx>& z,
                                                   const std::vector<cplx>& mu, cplx omega,
                                                   cplx hbar,
                                                   const std::vector<cplx>& lambda_samples) {
    const RootSystem rs{RootFamily::A, static_cast<int>(z.size())};
    const Matrix L = lax_matrix(rs, {z, atype_eigenvalues(z, mu, omega, hbar)}, {0.0, hbar, 0.0});
    const int M = static_cast<int>(mu.size());
    Matrix Lt;
    if (M >= 1) {
        // dual (q15) diagonal: omega - sum_{g != a} hbar/(mu_a - mu_g) - sum_k hbar/(z_k - mu_a)
        std::vector<cplx> v(M);
        for (int a = 0; a < M; ++a) {
            cplx s = omega;
            for (int g = 0; g < M; ++g)
                if (g != a) s -= hbar / (mu[a] - mu[g]);
            for (const cplx& zk : z) s -= hbar / (zk - mu[a]);
            v[a] = s;
        }
        Lt = lax_matrix(RootSystem{RootFamily::A, M}, {mu, v}, {0.0, hbar, 0.0});
    }
    std::vector<cplx> pinned(z.size() - M, omega);
    return compare_identity(L, Lt, 0, pinned, lambda_samples);
}

FrobeniusReductionReport check_frobenius_reduction(const std::vector<cplx>& mu, cplx xi,
                                                   cplx hbar) {
    const int M = static_cast<int>(mu.size());
    if (M < 1) throw std::invalid_argument("check_frobenius_reduction: M >= 1 required");
    const double sq2 = std::sqrt(2.0);
    const RootSystem rs{RootFamily::C, M};

    // on-shell dual (a4): velocities H^{2|0}({mu}, {}, xi), coupling -sqrt2 hbar xi
    const std::vector<cplx> v = detail::eigenvalues_2n(detail::Tag::GL20, mu, {}, xi, hbar);
    const Matrix lhs = lax_matrix(rs, {mu, v}, {0.0, hbar, -sq2 * hbar * xi});

    const std::vector<cplx> x = extended_coordinates(rs, mu);
    const int r = 2 * M;
    const auto [J, Jinv] = frobenius(x);
    const Matrix core = c0_matrix(r) - (1.0 + 2.0 * xi) * ctilde_matrix(r) + 2.0 * xi * Jinv;
    const Matrix V = vandermonde(x);
    const Matrix D0 = d0_matrix(x, rs);
    Matrix D0i = D0;
    for (int i = 0; i < r; ++i) D0i(i, i) = 1.0 / D0(i, i);
    const Matrix rhs = hbar * D0i * V * core * Eigen::PartialPivLU<Matrix>(V).inverse() * D0;

    FrobeniusReductionReport rep;
    rep.matrix_residual = max_abs(lhs - rhs) / std::max(max_abs(lhs), 1e-30);
    rep.row1_max = core.row(0).cwiseAbs().maxCoeff();
    for (int i = 2; i < r; ++i)
        for (int j = 1; j < i; ++j)
            rep.minor_lower_max = std::max(rep.minor_lower_max, std::abs(core(i, j)));
    const auto cc = charpoly(core);
    const double s = std::max(max_abs(core), 1e-30);
    for (int j = 1; j <= r; ++j)
        rep.charpoly_defect = std::max(rep.charpoly_defect, std::abs(cc[j]) / std::pow(s, j));
    return rep;
}

G4EvennessReport check_g4_evenness(const PhaseState& state, cplx g2, cplx g4,
                                   std::uint64_t rng_seed) {
    const int N = static_cast<int>(state.q.size());
    const RootSystem rs{RootFamily::C, N};
    const Matrix Lp = lax_matrix(rs, state, {0.0, g2, g4});
    const Matrix Lm = lax_matrix(rs, state, {0.0, g2, -g4});
    const auto cp = charpoly(Lp), cm = charpoly(Lm);
    const double scale = std::max(max_abs(Lp), 1e-30);
    G4EvennessReport rep;
    for (std::size_t j = 1; j < cp.size(); ++j)
        rep.evenness_residual = std::max(
            rep.evenness_residual, std::abs(cp[j] - cm[j]) / std::pow(scale * 2 * N, double(j)));

    // (b111): det(L - lambda I) = det((B-A-P)(B+A+P) + lambda^2 I)
    Matrix P = Matrix::Zero(N, N), A = Matrix::Zero(N, N), B = Matrix::Zero(N, N);
    for (int a = 0; a < N; ++a) {
        P(a, a) = state.qdot[a];
        B(a, a) = g4 * std::sqrt(2.0) / (2.0 * state.q[a]);
        for (int b = 0; b < N; ++b)
            if (a != b) {
                A(a, b) = g2 / (state.q[a] - state.q[b]);
                B(a, b) = g2 / (state.q[a] + state.q[b]);
            }
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const cplx lam = 2.0 * scale * cplx(unif(rng), unif(rng));
        const cplx lhs =
            Eigen::PartialPivLU<Matrix>(Lp - lam * Matrix::Identity(2 * N, 2 * N)).determinant();
        const cplx rhs = Eigen::PartialPivLU<Matrix>(
                             Matrix((B - A - P) * (B + A + P) + lam * lam * Matrix::Identity(N, N)))
                             .determinant();
        rep.reduction_residual = std::max(
            rep.reduction_residual, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    return rep;
}

ATypeCollapseReport verify_collapse_atype(const std::vector<cplx>& z,
                                          const std::vector<cplx>& mu, cplx omega, cplx hbar,
                                          double tol) {
    const int N = static_cast<int>(z.size());
    const int M = static_cast<int>(mu.size());
    ATypeCollapseReport rep;
    for (const cplx& f : atype_bethe_residual(z, mu, omega, hbar))
        rep.bethe_residual = std::max(rep.bethe_residual, std::abs(f));
    rep.bethe_ok = rep.bethe_residual < 1e-10;

    const RootSystem rs{RootFamily::A, N};
    const Matrix L = lax_matrix(rs, {z, atype_eigenvalues(z, mu, omega, hbar)}, {0.0, hbar, 0.0});
    rep.lax_size = N;
    rep.lax_norm = max_abs(L);

    // coefficient certificate against (lambda - omega)^{N-M} (lambda + omega)^M
    std::vector<cplx> model{1.0};
    for (int k = 0; k < N; ++k) {
        const cplx w = k < N - M ? omega : -omega;
        model.push_back(0.0);
        for (int j = static_cast<int>(model.size()) - 1; j >= 1; --j)
            model[j] -= w * model[j - 1];
    }
    const auto cl = charpoly(L);
    const double scale = std::max({rep.lax_norm, std::abs(omega), 1e-30});
    for (int k = 1; k <= N; ++k)
        rep.coeff_defect = std::max(
            rep.coeff_defect, std::abs(cl[k] - model[k]) / std::pow(scale * N, double(k)));

    Eigen::ComplexEigenSolver<Matrix> es(L, false);
    std::vector<cplx> eig(N);
    for (int i = 0; i < N; ++i) eig[i] = es.eigenvalues()(i);
    // assign the N-M eigenvalues nearest omega (relative to -omega) to omega
    std::sort(eig.begin(), eig.end(), [&](const cplx& a, const cplx& b) {
        return std::abs(a - omega) - std::abs(a + omega) <
               std::abs(b - omega) - std::abs(b + omega);
    });
    for (int i = 0; i < N; ++i)
        rep.multiset_deviation = std::max(
            rep.multiset_deviation, i < N - M ? std::abs(eig[i] - omega) : std::abs(eig[i] + omega));

    rep.pass = rep.bethe_ok && rep.coeff_defect < tol;
    return rep;
}

}  // namespace gcm
