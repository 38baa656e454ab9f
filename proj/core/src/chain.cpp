#include "gcm/chain.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gcm {

namespace {

constexpr double kPoleTol = 1e-13;

void require_nonzero(cplx v, const char* what) {
    if (std::abs(v) < kPoleTol) throw std::invalid_argument(std::string("pole: ") + what);
}

Matrix sigma3() {
    Matrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

int sgn_p(const Grading& g, int i) { return parity(i, g) ? -1 : 1; }

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

cplx GaudinSpec::forced_xi() const {
    return cplx(parity(1, grading) - parity(2, grading), 0.0);
}

void GaudinSpec::validate() const {
    if (grading.dim() != 2)
        throw std::invalid_argument("GaudinSpec: only m+n = 2 gradings are instantiated");
    if (z.empty()) throw std::invalid_argument("GaudinSpec: N must be positive");
    if (std::abs(hbar) < kPoleTol) throw std::invalid_argument("GaudinSpec: hbar = 0");
    if (M < 0) throw std::invalid_argument("GaudinSpec: negative excitation count");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z[i]) < kPoleTol)
            throw std::invalid_argument("GaudinSpec: marked point at the origin");
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (std::abs(z[i] - z[j]) < kPoleTol || std::abs(z[i] + z[j]) < kPoleTol)
                throw std::invalid_argument("GaudinSpec: coincident or mirror-coincident points");
    }
    if (geometry == Geometry::TwoNPlusOne && std::abs(xi - forced_xi()) > 1e-12)
        throw std::invalid_argument("GaudinSpec: xi is forced to p(1)-p(2) in the 2N+1 geometry");
}

GradedOperator r_matrix(cplx u, cplx eta, const Grading& g) {
    require_nonzero(u, "R-matrix argument u = 0");
    GradedOperator P = graded_permutation(g);
    const long d = P.dim();
    return GradedOperator(g, 2, Matrix::Identity(d, d) + (eta / u) * P.mat);
}

double check_ybe(cplx u1, cplx u2, cplx u3, cplx eta, const Grading& g) {
    require_nonzero(u1 - u2, "u1 = u2");
    require_nonzero(u1 - u3, "u1 = u3");
    require_nonzero(u2 - u3, "u2 = u3");
    const GradedOperator R12 = embed_two_site(r_matrix(u1 - u2, eta, g), 1, 2, 3);
    const GradedOperator R13 = embed_two_site(r_matrix(u1 - u3, eta, g), 1, 3, 3);
    const GradedOperator R23 = embed_two_site(r_matrix(u2 - u3, eta, g), 2, 3, 3);
    return max_abs(R12.mat * R13.mat * R23.mat - R23.mat * R13.mat * R12.mat);
}

std::pair<Matrix, Matrix> k_matrices(cplx u, const BoundaryParams& p, const Grading& g) {
    require_nonzero(u, "K^- argument u = 0");
    const cplx w = u + cplx(g.m - g.n, 0) * p.eta / 2.0;
    require_nonzero(w, "K^+ argument u + (m-n) eta/2 = 0");
    Matrix km(2, 2), kp(2, 2);
    km << 1.0 + p.alpha * p.eta / u, 0, 0, -1.0 + p.alpha * p.eta / u;
    kp << 1.0 - p.beta * p.eta / w, 0, 0, -1.0 - p.beta * p.eta / w;
    return {km, kp};
}

std::pair<double, double> check_reflection(cplx u1, cplx u2, const BoundaryParams& p,
                                           const Grading& g) {
    const auto [km1, kp1] = k_matrices(u1, p, g);
    const auto [km2, kp2] = k_matrices(u2, p, g);
    const cplx shift = cplx(g.m - g.n, 0) * p.eta;

    // K^- reflection equation
    const Matrix R12m = r_matrix(u1 - u2, p.eta, g).mat;
    const Matrix R21p = r_matrix(u1 + u2, p.eta, g).mat;  // R21 = R12 for Yang's R
    const GradedOperator K1m = embed_one_site(km1, 1, 2, g);
    const GradedOperator K2m = embed_one_site(km2, 2, 2, g);
    const Matrix lhs_m = R12m * K1m.mat * R21p * K2m.mat;
    const Matrix rhs_m = K2m.mat * R21p * K1m.mat * R12m;

    // dual K^+ reflection equation with super-transposed entries
    const Matrix R_a = r_matrix(u2 - u1, p.eta, g).mat;
    const Matrix R_b = r_matrix(-u1 - u2 - shift, p.eta, g).mat;
    const GradedOperator K1p = embed_one_site(super_transpose(kp1, g), 1, 2, g);
    const GradedOperator K2p = embed_one_site(super_transpose(kp2, g), 2, 2, g);
    const Matrix lhs_p = R_a * K1p.mat * R_b * K2p.mat;
    const Matrix rhs_p = K2p.mat * R_b * K1p.mat * R_a;

    return {max_abs(lhs_m - rhs_m), max_abs(lhs_p - rhs_p)};
}

GradedOperator transfer_matrix(cplx u, const std::vector<cplx>& z, const BoundaryParams& p,
                               const Grading& g) {
    const int N = static_cast<int>(z.size());
    const int S = N + 1;  // auxiliary space is site 1
    const auto [km, kp] = k_matrices(u, p, g);
    Matrix prod = embed_one_site(kp, 1, S, g).mat;
    for (int i = 0; i < N; ++i) {
        require_nonzero(u - z[i], "transfer matrix at u = z_i");
        prod *= embed_two_site(r_matrix(u - z[i], p.eta, g), 1, i + 2, S).mat;
    }
    prod *= embed_one_site(km, 1, S, g).mat;
    for (int i = N - 1; i >= 0; --i) {
        require_nonzero(u + z[i], "transfer matrix at u = -z_i");
        prod *= embed_two_site(r_matrix(u + z[i], p.eta, g), 1, i + 2, S).mat;
    }
    return supertrace_site(GradedOperator(g, S, std::move(prod)), 1);
}

GradedOperator gaudin_hamiltonian(int i, const GaudinSpec& spec) {
    spec.validate();
    const int N = spec.N();
    if (i < 1 || i > N) throw std::out_of_range("gaudin_hamiltonian: site out of range");
    const Grading& g = spec.grading;
    const int S = spec.sites();
    std::vector<cplx> zs = spec.z;
    if (spec.geometry == Geometry::TwoNPlusOne) zs.push_back(0.0);
    const cplx xi = spec.geometry == Geometry::TwoNPlusOne ? spec.forced_xi() : spec.xi;

    const cplx pref = (2.0 * xi + cplx(sgn_p(g, 1) - sgn_p(g, 2), 0)) / (2.0 * zs[i - 1]);
    const Matrix s3i = embed_one_site(sigma3(), i, S, g).mat;
    Matrix H = pref * s3i;
    const GradedOperator P = graded_permutation(g);
    for (int k = 1; k <= S; ++k) {
        if (k == i) continue;
        const Matrix Pik = embed_two_site(P, std::min(i, k), std::max(i, k), S).mat;
        H += Pik / (zs[i - 1] - zs[k - 1]) + (s3i * Pik * s3i) / (zs[i - 1] + zs[k - 1]);
    }
    return GradedOperator(g, S, spec.hbar * H);
}

GaudinLimitReport check_gaudin_limit(cplx u, const std::vector<cplx>& z,
                                     const BoundaryParams& p, const Grading& g, cplx hbar) {
    const int N = static_cast<int>(z.size());
    const int deg = 2 * N + 2;  // degree of (u + (m-n) eta/2) T(u) in eta
    const int npts = deg + 1;
    const long dim = 1L << N;
    const double rho = 1e-2;
    const cplx a = cplx(g.m - g.n, 0) * hbar / 2.0;  // denominator u + a*eps

    std::vector<Matrix> vals(npts);
    for (int t = 0; t < npts; ++t) {
        const cplx eps = rho * std::exp(cplx(0, 2.0 * std::numbers::pi * t / npts));
        BoundaryParams pt = p;
        pt.eta = eps * hbar;
        vals[t] = (u + a * eps) * transfer_matrix(u, z, pt, g).mat;
    }
    // inverse DFT on the circle, then divide out (u + a*eps) as a power series
    std::vector<Matrix> poly(4), T(4);
    for (int k = 0; k <= 3; ++k) {
        Matrix c = Matrix::Zero(dim, dim);
        for (int t = 0; t < npts; ++t)
            c += vals[t] * std::exp(cplx(0, -2.0 * std::numbers::pi * k * t / npts));
        poly[k] = c / (double(npts) * std::pow(rho, k));
        T[k] = (poly[k] - (k >= 1 ? (a * T[k - 1]).eval() : Matrix::Zero(dim, dim))) / u;
    }

    GaudinLimitReport rep;
    const double s12 = sgn_p(g, 1) + sgn_p(g, 2);
    rep.const_dev = max_abs(T[0] - s12 * Matrix::Identity(dim, dim));
    const cplx c1 = T[1].trace() / double(dim);
    rep.eps1_scalar_dev = max_abs(T[1] - c1 * Matrix::Identity(dim, dim));

    GaudinSpec spec;
    spec.grading = g;
    spec.z = z;
    spec.xi = p.alpha - p.beta;
    spec.hbar = hbar;
    Matrix G = Matrix::Zero(dim, dim);
    for (int i = 1; i <= N; ++i) {
        const Matrix Hi = gaudin_hamiltonian(i, spec).mat;
        G += Hi / (u - z[i - 1]) - Hi / (u + z[i - 1]);
    }
    G *= hbar;
    // identity component of the model: the alpha*beta scalar carries the
    // supertrace weight (-1)^{p(1)} + (-1)^{p(2)} (equal to 2 for gl(2|0))
    const cplx scal_model = -s12 * p.alpha * p.beta * hbar * hbar / (u * u) +
                            G.trace() / double(dim);
    const cplx id2 = T[2].trace() / double(dim);
    const Matrix tl2 = T[2] - id2 * Matrix::Identity(dim, dim);
    const Matrix tlG = G - (G.trace() / double(dim)) * Matrix::Identity(dim, dim);
    rep.operator_dev = max_abs(tl2 - tlG);
    rep.scalar_dev = std::abs(id2 - scal_model);

    // O(eps^3) remainder exponent on a real ladder
    std::vector<double> le, lr;
    for (int t = 0; t < 6; ++t) {
        const double eps = 1e-3 * std::pow(10.0, t / 5.0);
        BoundaryParams pt = p;
        pt.eta = eps * hbar;
        const Matrix R = transfer_matrix(u, z, pt, g).mat - T[0] - eps * T[1] - eps * eps * T[2];
        le.push_back(std::log(eps));
        lr.push_back(std::log(std::max(max_abs(R), 1e-300)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t t = 0; t < le.size(); ++t) {
        sx += le[t]; sy += lr[t]; sxx += le[t] * le[t]; sxy += le[t] * lr[t];
    }
    const double nn = double(le.size());
    rep.remainder_exponent = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    return rep;
}

ExactSpectrum exact_spectrum(const GaudinSpec& spec, std::uint64_t rng_seed) {
    spec.validate();
    const int N = spec.N();
    const int S = spec.sites();
    const long dim = 1L << S;
    if (dim > 256) throw std::invalid_argument("exact_spectrum: 2^sites > 256");

    std::vector<Matrix> Hs;
    double scale = 0;
    for (int i = 1; i <= N; ++i) {
        Hs.push_back(gaudin_hamiltonian(i, spec).mat);
        scale = std::max(scale, max_abs(Hs.back()));
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ExactSpectrum out;
    for (int attempt = 0; attempt < 5; ++attempt) {
        Matrix comb = Matrix::Zero(dim, dim);
        for (const Matrix& H : Hs)
            comb += std::exp(cplx(0, 2.0 * std::numbers::pi * unif(rng))) * H;
        Eigen::ComplexEigenSolver<Matrix> es(comb);
        if (es.info() != Eigen::Success) { ++out.retries; continue; }
        const Matrix V = es.eigenvectors();
        Eigen::PartialPivLU<Matrix> lu(V);
        std::vector<Matrix> Ds;
        double leak = 0;
        for (const Matrix& H : Hs) {
            Matrix D = lu.solve(H * V);
            leak = std::max(leak, (D - Matrix(D.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
            Ds.push_back(std::move(D));
        }
        if (leak > 1e-9 * scale) { ++out.retries; continue; }
        out.tuples.resize(dim);
        for (long k = 0; k < dim; ++k) {
            out.tuples[k].resize(N);
            for (int i = 0; i < N; ++i) out.tuples[k][i] = Ds[i](k, k);
        }
        return out;
    }
    throw std::runtime_error("exact_spectrum: commuting family could not be separated "
                             "(non-commuting inputs or persistent degeneracy)");
}

}  // namespace gcm
