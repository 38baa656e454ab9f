#include "gcm/calogero.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

#include "gcm/detail/kernels.hpp"

namespace gcm {

namespace {

constexpr double kTol = 1e-13;

detail::Mat<cplx> to_kernel(const Matrix& m) {
    detail::Mat<cplx> out(static_cast<int>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

Matrix from_kernel(const detail::Mat<cplx>& m) {
    Matrix out(m.r, m.r);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.r; ++j) out(i, j) = m(i, j);
    return out;
}

void check_positions(const RootSystem& rs, const std::vector<cplx>& q) {
    const int N = static_cast<int>(q.size());
    if (N < 1) throw std::invalid_argument("empty position vector");
    for (int a = 0; a < N; ++a) {
        if (rs.family != RootFamily::A && std::abs(q[a]) < kTol)
            throw std::invalid_argument("position at the origin");
        for (int b = a + 1; b < N; ++b) {
            if (std::abs(q[a] - q[b]) < kTol)
                throw std::invalid_argument("coincident positions");
            if (rs.family != RootFamily::A && std::abs(q[a] + q[b]) < kTol)
                throw std::invalid_argument("mirror-coincident positions");
        }
    }
}

}  // namespace

int RootSystem::lax_size() const {
    switch (family) {
        case RootFamily::A: return N;
        case RootFamily::B: return 2 * N + 1;
        case RootFamily::C:
        case RootFamily::D: return 2 * N;
    }
    throw std::logic_error("bad root family");
}

ConstraintCheck check_constraint(const Couplings& c) {
    const double defect =
        std::abs(c.g1 * (c.g1 * c.g1 - 2.0 * c.g2 * c.g2 + std::sqrt(2.0) * c.g2 * c.g4));
    return {defect < 1e-12, defect};
}

std::vector<cplx> extended_coordinates(const RootSystem& rs, const std::vector<cplx>& q) {
    if (rs.family == RootFamily::A) return q;
    std::vector<cplx> x = q;
    for (const cplx& v : q) x.push_back(-v);
    if (rs.family == RootFamily::B) x.push_back(0.0);
    return x;
}

Matrix lax_matrix(const RootSystem& rs, const PhaseState& state, const Couplings& c) {
    if (state.q.size() != state.qdot.size())
        throw std::invalid_argument("lax_matrix: positions/velocities size mismatch");
    check_positions(rs, state.q);
    if (rs.family == RootFamily::A)
        return from_kernel(detail::lax_a(state.q, state.qdot, c.g2));

    const auto chk = check_constraint(c);
    if (!chk.ok)
        throw std::invalid_argument("lax_matrix: coupling constraint violated, defect " +
                                    std::to_string(chk.defect));
    switch (rs.family) {
        case RootFamily::B:
            if (std::abs(c.g1 * c.g1 - 2.0 * c.g2 * c.g2) > 1e-12 || std::abs(c.g4) > 1e-12)
                throw std::invalid_argument("lax_matrix: B_N requires g4 = 0, g1^2 = 2 g2^2");
            break;
        case RootFamily::C:
            if (std::abs(c.g1) > 1e-12)
                throw std::invalid_argument("lax_matrix: C_N requires g1 = 0");
            break;
        case RootFamily::D:
            if (std::abs(c.g1) > 1e-12 || std::abs(c.g4) > 1e-12)
                throw std::invalid_argument("lax_matrix: D_N requires g1 = g4 = 0");
            break;
        default: break;
    }
    // g1 = 0 for C/D yields the effective 2Nx2N block
    const cplx g1 = rs.family == RootFamily::B ? c.g1 : cplx(0.0);
    return from_kernel(detail::lax_bcd(state.q, state.qdot, g1, c.g2, c.g4));
}

std::vector<cplx> hamiltonians(const Matrix& L, int kmax, const RootSystem& rs) {
    std::vector<cplx> H(kmax);
    Matrix P = L;
    for (int k = 1; k <= kmax; ++k) {
        const double norm = rs.family == RootFamily::A ? double(k) : 2.0 * k;
        H[k - 1] = P.trace() / norm;
        if (k < kmax) P *= L;
    }
    return H;
}

Matrix vandermonde(const std::vector<cplx>& x) {
    const int r = static_cast<int>(x.size());
    Matrix V(r, r);
    for (int i = 0; i < r; ++i) {
        cplx p = 1.0;
        for (int j = 0; j < r; ++j) {
            V(i, j) = p;
            p *= x[i];
        }
    }
    return V;
}

Matrix d0_matrix(const std::vector<cplx>& x, const RootSystem& rs) {
    const int r = static_cast<int>(x.size());
    Matrix D = Matrix::Zero(r, r);
    for (int i = 0; i < r; ++i) {
        cplx p = 1.0;
        for (int k = 0; k < r; ++k)
            if (k != i) p *= x[i] - x[k];
        if (std::abs(p) < 1e-300)
            throw std::invalid_argument("d0_matrix: coincident coordinates");
        D(i, i) = p;
    }
    if (rs.family == RootFamily::B) D(r - 1, r - 1) *= std::sqrt(2.0);
    return D;
}

Matrix c0_matrix(int r) {
    if (r < 1) throw std::invalid_argument("c0_matrix: r < 1");
    Matrix C = Matrix::Zero(r, r);
    for (int i = 1; i < r; ++i) C(i - 1, i) = double(i);
    return C;
}

Matrix ctilde_matrix(int r) {
    if (r < 1) throw std::invalid_argument("ctilde_matrix: r < 1");
    Matrix C = Matrix::Zero(r, r);
    for (int i = 1; i < r; ++i)
        C(i - 1, i) = (1.0 + ((i + 1) % 2 == 0 ? 1.0 : -1.0)) / 2.0;  // j = i+1, 1-based
    return C;
}

cplx elementary_symmetric(const std::vector<cplx>& x, int k) {
    if (k < 0 || k > static_cast<int>(x.size()))
        throw std::out_of_range("elementary_symmetric: k out of range");
    std::vector<cplx> e(k + 1, 0.0);
    e[0] = 1.0;
    for (const cplx& v : x)
        for (int j = std::min<int>(k, static_cast<int>(x.size())); j >= 1; --j)
            e[j] += v * e[j - 1];
    return e[k];
}

std::pair<Matrix, Matrix> frobenius(const std::vector<cplx>& x) {
    const int r = static_cast<int>(x.size());
    // monic coefficients: c_k = (-1)^{r-k} e_{r-k}(x), p(z) = sum_k c_k z^k
    std::vector<cplx> c(r + 1);
    for (int i = 0; i <= r; ++i) c[r - i] = ((i % 2) ? -1.0 : 1.0) * elementary_symmetric(x, i);
    Matrix J = Matrix::Zero(r, r);
    for (int i = 1; i < r; ++i) J(i, i - 1) = 1.0;
    for (int i = 0; i < r; ++i) J(i, r - 1) = -c[i];
    const cplx c0 = c[0];
    if (std::abs(c0) < 1e-300)
        throw std::invalid_argument("frobenius: zero coordinate, companion inverse undefined");
    Matrix Ji = Matrix::Zero(r, r);
    for (int i = 0; i < r - 1; ++i) Ji(i, i + 1) = 1.0;
    for (int k = 1; k < r; ++k) Ji(k - 1, 0) = -c[k] / c0;
    Ji(r - 1, 0) = -1.0 / c0;
    return {J, Ji};
}

Matrix companion_from_monic(const std::vector<cplx>& coeffs) {
    const int r = static_cast<int>(coeffs.size()) - 1;
    if (r < 1) throw std::invalid_argument("companion_from_monic: degree < 1");
    if (std::abs(coeffs[0] - cplx(1.0)) > 1e-14)
        throw std::invalid_argument("companion_from_monic: polynomial must be monic");
    Matrix J = Matrix::Zero(r, r);
    for (int i = 1; i < r; ++i) J(i, i - 1) = 1.0;
    for (int i = 0; i < r; ++i) J(i, r - 1) = -coeffs[r - i];
    return J;
}

std::vector<cplx> charpoly(const Matrix& L) {
    const auto c = detail::charpoly_fl(to_kernel(L));
    return {c.begin(), c.end()};
}

std::vector<cplx> polyroots(const std::vector<cplx>& coeffs) {
    const int r = static_cast<int>(coeffs.size()) - 1;
    if (r < 1) return {};
    Eigen::ComplexEigenSolver<Matrix> es(companion_from_monic(coeffs), false);
    std::vector<cplx> roots(r);
    for (int i = 0; i < r; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

namespace {

Matrix conjugated_core(const std::vector<cplx>& x, const RootSystem& rs, const Matrix& core,
                       cplx hbar, double* cond_out) {
    const Matrix V = vandermonde(x);
    const Matrix D0 = d0_matrix(x, rs);
    Eigen::PartialPivLU<Matrix> lu(V);
    const Matrix Vi = lu.inverse();
    if (cond_out) *cond_out = V.cwiseAbs().rowwise().sum().maxCoeff() *
                              Vi.cwiseAbs().rowwise().sum().maxCoeff();
    Matrix D0i = D0;
    for (int i = 0; i < D0.rows(); ++i) D0i(i, i) = 1.0 / D0(i, i);
    return hbar * D0i * V * core * Vi * D0;
}

}  // namespace

Matrix factorized_lax(const RootSystem& rs, const std::vector<cplx>& q, cplx xi, cplx hbar,
                      double* cond_out) {
    check_positions(rs, q);
    const std::vector<cplx> x = extended_coordinates(rs, q);
    const int r = static_cast<int>(x.size());
    Matrix core;
    switch (rs.family) {
        case RootFamily::C: core = c0_matrix(r) - (1.0 - 2.0 * xi) * ctilde_matrix(r); break;
        case RootFamily::D: core = c0_matrix(r) - ctilde_matrix(r); break;
        case RootFamily::B: core = c0_matrix(r) + ctilde_matrix(r); break;
        default: throw std::invalid_argument("factorized_lax: root system must be B, C or D");
    }
    return conjugated_core(x, rs, core, hbar, cond_out);
}

Matrix factorized_lax_a(const std::vector<cplx>& q, cplx omega, cplx hbar, double* cond_out) {
    const RootSystem rs{RootFamily::A, static_cast<int>(q.size())};
    check_positions(rs, q);
    const int r = static_cast<int>(q.size());
    Matrix L = conjugated_core(q, rs, c0_matrix(r), hbar, cond_out);
    return L + omega * Matrix::Identity(r, r);
}

}  // namespace gcm
