#pragma once

// Scalar-generic numeric kernels shared by the double-precision modules and
// the extended-precision certification path: Lax matrix builders, eigenvalue
// formulas, Bethe residuals/Jacobians, Faddeev-LeVerrier characteristic
// polynomials, Newton polishing and Durand-Kerner root finding.
//
// C is a complex type (std::complex<double> or a boost::multiprecision
// complex); R is the matching real type.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gcm::detail {

template <class C>
struct Mat {
    int r = 0;
    std::vector<C> a;

    Mat() = default;
    explicit Mat(int n) : r(n), a(static_cast<std::size_t>(n) * n, C(0)) {}

    C& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * r + j]; }
    const C& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * r + j]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = C(1);
        return m;
    }
};

template <class C>
Mat<C> mul(const Mat<C>& x, const Mat<C>& y) {
    Mat<C> z(x.r);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.r; ++k) {
            const C v = x(i, k);
            if (v == C(0)) continue;
            for (int j = 0; j < x.r; ++j) z(i, j) += v * y(k, j);
        }
    return z;
}

template <class C>
C trace(const Mat<C>& x) {
    C t(0);
    for (int i = 0; i < x.r; ++i) t += x(i, i);
    return t;
}

/// Monic characteristic polynomial of L by the Faddeev-LeVerrier recursion:
/// returns c[0..r] with c[0] = 1 and det(lambda I - L) = sum_j c[j] lambda^{r-j}.
template <class C>
std::vector<C> charpoly_fl(const Mat<C>& L) {
    const int r = L.r;
    std::vector<C> c(r + 1);
    c[0] = C(1);
    Mat<C> Mk(r);
    for (int k = 1; k <= r; ++k) {
        Mk = mul(L, Mk);
        for (int i = 0; i < r; ++i) Mk(i, i) += c[k - 1];
        c[k] = -trace(mul(L, Mk)) / C(k);
    }
    return c;
}

/// BCD Lax matrix, blocks P+A, B, C per the standard rational parametrization;
/// the full (2N+1)x(2N+1) matrix when g1 != 0, the effective 2Nx2N block
/// otherwise.
template <class C>
Mat<C> lax_bcd(const std::vector<C>& q, const std::vector<C>& qd, C g1, C g2, C g4) {
    const int N = static_cast<int>(q.size());
    const bool full = g1 != C(0);
    const int r = full ? 2 * N + 1 : 2 * N;
    const C sq2 = sqrt(C(2));
    Mat<C> L(r);
    for (int a = 0; a < N; ++a) {
        const C baa = g4 * sq2 / (C(2) * q[a]);
        L(a, a) = qd[a];
        L(N + a, N + a) = -qd[a];
        L(a, N + a) += baa;
        L(N + a, a) -= baa;
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            const C aab = g2 / (q[a] - q[b]);
            const C bab = g2 / (q[a] + q[b]);
            L(a, b) = aab;
            L(N + a, N + b) = -aab;
            L(a, N + b) += bab;
            L(N + a, b) -= bab;
        }
        if (full) {
            const C ca = g1 / q[a];
            L(a, 2 * N) = ca;
            L(N + a, 2 * N) = -ca;
            L(2 * N, a) = -ca;
            L(2 * N, N + a) = ca;
        }
    }
    return L;
}

/// A-type Lax matrix L_ij = delta_ij qdot_i + g (1-delta_ij)/(q_i - q_j).
template <class C>
Mat<C> lax_a(const std::vector<C>& q, const std::vector<C>& qd, C g) {
    const int N = static_cast<int>(q.size());
    Mat<C> L(N);
    for (int i = 0; i < N; ++i) {
        L(i, i) = qd[i];
        for (int j = 0; j < N; ++j)
            if (i != j) L(i, j) = g / (q[i] - q[j]);
    }
    return L;
}

enum class Tag { GL20, GL11, GL02 };
enum class Geom { TwoN, TwoNPlusOne };

/// Gaudin eigenvalues of the 2N geometry, displayed per-superalgebra forms.
template <class C>
std::vector<C> eigenvalues_2n(Tag tag, const std::vector<C>& z, const std::vector<C>& mu,
                              C xi, C hbar) {
    const int N = static_cast<int>(z.size());
    std::vector<C> H(N);
    for (int i = 0; i < N; ++i) {
        C zsum(0), msum(0);
        for (int k = 0; k < N; ++k)
            if (k != i) zsum += C(1) / (z[i] - z[k]) + C(1) / (z[i] + z[k]);
        for (const C& m : mu) msum += C(1) / (z[i] - m) + C(1) / (z[i] + m);
        C v;
        switch (tag) {
            case Tag::GL20: v = xi / z[i] + zsum - msum; break;
            case Tag::GL11: v = (xi + C(1)) / z[i] + zsum - msum; break;
            case Tag::GL02: v = xi / z[i] - zsum + msum; break;
            default: throw std::logic_error("bad tag");
        }
        H[i] = hbar * v;
    }
    return H;
}

/// Gaudin eigenvalues of the 2N+1 geometry (no free xi).
template <class C>
std::vector<C> eigenvalues_2n1(Tag tag, const std::vector<C>& z, const std::vector<C>& mu,
                               C hbar) {
    const int N = static_cast<int>(z.size());
    std::vector<C> H(N);
    for (int i = 0; i < N; ++i) {
        C zsum(0), msum(0);
        for (int k = 0; k < N; ++k)
            if (k != i) zsum += C(1) / (z[i] - z[k]) + C(1) / (z[i] + z[k]);
        for (const C& m : mu) msum += C(1) / (z[i] - m) + C(1) / (z[i] + m);
        const C v = C(2) / z[i] + zsum - msum;
        H[i] = tag == Tag::GL02 ? -hbar * v : hbar * v;
    }
    return H;
}

/// A-type eigenvalues H_i = omega + sum_{k!=i} hbar/(z_i - z_k) + sum_g hbar/(mu_g - z_i).
template <class C>
std::vector<C> eigenvalues_a(const std::vector<C>& z, const std::vector<C>& mu, C omega,
                             C hbar) {
    const int N = static_cast<int>(z.size());
    std::vector<C> H(N);
    for (int i = 0; i < N; ++i) {
        C v = omega;
        for (int k = 0; k < N; ++k)
            if (k != i) v += hbar / (z[i] - z[k]);
        for (const C& m : mu) v += hbar / (m - z[i]);
        H[i] = v;
    }
    return H;
}

/// All six boundary Bethe systems share the shape
///   F_l = A/mu_l + sum_k ( 1/(mu_l - z_k) + 1/(mu_l + z_k) )
///       - B sum_{k != l} ( 1/(mu_l - mu_k) + 1/(mu_l + mu_k) ),
/// with (A, B) read off the displayed equations per tag and geometry.
template <class C>
void boundary_system_params(Tag tag, Geom geom, C xi, C& A, C& B) {
    if (geom == Geom::TwoN) {
        switch (tag) {
            case Tag::GL20: A = C(2) * xi - C(2); B = C(2); return;
            case Tag::GL11: A = C(2) * xi;        B = C(0); return;
            case Tag::GL02: A = -C(2) * xi - C(2); B = C(2); return;
        }
    } else {
        A = C(0);
        B = (tag == Tag::GL11) ? C(0) : C(2);
        return;
    }
    throw std::logic_error("bad tag");
}

template <class C>
std::vector<C> bethe_residual(Tag tag, Geom geom, const std::vector<C>& z,
                              const std::vector<C>& mu, C xi) {
    C A, B;
    boundary_system_params(tag, geom, xi, A, B);
    const int M = static_cast<int>(mu.size());
    std::vector<C> F(M);
    for (int l = 0; l < M; ++l) {
        C v = (A == C(0)) ? C(0) : A / mu[l];
        for (const C& zk : z) v += C(1) / (mu[l] - zk) + C(1) / (mu[l] + zk);
        for (int k = 0; k < M; ++k)
            if (k != l) v -= B * (C(1) / (mu[l] - mu[k]) + C(1) / (mu[l] + mu[k]));
        F[l] = v;
    }
    return F;
}

template <class C>
Mat<C> bethe_jacobian(Tag tag, Geom geom, const std::vector<C>& z, const std::vector<C>& mu,
                      C xi) {
    C A, B;
    boundary_system_params(tag, geom, xi, A, B);
    const int M = static_cast<int>(mu.size());
    Mat<C> J(M);
    for (int l = 0; l < M; ++l) {
        C d = (A == C(0)) ? C(0) : -A / (mu[l] * mu[l]);
        for (const C& zk : z) {
            const C dm = mu[l] - zk, dp = mu[l] + zk;
            d -= C(1) / (dm * dm) + C(1) / (dp * dp);
        }
        for (int k = 0; k < M; ++k) {
            if (k == l) continue;
            const C dm = mu[l] - mu[k], dp = mu[l] + mu[k];
            d += B * (C(1) / (dm * dm) + C(1) / (dp * dp));
            J(l, k) = B * (C(1) / (dm * dm) - C(1) / (dp * dp));
        }
        J(l, l) = d;
    }
    return J;
}

/// A-type Bethe system residual: 2 omega + hbar sum_k 1/(mu_a - z_k)
///                               - 2 hbar sum_{g != a} 1/(mu_a - mu_g).
template <class C>
std::vector<C> bethe_residual_a(const std::vector<C>& z, const std::vector<C>& mu, C omega,
                                C hbar) {
    const int M = static_cast<int>(mu.size());
    std::vector<C> F(M);
    for (int a = 0; a < M; ++a) {
        C v = C(2) * omega;
        for (const C& zk : z) v += hbar / (mu[a] - zk);
        for (int g = 0; g < M; ++g)
            if (g != a) v -= C(2) * hbar / (mu[a] - mu[g]);
        F[a] = v;
    }
    return F;
}

template <class C>
Mat<C> bethe_jacobian_a(const std::vector<C>& z, const std::vector<C>& mu, C omega, C hbar) {
    (void)omega;
    const int M = static_cast<int>(mu.size());
    Mat<C> J(M);
    for (int a = 0; a < M; ++a) {
        C d(0);
        for (const C& zk : z) {
            const C dm = mu[a] - zk;
            d -= hbar / (dm * dm);
        }
        for (int g = 0; g < M; ++g) {
            if (g == a) continue;
            const C dm = mu[a] - mu[g];
            d += C(2) * hbar / (dm * dm);
            J(a, g) = -C(2) * hbar / (dm * dm);
        }
        J(a, a) = d;
    }
    return J;
}

/// Solve J dx = -F in place by partial-pivot Gaussian elimination.
/// Returns false when the pivot degenerates.
template <class C, class R>
bool solve_linear(Mat<C> J, std::vector<C> F, std::vector<C>& dx) {
    const int M = J.r;
    dx.assign(M, C(0));
    for (int c = 0; c < M; ++c) {
        int piv = c;
        R best = abs(J(c, c));
        for (int i = c + 1; i < M; ++i)
            if (abs(J(i, c)) > best) { best = abs(J(i, c)); piv = i; }
        if (!(best > R(0))) return false;
        if (piv != c) {
            for (int j = 0; j < M; ++j) std::swap(J(c, j), J(piv, j));
            std::swap(F[c], F[piv]);
        }
        for (int i = c + 1; i < M; ++i) {
            const C f = J(i, c) / J(c, c);
            if (f == C(0)) continue;
            for (int j = c; j < M; ++j) J(i, j) -= f * J(c, j);
            F[i] -= f * F[c];
        }
    }
    for (int i = M - 1; i >= 0; --i) {
        C s = -F[i];
        for (int j = i + 1; j < M; ++j) s -= J(i, j) * dx[j];
        dx[i] = s / J(i, i);
    }
    return true;
}

template <class C, class R>
R max_abs(const std::vector<C>& v) {
    R m(0);
    for (const C& x : v) m = std::max<R>(m, abs(x));
    return m;
}

/// Damped Newton iteration on a residual/Jacobian pair. Returns the final
/// residual max-norm (callers gate acceptance on it).
template <class C, class R, class FRes, class FJac>
R newton(std::vector<C>& mu, FRes res, FJac jac, R tol, int max_iter = 200,
         int max_halving = 20) {
    std::vector<C> F = res(mu), dx;
    R r = max_abs<C, R>(F);
    for (int it = 0; it < max_iter && r > tol; ++it) {
        if (!solve_linear<C, R>(jac(mu), F, dx)) return r;
        R lam(1);
        bool improved = false;
        for (int h = 0; h <= max_halving; ++h) {
            std::vector<C> trial = mu;
            for (std::size_t i = 0; i < mu.size(); ++i) trial[i] += C(lam) * dx[i];
            std::vector<C> Ft = res(trial);
            const R rt = max_abs<C, R>(Ft);
            if (rt < r) {
                mu = std::move(trial);
                F = std::move(Ft);
                r = rt;
                improved = true;
                break;
            }
            lam /= R(2);
        }
        if (!improved) break;
    }
    return r;
}

/// Fujiwara bound: every root of the monic polynomial sum c[j] x^{r-j}
/// satisfies |x| <= 2 max_j |c[j]|^{1/j}.
template <class C, class R>
R root_bound(const std::vector<C>& c) {
    const int r = static_cast<int>(c.size()) - 1;
    R b(0);
    for (int j = 1; j <= r; ++j) {
        R m = abs(c[j]);
        if (j == r) m /= R(2);
        b = std::max<R>(b, pow(m, R(1) / R(j)));
    }
    return R(2) * b;
}

/// Durand-Kerner simultaneous root iteration for a monic polynomial given by
/// coefficients c[0..r], c[0] = 1. Convergence for clustered (near-multiple)
/// roots is linear, which is enough for magnitude certificates.
template <class C, class R>
std::vector<C> durand_kerner(const std::vector<C>& c, int max_iter = 800,
                             R tol = R(0)) {
    const int r = static_cast<int>(c.size()) - 1;
    if (r <= 0) return {};
    auto eval = [&](const C& x) {
        C v = c[0];
        for (int j = 1; j <= r; ++j) v = v * x + c[j];
        return v;
    };
    const R radius = std::max<R>(root_bound<C, R>(c), R(1e-30));
    std::vector<C> w(r);
    for (int i = 0; i < r; ++i) {
        // spread starting points on a circle, irrational-ish angle offset
        const R th = R(2) * R(3.14159265358979323846) * R(i) / R(r) + R(0.40123);
        w[i] = C(radius * cos(th), radius * sin(th));
    }
    for (int it = 0; it < max_iter; ++it) {
        R step(0);
        for (int i = 0; i < r; ++i) {
            C den(1);
            for (int j = 0; j < r; ++j)
                if (j != i) den *= (w[i] - w[j]);
            if (den == C(0)) den = C(R(1e-60));
            const C d = eval(w[i]) / den;
            w[i] -= d;
            step = std::max<R>(step, abs(d));
        }
        if (step <= tol * radius) break;
    }
    return w;
}

}  // namespace gcm::detail
