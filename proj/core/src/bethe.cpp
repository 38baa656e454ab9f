#include "gcm/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gcm/calogero.hpp"
#include "gcm/detail/kernels.hpp"

namespace gcm {

namespace {

detail::Tag ktag(SuperalgebraTag t) {
    switch (t) {
        case SuperalgebraTag::GL20: return detail::Tag::GL20;
        case SuperalgebraTag::GL11: return detail::Tag::GL11;
        case SuperalgebraTag::GL02: return detail::Tag::GL02;
    }
    throw std::logic_error("bad tag");
}

detail::Geom kgeom(Geometry g) {
    return g == Geometry::TwoN ? detail::Geom::TwoN : detail::Geom::TwoNPlusOne;
}

void check_tag(const GaudinSpec& spec, SuperalgebraTag tag) {
    spec.validate();
    if (!(grading_of(tag) == spec.grading))
        throw std::invalid_argument("superalgebra tag does not match the spec grading");
}

double max_z(const std::vector<cplx>& z) {
    double m = 0;
    for (const cplx& v : z) m = std::max(m, std::abs(v));
    return m;
}

void check_poles(const GaudinSpec& spec, const std::vector<cplx>& mu, bool mirror) {
    const double tol = 1e-13;
    for (std::size_t l = 0; l < mu.size(); ++l) {
        if (std::abs(mu[l]) < tol) throw std::invalid_argument("bethe: root at the origin");
        for (const cplx& zk : spec.z)
            if (std::abs(mu[l] - zk) < tol || (mirror && std::abs(mu[l] + zk) < tol))
                throw std::invalid_argument("bethe: root collides with a marked point");
        for (std::size_t k = l + 1; k < mu.size(); ++k)
            if (std::abs(mu[l] - mu[k]) < tol || (mirror && std::abs(mu[l] + mu[k]) < tol))
                throw std::invalid_argument("bethe: coincident roots");
    }
}

}  // namespace

Grading grading_of(SuperalgebraTag tag) {
    switch (tag) {
        case SuperalgebraTag::GL20: return GL20;
        case SuperalgebraTag::GL11: return GL11;
        case SuperalgebraTag::GL02: return GL02;
    }
    throw std::logic_error("bad tag");
}

const char* tag_name(SuperalgebraTag tag) {
    switch (tag) {
        case SuperalgebraTag::GL20: return "gl20";
        case SuperalgebraTag::GL11: return "gl11";
        case SuperalgebraTag::GL02: return "gl02";
    }
    return "?";
}

std::vector<cplx> bethe_residual(const GaudinSpec& spec, SuperalgebraTag tag,
                                 const std::vector<cplx>& mu) {
    check_tag(spec, tag);
    check_poles(spec, mu, true);
    return detail::bethe_residual(ktag(tag), kgeom(spec.geometry), spec.z, mu, spec.xi);
}

std::vector<cplx> bethe_residual_master(const GaudinSpec& spec, SuperalgebraTag tag,
                                        const std::vector<cplx>& mu) {
    check_tag(spec, tag);
    check_poles(spec, mu, true);
    const Grading g = spec.grading;
    const double s1 = parity(1, g) ? -1.0 : 1.0;
    const double s2 = parity(2, g) ? -1.0 : 1.0;
    const int M = static_cast<int>(mu.size());
    std::vector<cplx> F(M);
    std::vector<cplx> zs = spec.z;
    cplx xi = spec.xi;
    if (spec.geometry == Geometry::TwoNPlusOne) {
        zs.push_back(0.0);  // origin marked point of the 2N+1 geometry
        xi = spec.forced_xi();
    }
    for (int l = 0; l < M; ++l) {
        cplx zsum = 0, msum = 0;
        for (const cplx& zk : zs) zsum += 1.0 / (mu[l] - zk) + 1.0 / (mu[l] + zk);
        for (int k = 0; k < M; ++k)
            if (k != l) msum += 1.0 / (mu[l] - mu[k]) + 1.0 / (mu[l] + mu[k]);
        F[l] = 2.0 * xi / mu[l] + s1 * zsum - (s1 + s2) * (1.0 / mu[l] + msum);
    }
    return F;
}

std::vector<cplx> gaudin_eigenvalues(const GaudinSpec& spec, SuperalgebraTag tag,
                                     const std::vector<cplx>& mu) {
    check_tag(spec, tag);
    check_poles(spec, mu, true);
    if (spec.geometry == Geometry::TwoN)
        return detail::eigenvalues_2n(ktag(tag), spec.z, mu, spec.xi, spec.hbar);
    return detail::eigenvalues_2n1(ktag(tag), spec.z, mu, spec.hbar);
}

cplx canonical_root(cplx mu) {
    const double s = std::abs(mu);
    if (mu.real() < -1e-12 * s) return -mu;
    if (std::abs(mu.real()) <= 1e-12 * s && mu.imag() < 0) return -mu;
    return mu;
}

std::vector<cplx> canonicalize_set(std::vector<cplx> mu) {
    for (cplx& v : mu) v = canonical_root(v);
    std::sort(mu.begin(), mu.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return mu;
}

namespace {

struct Admissibility {
    double tol;
    double escape;
    const std::vector<cplx>* z;
    bool mirror;  // boundary models: exclude mu = 0 and mirror pairs

    bool ok(const std::vector<cplx>& mu) const {
        for (std::size_t l = 0; l < mu.size(); ++l) {
            if (std::abs(mu[l]) > escape) return false;
            if (mirror && std::abs(mu[l]) < tol) return false;
            for (const cplx& zk : *z) {
                if (std::abs(mu[l] - zk) < tol) return false;
                if (mirror && std::abs(mu[l] + zk) < tol) return false;
            }
            for (std::size_t k = l + 1; k < mu.size(); ++k) {
                if (std::abs(mu[l] - mu[k]) < tol) return false;
                if (mirror && std::abs(mu[l] + mu[k]) < tol) return false;
            }
        }
        return true;
    }
};

bool set_close(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

template <class FRes, class FJac, class FCanon>
std::vector<BetheRoots> multi_start(int M, const std::vector<cplx>& z, const SolveOptions& opt,
                                    FRes res, FJac jac, FCanon canon, const Admissibility& adm) {
    std::vector<BetheRoots> out;
    if (M == 0) {
        out.push_back(BetheRoots{{}, 0.0, true});
        return out;
    }
    const double S = std::max(1.0, max_z(z));
    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick;

    // structured pool: z-midpoints and +-z_i/2
    std::vector<cplx> pool;
    for (std::size_t i = 0; i < z.size(); ++i) {
        pool.push_back(z[i] / 2.0);
        pool.push_back(-z[i] / 2.0);
        for (std::size_t j = i + 1; j < z.size(); ++j) pool.push_back((z[i] + z[j]) / 2.0);
    }

    for (int s = 0; s < opt.seed_count; ++s) {
        std::vector<cplx> mu(M);
        const bool structured = s < opt.seed_count / 4 && !pool.empty();
        for (int l = 0; l < M; ++l) {
            if (structured) {
                const cplx base = pool[std::uniform_int_distribution<std::size_t>(
                    0, pool.size() - 1)(rng)];
                mu[l] = base + 0.15 * S * cplx(unif(rng), unif(rng));
            } else {
                mu[l] = 2.0 * S * cplx(unif(rng), unif(rng));
            }
        }
        const double r = detail::newton<cplx, double>(mu, res, jac, opt.newton_tol,
                                                      opt.max_iterations, opt.max_halvings);
        if (!(r < opt.accept_residual)) continue;
        std::vector<cplx> c = canon(mu);
        if (!adm.ok(c)) continue;
        bool dup = false;
        for (const BetheRoots& prev : out)
            if (set_close(prev.mu, c, opt.dedup_tol * S)) { dup = true; break; }
        if (!dup) out.push_back(BetheRoots{std::move(c), r, true});
    }
    std::sort(out.begin(), out.end(), [](const BetheRoots& a, const BetheRoots& b) {
        for (std::size_t i = 0; i < std::min(a.mu.size(), b.mu.size()); ++i) {
            if (a.mu[i].real() != b.mu[i].real()) return a.mu[i].real() < b.mu[i].real();
            if (a.mu[i].imag() != b.mu[i].imag()) return a.mu[i].imag() < b.mu[i].imag();
        }
        return false;
    });
    return out;
}

}  // namespace

std::vector<BetheRoots> solve_bethe(const GaudinSpec& spec, SuperalgebraTag tag,
                                    const SolveOptions& opt) {
    check_tag(spec, tag);
    const int M = spec.M;
    if (M > spec.N())
        throw std::invalid_argument("solve_bethe: M > N is outside the solved sectors");
    const auto t = ktag(tag);
    const auto gm = kgeom(spec.geometry);
    const cplx xi = spec.xi;
    const std::vector<cplx>& z = spec.z;
    auto res = [&](const std::vector<cplx>& mu) {
        return detail::bethe_residual(t, gm, z, mu, xi);
    };
    auto jac = [&](const std::vector<cplx>& mu) {
        return detail::bethe_jacobian(t, gm, z, mu, xi);
    };
    const double S = std::max(1.0, max_z(z));
    Admissibility adm{opt.admissibility_tol * S, opt.escape_factor * S, &z, true};
    auto canon = [](const std::vector<cplx>& mu) { return canonicalize_set(mu); };
    std::vector<BetheRoots> out = multi_start(M, z, opt, res, jac, canon, adm);

    // companion-route seeds for gl(1|1): every M-subset of the exact single
    // roots solves the decoupled system, so feed them through the same gate
    if (tag == SuperalgebraTag::GL11 && M >= 1) {
        std::vector<cplx> cand;
        try {
            cand = gl11_roots_exact(spec);
        } catch (const std::domain_error&) {
            cand.clear();  // degenerate leading coefficient: Newton results stand alone
        }
        if (static_cast<int>(cand.size()) >= M) {
            std::vector<int> idx(M);
            for (int i = 0; i < M; ++i) idx[i] = i;
            while (true) {
                std::vector<cplx> mu(M);
                for (int i = 0; i < M; ++i) mu[i] = cand[idx[i]];
                const double r = detail::newton<cplx, double>(mu, res, jac, opt.newton_tol,
                                                              opt.max_iterations,
                                                              opt.max_halvings);
                std::vector<cplx> c = canonicalize_set(mu);
                if (r < opt.accept_residual && adm.ok(c)) {
                    bool dup = false;
                    for (const BetheRoots& prev : out)
                        if (set_close(prev.mu, c, opt.dedup_tol * S)) { dup = true; break; }
                    if (!dup) out.push_back(BetheRoots{std::move(c), r, true});
                }
                int i = M - 1;
                while (i >= 0 && idx[i] == static_cast<int>(cand.size()) - M + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < M; ++j) idx[j] = idx[j - 1] + 1;
            }
            std::sort(out.begin(), out.end(), [](const BetheRoots& a, const BetheRoots& b) {
                for (std::size_t i = 0; i < std::min(a.mu.size(), b.mu.size()); ++i) {
                    if (a.mu[i].real() != b.mu[i].real()) return a.mu[i].real() < b.mu[i].real();
                    if (a.mu[i].imag() != b.mu[i].imag()) return a.mu[i].imag() < b.mu[i].imag();
                }
                return false;
            });
        }
    }
    return out;
}

std::vector<cplx> gl11_roots_exact(const GaudinSpec& spec) {
    check_tag(spec, SuperalgebraTag::GL11);
    const int N = spec.N();
    std::vector<cplx> z2(N);
    for (int k = 0; k < N; ++k) z2[k] = spec.z[k] * spec.z[k];

    // polynomial in y = mu^2 after clearing denominators:
    //   2N:    P(y) = xi prod_k (y - z_k^2) + y sum_k prod_{j!=k} (y - z_j^2)
    //   2N+1:  P(y) = sum_k prod_{j!=k} (y - z_j^2)
    auto poly_from_roots = [](const std::vector<cplx>& roots) {
        std::vector<cplx> c{1.0};
        for (const cplx& r : roots) {
            c.push_back(0.0);
            for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) c[j] -= r * c[j - 1];
        }
        return c;  // descending powers, monic
    };
    std::vector<cplx> P;
    auto add_scaled = [&](std::vector<cplx>& acc, const std::vector<cplx>& p, cplx f,
                          int shift) {
        // acc += f * p * y^shift, all in descending-power layout of fixed size
        const int off = static_cast<int>(acc.size()) - static_cast<int>(p.size()) - shift;
        for (std::size_t i = 0; i < p.size(); ++i) acc[off + i] += f * p[i];
    };
    if (spec.geometry == Geometry::TwoN) {
        P.assign(N + 1, 0.0);
        add_scaled(P, poly_from_roots(z2), spec.xi, 0);
        for (int k = 0; k < N; ++k) {
            std::vector<cplx> others;
            for (int j = 0; j < N; ++j)
                if (j != k) others.push_back(z2[j]);
            add_scaled(P, poly_from_roots(others), 1.0, 1);
        }
    } else {
        if (N == 1) return {};  // sum reduces to the constant 1: only mu = 0, inadmissible
        P.assign(N, 0.0);
        for (int k = 0; k < N; ++k) {
            std::vector<cplx> others;
            for (int j = 0; j < N; ++j)
                if (j != k) others.push_back(z2[j]);
            add_scaled(P, poly_from_roots(others), 1.0, 0);
        }
    }
    double scale = 0;
    for (const cplx& c : P) scale = std::max(scale, std::abs(c));
    if (std::abs(P[0]) < 1e-10 * std::max(scale, 1.0))
        throw std::domain_error("gl11_roots_exact: degenerate leading coefficient (xi = -N)");
    for (cplx& c : P) c /= P[0];
    P[0] = 1.0;

    const double S = std::max(1.0, max_z(spec.z));
    std::vector<cplx> out;
    for (const cplx& y : polyroots(P)) {
        const cplx mu = canonical_root(std::sqrt(y));
        if (std::abs(mu) < 1e-8 * S) continue;
        bool ok = true;
        for (const cplx& zk : spec.z)
            if (std::abs(mu - zk) < 1e-8 * S || std::abs(mu + zk) < 1e-8 * S) ok = false;
        for (const cplx& prev : out)
            if (std::abs(mu - prev) < 1e-8 * S) ok = false;
        if (ok) out.push_back(mu);
    }
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<cplx> atype_bethe_residual(const std::vector<cplx>& z, const std::vector<cplx>& mu,
                                       cplx omega, cplx hbar) {
    return detail::bethe_residual_a(z, mu, omega, hbar);
}

std::vector<cplx> atype_eigenvalues(const std::vector<cplx>& z, const std::vector<cplx>& mu,
                                    cplx omega, cplx hbar) {
    return detail::eigenvalues_a(z, mu, omega, hbar);
}

std::vector<BetheRoots> solve_bethe_atype(const std::vector<cplx>& z, int M, cplx omega,
                                          cplx hbar, const SolveOptions& opt) {
    if (M > static_cast<int>(z.size()))
        throw std::invalid_argument("solve_bethe_atype: M > N");
    auto res = [&](const std::vector<cplx>& mu) {
        return detail::bethe_residual_a(z, mu, omega, hbar);
    };
    auto jac = [&](const std::vector<cplx>& mu) {
        return detail::bethe_jacobian_a(z, mu, omega, hbar);
    };
    const double S = std::max(1.0, max_z(z));
    Admissibility adm{opt.admissibility_tol * S, opt.escape_factor * S, &z, false};
    auto canon = [](std::vector<cplx> mu) {
        std::sort(mu.begin(), mu.end(), [](const cplx& a, const cplx& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        return mu;
    };
    return multi_start(M, z, opt, res, jac, canon, adm);
}

}  // namespace gcm
