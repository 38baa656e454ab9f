#include "gcm/xprec.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <stdexcept>

#include "gcm/detail/kernels.hpp"

namespace gcm::xprec {

namespace {

using mpc = boost::multiprecision::cpp_complex_100;
using mpr = mpc::value_type;

mpc lift(cplx v) { return mpc(v.real(), v.imag()); }

std::vector<mpc> lift(const std::vector<cplx>& v) {
    std::vector<mpc> out;
    out.reserve(v.size());
    for (const cplx& x : v) out.push_back(lift(x));
    return out;
}

double lower(const mpr& v) { return v.convert_to<double>(); }

detail::Tag ktag(SuperalgebraTag t) {
    switch (t) {
        case SuperalgebraTag::GL20: return detail::Tag::GL20;
        case SuperalgebraTag::GL11: return detail::Tag::GL11;
        case SuperalgebraTag::GL02: return detail::Tag::GL02;
    }
    throw std::logic_error("bad tag");
}

mpr matrix_norm(const detail::Mat<mpc>& L) {
    mpr m(0);
    for (const mpc& v : L.a) m = (std::max)(m, mpr(abs(v)));
    return m;
}

struct PolyData {
    mpr norm;
    mpr defect;
    std::vector<mpc> coeffs;
};

PolyData charpoly_data(const detail::Mat<mpc>& L) {
    PolyData out;
    out.coeffs = detail::charpoly_fl(L);
    out.norm = matrix_norm(L);
    out.defect = mpr(0);
    mpr p(1);
    for (int j = 1; j <= L.r; ++j) {
        p *= out.norm;
        out.defect = (std::max)(out.defect, mpr(abs(out.coeffs[j]) / p));
    }
    return out;
}

}  // namespace

Certificate certify_collapse(const CorrespondenceCase& c) {
    c.validate();
    const auto tag = ktag(c.tag);
    const auto geom = c.spec.geometry == Geometry::TwoN ? detail::Geom::TwoN
                                                        : detail::Geom::TwoNPlusOne;
    const std::vector<mpc> z = lift(c.spec.z);
    const mpc xi = lift(c.spec.xi), hbar = lift(c.spec.hbar);
    std::vector<mpc> mu = lift(c.roots.mu);

    Certificate cert;
    if (!mu.empty()) {
        auto res = [&](const std::vector<mpc>& m) {
            return detail::bethe_residual(tag, geom, z, m, xi);
        };
        auto jac = [&](const std::vector<mpc>& m) {
            return detail::bethe_jacobian(tag, geom, z, m, xi);
        };
        const mpr r = detail::newton<mpc, mpr>(mu, res, jac, mpr("1e-90"), 60, 30);
        cert.polished_residual = lower(r);
    }

    std::vector<mpc> qd;
    if (c.spec.geometry == Geometry::TwoN)
        qd = detail::eigenvalues_2n(tag, z, mu, xi, hbar);
    else
        qd = detail::eigenvalues_2n1(tag, z, mu, hbar);

    // rebuild the coupling preset in extended precision
    const mpc g1 = c.rs.family == RootFamily::B ? sqrt(mpc(2)) * hbar : mpc(0);
    mpc g4(0);
    if (c.rs.family == RootFamily::C)
        g4 = sqrt(mpc(2)) * hbar *
             (xi - mpc(parity(1, grading_of(c.tag)) - parity(2, grading_of(c.tag))));
    const detail::Mat<mpc> L = detail::lax_bcd(z, qd, g1, hbar, g4);

    const PolyData pd = charpoly_data(L);
    cert.charpoly_defect = lower(pd.defect);
    cert.eig_bound = lower(detail::root_bound<mpc, mpr>(pd.coeffs) / pd.norm);
    mpr worst(0);
    for (const mpc& w : detail::durand_kerner<mpc, mpr>(pd.coeffs, 1200, mpr("1e-40")))
        worst = (std::max)(worst, mpr(abs(w)));
    cert.max_eig = lower(worst / pd.norm);
    return cert;
}

ACertificate certify_collapse_atype(const std::vector<cplx>& z_d, const std::vector<cplx>& mu_d,
                                    cplx omega_d, cplx hbar_d) {
    const std::vector<mpc> z = lift(z_d);
    const mpc omega = lift(omega_d), hbar = lift(hbar_d);
    std::vector<mpc> mu = lift(mu_d);
    const int N = static_cast<int>(z.size());
    const int M = static_cast<int>(mu.size());

    ACertificate cert;
    if (!mu.empty()) {
        auto res = [&](const std::vector<mpc>& m) {
            return detail::bethe_residual_a(z, m, omega, hbar);
        };
        auto jac = [&](const std::vector<mpc>& m) {
            return detail::bethe_jacobian_a(z, m, omega, hbar);
        };
        const mpr r = detail::newton<mpc, mpr>(mu, res, jac, mpr("1e-90"), 60, 30);
        cert.polished_residual = lower(r);
    }
    const std::vector<mpc> qd = detail::eigenvalues_a(z, mu, omega, hbar);
    const detail::Mat<mpc> L = detail::lax_a(z, qd, hbar);
    const PolyData pd = charpoly_data(L);

    // model polynomial (lambda - omega)^{N-M} (lambda + omega)^M
    std::vector<mpc> model{mpc(1)};
    for (int k = 0; k < N; ++k) {
        const mpc w = k < N - M ? omega : -omega;
        model.push_back(mpc(0));
        for (int j = static_cast<int>(model.size()) - 1; j >= 1; --j)
            model[j] -= w * model[j - 1];
    }
    const mpr scale = (std::max)((std::max)(pd.norm, mpr(abs(omega))), mpr(1e-30));
    mpr dd(0), p(1);
    for (int k = 1; k <= N; ++k) {
        p *= scale * N;
        dd = (std::max)(dd, mpr(abs(pd.coeffs[k] - model[k]) / p));
    }
    cert.coeff_defect = lower(dd);

    mpr worst(0);
    for (const mpc& w : detail::durand_kerner<mpc, mpr>(pd.coeffs, 1200, mpr("1e-40"))) {
        const mpr d = (std::min)(mpr(abs(w - omega)), mpr(abs(w + omega)));
        worst = (std::max)(worst, d);
    }
    cert.multiset_deviation = lower(worst);
    return cert;
}

}  // namespace gcm::xprec
