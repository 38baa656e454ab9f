#include "gcm/graded.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gcm {

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// digits of J in base d, site 1 first (slowest-varying), 0-based values
void digits_of(long J, int d, int sites, int* out) {
    for (int t = sites - 1; t >= 0; --t) {
        out[t] = static_cast<int>(J % d);
        J /= d;
    }
}

}  // namespace

int parity(int i, const Grading& g) {
    if (g.m < 0 || g.n < 0 || g.m + g.n < 1)
        throw std::invalid_argument("parity: invalid grading");
    if (i < 1 || i > g.dim())
        throw std::out_of_range("parity: basis index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(g.dim()));
    return i <= g.m ? 0 : 1;
}

GradedOperator::GradedOperator(Grading g, int s, Matrix m_)
    : grading(g), sites(s), mat(std::move(m_)) {
    if (s < 1) throw std::invalid_argument("GradedOperator: sites < 1");
    const long d = ipow(grading.dim(), s);
    if (mat.rows() != d || mat.cols() != d)
        throw std::invalid_argument("GradedOperator: matrix is " + std::to_string(mat.rows()) +
                                    "x" + std::to_string(mat.cols()) + ", expected " +
                                    std::to_string(d));
}

GradedOperator GradedOperator::identity(const Grading& g, int sites) {
    const long d = ipow(g.dim(), sites);
    return GradedOperator(g, sites, Matrix::Identity(d, d));
}

int multi_parity(long J, const Grading& g, int sites) {
    const int d = g.dim();
    int s = 0;
    for (int t = 0; t < sites; ++t) {
        s += (J % d) >= g.m ? 1 : 0;
        J /= d;
    }
    return s & 1;
}

GradedOperator graded_permutation(const Grading& g) {
    const int d = g.dim();
    Matrix P = Matrix::Zero(d * d, d * d);
    // action P |a,b> = (-1)^{p(a)p(b)} |b,a>
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const int pa = parity(a + 1, g), pb = parity(b + 1, g);
            P(b * d + a, a * d + b) = (pa && pb) ? -1.0 : 1.0;
        }
    return GradedOperator(g, 2, std::move(P));
}

GradedOperator graded_tensor(const GradedOperator& a, const GradedOperator& b) {
    if (!(a.grading == b.grading))
        throw std::invalid_argument("graded_tensor: grading mismatch");
    const long da = a.dim(), db = b.dim();
    std::vector<int> pa(da), pb(db);
    for (long j = 0; j < da; ++j) pa[j] = multi_parity(j, a.grading, a.sites);
    for (long k = 0; k < db; ++k) pb[k] = multi_parity(k, b.grading, b.sites);
    Matrix out(da * db, da * db);
    for (long i = 0; i < da; ++i)
        for (long k = 0; k < db; ++k)
            for (long j = 0; j < da; ++j)
                for (long l = 0; l < db; ++l) {
                    cplx v = a.mat(i, j) * b.mat(k, l);
                    if (((pb[k] + pb[l]) & 1) && pa[j]) v = -v;
                    out(i * db + k, j * db + l) = v;
                }
    return GradedOperator(a.grading, a.sites + b.sites, std::move(out));
}

GradedOperator super_transpose(const GradedOperator& a) {
    if (a.sites != 1)
        throw std::invalid_argument("super_transpose: defined on single-site operators");
    return GradedOperator(a.grading, 1, super_transpose(a.mat, a.grading));
}

Matrix super_transpose(const Matrix& a, const Grading& g) {
    const int d = g.dim();
    if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument("super_transpose: dimension mismatch");
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int pi = parity(i + 1, g), pj = parity(j + 1, g);
            const int sign = (pj + pi * pj) & 1;
            out(j, i) = sign ? -a(i, j) : a(i, j);
        }
    return out;
}

cplx supertrace(const GradedOperator& a) {
    cplx s = 0;
    for (long J = 0; J < a.dim(); ++J)
        s += multi_parity(J, a.grading, a.sites) ? -a.mat(J, J) : a.mat(J, J);
    return s;
}

GradedOperator supertrace_site(const GradedOperator& a, int site) {
    if (site < 1 || site > a.sites)
        throw std::out_of_range("supertrace_site: site out of range");
    const int d = a.grading.dim();
    const long stride = ipow(d, a.sites - site);   // distance between site values
    const long dim_out = a.dim() / d;
    Matrix out = Matrix::Zero(dim_out, dim_out);
    std::vector<int> dig(a.sites);
    // enumerate reduced indices by inserting value v at `site`
    for (long J = 0; J < dim_out; ++J) {
        // expand J (on sites-1 sites) into full index with a placeholder slot
        long hi = J / stride, lo = J % stride;
        for (long K = 0; K < dim_out; ++K) {
            long hiK = K / stride, loK = K % stride;
            cplx s = 0;
            for (int v = 0; v < d; ++v) {
                const long Jf = (hi * d + v) * stride + lo;
                const long Kf = (hiK * d + v) * stride + loK;
                const cplx term = a.mat(Jf, Kf);
                s += (v >= a.grading.m) ? -term : term;
            }
            out(J, K) = s;
        }
    }
    return GradedOperator(a.grading, a.sites - 1, std::move(out));
}

GradedOperator embed_one_site(const Matrix& op, int site, int nsites, const Grading& g) {
    if (site < 1 || site > nsites)
        throw std::out_of_range("embed_one_site: site out of range");
    const int d = g.dim();
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("embed_one_site: operator must be single-site");
    const long dim = ipow(d, nsites);
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<int> dig(nsites);
    for (long K = 0; K < dim; ++K) {
        digits_of(K, d, nsites, dig.data());
        int left = 0;  // parity of column digits strictly left of `site`
        for (int s = 0; s < site - 1; ++s) left += dig[s] >= g.m;
        left &= 1;
        const int b = dig[site - 1];
        for (int a = 0; a < d; ++a) {
            const cplx v = op(a, b);
            if (v == cplx(0)) continue;
            const int punit = (parity(a + 1, g) + parity(b + 1, g)) & 1;
            long J = K + (long)(a - b) * ipow(d, nsites - site);
            out(J, K) += (punit && left) ? -v : v;
        }
    }
    return GradedOperator(g, nsites, std::move(out));
}

GradedOperator embed_two_site(const GradedOperator& op, int i, int k, int nsites) {
    if (op.sites != 2) throw std::invalid_argument("embed_two_site: operator must be two-site");
    if (i == k) throw std::invalid_argument("embed_two_site: site collision");
    if (i < 1 || k < 1 || i > nsites || k > nsites)
        throw std::out_of_range("embed_two_site: site out of range");
    const Grading g = op.grading;
    const int d = g.dim();
    if (i > k) {
        // swap roles: op with tensor factors exchanged is P op P
        const GradedOperator P = graded_permutation(g);
        return embed_two_site(GradedOperator(g, 2, P.mat * op.mat * P.mat), k, i, nsites);
    }
    const long dim = ipow(d, nsites);
    const long stri = ipow(d, nsites - i), strk = ipow(d, nsites - k);
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<int> dig(nsites);
    for (long K = 0; K < dim; ++K) {
        digits_of(K, d, nsites, dig.data());
        const int b = dig[i - 1], e = dig[k - 1];
        int pl = 0, pm = 0;  // column parity left of i, and strictly between i and k
        for (int s = 0; s < i - 1; ++s) pl += dig[s] >= g.m;
        for (int s = i; s < k - 1; ++s) pm += dig[s] >= g.m;
        pl &= 1; pm &= 1;
        const int pb = parity(b + 1, g), pe = parity(e + 1, g);
        for (int a = 0; a < d; ++a)
            for (int c = 0; c < d; ++c) {
                const cplx v = op.mat(a * d + c, b * d + e);
                if (v == cplx(0)) continue;
                const int pa = parity(a + 1, g), pc = parity(c + 1, g);
                // sign from realizing op as sum of E_ab^(i) E_ce^(k) with
                // graded single-site embeddings (see module header)
                int x = ((pc + pe) & 1) * ((pb + pl + pm) & 1);
                x += ((pa + pb) & 1) * pl;
                // the two-site matrix realization itself carries (-1)^{(p(c)+p(e))p(b)}
                x += ((pc + pe) & 1) * pb;
                const long J = K + (long)(a - b) * stri + (long)(c - e) * strk;
                out(J, K) += (x & 1) ? -v : v;
            }
    }
    return GradedOperator(g, nsites, std::move(out));
}

}  // namespace gcm
