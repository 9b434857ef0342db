#include "knotrep/numeric_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace knotrep {

BigFloat frobenius_norm(const Matrix<BigComplex>& a) {
    BigFloat s(0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j).abs2();
    return sqrt(s);
}

JacobiSvd jacobi_svd(Matrix<BigComplex> a) {
    const int m = a.rows(), n = a.cols();
    JacobiSvd out;
    out.v = Matrix<BigComplex>::identity(n);
    if (m == 0 || n == 0) {
        out.rotated = a;
        return out;
    }

    std::vector<BigFloat> colnorm2(static_cast<size_t>(n), BigFloat(0));
    for (int j = 0; j < n; ++j) {
        BigFloat s(0);
        for (int i = 0; i < m; ++i) s += a(i, j).abs2();
        colnorm2[static_cast<size_t>(j)] = s;
    }

    const BigFloat tol = pow2(-(working_precision_bits() - 24));
    const BigFloat tol2 = tol * tol;
    // columns below this norm are rounding noise of exact zeros; rotating
    // noise against noise never converges relatively
    BigFloat frob2(0);
    for (const auto& s : colnorm2) frob2 += s;
    const BigFloat floor2 = frob2 * pow2(-2 * (working_precision_bits() * 3 / 4));
    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated_any = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                BigFloat& app = colnorm2[static_cast<size_t>(p)];
                BigFloat& aqq = colnorm2[static_cast<size_t>(q)];
                if (app <= floor2 || aqq <= floor2) continue;
                BigComplex g;
                for (int i = 0; i < m; ++i) g += a(i, p).conj() * a(i, q);
                BigFloat g2 = g.abs2();
                if (g2 <= tol2 * app * aqq) continue;
                rotated_any = true;
                BigFloat gabs = sqrt(g2);
                BigComplex phase = g / BigComplex(gabs); // |phase| = 1
                BigFloat zeta = (aqq - app) / (2 * gabs);
                BigFloat t;
                if (zeta >= 0)
                    t = BigFloat(1) / (zeta + sqrt(1 + zeta * zeta));
                else
                    t = BigFloat(-1) / (-zeta + sqrt(1 + zeta * zeta));
                BigFloat c = BigFloat(1) / sqrt(1 + t * t);
                BigFloat s = c * t;
                BigComplex cs(c), ss(s);
                BigComplex sphase = ss * phase.conj();
                // [cp, cq] <- [c*cp - s*conj(phase)*cq, s*cp + c*conj(phase)*cq]
                for (int i = 0; i < m; ++i) {
                    BigComplex u = a(i, p), w = a(i, q);
                    a(i, p) = cs * u - sphase * w;
                    a(i, q) = ss * u + cs * phase.conj() * w;
                }
                for (int i = 0; i < n; ++i) {
                    BigComplex u = out.v(i, p), w = out.v(i, q);
                    out.v(i, p) = cs * u - sphase * w;
                    out.v(i, q) = ss * u + cs * phase.conj() * w;
                }
                // refresh cached norms
                BigFloat np(0), nq(0);
                for (int i = 0; i < m; ++i) {
                    np += a(i, p).abs2();
                    nq += a(i, q).abs2();
                }
                app = np;
                aqq = nq;
            }
        }
        if (!rotated_any) break;
    }
    if (sweep >= max_sweeps)
        throw Error("numeric_nonconvergence", "Jacobi SVD did not converge");

    out.sigma.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) out.sigma[static_cast<size_t>(j)] = sqrt(colnorm2[static_cast<size_t>(j)]);
    out.order.resize(static_cast<size_t>(n));
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](int x, int y) { return out.sigma[static_cast<size_t>(x)] > out.sigma[static_cast<size_t>(y)]; });
    std::vector<BigFloat> sorted(static_cast<size_t>(n));
    Matrix<BigComplex> rot(m, n), vv(n, n);
    for (int j = 0; j < n; ++j) {
        int src = out.order[static_cast<size_t>(j)];
        sorted[static_cast<size_t>(j)] = out.sigma[static_cast<size_t>(src)];
        for (int i = 0; i < m; ++i) rot(i, j) = a(i, src);
        for (int i = 0; i < n; ++i) vv(i, j) = out.v(i, src);
    }
    out.sigma = std::move(sorted);
    out.rotated = std::move(rot);
    out.v = std::move(vv);
    return out;
}

namespace {

int rank_from_sigma(const std::vector<BigFloat>& sigma, const NumericOptions& opt) {
    if (sigma.empty() || sigma[0] == 0) return 0;
    BigFloat scale = sigma[0];
    if (opt.scale_floor > 0 && scale < BigFloat(opt.scale_floor)) scale = BigFloat(opt.scale_floor);
    BigFloat tau = scale * pow2(-opt.effective_eps_exp());
    BigFloat lo = tau * pow2(-opt.band_bits);
    BigFloat hi = tau * pow2(opt.band_bits);
    int rank = 0;
    for (const auto& s : sigma) {
        if (s > lo && s < hi)
            throw Error("indeterminate_rank",
                        "singular value inside the rank threshold band; raise precision");
        if (s >= hi) ++rank;
    }
    return rank;
}

} // namespace

int rank_numeric(const Matrix<BigComplex>& a, const NumericOptions& opt) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return rank_from_sigma(jacobi_svd(a).sigma, opt);
}

Matrix<BigComplex> nullspace_numeric(const Matrix<BigComplex>& a, const NumericOptions& opt) {
    int n = a.cols();
    if (a.rows() == 0 || n == 0) return Matrix<BigComplex>::identity(n);
    auto svd = jacobi_svd(a);
    int r = rank_from_sigma(svd.sigma, opt);
    Matrix<BigComplex> ker(n, n - r);
    for (int j = r; j < n; ++j)
        for (int i = 0; i < n; ++i) ker(i, j - r) = svd.v(i, j);
    return ker;
}

std::vector<BigComplex> lstsq_min_norm(const Matrix<BigComplex>& a, const std::vector<BigComplex>& b,
                                       const NumericOptions& opt) {
    auto svd = jacobi_svd(a);
    int r = 0;
    if (!svd.sigma.empty() && svd.sigma[0] != 0) {
        BigFloat tau = svd.sigma[0] * pow2(-opt.effective_eps_exp());
        while (r < static_cast<int>(svd.sigma.size()) && svd.sigma[static_cast<size_t>(r)] > tau) ++r;
    }
    // x = sum_{i<r} v_i * <u_i, b> / sigma_i, where u_i = rotated_i / sigma_i
    std::vector<BigComplex> x(static_cast<size_t>(a.cols()));
    for (int i = 0; i < r; ++i) {
        BigComplex dot;
        for (int k = 0; k < a.rows(); ++k) dot += svd.rotated(k, i).conj() * b[static_cast<size_t>(k)];
        BigComplex coef = dot / BigComplex(svd.sigma[static_cast<size_t>(i)] * svd.sigma[static_cast<size_t>(i)]);
        for (int k = 0; k < a.cols(); ++k) x[static_cast<size_t>(k)] += svd.v(k, i) * coef;
    }
    return x;
}

Matrix<BigComplex> orthonormalize_columns(const Matrix<BigComplex>& a, const NumericOptions& opt) {
    const int m = a.rows(), n = a.cols();
    BigFloat scale = frobenius_norm(a);
    if (scale == 0) return Matrix<BigComplex>(m, 0);
    BigFloat drop = scale * pow2(-opt.effective_eps_exp());
    std::vector<std::vector<BigComplex>> basis;
    for (int j = 0; j < n; ++j) {
        std::vector<BigComplex> v = a.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                BigComplex proj = hermitian_dot(u, v);
                for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] -= u[static_cast<size_t>(i)] * proj;
            }
        }
        BigFloat nrm(0);
        for (const auto& c : v) nrm += c.abs2();
        nrm = sqrt(nrm);
        if (nrm <= drop) continue;
        BigComplex inv = BigComplex(1) / BigComplex(nrm);
        for (auto& c : v) c *= inv;
        basis.push_back(std::move(v));
    }
    Matrix<BigComplex> q(m, static_cast<int>(basis.size()));
    for (int j = 0; j < q.cols(); ++j)
        for (int i = 0; i < m; ++i) q(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return q;
}

} // namespace knotrep
