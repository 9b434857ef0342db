#pragma once

#include "knotrep/cohomology.hpp"

namespace knotrep {

// ---- tangent cochain bases --------------------------------------------------

template <class S>
struct TangentCocycles {
    Matrix<S> z_basis;    // (g*d) x z1
    Matrix<S> b_basis;    // (g*d) x b1
    Matrix<S> complement; // (g*d) x h1, spans Z^1 modulo B^1
    int z1 = 0, b1 = 0, h1 = 0;
};

// stacked (Ad rho(g_i) - I) matrix whose column space is B^1
template <class S>
Matrix<S> coboundary_stack(const ModuleAction<S>& ad, int generators) {
    const int d = ad.dim;
    Matrix<S> stack(generators * d, d);
    for (int i = 0; i < generators; ++i)
        stack.set_block(i * d, 0, ad.act[static_cast<size_t>(i)] - Matrix<S>::identity(d));
    return stack;
}

template <class S>
TangentCocycles<S> tangent_cocycles(const KnotPresentation& p, const Representation<S>& rho,
                                    const NumericOptions& opt = {}) {
    certify_representation(p, rho);
    ModuleAction<S> ad = action_adjoint(rho);
    const int d = ad.dim, g = p.generators;
    Matrix<S> J = relator_jacobian(p, ad);
    Matrix<S> stack = coboundary_stack(ad, g);
    TangentCocycles<S> out;
    if constexpr (is_exact_scalar_v<S>) {
        out.z_basis = nullspace_exact(J);
        // independent columns of the stack (deterministic: ascending x index)
        RowBasis<S> brows(g * d);
        std::vector<std::vector<S>> bcols;
        for (int c = 0; c < d; ++c) {
            std::vector<S> col = stack.column(c);
            auto [row, fresh] = brows.insert(col);
            (void)row;
            if (fresh) bcols.push_back(std::move(col)); // keep the raw coboundary
        }
        out.b_basis = Matrix<S>(g * d, static_cast<int>(bcols.size()));
        for (int c = 0; c < out.b_basis.cols(); ++c)
            for (int r = 0; r < g * d; ++r) out.b_basis(r, c) = bcols[static_cast<size_t>(c)][static_cast<size_t>(r)];
        // complement by column pivoting: echelon-insert B^1 first, then Z^1
        RowBasis<S> rb(g * d);
        for (int c = 0; c < out.b_basis.cols(); ++c) rb.insert(out.b_basis.column(c));
        std::vector<std::vector<S>> comp;
        for (int c = 0; c < out.z_basis.cols(); ++c) {
            auto [row, fresh] = rb.insert(out.z_basis.column(c));
            if (fresh) comp.push_back(std::move(row));
        }
        out.complement = Matrix<S>(g * d, static_cast<int>(comp.size()));
        for (int c = 0; c < out.complement.cols(); ++c)
            for (int r = 0; r < g * d; ++r) out.complement(r, c) = comp[static_cast<size_t>(c)][static_cast<size_t>(r)];
    } else {
        out.z_basis = nullspace_numeric(J, opt);
        out.b_basis = orthonormalize_columns(stack, opt);
        // project kernel columns off B^1 and orthonormalize the survivors
        Matrix<S> proj = out.z_basis;
        for (int c = 0; c < proj.cols(); ++c) {
            auto col = proj.column(c);
            for (int b = 0; b < out.b_basis.cols(); ++b) {
                auto bc = out.b_basis.column(b);
                BigComplex pr = hermitian_dot(bc, col);
                for (int r = 0; r < proj.rows(); ++r) col[static_cast<size_t>(r)] -= bc[static_cast<size_t>(r)] * pr;
            }
            for (int r = 0; r < proj.rows(); ++r) proj(r, c) = col[static_cast<size_t>(r)];
        }
        out.complement = orthonormalize_columns(proj, opt);
    }
    out.z1 = out.z_basis.cols();
    out.b1 = out.b_basis.cols();
    out.h1 = out.complement.cols();
    if (out.h1 != out.z1 - out.b1)
        throw Error("internal_error", "complement dimension does not match z1 - b1");
    return out;
}

// ---- truncated power series of matrices -------------------------------------

template <class S>
using MatSeries = std::vector<Matrix<S>>; // coefficient of t^j at index j

template <class S>
MatSeries<S> series_mul(const MatSeries<S>& a, const MatSeries<S>& b, int K) {
    int n = a[0].rows();
    MatSeries<S> r(static_cast<size_t>(K), Matrix<S>(n, n));
    for (int i = 0; i < K && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j + i < K && j < static_cast<int>(b.size()); ++j)
            r[static_cast<size_t>(i + j)] = r[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    return r;
}

// exp of a series with zero constant term
template <class S>
MatSeries<S> series_exp(const MatSeries<S>& x, int K) {
    int n = x[0].rows();
    MatSeries<S> acc(static_cast<size_t>(K), Matrix<S>(n, n));
    acc[0] = Matrix<S>::identity(n);
    MatSeries<S> term = acc;
    Rational fact(1); // 1/m!
    for (int m = 1; m < K; ++m) {
        term = series_mul(term, x, K);
        fact /= m;
        for (int j = 0; j < K; ++j) acc[static_cast<size_t>(j)] = acc[static_cast<size_t>(j)] + term[static_cast<size_t>(j)] * S(fact);
    }
    return acc;
}

// log of a series with constant term I
template <class S>
MatSeries<S> series_log(const MatSeries<S>& e, int K) {
    int n = e[0].rows();
    MatSeries<S> y = e;
    y[0] = y[0] - Matrix<S>::identity(n); // y = e - I, y[0] = 0
    MatSeries<S> acc(static_cast<size_t>(K), Matrix<S>(n, n));
    MatSeries<S> term(static_cast<size_t>(K), Matrix<S>(n, n));
    term[0] = Matrix<S>::identity(n);
    int sign = 1;
    for (int m = 1; m < K; ++m) {
        term = series_mul(term, y, K);
        Rational c(sign, static_cast<long>(m));
        for (int j = 0; j < K; ++j) acc[static_cast<size_t>(j)] = acc[static_cast<size_t>(j)] + term[static_cast<size_t>(j)] * S(c);
        sign = -sign;
    }
    return acc;
}

// ---- formal integration ------------------------------------------------------

template <class S>
struct DeformationSeries {
    std::vector<std::vector<Matrix<S>>> u; // u[j-1][gen] is the order-j cochain
    int order = 0;
    bool obstructed = false;
    int obstructed_order = 0;
    std::vector<S> obstruction_residual; // zeta vector when obstructed
    bool closed_form_conjugation = false;
};

namespace detail {

// per-generator truncated series of rho_k and its inverse
template <class S>
void rep_series(const Representation<S>& rho, const std::vector<std::vector<Matrix<S>>>& us, int K,
                std::vector<MatSeries<S>>& fwd, std::vector<MatSeries<S>>& bwd) {
    const int n = rho.n;
    const int g = static_cast<int>(rho.images.size());
    fwd.assign(static_cast<size_t>(g), MatSeries<S>());
    bwd.assign(static_cast<size_t>(g), MatSeries<S>());
    for (int i = 0; i < g; ++i) {
        MatSeries<S> x(static_cast<size_t>(K), Matrix<S>(n, n));
        for (size_t j = 0; j < us.size() && static_cast<int>(j) + 1 < K; ++j) x[j + 1] = us[j][static_cast<size_t>(i)];
        MatSeries<S> e = series_exp(x, K);
        for (auto& m : x) m = -m;
        MatSeries<S> einv = series_exp(x, K);
        MatSeries<S> f(static_cast<size_t>(K)), b(static_cast<size_t>(K));
        for (int j = 0; j < K; ++j) {
            f[static_cast<size_t>(j)] = e[static_cast<size_t>(j)] * rho.images[static_cast<size_t>(i)];
            b[static_cast<size_t>(j)] = rho.inverses[static_cast<size_t>(i)] * einv[static_cast<size_t>(j)];
        }
        fwd[static_cast<size_t>(i)] = std::move(f);
        bwd[static_cast<size_t>(i)] = std::move(b);
    }
}

template <class S>
MatSeries<S> relator_series(const Word& r, const std::vector<MatSeries<S>>& fwd,
                            const std::vector<MatSeries<S>>& bwd, int K, int n) {
    MatSeries<S> acc(static_cast<size_t>(K), Matrix<S>(n, n));
    acc[0] = Matrix<S>::identity(n);
    for (auto& [g, e] : r.letters())
        acc = series_mul(acc, e == 1 ? fwd[static_cast<size_t>(g)] : bwd[static_cast<size_t>(g)], K);
    return acc;
}

} // namespace detail

// order-(j+1) obstruction cochain for a deformation given by u_1..u_j
// (per relator, sl coordinates); the lower orders must already vanish
template <class S>
std::vector<S> obstruction_vector(const KnotPresentation& p, const Representation<S>& rho,
                                  const std::vector<std::vector<Matrix<S>>>& us) {
    const int n = rho.n;
    const int d = n * n - 1;
    const int j = static_cast<int>(us.size());
    const int K = j + 2;
    std::vector<MatSeries<S>> fwd, bwd;
    detail::rep_series(rho, us, K, fwd, bwd);
    std::vector<S> zeta(static_cast<size_t>(p.relators.size()) * static_cast<size_t>(d), S(0));
    for (size_t ri = 0; ri < p.relators.size(); ++ri) {
        MatSeries<S> prod = detail::relator_series(p.relators[ri], fwd, bwd, K, n);
        auto co = sl_coords(sl_project(prod[static_cast<size_t>(j + 1)]), n);
        for (int c = 0; c < d; ++c) zeta[ri * static_cast<size_t>(d) + static_cast<size_t>(c)] = co[static_cast<size_t>(c)];
    }
    return zeta;
}

// Order-by-order integration: solve J u_{j+1} = -zeta_{j+1}; an inconsistent
// system is a genuine obstruction, reported with the residual class vector.
// Coboundary directions short-circuit to the closed-form conjugation series.
template <class S>
DeformationSeries<S> formal_integrate(const KnotPresentation& p, const Representation<S>& rho,
                                      const std::vector<S>& u1, int order,
                                      const NumericOptions& opt = {}) {
    static_assert(is_exact_scalar_v<S>, "formal integration runs on the exact backend");
    if (order < 1) throw Error("invalid_argument", "order must be >= 1");
    const int n = rho.n;
    const int d = n * n - 1;
    const int g = p.generators;
    if (static_cast<int>(u1.size()) != g * d)
        throw Error("invalid_argument", "u1 has wrong cochain dimension");
    ModuleAction<S> ad = action_adjoint(rho);
    Matrix<S> J = relator_jacobian(p, ad);
    {
        auto r = J.mul_vec(u1);
        for (auto& v : r)
            if (!scalar_is_zero(v)) throw Error("not_a_cocycle", "u1 is not a tangent cocycle");
    }
    DeformationSeries<S> out;
    auto unflatten = [&](const std::vector<S>& vec) {
        std::vector<Matrix<S>> ms;
        for (int i = 0; i < g; ++i) {
            std::vector<S> co(vec.begin() + i * d, vec.begin() + (i + 1) * d);
            ms.push_back(sl_from_coords(co, n));
        }
        return ms;
    };
    // closed-form path for pure gauge directions
    Matrix<S> stack = coboundary_stack(ad, g);
    if (auto x0 = solve_exact(stack, u1)) {
        out.closed_form_conjugation = true;
        Matrix<S> X = sl_from_coords(*x0, n);
        const int K = order + 2;
        MatSeries<S> ex(static_cast<size_t>(K), Matrix<S>(n, n)), exn = ex;
        ex[1] = X;          // exp(tX)
        exn[1] = -X;        // exp(-tX)
        MatSeries<S> e_pos = series_exp(ex, K);
        MatSeries<S> e_neg = series_exp(exn, K);
        for (int i = 0; i < g; ++i) {
            // E(t) = exp(-tX) rho(g) exp(tX) rho(g)^{-1}; u_j(g) = [t^j] log E
            MatSeries<S> conj(static_cast<size_t>(K));
            for (int j = 0; j < K; ++j) conj[static_cast<size_t>(j)] = e_neg[static_cast<size_t>(j)] * rho.images[static_cast<size_t>(i)];
            conj = series_mul(conj, e_pos, K);
            for (int j = 0; j < K; ++j) conj[static_cast<size_t>(j)] = conj[static_cast<size_t>(j)] * rho.inverses[static_cast<size_t>(i)];
            MatSeries<S> w = series_log(conj, K);
            for (int j = 1; j <= order; ++j) {
                if (static_cast<int>(out.u.size()) < j)
                    out.u.emplace_back(static_cast<size_t>(g), Matrix<S>(n, n));
                out.u[static_cast<size_t>(j - 1)][static_cast<size_t>(i)] = w[static_cast<size_t>(j)];
            }
        }
        out.order = order;
        return out;
    }
    out.u.push_back(unflatten(u1));
    for (int j = 1; j < order; ++j) {
        std::vector<S> zeta = obstruction_vector(p, rho, out.u);
        for (auto& v : zeta) v = -v;
        auto sol = solve_exact(J, zeta);
        if (!sol) {
            out.obstructed = true;
            out.obstructed_order = j + 1;
            for (auto& v : zeta) v = -v;
            out.obstruction_residual = std::move(zeta);
            out.order = j;
            return out;
        }
        out.u.push_back(unflatten(*sol));
    }
    out.order = order;
    (void)opt;
    return out;
}

// truncation residual helper: exp(sum t^j u_j) rho evaluated numerically
Representation<BigComplex> evaluate_series_rep(const Representation<BigComplex>& rho,
                                               const std::vector<std::vector<Matrix<BigComplex>>>& us,
                                               const BigFloat& t, int order);

BigFloat max_relator_residual(const KnotPresentation& p, const Representation<BigComplex>& rho);

// ---- numeric Newton continuation ---------------------------------------------

struct NewtonOptions {
    BigFloat tol = BigFloat("1e-10");
    int max_iter = 50;
    double t_max = 0.1;
    int max_halvings = 8;
    NumericOptions rank;
};

struct DeformedRep {
    Representation<BigComplex> rep;
    BigFloat t_requested;
    BigFloat t_used;
    BigFloat residual;
    int iterations = 0;
    int halvings = 0;
    bool gauge_direction = false;
    IrreducibilityResult<BigComplex> irreducibility;
    // conjugation-invariant coordinates vs the base representation
    std::vector<std::pair<std::string, BigComplex>> traces;
    std::vector<std::pair<std::string, BigComplex>> base_traces;
};

Matrix<BigComplex> mat_exp(const Matrix<BigComplex>& a);
Matrix<BigComplex> inverse_numeric(const Matrix<BigComplex>& a);

DeformedRep newton_deform(const KnotPresentation& p, const Representation<BigComplex>& rho,
                          const std::vector<BigComplex>& u1_sl_coords, const BigFloat& t,
                          const NewtonOptions& opt = {});

// embedding helpers (exact cochain data -> numeric)
std::vector<BigComplex> embed_vector(const std::vector<FieldElement>& v);
Matrix<BigComplex> embed_matrix(const Matrix<FieldElement>& m);
Representation<BigComplex> embed_representation(const Representation<FieldElement>& rho);

} // namespace knotrep
