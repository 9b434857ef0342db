#pragma once

#include <optional>
#include <string>

#include "knotrep/alexander.hpp"
#include "knotrep/foxcalc.hpp"
#include "knotrep/knots.hpp"
#include "knotrep/numeric_linalg.hpp"

namespace knotrep {

enum class RepProvenance { diagonal, burde_derham, symmetric_power, deformed, user };

std::string provenance_str(RepProvenance p);

template <class S>
struct Representation {
    int n = 0;
    std::vector<Matrix<S>> images;
    std::vector<Matrix<S>> inverses;
    RepProvenance provenance = RepProvenance::user;

    ModuleAction<S> as_action(std::string descr) const {
        return ModuleAction<S>{n, images, inverses, std::move(descr)};
    }
};

// ---- certification -------------------------------------------------------

// exact backend: relators must evaluate to the identity exactly and images
// must be unimodular; numeric: Frobenius residual below tol
template <class S>
void certify_representation(const KnotPresentation& p, const Representation<S>& rho,
                            const BigFloat& tol = pow2(-33)) {
    ModuleAction<S> a = rho.as_action("rho");
    for (int i = 0; i < p.generators; ++i) {
        S d = det_bareiss(rho.images[static_cast<size_t>(i)]);
        if constexpr (is_exact_scalar_v<S>) {
            if (!scalar_is_zero(d - S(1)))
                throw Error("not_unimodular", "generator image has determinant != 1");
        } else {
            if ((d - S(1)).abs() > tol) throw Error("not_unimodular", "generator image determinant is off");
        }
    }
    for (const Word& r : p.relators) {
        Matrix<S> m = evaluate_word(r, a) - Matrix<S>::identity(rho.n);
        if constexpr (is_exact_scalar_v<S>) {
            if (!(m == Matrix<S>(rho.n, rho.n)))
                throw Error("relator_violation", "relator does not map to the identity");
        } else {
            BigFloat res = frobenius_norm(m);
            if (res > tol)
                throw Error("relator_violation", "relator residual " + res.str(4) + " above tolerance");
        }
    }
}

// ---- scalar cocycles (Lemma: H^1 != 0 iff Delta(alpha) = 0) ---------------

template <class S>
struct ScalarCocycles {
    Matrix<S> z_basis; // columns are cocycles (value per generator)
    int dim_z1 = 0;
    int dim_b1 = 0;
    int dim_h1 = 0;
    std::vector<S> b1_vector;     // (alpha^{phi(g_i)} - 1)_i
    std::vector<S> h1_generator;  // complement representative, first nonzero = 1; empty if h1 = 0
};

template <class S>
ModuleAction<S> action_scalar(const KnotPresentation& p, const S& alpha) {
    ModuleAction<S> a;
    a.dim = 1;
    a.descriptor = "C_alpha";
    S inv = exact_div(S(1), alpha);
    for (int i = 0; i < p.generators; ++i) {
        long w = p.phi[static_cast<size_t>(i)];
        Matrix<S> m(1, 1), mi(1, 1);
        S v = S(1), vi = S(1);
        for (long k = 0; k < (w >= 0 ? w : -w); ++k) {
            v = v * (w >= 0 ? alpha : inv);
            vi = vi * (w >= 0 ? inv : alpha);
        }
        m(0, 0) = v;
        mi(0, 0) = vi;
        a.act.push_back(std::move(m));
        a.act_inv.push_back(std::move(mi));
    }
    return a;
}

template <class S>
Matrix<S> relator_jacobian(const KnotPresentation& p, const ModuleAction<S>& a) {
    const int d = a.dim, g = p.generators;
    Matrix<S> J(static_cast<int>(p.relators.size()) * d, g * d);
    for (int j = 0; j < static_cast<int>(p.relators.size()); ++j)
        for (int i = 0; i < g; ++i)
            J.set_block(j * d, i * d, evaluate(fox_derivative(p.relators[static_cast<size_t>(j)], i), a));
    return J;
}

template <class S>
ScalarCocycles<S> solve_scalar_cocycles(const KnotPresentation& p, const S& alpha,
                                        const NumericOptions& opt = {}) {
    if (scalar_is_zero(alpha)) throw Error("invalid_argument", "alpha must be nonzero");
    ScalarCocycles<S> out;
    ModuleAction<S> a = action_scalar(p, alpha);
    Matrix<S> J = relator_jacobian(p, a);
    out.b1_vector.resize(static_cast<size_t>(p.generators));
    bool b_zero = true;
    for (int i = 0; i < p.generators; ++i) {
        out.b1_vector[static_cast<size_t>(i)] = a.act[static_cast<size_t>(i)](0, 0) - S(1);
        b_zero &= scalar_is_zero(out.b1_vector[static_cast<size_t>(i)]);
    }
    if constexpr (is_exact_scalar_v<S>) {
        out.z_basis = nullspace_exact(J);
        out.dim_z1 = out.z_basis.cols();
        out.dim_b1 = b_zero ? 0 : 1;
        out.dim_h1 = out.dim_z1 - out.dim_b1;
        if (out.dim_h1 > 0) {
            RowBasis<S> rb(p.generators);
            if (!b_zero) rb.insert(out.b1_vector);
            for (int c = 0; c < out.z_basis.cols(); ++c) {
                auto [row, fresh] = rb.insert(out.z_basis.column(c));
                if (fresh && out.h1_generator.empty()) out.h1_generator = std::move(row);
            }
        }
    } else {
        out.z_basis = nullspace_numeric(J, opt);
        out.dim_z1 = out.z_basis.cols();
        out.dim_b1 = b_zero ? 0 : 1;
        out.dim_h1 = out.dim_z1 - out.dim_b1;
        if (out.dim_h1 > 0) {
            // kernel column with the largest component orthogonal to b
            BigFloat b2(0);
            for (auto& v : out.b1_vector) b2 += v.abs2();
            std::vector<S> best;
            BigFloat best_norm(-1);
            for (int c = 0; c < out.z_basis.cols(); ++c) {
                auto col = out.z_basis.column(c);
                if (!b_zero) {
                    BigComplex proj = hermitian_dot(out.b1_vector, col) / BigComplex(b2);
                    for (size_t i = 0; i < col.size(); ++i) col[i] -= out.b1_vector[i] * proj;
                }
                BigFloat nc(0);
                for (auto& v : col) nc += v.abs2();
                if (nc > best_norm) {
                    best_norm = nc;
                    best = col;
                }
            }
            BigFloat scale = sqrt(best_norm) * pow2(-opt.effective_eps_exp());
            for (auto& v : best)
                if (v.abs() > scale) {
                    S inv = exact_div(S(1), v);
                    for (auto& w : best) w = w * inv;
                    break;
                }
            out.h1_generator = std::move(best);
        }
    }
    return out;
}

// ---- Burde-de Rham representation  ----------------------------------------

template <class S>
struct BurdeDerhamRep {
    Representation<S> rep;
    bool non_abelian = false;
};

template <class S>
BurdeDerhamRep<S> burde_derham(const KnotPresentation& p, const S& lambda, const std::vector<S>& z,
                               const NumericOptions& opt = {}) {
    if (static_cast<int>(z.size()) != p.generators)
        throw Error("invalid_argument", "cocycle must assign a value to every generator");
    S lambda2 = lambda * lambda;
    // cocycle condition: sum_i eval(dr/dg_i; C_{lambda^2}) z_i = 0 per relator
    {
        ModuleAction<S> a = action_scalar(p, lambda2);
        Matrix<S> J = relator_jacobian(p, a);
        std::vector<S> res = J.mul_vec(z);
        for (auto& v : res) {
            bool bad;
            if constexpr (is_exact_scalar_v<S>) bad = !scalar_is_zero(v);
            else bad = v.abs() > pow2(-opt.effective_eps_exp());
            if (bad) throw Error("not_a_cocycle", "z fails the cocycle condition");
        }
    }
    BurdeDerhamRep<S> out;
    out.rep.n = 2;
    out.rep.provenance = RepProvenance::burde_derham;
    S linv = exact_div(S(1), lambda);
    for (int i = 0; i < p.generators; ++i) {
        long w = p.phi[static_cast<size_t>(i)];
        S lw = S(1), lwi = S(1);
        for (long k = 0; k < (w >= 0 ? w : -w); ++k) {
            lw = lw * (w >= 0 ? lambda : linv);
            lwi = lwi * (w >= 0 ? linv : lambda);
        }
        Matrix<S> m(2, 2);
        m(0, 0) = lw;
        m(0, 1) = z[static_cast<size_t>(i)] * lwi;
        m(1, 1) = lwi;
        Matrix<S> mi(2, 2); // closed-form inverse, det = 1
        mi(0, 0) = lwi;
        mi(0, 1) = -z[static_cast<size_t>(i)] * lwi;
        mi(1, 1) = lw;
        out.rep.images.push_back(std::move(m));
        out.rep.inverses.push_back(std::move(mi));
    }
    certify_representation(p, out.rep);
    // abelian iff z is a coboundary: (lambda^{2 phi(g_i)} - 1) x0 = z_i solvable
    Matrix<S> A(p.generators, 1);
    ModuleAction<S> a2 = action_scalar(p, lambda2);
    for (int i = 0; i < p.generators; ++i) A(i, 0) = a2.act[static_cast<size_t>(i)](0, 0) - S(1);
    if constexpr (is_exact_scalar_v<S>) {
        out.non_abelian = !solve_exact(A, z).has_value();
    } else {
        auto x = lstsq_min_norm(A, z, opt);
        auto res = A.mul_vec(x);
        BigFloat err(0);
        for (size_t i = 0; i < res.size(); ++i) err += (res[i] - z[i]).abs2();
        BigFloat zn(0);
        for (auto& v : z) zn += v.abs2();
        out.non_abelian = sqrt(err) > sqrt(zn) * pow2(-opt.effective_eps_exp());
    }
    return out;
}

template <class S>
Representation<S> diagonal_rep(const KnotPresentation& p, const S& lambda) {
    auto bd = burde_derham(p, lambda, std::vector<S>(static_cast<size_t>(p.generators), S(0)));
    bd.rep.provenance = RepProvenance::diagonal;
    return bd.rep;
}

// ---- symmetric power r_n ---------------------------------------------------

// r_n action on homogeneous polynomials of degree n-1 in X, Y with basis
// e_l = X^{l-1} Y^{n-l}:  r(A) X = d X - b Y,  r(A) Y = -c X + a Y
template <class S>
Matrix<S> symmetric_power_matrix(const Matrix<S>& A, int n) {
    if (A.rows() != 2 || A.cols() != 2) throw Error("invalid_argument", "r_n needs a 2x2 matrix");
    const S &a = A(0, 0), &b = A(0, 1), &c = A(1, 0), &d = A(1, 1);
    auto pmul = [](const std::vector<S>& u, const std::vector<S>& v) {
        std::vector<S> r(u.size() + v.size() - 1, S(0));
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) r[i + j] = r[i + j] + u[i] * v[j];
        return r;
    };
    std::vector<S> rX{-b, d}; // index = X-degree
    std::vector<S> rY{a, -c};
    std::vector<std::vector<S>> powX(static_cast<size_t>(n)), powY(static_cast<size_t>(n));
    powX[0] = {S(1)};
    powY[0] = {S(1)};
    for (int k = 1; k < n; ++k) {
        powX[static_cast<size_t>(k)] = pmul(powX[static_cast<size_t>(k - 1)], rX);
        powY[static_cast<size_t>(k)] = pmul(powY[static_cast<size_t>(k - 1)], rY);
    }
    Matrix<S> M(n, n);
    for (int l = 1; l <= n; ++l) {
        std::vector<S> col = pmul(powX[static_cast<size_t>(l - 1)], powY[static_cast<size_t>(n - l)]);
        for (int k = 1; k <= n; ++k) M(k - 1, l - 1) = col[static_cast<size_t>(k - 1)];
    }
    return M;
}

template <class S>
Representation<S> symmetric_power(const Representation<S>& rho2, int n) {
    if (rho2.n != 2) throw Error("invalid_argument", "symmetric power starts from a 2x2 representation");
    if (n < 1) throw Error("invalid_argument", "n must be >= 1");
    Representation<S> out;
    out.n = n;
    out.provenance = RepProvenance::symmetric_power;
    for (size_t i = 0; i < rho2.images.size(); ++i) {
        out.images.push_back(symmetric_power_matrix(rho2.images[i], n));
        out.inverses.push_back(symmetric_power_matrix(rho2.inverses[i], n));
        S d = det_bareiss(out.images.back());
        if constexpr (is_exact_scalar_v<S>) {
            if (!scalar_is_zero(d - S(1)))
                throw Error("internal_error", "r_n image is not unimodular");
        }
    }
    return out;
}

// ---- adjoint action on sl_n -----------------------------------------------

// basis of sl_n: E_ij (i != j) row-major, then H_i = E_ii - E_{i+1,i+1}
template <class S>
std::vector<S> sl_coords(const Matrix<S>& x, int n) {
    std::vector<S> co;
    co.reserve(static_cast<size_t>(n) * n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) co.push_back(x(i, j));
    S pref = S(0);
    for (int i = 0; i < n - 1; ++i) {
        pref = pref + x(i, i);
        co.push_back(pref);
    }
    return co;
}

template <class S>
Matrix<S> sl_from_coords(const std::vector<S>& co, int n) {
    Matrix<S> x(n, n);
    size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) x(i, j) = co[k++];
    S prev = S(0);
    S total = S(0);
    for (int i = 0; i < n - 1; ++i) {
        x(i, i) = co[k + static_cast<size_t>(i)] - prev;
        prev = co[k + static_cast<size_t>(i)];
        total = total + x(i, i);
    }
    x(n - 1, n - 1) = -total;
    return x;
}

template <class S>
Matrix<S> sl_project(const Matrix<S>& m) {
    int n = m.rows();
    S tr = trace(m);
    Matrix<S> out = m;
    S shift = exact_div(tr, S(n));
    for (int i = 0; i < n; ++i) out(i, i) = out(i, i) - shift;
    return out;
}

// matrix of Ad(M) on the basis above
template <class S>
Matrix<S> adjoint_matrix(const Matrix<S>& M, const Matrix<S>& Minv) {
    const int n = M.rows();
    const int d = n * n - 1;
    Matrix<S> out(d, d);
    int col = 0;
    auto place = [&](const Matrix<S>& basis_elt) {
        Matrix<S> y = M * basis_elt * Minv;
        auto co = sl_coords(y, n);
        for (int i = 0; i < d; ++i) out(i, col) = co[static_cast<size_t>(i)];
        ++col;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                Matrix<S> e(n, n);
                e(i, j) = S(1);
                place(e);
            }
    for (int i = 0; i < n - 1; ++i) {
        Matrix<S> h(n, n);
        h(i, i) = S(1);
        h(i + 1, i + 1) = S(-1);
        place(h);
    }
    return out;
}

template <class S>
ModuleAction<S> action_adjoint(const Representation<S>& rho) {
    ModuleAction<S> a;
    a.dim = rho.n * rho.n - 1;
    a.descriptor = "sl_" + std::to_string(rho.n);
    for (size_t i = 0; i < rho.images.size(); ++i) {
        a.act.push_back(adjoint_matrix(rho.images[i], rho.inverses[i]));
        a.act_inv.push_back(adjoint_matrix(rho.inverses[i], rho.images[i]));
    }
    return a;
}

// R_m: degree-m homogeneous polynomials, dimension m+1, action r_{m+1} o rho
template <class S>
ModuleAction<S> action_poly_module(const Representation<S>& rho2, int m) {
    if (m < 0) throw Error("invalid_argument", "R_m needs m >= 0");
    ModuleAction<S> a;
    a.dim = m + 1;
    a.descriptor = "R_" + std::to_string(m);
    for (size_t i = 0; i < rho2.images.size(); ++i) {
        a.act.push_back(symmetric_power_matrix(rho2.images[i], m + 1));
        a.act_inv.push_back(symmetric_power_matrix(rho2.inverses[i], m + 1));
    }
    return a;
}

// ---- irreducibility (Burnside span) ---------------------------------------

enum class Irreducibility { irreducible, reducible, indeterminate };

template <class S>
struct IrreducibilityResult {
    Irreducibility verdict = Irreducibility::indeterminate;
    int span_dim = 0;
    std::optional<Matrix<S>> invariant_subspace; // columns, when reducible and found
};

template <class S>
IrreducibilityResult<S> irreducibility_test(const Representation<S>& rho, int word_cap = 0,
                                            const NumericOptions& opt = {});

// ---- Clebsch-Gordan trace identity -----------------------------------------

// trace(Ad r_n(A)) = sum_{i=1}^{n-1} trace(r_{2i+1}(A)), via
// trace(Ad g) = trace(g) trace(g^{-1}) - 1; A must be unimodular
template <class S>
bool clebsch_gordan_check(const Matrix<S>& A, int n) {
    if (A.rows() != 2 || A.cols() != 2) throw Error("invalid_argument", "need a 2x2 matrix");
    S det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    if (!scalar_is_zero(det - S(1))) throw Error("invalid_argument", "matrix must have determinant 1");
    Matrix<S> Ainv(2, 2);
    Ainv(0, 0) = A(1, 1);
    Ainv(0, 1) = -A(0, 1);
    Ainv(1, 0) = -A(1, 0);
    Ainv(1, 1) = A(0, 0);
    S lhs = trace(symmetric_power_matrix(A, n)) * trace(symmetric_power_matrix(Ainv, n)) - S(1);
    S rhs = S(0);
    for (int i = 1; i <= n - 1; ++i) rhs = rhs + trace(symmetric_power_matrix(A, 2 * i + 1));
    return scalar_is_zero(lhs - rhs);
}

// ---- implementation: irreducibility ----------------------------------------

namespace detail {

template <class S>
std::vector<S> flatten(const Matrix<S>& m) {
    std::vector<S> v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

// closed span of words in the images up to the length cap; exact scalars
template <class S>
int algebra_span_exact(const Representation<S>& rho, int cap, std::vector<Matrix<S>>* basis_out) {
    const int n = rho.n;
    RowBasis<S> rb(n * n);
    std::vector<std::pair<Matrix<S>, int>> queue;
    auto offer = [&](const Matrix<S>& m, int len) {
        auto [row, fresh] = rb.insert(flatten(m));
        (void)row;
        if (fresh) {
            queue.emplace_back(m, len);
            if (basis_out) basis_out->push_back(m);
        }
        return fresh;
    };
    offer(Matrix<S>::identity(n), 0);
    std::vector<const Matrix<S>*> alphabet;
    for (auto& m : rho.images) alphabet.push_back(&m);
    for (auto& m : rho.inverses) alphabet.push_back(&m);
    for (size_t head = 0; head < queue.size() && rb.rank() < n * n; ++head) {
        auto [m, len] = queue[head];
        if (len >= cap) continue;
        for (const Matrix<S>* a : alphabet) {
            offer(m * (*a), len + 1);
            if (rb.rank() == n * n) break;
        }
    }
    return rb.rank();
}

} // namespace detail

template <class S>
IrreducibilityResult<S> irreducibility_test(const Representation<S>& rho, int word_cap,
                                            const NumericOptions& opt) {
    const int n = rho.n;
    if (word_cap <= 0) word_cap = std::max(1, 2 * n - 2);
    IrreducibilityResult<S> out;
    if constexpr (is_exact_scalar_v<S>) {
        std::vector<Matrix<S>> basis;
        out.span_dim = detail::algebra_span_exact(rho, word_cap, &basis);
        out.verdict = out.span_dim == n * n ? Irreducibility::irreducible : Irreducibility::reducible;
        if (out.verdict == Irreducibility::reducible) {
            // look for an invariant coordinate subspace: the algebra orbit of e_i
            for (int i = 0; i < n; ++i) {
                RowBasis<S> orbit(n);
                std::vector<std::vector<S>> vecs;
                for (const auto& B : basis) {
                    auto [row, fresh] = orbit.insert(B.column(i));
                    if (fresh) vecs.push_back(row);
                }
                if (orbit.rank() < n) {
                    Matrix<S> w(n, orbit.rank());
                    for (int c = 0; c < orbit.rank(); ++c)
                        for (int r = 0; r < n; ++r) w(r, c) = vecs[static_cast<size_t>(c)][static_cast<size_t>(r)];
                    out.invariant_subspace = std::move(w);
                    break;
                }
            }
        }
    } else {
        // Gram-Schmidt closure of the word span with a tolerance band:
        // projections landing inside the band make the verdict indeterminate
        const BigFloat drop = pow2(-opt.effective_eps_exp());
        const BigFloat band = pow2(opt.band_bits);
        std::vector<std::vector<S>> ortho;
        std::vector<std::pair<Matrix<S>, int>> queue;
        bool borderline = false;
        auto offer = [&](const Matrix<S>& m, int len) {
            std::vector<S> v = detail::flatten(m);
            BigFloat v0(0);
            for (auto& x : v) v0 += x.abs2();
            v0 = sqrt(v0);
            if (v0 == 0) return;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& u : ortho) {
                    S proj = hermitian_dot(u, v);
                    for (size_t i = 0; i < v.size(); ++i) v[i] -= u[i] * proj;
                }
            BigFloat nrm(0);
            for (auto& x : v) nrm += x.abs2();
            nrm = sqrt(nrm);
            if (nrm > v0 * drop / band && nrm < v0 * drop * band) borderline = true;
            if (nrm <= v0 * drop) return;
            S inv = exact_div(S(1), S(nrm));
            for (auto& x : v) x = x * inv;
            ortho.push_back(std::move(v));
            queue.emplace_back(m, len);
        };
        std::vector<const Matrix<S>*> alphabet;
        for (auto& m : rho.images) alphabet.push_back(&m);
        for (auto& m : rho.inverses) alphabet.push_back(&m);
        offer(Matrix<S>::identity(n), 0);
        for (size_t head = 0; head < queue.size() && static_cast<int>(ortho.size()) < n * n; ++head) {
            auto [m, len] = queue[head];
            if (len >= word_cap) continue;
            for (const Matrix<S>* a : alphabet) {
                offer(m * (*a), len + 1);
                if (static_cast<int>(ortho.size()) == n * n) break;
            }
        }
        out.span_dim = static_cast<int>(ortho.size());
        if (borderline && out.span_dim != n * n)
            out.verdict = Irreducibility::indeterminate;
        else
            out.verdict = out.span_dim == n * n ? Irreducibility::irreducible : Irreducibility::reducible;
    }
    return out;
}

} // namespace knotrep
