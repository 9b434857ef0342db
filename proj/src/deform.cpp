#include "knotrep/deform.hpp"

namespace knotrep {

Matrix<BigComplex> mat_exp(const Matrix<BigComplex>& a) {
    const int n = a.rows();
    BigFloat norm = frobenius_norm(a);
    int squarings = 0;
    Matrix<BigComplex> x = a;
    while (norm > 1) {
        norm /= 2;
        ++squarings;
    }
    if (squarings) {
        BigComplex scale = BigComplex(1) / BigComplex(pow2(squarings));
        x = x * scale;
    }
    Matrix<BigComplex> acc = Matrix<BigComplex>::identity(n);
    Matrix<BigComplex> term = acc;
    const BigFloat stop = pow2(-(working_precision_bits() + 16));
    for (int m = 1; m < 500; ++m) {
        term = term * x;
        BigComplex inv_m = BigComplex(1) / BigComplex(m);
        term = term * inv_m;
        acc = acc + term;
        if (frobenius_norm(term) < stop) break;
    }
    for (int i = 0; i < squarings; ++i) acc = acc * acc;
    return acc;
}

Matrix<BigComplex> inverse_numeric(const Matrix<BigComplex>& a) {
    if (a.rows() != a.cols()) throw Error("dimension_mismatch", "inverse of non-square matrix");
    const int n = a.rows();
    Matrix<BigComplex> m = a;
    Matrix<BigComplex> inv = Matrix<BigComplex>::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        BigFloat best = m(k, k).abs2();
        for (int i = k + 1; i < n; ++i) {
            BigFloat v = m(i, k).abs2();
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0) throw Error("singular_matrix", "numeric inverse of a singular matrix");
        m.swap_rows(k, piv);
        inv.swap_rows(k, piv);
        BigComplex scale = BigComplex(1) / m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) *= scale;
            inv(k, j) *= scale;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            BigComplex f = m(i, k);
            if (f == BigComplex()) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

BigFloat max_relator_residual(const KnotPresentation& p, const Representation<BigComplex>& rho) {
    ModuleAction<BigComplex> a = rho.as_action("rho");
    BigFloat worst(0);
    for (const Word& r : p.relators) {
        BigFloat res = frobenius_norm(evaluate_word(r, a) - Matrix<BigComplex>::identity(rho.n));
        if (res > worst) worst = res;
    }
    return worst;
}

Representation<BigComplex> evaluate_series_rep(const Representation<BigComplex>& rho,
                                               const std::vector<std::vector<Matrix<BigComplex>>>& us,
                                               const BigFloat& t, int order) {
    Representation<BigComplex> out;
    out.n = rho.n;
    out.provenance = RepProvenance::deformed;
    const int g = static_cast<int>(rho.images.size());
    for (int i = 0; i < g; ++i) {
        Matrix<BigComplex> x(rho.n, rho.n);
        BigFloat tp = t;
        for (int j = 0; j < order && j < static_cast<int>(us.size()); ++j) {
            x = x + us[static_cast<size_t>(j)][static_cast<size_t>(i)] * BigComplex(tp);
            tp *= t;
        }
        Matrix<BigComplex> img = mat_exp(x) * rho.images[static_cast<size_t>(i)];
        out.images.push_back(img);
        out.inverses.push_back(inverse_numeric(img));
    }
    return out;
}

std::vector<BigComplex> embed_vector(const std::vector<FieldElement>& v) {
    std::vector<BigComplex> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.embed());
    return out;
}

Matrix<BigComplex> embed_matrix(const Matrix<FieldElement>& m) {
    return m.map<BigComplex>([](const FieldElement& x) { return x.embed(); });
}

Representation<BigComplex> embed_representation(const Representation<FieldElement>& rho) {
    Representation<BigComplex> out;
    out.n = rho.n;
    out.provenance = rho.provenance;
    for (auto& m : rho.images) out.images.push_back(embed_matrix(m));
    for (auto& m : rho.inverses) out.inverses.push_back(embed_matrix(m));
    return out;
}

namespace {

// conjugation action on all of gl_n in the basis E_ij (row-major); dim n^2
Matrix<BigComplex> gl_adjoint(const Matrix<BigComplex>& M, const Matrix<BigComplex>& Minv) {
    const int n = M.rows();
    Matrix<BigComplex> out(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // image of E_ij: M E_ij Minv = col_i(M) * row_j(Minv)
            int col = i * n + j;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) out(r * n + c, col) = M(r, i) * Minv(j, c);
        }
    return out;
}

std::vector<BigComplex> flatten_gl(const Matrix<BigComplex>& m) {
    std::vector<BigComplex> v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

Matrix<BigComplex> unflatten_gl(const std::vector<BigComplex>& v, int n) {
    Matrix<BigComplex> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i * n + j)];
    return m;
}

struct NewtonState {
    std::vector<Matrix<BigComplex>> images, inverses;
};

BigComplex principal_root_inverse(const BigComplex& d, int n) {
    // d^{-1/n} via polar decomposition; d is near 1 in practice
    BigFloat r = d.abs();
    if (r == 0) throw Error("singular_matrix", "determinant vanished during Newton");
    BigFloat theta = atan2(d.imag(), d.real());
    BigFloat rr = exp(-log(r) / n);
    BigFloat tt = -theta / n;
    return BigComplex(rr * cos(tt), rr * sin(tt));
}

} // namespace

DeformedRep newton_deform(const KnotPresentation& p, const Representation<BigComplex>& rho,
                          const std::vector<BigComplex>& u1_sl_coords, const BigFloat& t,
                          const NewtonOptions& opt) {
    const int n = rho.n;
    const int d = n * n - 1;
    const int D = n * n;
    const int g = p.generators;
    if (static_cast<int>(u1_sl_coords.size()) != g * d)
        throw Error("invalid_argument", "u1 has wrong cochain dimension");
    if (t < 0 || static_cast<double>(t) > opt.t_max)
        throw Error("invalid_argument", "step t must lie in [0, t_max]");
    certify_representation(p, rho, opt.tol);

    DeformedRep out;
    out.t_requested = t;

    std::vector<Matrix<BigComplex>> u1(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) {
        std::vector<BigComplex> co(u1_sl_coords.begin() + i * d, u1_sl_coords.begin() + (i + 1) * d);
        u1[static_cast<size_t>(i)] = sl_from_coords(co, n);
    }
    std::vector<BigComplex> u1_flat;
    for (int i = 0; i < g; ++i)
        for (auto& v : flatten_gl(u1[static_cast<size_t>(i)])) u1_flat.push_back(v);

    // gauge directions get the exact conjugation start: u1 = Ad rho(.) x - x
    ModuleAction<BigComplex> ad = action_adjoint(rho);
    {
        Matrix<BigComplex> stack = coboundary_stack(ad, g);
        auto x = lstsq_min_norm(stack, u1_sl_coords, opt.rank);
        auto res = stack.mul_vec(x);
        BigFloat err(0), scale(0);
        for (size_t i = 0; i < res.size(); ++i) {
            err += (res[i] - u1_sl_coords[i]).abs2();
            scale += u1_sl_coords[i].abs2();
        }
        if (scale == 0 || sqrt(err) <= sqrt(scale) * pow2(-opt.rank.effective_eps_exp() / 2))
            out.gauge_direction = true;
        if (out.gauge_direction) {
            Matrix<BigComplex> X = sl_from_coords(x, n);
            Matrix<BigComplex> C = mat_exp(X * BigComplex(-t));
            Matrix<BigComplex> Ci = mat_exp(X * BigComplex(t));
            out.rep.n = n;
            out.rep.provenance = RepProvenance::deformed;
            for (int i = 0; i < g; ++i) {
                out.rep.images.push_back(C * rho.images[static_cast<size_t>(i)] * Ci);
                out.rep.inverses.push_back(C * rho.inverses[static_cast<size_t>(i)] * Ci);
            }
        }
    }

    BigFloat t_cur = t;
    int halvings = 0;
    while (!out.gauge_direction) {
        NewtonState st;
        for (int i = 0; i < g; ++i) {
            Matrix<BigComplex> img = mat_exp(u1[static_cast<size_t>(i)] * BigComplex(t_cur)) *
                                     rho.images[static_cast<size_t>(i)];
            st.images.push_back(img);
            st.inverses.push_back(inverse_numeric(img));
        }
        BigFloat res_prev(-1);
        int increases = 0;
        bool converged = false;
        std::vector<BigFloat> history;
        for (int it = 0; it < opt.max_iter; ++it) {
            // residual and right-hand side
            ModuleAction<BigComplex> cur{n, st.images, st.inverses, "current"};
            BigFloat res(0);
            std::vector<BigComplex> rhs(static_cast<size_t>(p.relators.size()) * static_cast<size_t>(D));
            for (size_t ri = 0; ri < p.relators.size(); ++ri) {
                Matrix<BigComplex> R = evaluate_word(p.relators[ri], cur);
                Matrix<BigComplex> E = R - Matrix<BigComplex>::identity(n);
                BigFloat rn = frobenius_norm(E);
                if (rn > res) res = rn;
                Matrix<BigComplex> V = sl_project(-(E * inverse_numeric(R)));
                auto fv = flatten_gl(V);
                for (int c = 0; c < D; ++c) rhs[ri * static_cast<size_t>(D) + static_cast<size_t>(c)] = fv[static_cast<size_t>(c)];
            }
            history.push_back(res);
            out.iterations = it;
            out.residual = res;
            if (res < opt.tol) {
                converged = true;
                break;
            }
            if (res_prev >= 0 && res > res_prev) {
                if (++increases >= 2) break;
            } else {
                increases = 0;
            }
            res_prev = res;

            // Jacobian on gl cochains at the current point
            ModuleAction<BigComplex> adgl;
            adgl.dim = D;
            adgl.descriptor = "Ad(gl)";
            for (int i = 0; i < g; ++i) {
                adgl.act.push_back(gl_adjoint(st.images[static_cast<size_t>(i)], st.inverses[static_cast<size_t>(i)]));
                adgl.act_inv.push_back(gl_adjoint(st.inverses[static_cast<size_t>(i)], st.images[static_cast<size_t>(i)]));
            }
            Matrix<BigComplex> J = relator_jacobian(p, adgl);

            // constraints: current B^1, the direction u1, and the trace directions
            Matrix<BigComplex> cons(g * D, d + 1 + g);
            for (int b = 0; b < d; ++b) {
                // coboundary of the b-th sl basis element, flattened per generator
                std::vector<BigComplex> e(static_cast<size_t>(d));
                e[static_cast<size_t>(b)] = BigComplex(1);
                Matrix<BigComplex> x = sl_from_coords(e, n);
                for (int i = 0; i < g; ++i) {
                    Matrix<BigComplex> bx = st.images[static_cast<size_t>(i)] * x * st.inverses[static_cast<size_t>(i)] - x;
                    auto fv = flatten_gl(bx);
                    for (int r = 0; r < D; ++r) cons(i * D + r, b) = fv[static_cast<size_t>(r)];
                }
            }
            for (int r = 0; r < g * D; ++r) cons(r, d) = u1_flat[static_cast<size_t>(r)];
            for (int i = 0; i < g; ++i)
                for (int k = 0; k < n; ++k) cons(i * D + k * n + k, d + 1 + i) = BigComplex(1);
            Matrix<BigComplex> Q = orthonormalize_columns(cons, opt.rank);

            // project J's domain onto the orthogonal complement of the constraints
            Matrix<BigComplex> JP = J;
            {
                // JP = J (I - Q Q^H) = J - (J Q) Q^H
                Matrix<BigComplex> JQ = J * Q;
                Matrix<BigComplex> QH(Q.cols(), Q.rows());
                for (int i = 0; i < Q.rows(); ++i)
                    for (int j = 0; j < Q.cols(); ++j) QH(j, i) = Q(i, j).conj();
                JP = J - JQ * QH;
            }
            std::vector<BigComplex> y = lstsq_min_norm(JP, rhs, opt.rank);
            // delta = (I - Q Q^H) y
            std::vector<BigComplex> delta = y;
            for (int c = 0; c < Q.cols(); ++c) {
                auto qc = Q.column(c);
                BigComplex pr = hermitian_dot(qc, y);
                for (size_t r = 0; r < delta.size(); ++r) delta[r] -= qc[r] * pr;
            }
            for (int i = 0; i < g; ++i) {
                std::vector<BigComplex> dv(delta.begin() + i * D, delta.begin() + (i + 1) * D);
                Matrix<BigComplex> dm = sl_project(unflatten_gl(dv, n));
                st.images[static_cast<size_t>(i)] = mat_exp(dm) * st.images[static_cast<size_t>(i)];
                // restore unimodularity by a scalar correction
                BigComplex det = det_bareiss(st.images[static_cast<size_t>(i)]);
                st.images[static_cast<size_t>(i)] =
                    st.images[static_cast<size_t>(i)] * principal_root_inverse(det, n);
                st.inverses[static_cast<size_t>(i)] = inverse_numeric(st.images[static_cast<size_t>(i)]);
            }
        }
        if (converged) {
            out.rep.n = n;
            out.rep.provenance = RepProvenance::deformed;
            out.rep.images = st.images;
            out.rep.inverses = st.inverses;
            break;
        }
        if (++halvings > opt.max_halvings) {
            std::string hist;
            for (auto& h : history) hist += h.str(3) + " ";
            throw Error("newton_nonconvergence",
                        "Newton did not converge; residual history: " + hist);
        }
        t_cur /= 2;
    }
    out.halvings = halvings;
    out.t_used = out.gauge_direction ? t : t_cur;
    if (out.gauge_direction) {
        out.residual = max_relator_residual(p, out.rep);
        out.iterations = 0;
    }

    out.irreducibility = irreducibility_test(out.rep, 0, opt.rank);

    // conjugation-invariant coordinates: generator traces, short words, meridian^2
    auto word_label = [&](const Word& w) { return w.str(p.names); };
    std::vector<Word> words;
    for (int i = 0; i < g; ++i) words.push_back(Word::generator(i));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) words.push_back(Word::generator(i) * Word::generator(j));
    words.push_back(Word::generator(p.meridian) * Word::generator(p.meridian));
    ModuleAction<BigComplex> base_a = rho.as_action("base");
    ModuleAction<BigComplex> def_a = out.rep.as_action("deformed");
    for (const Word& w : words) {
        out.traces.emplace_back(word_label(w), trace(evaluate_word(w, def_a)));
        out.base_traces.emplace_back(word_label(w), trace(evaluate_word(w, base_a)));
    }
    return out;
}

std::string provenance_str(RepProvenance p) {
    switch (p) {
    case RepProvenance::diagonal: return "diagonal";
    case RepProvenance::burde_derham: return "burde_derham";
    case RepProvenance::symmetric_power: return "symmetric_power";
    case RepProvenance::deformed: return "deformed";
    case RepProvenance::user: return "user";
    }
    return "unknown";
}

} // namespace knotrep
