#include "hopfstar/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace hopfstar {

namespace {

int idx(int n, int a, int b) { return a * n + b; }

Vector flatten(const Matrix& m) { return m.entries(); }

Matrix pairing_gram(const Matrix& left_rows, const Matrix& gram, const Matrix& right_rows) {
    return left_rows.conjugate() * gram * right_rows.transpose();
}

// K-basis of {G : rho(g*)^dagger G = G rho(g) for every generator g}.
std::vector<Matrix> invariant_sesquilinear_basis(const ModuleRep& m) {
    const FieldContext& ctx = m.context();
    const int n = m.dim();
    LinearSystem sys(ctx, n * n);
    const auto& alg = m.algebra();
    for (int g = 0; g < alg.generator_count(); ++g) {
        const Matrix a = m.act(alg.generator_star(g));
        const Matrix& rho = m.generator(g);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                LinearSystem::Row row;
                for (int k = 0; k < n; ++k) {
                    if (!a(k, i).is_zero()) {
                        row.emplace_back(idx(n, k, j), conj(a(k, i)));
                    }
                    if (!rho(k, j).is_zero()) {
                        row.emplace_back(idx(n, i, k), -rho(k, j));
                    }
                }
                if (!row.empty()) {
                    sys.add_equation(std::move(row));
                }
            }
        }
    }
    std::vector<Matrix> out;
    for (const auto& v : sys.nullspace()) {
        Matrix g(ctx, n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                g(i, j) = v[static_cast<std::size_t>(idx(n, i, j))];
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::complex<double> embed(const Scalar& x, int k) {
    const int n = x.context().conductor();
    std::complex<double> acc = 0.0;
    auto c = x.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / n;
        acc += c[j].to_double() * std::polar(1.0, angle);
    }
    return acc;
}

}  // namespace

HermitianForm::HermitianForm(Matrix g) : gram(std::move(g)) {
    if (!gram.is_square()) {
        throw std::invalid_argument("HermitianForm: Gram matrix must be square");
    }
}

bool HermitianForm::is_hermitian() const { return gram.adjoint() == gram; }

Scalar HermitianForm::value(std::span<const Scalar> x, std::span<const Scalar> y) const {
    const Vector gy = gram.apply(y);
    Scalar acc(gram.context());
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc.add_product(conj(x[i]), gy[i]);
    }
    return acc;
}

Matrix HermitianForm::restricted_gram(const Subspace& s) const { return pairing_gram(s.basis(), gram, s.basis()); }

bool satisfies_adjoint(const ModuleRep& m, const Matrix& gram, const Element& h) {
    return m.act(m.algebra().star(h)).adjoint() * gram == gram * m.act(h);
}

bool is_invariant(const ModuleRep& m, const Matrix& gram) {
    const auto& alg = m.algebra();
    for (int g = 0; g < alg.generator_count(); ++g) {
        if (!satisfies_adjoint(m, gram, alg.basis_element(alg.generator_basis(g)))) {
            return false;
        }
    }
    return true;
}

FormSpace invariant_form_space(const ModuleRep& m) {
    const FieldContext& ctx = m.context();
    const FieldContext& qctx = FieldContext::get(1);
    const int n = m.dim();
    const int phi = ctx.degree();
    FormSpace out;
    out.module = m.label();
    const std::vector<Matrix> sesq = invariant_sesquilinear_basis(m);
    const int t_count = static_cast<int>(sesq.size());

    // G = sum_{t,u} x_{t,u} zeta^u B_t with rational x; impose G^dagger = G.
    std::vector<Scalar> zeta;
    std::vector<Scalar> zeta_inv;
    for (int u = 0; u < phi; ++u) {
        zeta.push_back(Scalar::zeta_power(ctx, u));
        zeta_inv.push_back(Scalar::zeta_power(ctx, -u));
    }
    LinearSystem sys(qctx, t_count * phi);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::vector<LinearSystem::Row> rows(static_cast<std::size_t>(phi));
            for (int t = 0; t < t_count; ++t) {
                const Scalar& bij = sesq[static_cast<std::size_t>(t)](i, j);
                const Scalar bji = conj(sesq[static_cast<std::size_t>(t)](j, i));
                if (bij.is_zero() && bji.is_zero()) {
                    continue;
                }
                for (int u = 0; u < phi; ++u) {
                    const Scalar c = zeta[static_cast<std::size_t>(u)] * bij - zeta_inv[static_cast<std::size_t>(u)] * bji;
                    auto coeffs = c.coeffs();
                    for (int comp = 0; comp < phi; ++comp) {
                        const Rational& r = coeffs[static_cast<std::size_t>(comp)];
                        if (!r.is_zero()) {
                            rows[static_cast<std::size_t>(comp)].emplace_back(t * phi + u, Scalar(qctx, r));
                        }
                    }
                }
            }
            for (auto& row : rows) {
                if (!row.empty()) {
                    sys.add_equation(std::move(row));
                }
            }
        }
    }
    const auto solutions = sys.nullspace();
    out.dim_rational = static_cast<int>(solutions.size());

    std::vector<Vector> chosen;
    int rank_so_far = 0;
    for (const auto& x : solutions) {
        Matrix g(ctx, n, n);
        for (int t = 0; t < t_count; ++t) {
            for (int u = 0; u < phi; ++u) {
                const Scalar& xr = x[static_cast<std::size_t>(t * phi + u)];
                if (xr.is_zero()) {
                    continue;
                }
                Scalar coef = zeta[static_cast<std::size_t>(u)];
                coef *= xr.coeffs()[0];
                g.add_scaled(coef, sesq[static_cast<std::size_t>(t)]);
            }
        }
        chosen.push_back(flatten(g));
        const int r = Subspace::span(ctx, n * n, chosen).dim();
        if (r > rank_so_far) {
            rank_so_far = r;
            out.basis.push_back(std::move(g));
        } else {
            chosen.pop_back();
        }
    }
    out.dim_real = static_cast<int>(out.basis.size());
    if (out.dim_rational != out.dim_real * ctx.real_subfield_degree()) {
        throw IntegralityError("invariant_form_space(" + out.module + "): dim over Q = " +
                               std::to_string(out.dim_rational) + " but dim over E+ = " +
                               std::to_string(out.dim_real) + " with [E+:Q] = " +
                               std::to_string(ctx.real_subfield_degree()));
    }
    return out;
}

Matrix theorem2_pattern(int l, int r, const Scalar& alpha, const Scalar& beta) {
    const FieldContext& ctx = alpha.context();
    const int L = l - r;
    Matrix g(ctx, 2 * l, 2 * l);
    auto x = [](int k) { return k; };
    auto y = [L](int k) { return L + k; };
    auto a = [L](int k) { return 2 * L + k; };
    auto b = [L, r](int k) { return 2 * L + r + k; };
    for (int k = 0; k < L; ++k) {
        const int j = L - 1 - k;
        g(x(k), y(j)) = alpha;
        g(y(j), x(k)) = alpha;
    }
    for (int n = 0; n < r; ++n) {
        const int mm = r - 1 - n;
        g(a(n), b(mm)) = alpha;
        g(b(mm), a(n)) = alpha;
        g(b(n), b(mm)) = beta;
    }
    return g;
}

bool same_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.empty() || b.empty()) {
        auto all_zero = [](const std::vector<Matrix>& v) {
            return std::all_of(v.begin(), v.end(), [](const Matrix& m) { return m.is_zero(); });
        };
        return all_zero(a) && all_zero(b);
    }
    const FieldContext& ctx = a.front().context();
    const int len = a.front().rows() * a.front().cols();
    auto span = [&](const std::vector<Matrix>& v) {
        std::vector<Vector> rows;
        for (const auto& m : v) {
            if (m.rows() * m.cols() != len) {
                throw std::invalid_argument("same_span: shape mismatch");
            }
            rows.push_back(flatten(m));
        }
        return Subspace::span(ctx, len, rows);
    };
    return span(a) == span(b);
}

bool matches_theorem2_pattern(const FormSpace& f, int r, int l) {
    if (f.dim_real != 2 || f.basis.front().rows() != 2 * l) {
        return false;
    }
    const FieldContext& ctx = f.basis.front().context();
    const Scalar one(ctx, Rational(1));
    const Scalar zero(ctx);
    return same_span(f.basis, {theorem2_pattern(l, r, one, zero), theorem2_pattern(l, r, zero, one)});
}

std::optional<int> theorem3_sum(int n, int d, int l, int i) {
    const int m = n / d;
    for (int s = 0; s < l; ++s) {
        if (((static_cast<long long>(m) * s - 2LL * i) % n + n) % n == 0) {
            return s;
        }
    }
    return std::nullopt;
}

std::optional<Matrix> theorem3_pattern(int n, int d, int l, int i) {
    auto s = theorem3_sum(n, d, l, i);
    if (!s) {
        return std::nullopt;
    }
    const FieldContext& ctx = FieldContext::get(n);
    Matrix g(ctx, l, l);
    for (int j = 0; j <= *s; ++j) {
        g(j, *s - j) = Scalar(ctx, Rational(1));
    }
    return g;
}

bool matches_theorem3_pattern(const FormSpace& f, int n, int d, int l, int i) {
    auto pattern = theorem3_pattern(n, d, l, i);
    if (!pattern) {
        return f.dim_real == 0;
    }
    return f.dim_real == 1 && f.basis.front().rows() == l && same_span(f.basis, {*pattern});
}

bool is_nondegenerate(const HermitianForm& f) { return rank(f.gram) == f.dim(); }

std::optional<HermitianForm> find_nondegenerate(const FormSpace& f) {
    if (f.basis.empty()) {
        return std::nullopt;
    }
    const Matrix& first = f.basis.front();
    const FieldContext& ctx = first.context();
    std::optional<HermitianForm> found;
    grid_search(static_cast<int>(f.basis.size()), first.rows(), [&](const std::vector<int>& x) {
        Matrix g(ctx, first.rows(), first.cols());
        for (std::size_t t = 0; t < x.size(); ++t) {
            if (x[t] != 0) {
                g.add_scaled(Scalar(ctx, Rational(x[t])), f.basis[t]);
            }
        }
        if (rank(g) != g.rows()) {
            return false;
        }
        found.emplace(std::move(g));
        return true;
    });
    return found;
}

Subspace polar(const HermitianForm& f, const Subspace& s) {
    // conj(<xi, eta>) = eta^dagger G^dagger xi
    return kernel(s.basis().conjugate() * f.gram.adjoint());
}

HermitianForm induced_form_on_quotient(const HermitianForm& f, const Subspace& h2, const Subspace& h1) {
    if (!h2.contains(h1)) {
        throw std::invalid_argument("induced_form_on_quotient: H1 is not contained in H2");
    }
    if (!pairing_gram(h2.basis(), f.gram, h1.basis()).is_zero() ||
        !pairing_gram(h1.basis(), f.gram, h2.basis()).is_zero()) {
        throw std::invalid_argument("induced_form_on_quotient: H1 is not orthogonal to H2, the form does not descend");
    }
    std::vector<Vector> coords;
    for (const auto& v : h1.vectors()) {
        coords.push_back(h2.coordinates(v));
    }
    const Subspace inner = Subspace::span(f.gram.context(), h2.dim(), coords);
    const Matrix reps = quotient_basis(h2.dim(), inner) * h2.basis();
    return HermitianForm(pairing_gram(reps, f.gram, reps));
}

Signature signature(const HermitianForm& f, int embedding_index) {
    const int n = f.gram.context().conductor();
    if (std::gcd(embedding_index, n) != 1) {
        throw SignatureError("signature: embedding index " + std::to_string(embedding_index) +
                             " is not coprime to the conductor " + std::to_string(n));
    }
    if (!f.is_hermitian()) {
        throw SignatureError("signature: form is not Hermitian");
    }
    const int dim = f.dim();
    Signature out;
    if (dim == 0) {
        return out;
    }
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = embed(f.gram(i, j), embedding_index);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    const double tol = 1e-9 * scale;
    for (int i = 0; i < dim; ++i) {
        if (scale == 0.0 || std::abs(ev(i)) <= tol) {
            ++out.zero;
        } else if (ev(i) > 0) {
            ++out.positive;
        } else {
            ++out.negative;
        }
    }
    const int corank = dim - rank(f.gram);
    if (out.zero != corank) {
        throw SignatureError("signature: " + std::to_string(out.zero) + " eigenvalues within tolerance of zero but exact corank is " +
                             std::to_string(corank));
    }
    return out;
}

InvarianceEquivalence verify_invariance_equivalences(const ModuleRep& m, const HermitianForm& f) {
    const auto& alg = m.algebra();
    const FieldContext& ctx = m.context();
    const Matrix& g = f.gram;
    const int dim = alg.dim();
    // Per basis element b: (pi(S^2(b)*))^dagger G, (pi(S(b)*))^dagger G, pi(S(b)).
    std::vector<Matrix> ss_star_g;
    std::vector<Matrix> s_star_g;
    std::vector<Matrix> s_act;
    for (int b = 0; b < dim; ++b) {
        const Element sb = alg.antipode_of(b);
        ss_star_g.push_back(m.act(alg.star(alg.antipode(sb))).adjoint() * g);
        s_star_g.push_back(m.act(alg.star(sb)).adjoint() * g);
        s_act.push_back(m.act(sb));
    }
    InvarianceEquivalence out;
    for (int x = 0; x < dim; ++x) {
        const Matrix expect = alg.counit_of(x) * g;
        Matrix lhs_i(ctx, g.rows(), g.cols());
        Matrix lhs_ii(ctx, g.rows(), g.cols());
        for (const auto& t : alg.coproduct_of(x)) {
            lhs_i.add_scaled(t.coef, ss_star_g[static_cast<std::size_t>(t.right)] * s_act[static_cast<std::size_t>(t.left)]);
            lhs_ii.add_scaled(t.coef, s_star_g[static_cast<std::size_t>(t.left)] * m.basis_action(t.right));
        }
        if (lhs_i != expect && out.condition_i) {
            out.condition_i = false;
            out.first_failure_i = alg.label_string(x);
        }
        if (lhs_ii != expect && out.condition_ii) {
            out.condition_ii = false;
            out.first_failure_ii = alg.label_string(x);
        }
        if (out.condition_iii && m.act(alg.star_of(x)).adjoint() * g != g * m.basis_action(x)) {
            out.condition_iii = false;
            out.first_failure_iii = alg.label_string(x);
        }
    }
    return out;
}

nlohmann::json to_json(const FormSpace& f) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : f.basis) {
        basis.push_back(to_json(b));
    }
    return {{"module", f.module}, {"dim_real", f.dim_real}, {"dim_rational", f.dim_rational}, {"basis", std::move(basis)}};
}

}  // namespace hopfstar
