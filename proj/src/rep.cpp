#include "hopfstar/rep.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hopfstar {

struct ModuleRep::Cache {
    std::once_flag once;
    std::vector<Matrix> actions;
};

ModuleRep::ModuleRep(AlgebraPtr algebra, std::vector<Matrix> generators, std::string label)
    : algebra_(std::move(algebra)),
      generators_(std::move(generators)),
      label_(std::move(label)),
      dim_(0),
      cache_(std::make_shared<Cache>()) {
    if (!algebra_) {
        throw std::invalid_argument("ModuleRep: missing algebra");
    }
    if (static_cast<int>(generators_.size()) != algebra_->generator_count()) {
        throw std::invalid_argument("ModuleRep: need one matrix per generator");
    }
    if (!generators_.empty()) {
        dim_ = generators_.front().rows();
    }
    for (const auto& m : generators_) {
        if (m.rows() != dim_ || m.cols() != dim_) {
            throw std::invalid_argument("ModuleRep: generator matrices must be square of equal size");
        }
        if (&m.context() != &algebra_->context()) {
            throw std::invalid_argument("ModuleRep: matrix over a different field");
        }
    }
}

ModuleRep ModuleRep::relabeled(std::string label) const {
    ModuleRep copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

const Matrix& ModuleRep::generator(const std::string& name) const {
    auto g = algebra_->find_generator(name);
    if (!g) {
        throw std::invalid_argument("unknown generator " + name);
    }
    return generator(*g);
}

const Matrix& ModuleRep::basis_action(int i) const {
    std::call_once(cache_->once, [this] {
        const FieldContext& ctx = context();
        std::map<std::vector<int>, Matrix> by_word;
        by_word.emplace(std::vector<int>{}, Matrix::identity(ctx, dim_));
        std::function<const Matrix&(const std::vector<int>&)> word_matrix =
            [&](const std::vector<int>& w) -> const Matrix& {
            auto it = by_word.find(w);
            if (it != by_word.end()) {
                return it->second;
            }
            std::vector<int> prefix(w.begin(), w.end() - 1);
            Matrix m = word_matrix(prefix) * generators_[static_cast<std::size_t>(w.back())];
            return by_word.emplace(w, std::move(m)).first->second;
        };
        cache_->actions.reserve(static_cast<std::size_t>(algebra_->dim()));
        for (int b = 0; b < algebra_->dim(); ++b) {
            cache_->actions.push_back(word_matrix(algebra_->word(b)));
        }
    });
    return cache_->actions.at(static_cast<std::size_t>(i));
}

Matrix ModuleRep::act(const Element& h) const {
    Matrix out(context(), dim_, dim_);
    for (const auto& [i, c] : h) {
        out.add_scaled(c, basis_action(i));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Matrix word_matrix(const ModuleRep& m, const std::vector<int>& word) {
    Matrix acc = Matrix::identity(m.context(), m.dim());
    for (int g : word) {
        acc = acc * m.generator(g);
    }
    return acc;
}

void require_same_algebra(const ModuleRep& a, const ModuleRep& b) {
    if (&a.algebra() != &b.algebra() && a.algebra().descriptor() != b.algebra().descriptor()) {
        throw std::invalid_argument("modules over different algebras");
    }
}

void require_stable(const ModuleRep& m, const Subspace& s) {
    if (s.ambient_dim() != m.dim()) {
        throw std::invalid_argument("subspace ambient dimension differs from the module dimension");
    }
    if (!is_stable(m, s)) {
        throw std::invalid_argument("subspace is not invariant under the generators");
    }
}

LinearSystem::Row flatten(const Matrix& m) {
    LinearSystem::Row row;
    const auto& e = m.entries();
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k].is_zero()) {
            row.emplace_back(static_cast<int>(k), e[k]);
        }
    }
    return row;
}

Matrix unflatten(const FieldContext& ctx, const Vector& v, int rows, int cols) {
    Matrix m(ctx, rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = v[static_cast<std::size_t>(r * cols + c)];
        }
    }
    return m;
}

Scalar trace_of_product(const Matrix& a, const Matrix& b) {
    Scalar t(a.context());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (!x.is_zero()) {
                t.add_product(x, b(k, i));
            }
        }
    }
    return t;
}

bool intertwines(const ModuleRep& src, const ModuleRep& tgt, const Matrix& t) {
    for (int g = 0; g < src.algebra().generator_count(); ++g) {
        if (t * src.generator(g) != tgt.generator(g) * t) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool verify_module(const ModuleRep& m) {
    const FieldContext& ctx = m.context();
    for (const auto& rel : m.algebra().relations()) {
        Matrix sum(ctx, m.dim(), m.dim());
        for (const auto& [coef, word] : rel.terms) {
            sum.add_scaled(coef, word_matrix(m, word));
        }
        if (!sum.is_zero()) {
            return false;
        }
    }
    return true;
}

bool is_stable(const ModuleRep& m, const Subspace& s) {
    for (const auto& g : m.generators()) {
        for (int i = 0; i < s.dim(); ++i) {
            if (!s.contains(g.apply(s.basis().row(i)))) {
                return false;
            }
        }
    }
    return true;
}

Subspace spin(const ModuleRep& m, const std::vector<Vector>& seeds) {
    const FieldContext& ctx = m.context();
    LinearSystem tracker(ctx, m.dim());
    std::vector<Vector> kept;
    std::deque<Vector> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        Vector v = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(v.size()) != m.dim()) {
            throw std::invalid_argument("spin: seed has the wrong dimension");
        }
        const int before = tracker.rank();
        LinearSystem::Row row;
        for (int k = 0; k < m.dim(); ++k) {
            if (!v[static_cast<std::size_t>(k)].is_zero()) {
                row.emplace_back(k, v[static_cast<std::size_t>(k)]);
            }
        }
        tracker.add_equation(std::move(row));
        if (tracker.rank() == before) {
            continue;
        }
        for (const auto& g : m.generators()) {
            queue.push_back(g.apply(v));
        }
        kept.push_back(std::move(v));
    }
    return Subspace::span(ctx, m.dim(), kept);
}

ModuleRep restrict_to(const ModuleRep& m, const Subspace& s, std::string label) {
    require_stable(m, s);
    std::vector<Matrix> gens;
    for (const auto& g : m.generators()) {
        Matrix r(m.context(), s.dim(), s.dim());
        for (int j = 0; j < s.dim(); ++j) {
            Vector coords = s.coordinates(g.apply(s.basis().row(j)));
            for (int i = 0; i < s.dim(); ++i) {
                r(i, j) = coords[static_cast<std::size_t>(i)];
            }
        }
        gens.push_back(std::move(r));
    }
    return ModuleRep(m.algebra_ptr(), std::move(gens), label.empty() ? m.label() + "|sub" : std::move(label));
}

std::vector<Matrix> image_algebra(const ModuleRep& m) {
    const FieldContext& ctx = m.context();
    const int d = m.dim();
    LinearSystem tracker(ctx, d * d);
    std::vector<Matrix> basis;
    std::deque<Matrix> queue;
    queue.push_back(Matrix::identity(ctx, d));
    while (!queue.empty()) {
        Matrix x = std::move(queue.front());
        queue.pop_front();
        const int before = tracker.rank();
        tracker.add_equation(flatten(x));
        if (tracker.rank() == before) {
            continue;
        }
        for (const auto& g : m.generators()) {
            queue.push_back(g * x);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

Subspace socle(const ModuleRep& m) {
    const FieldContext& ctx = m.context();
    const int d = m.dim();
    if (d == 0) {
        return Subspace::zero(ctx, 0);
    }
    std::vector<Matrix> alg = image_algebra(m);
    const int k = static_cast<int>(alg.size());
    Matrix gram(ctx, k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            gram(i, j) = trace_of_product(alg[static_cast<std::size_t>(i)], alg[static_cast<std::size_t>(j)]);
            gram(j, i) = gram(i, j);
        }
    }
    Subspace radical = kernel(gram);
    if (radical.dim() == 0) {
        return Subspace::full(ctx, d);
    }
    Matrix stacked(ctx, 0, d);
    for (int r = 0; r < radical.dim(); ++r) {
        Matrix x(ctx, d, d);
        for (int i = 0; i < k; ++i) {
            x.add_scaled(radical.basis()(r, i), alg[static_cast<std::size_t>(i)]);
        }
        stacked = vstack(stacked, x);
    }
    return kernel(stacked);
}

bool is_irreducible(const ModuleRep& m) {
    if (m.dim() == 0) {
        return false;
    }
    return socle(m).dim() == m.dim() && hom_space(m, m).dim() == 1;
}

HomSpace hom_space(const ModuleRep& src, const ModuleRep& tgt) {
    require_same_algebra(src, tgt);
    const FieldContext& ctx = src.context();
    const int ds = src.dim();
    const int dt = tgt.dim();
    LinearSystem sys(ctx, ds * dt);
    auto var = [ds](int r, int c) { return r * ds + c; };
    for (int g = 0; g < src.algebra().generator_count(); ++g) {
        const Matrix& a = src.generator(g);
        const Matrix& b = tgt.generator(g);
        // (T a - b T)[i][j] = sum_k T[i][k] a[k][j] - sum_k b[i][k] T[k][j]
        for (int i = 0; i < dt; ++i) {
            for (int j = 0; j < ds; ++j) {
                LinearSystem::Row row;
                for (int k = 0; k < ds; ++k) {
                    if (!a(k, j).is_zero()) {
                        row.emplace_back(var(i, k), a(k, j));
                    }
                }
                for (int k = 0; k < dt; ++k) {
                    if (!b(i, k).is_zero()) {
                        row.emplace_back(var(k, j), -b(i, k));
                    }
                }
                sys.add_equation(std::move(row));
            }
        }
    }
    HomSpace h{ds, dt, {}};
    for (const auto& v : Subspace::span(ctx, ds * dt, sys.nullspace()).vectors()) {
        h.basis.push_back(unflatten(ctx, v, dt, ds));
    }
    return h;
}

bool grid_search(int k, int bound, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> x(static_cast<std::size_t>(k), 0);
    if (k == 0) {
        return visit(x);
    }
    std::function<bool(int, int)> rec = [&](int pos, int remaining) -> bool {
        if (pos == k - 1) {
            if (remaining > bound) {
                return false;
            }
            x[static_cast<std::size_t>(pos)] = remaining;
            return visit(x);
        }
        for (int v = 0; v <= std::min(bound, remaining); ++v) {
            x[static_cast<std::size_t>(pos)] = v;
            if (rec(pos + 1, remaining - v)) {
                return true;
            }
        }
        return false;
    };
    for (int sum = 0; sum <= k * bound; ++sum) {
        if (rec(0, sum)) {
            return true;
        }
    }
    return false;
}

std::optional<Matrix> is_isomorphic(const ModuleRep& src, const ModuleRep& tgt) {
    require_same_algebra(src, tgt);
    if (src.dim() != tgt.dim()) {
        return std::nullopt;
    }
    const int d = src.dim();
    if (d == 0) {
        return Matrix(src.context(), 0, 0);
    }
    HomSpace hom = hom_space(src, tgt);
    if (hom.dim() == 0) {
        return std::nullopt;
    }
    // Isomorphic modules have Hom(M,N), End(M) and Hom(N,M) of equal dimension.
    if (hom_space(src, src).dim() != hom.dim() || hom_space(tgt, src).dim() != hom.dim()) {
        return std::nullopt;
    }
    std::optional<Matrix> found;
    grid_search(hom.dim(), d, [&](const std::vector<int>& x) {
        Matrix t(src.context(), d, d);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0) {
                t.add_scaled(Scalar(src.context(), Rational(x[i])), hom.basis[i]);
            }
        }
        if (is_invertible(t)) {
            found = std::move(t);
            return true;
        }
        return false;
    });
    if (found && !(is_invertible(*found) && intertwines(src, tgt, *found))) {
        throw std::logic_error("is_isomorphic: candidate failed verification");
    }
    return found;
}

QuotientRep quotient_rep(const ModuleRep& m, const Subspace& s, std::string label) {
    require_stable(m, s);
    QuotientCoordinates qc(m.dim(), s);
    Matrix reps_t = qc.representatives().transpose();
    std::vector<Matrix> gens;
    for (const auto& g : m.generators()) {
        gens.push_back(qc.projection() * g * reps_t);
    }
    ModuleRep q(m.algebra_ptr(), std::move(gens), label.empty() ? m.label() + "/sub" : std::move(label));
    return {std::move(q), qc.projection(), qc.representatives()};
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b, std::string label) {
    require_same_algebra(a, b);
    std::vector<Matrix> gens;
    for (int g = 0; g < a.algebra().generator_count(); ++g) {
        gens.push_back(block_diagonal(a.generator(g), b.generator(g)));
    }
    return ModuleRep(a.algebra_ptr(), std::move(gens), label.empty() ? a.label() + "⊕" + b.label() : std::move(label));
}

std::optional<Matrix> splits(const ModuleRep& m, const Subspace& s) {
    require_stable(m, s);
    const FieldContext& ctx = m.context();
    const int d = m.dim();
    const int one = d * d;  // index of the constant unknown
    LinearSystem sys(ctx, d * d + 1);
    auto var = [d](int r, int c) { return r * d + c; };
    for (const auto& g : m.generators()) {
        // P g - g P = 0
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                LinearSystem::Row row;
                for (int k = 0; k < d; ++k) {
                    if (!g(k, j).is_zero()) {
                        row.emplace_back(var(i, k), g(k, j));
                    }
                    if (!g(i, k).is_zero()) {
                        row.emplace_back(var(k, j), -g(i, k));
                    }
                }
                sys.add_equation(std::move(row));
            }
        }
    }
    // image(P) inside S: every annihilator vector n of S kills P's columns.
    Subspace ann = annihilator(s);
    for (int a = 0; a < ann.dim(); ++a) {
        for (int j = 0; j < d; ++j) {
            LinearSystem::Row row;
            for (int r = 0; r < d; ++r) {
                if (!ann.basis()(a, r).is_zero()) {
                    row.emplace_back(var(r, j), ann.basis()(a, r));
                }
            }
            sys.add_equation(std::move(row));
        }
    }
    // P s = s on a basis of S.
    for (int b = 0; b < s.dim(); ++b) {
        for (int r = 0; r < d; ++r) {
            LinearSystem::Row row;
            for (int c = 0; c < d; ++c) {
                if (!s.basis()(b, c).is_zero()) {
                    row.emplace_back(var(r, c), s.basis()(b, c));
                }
            }
            if (!s.basis()(b, r).is_zero()) {
                row.emplace_back(one, -s.basis()(b, r));
            }
            sys.add_equation(std::move(row));
        }
    }
    auto sol = sys.affine_solution();
    if (!sol) {
        return std::nullopt;
    }
    return unflatten(ctx, *sol, d, d);
}

nlohmann::json to_json(const ModuleRep& m) {
    nlohmann::json gens = nlohmann::json::object();
    for (int g = 0; g < m.algebra().generator_count(); ++g) {
        gens[m.algebra().generator_name(g)] = to_json(m.generator(g));
    }
    return {{"algebra", m.algebra().descriptor()}, {"dim", m.dim()}, {"label", m.label()}, {"generators", gens}};
}

ModuleRep module_from_json(const nlohmann::json& j, const std::function<AlgebraPtr(const std::string&)>& resolve) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("generators")) {
        throw std::invalid_argument("module JSON needs \"algebra\" and \"generators\"");
    }
    AlgebraPtr alg = resolve(j.at("algebra").get<std::string>());
    const auto& gj = j.at("generators");
    std::vector<Matrix> gens;
    for (int g = 0; g < alg->generator_count(); ++g) {
        const std::string& name = alg->generator_name(g);
        if (!gj.contains(name)) {
            throw std::invalid_argument("module JSON lacks generator " + name);
        }
        gens.push_back(matrix_from_json(gj.at(name), alg->context()));
    }
    ModuleRep m(alg, std::move(gens), j.value("label", std::string("module")));
    if (j.contains("dim") && j.at("dim").get<int>() != m.dim()) {
        throw std::invalid_argument("module JSON dim does not match its matrices");
    }
    return m;
}

}  // namespace hopfstar
