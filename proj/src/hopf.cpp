#include "hopfstar/hopf.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace hopfstar {

// ---------------------------------------------------------------------------
// Builders and sparse helpers

void ElementBuilder::add(int index, const Scalar& coef) {
    if (coef.is_zero()) {
        return;
    }
    auto [it, inserted] = acc_.try_emplace(index, coef);
    if (!inserted) {
        it->second += coef;
    }
}

void ElementBuilder::add(const Element& e, const Scalar& factor) {
    if (factor.is_zero()) {
        return;
    }
    for (const auto& [i, c] : e) {
        add(i, factor.is_one() ? c : factor * c);
    }
}

Element ElementBuilder::finish() && {
    Element out;
    out.reserve(acc_.size());
    for (auto& [i, c] : acc_) {
        if (!c.is_zero()) {
            out.emplace_back(i, std::move(c));
        }
    }
    return out;
}

void TensorBuilder::add(int left, int right, const Scalar& coef) {
    if (coef.is_zero()) {
        return;
    }
    auto [it, inserted] = acc_.try_emplace({left, right}, coef);
    if (!inserted) {
        it->second += coef;
    }
}

Tensor TensorBuilder::finish() && {
    Tensor out;
    out.reserve(acc_.size());
    for (auto& [key, c] : acc_) {
        if (!c.is_zero()) {
            out.push_back({key.first, key.second, std::move(c)});
        }
    }
    return out;
}

Element scale(const Element& e, const Scalar& s) {
    Element out;
    if (s.is_zero()) {
        return out;
    }
    out.reserve(e.size());
    for (const auto& [i, c] : e) {
        out.emplace_back(i, s * c);
    }
    return out;
}

Element add(const Element& a, const Element& b) {
    Element out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Scalar s = a[i].second + b[j].second;
            if (!s.is_zero()) {
                out.emplace_back(a[i].first, std::move(s));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

Element subtract(const Element& a, const Element& b) {
    if (b.empty()) {
        return a;
    }
    return add(a, scale(b, Scalar(b.front().second.context(), Rational(-1))));
}

namespace {

Tensor tensor_product(const HopfPresentation& h, const Tensor& a, const Tensor& b) {
    TensorBuilder out(h.context());
    for (const auto& x : a) {
        for (const auto& y : b) {
            const Element& left = h.product(x.left, y.left);
            if (left.empty()) {
                continue;
            }
            const Element& right = h.product(x.right, y.right);
            if (right.empty()) {
                continue;
            }
            Scalar s = x.coef * y.coef;
            for (const auto& [li, lc] : left) {
                Scalar sl = s * lc;
                for (const auto& [ri, rc] : right) {
                    out.add(li, ri, sl * rc);
                }
            }
        }
    }
    return std::move(out).finish();
}

std::string describe(const HopfPresentation& h, std::initializer_list<int> indices) {
    std::ostringstream os;
    bool first = true;
    for (int i : indices) {
        os << (first ? "" : ", ") << h.label_string(i);
        first = false;
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// HopfPresentation

HopfPresentation::HopfPresentation(PresentationData data)
    : ctx_(data.ctx),
      descriptor_(std::move(data.descriptor)),
      labels_(std::move(data.labels)),
      words_(std::move(data.words)),
      unit_(data.unit),
      generator_names_(std::move(data.generator_names)),
      generator_basis_(std::move(data.generator_basis)),
      relations_(std::move(data.relations)) {
    if (ctx_ == nullptr) {
        throw std::invalid_argument("HopfPresentation: missing field context");
    }
    const std::size_t n = labels_.size();
    const std::size_t g = generator_names_.size();
    if (words_.size() != n || generator_basis_.size() != g || data.generator_coproduct.size() != g ||
        data.generator_counit.size() != g || data.generator_antipode.size() != g || data.generator_star.size() != g) {
        throw std::invalid_argument("HopfPresentation: inconsistent table sizes");
    }
    if (unit_ < 0 || static_cast<std::size_t>(unit_) >= n) {
        throw std::invalid_argument("HopfPresentation: unit index out of range");
    }

    mult_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Element e = data.normal_product(static_cast<int>(i), static_cast<int>(j));
            check(e);
            mult_[i * n + j] = std::move(e);
        }
    }

    coproduct_.resize(n);
    counit_.assign(n, Scalar(*ctx_));
    antipode_.resize(n);
    star_.resize(n);
    const Scalar one(*ctx_, Rational(1));
    for (std::size_t b = 0; b < n; ++b) {
        Tensor delta{{unit_, unit_, one}};
        Scalar eps = one;
        Element s = basis_element(unit_);
        Element st = basis_element(unit_);
        for (int gen : words_[b]) {
            const auto gi = static_cast<std::size_t>(gen);
            delta = tensor_product(*this, delta, data.generator_coproduct[gi]);
            eps *= data.generator_counit[gi];
            // Both S and * reverse products.
            s = multiply(data.generator_antipode[gi], s);
            st = multiply(data.generator_star[gi], st);
        }
        coproduct_[b] = std::move(delta);
        counit_[b] = std::move(eps);
        antipode_[b] = std::move(s);
        star_[b] = std::move(st);
    }
}

std::string HopfPresentation::label_string(int i) const {
    std::ostringstream os;
    os << '(';
    const auto& l = label(i);
    for (std::size_t k = 0; k < l.size(); ++k) {
        os << (k ? "," : "") << l[k];
    }
    os << ')';
    return os.str();
}

std::optional<int> HopfPresentation::find_label(const std::vector<int>& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<int>(it - labels_.begin());
}

std::optional<int> HopfPresentation::find_generator(const std::string& name) const {
    auto it = std::find(generator_names_.begin(), generator_names_.end(), name);
    if (it == generator_names_.end()) {
        return std::nullopt;
    }
    return static_cast<int>(it - generator_names_.begin());
}

Element HopfPresentation::basis_element(int i) const {
    if (i < 0 || i >= dim()) {
        throw std::invalid_argument("basis index out of range");
    }
    return {{i, Scalar(*ctx_, Rational(1))}};
}

const Element& HopfPresentation::product(int i, int j) const {
    const auto n = static_cast<std::size_t>(dim());
    return mult_.at(static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j));
}

void HopfPresentation::check(const Element& a) const {
    for (const auto& [i, c] : a) {
        if (i < 0 || i >= dim()) {
            throw std::invalid_argument("element index outside the algebra's basis (dimension mismatch)");
        }
        if (&c.context() != ctx_) {
            throw std::invalid_argument("element coefficient from a different field");
        }
    }
}

Element HopfPresentation::multiply(const Element& a, const Element& b) const {
    check(a);
    check(b);
    ElementBuilder out(*ctx_);
    for (const auto& [i, ci] : a) {
        for (const auto& [j, cj] : b) {
            out.add(product(i, j), ci * cj);
        }
    }
    return std::move(out).finish();
}

Tensor HopfPresentation::coproduct(const Element& a) const {
    check(a);
    TensorBuilder out(*ctx_);
    for (const auto& [i, c] : a) {
        for (const auto& t : coproduct_of(i)) {
            out.add(t.left, t.right, c * t.coef);
        }
    }
    return std::move(out).finish();
}

Element HopfPresentation::antipode(const Element& a) const {
    check(a);
    ElementBuilder out(*ctx_);
    for (const auto& [i, c] : a) {
        out.add(antipode_of(i), c);
    }
    return std::move(out).finish();
}

Element HopfPresentation::star(const Element& a) const {
    check(a);
    ElementBuilder out(*ctx_);
    for (const auto& [i, c] : a) {
        out.add(star_of(i), conj(c));
    }
    return std::move(out).finish();
}

Scalar HopfPresentation::counit(const Element& a) const {
    check(a);
    Scalar out(*ctx_);
    for (const auto& [i, c] : a) {
        out.add_product(c, counit_of(i));
    }
    return out;
}

Element HopfPresentation::word_product(const std::vector<int>& word) const {
    Element acc = unit();
    for (int g : word) {
        acc = multiply(acc, basis_element(generator_basis(g)));
    }
    return acc;
}

HopfPresentation HopfPresentation::with_star_entry(int index, Element image) const {
    check(image);
    HopfPresentation copy = *this;
    copy.star_.at(static_cast<std::size_t>(index)) = std::move(image);
    return copy;
}

// ---------------------------------------------------------------------------
// Axiom verification

bool AxiomReport::all() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.holds; });
}

const AxiomCheck& AxiomReport::operator[](const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::out_of_range("no axiom named " + name);
}

namespace {

class Verifier {
public:
    Verifier(const HopfPresentation& h, const AxiomOptions& opt) : h_(h), opt_(opt), n_(h.dim()) {
        for (int g = 0; g < h.generator_count(); ++g) {
            generators_.push_back(h.generator_basis(g));
        }
        for (int i = 0; i < n_; ++i) {
            all_.push_back(i);
        }
    }

    AxiomReport run() {
        AxiomReport r;
        r.checks.push_back(basis_words());
        r.checks.push_back(associativity());
        r.checks.push_back(unit());
        r.checks.push_back(coassociativity());
        r.checks.push_back(counit());
        r.checks.push_back(antipode());
        r.checks.push_back(coproduct_multiplicative());
        r.checks.push_back(counit_multiplicative());
        r.checks.push_back(star_involution());
        r.checks.push_back(star_unit());
        r.checks.push_back(star_antihomomorphism());
        r.checks.push_back(star_coproduct());
        r.checks.push_back(star_antipode());
        r.checks.push_back(counit_star());
        r.checks.push_back(antipode_inverse());
        return r;
    }

private:
    const Element& e(int i) {
        auto [it, inserted] = basis_cache_.try_emplace(i);
        if (inserted) {
            it->second = h_.basis_element(i);
        }
        return it->second;
    }

    // Left factors for a bilinear check: all basis elements, or generators only.
    const std::vector<int>& left_factors(AxiomCheck& c) {
        if (n_ <= opt_.exhaustive_pairs_max_dim) {
            return all_;
        }
        c.mode = "generator-reduced";
        return generators_;
    }

    static void fail(AxiomCheck& c, std::string where) {
        if (c.holds) {
            c.holds = false;
            c.counterexample = std::move(where);
        }
    }

    AxiomCheck basis_words() {
        AxiomCheck c{"basis-words"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            if (h_.word_product(h_.word(i)) != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck associativity() {
        AxiomCheck c{"associativity"};
        const bool full = n_ <= opt_.exhaustive_triples_max_dim;
        if (!full) {
            c.mode = "generator-reduced";
        }
        const std::vector<int>& firsts = full ? all_ : generators_;
        for (int a : firsts) {
            for (int b = 0; b < n_ && c.holds; ++b) {
                const Element& ab = h_.product(a, b);
                for (int d = 0; d < n_; ++d) {
                    Element lhs = h_.multiply(ab, e(d));
                    Element rhs = h_.multiply(e(a), h_.product(b, d));
                    if (lhs != rhs) {
                        fail(c, describe(h_, {a, b, d}));
                        break;
                    }
                }
            }
        }
        return c;
    }

    AxiomCheck unit() {
        AxiomCheck c{"unit"};
        const int u = h_.unit_index();
        for (int i = 0; i < n_ && c.holds; ++i) {
            if (h_.product(u, i) != e(i) || h_.product(i, u) != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    // (Delta (x) id) Delta and (id (x) Delta) Delta as sorted triples.
    using Triple = std::map<std::array<int, 3>, Scalar>;

    static void add_to(Triple& t, const std::array<int, 3>& k, const Scalar& s) {
        if (s.is_zero()) {
            return;
        }
        auto [it, inserted] = t.try_emplace(k, s);
        if (!inserted) {
            it->second += s;
            if (it->second.is_zero()) {
                t.erase(it);
            }
        }
    }

    AxiomCheck coassociativity() {
        AxiomCheck c{"coassociativity"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            Triple lhs;
            Triple rhs;
            for (const auto& t : h_.coproduct_of(i)) {
                for (const auto& u : h_.coproduct_of(t.left)) {
                    add_to(lhs, {u.left, u.right, t.right}, t.coef * u.coef);
                }
                for (const auto& u : h_.coproduct_of(t.right)) {
                    add_to(rhs, {t.left, u.left, u.right}, t.coef * u.coef);
                }
            }
            if (lhs != rhs) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck counit() {
        AxiomCheck c{"counit"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            ElementBuilder left(h_.context());
            ElementBuilder right(h_.context());
            for (const auto& t : h_.coproduct_of(i)) {
                left.add(t.right, t.coef * h_.counit_of(t.left));
                right.add(t.left, t.coef * h_.counit_of(t.right));
            }
            if (std::move(left).finish() != e(i) || std::move(right).finish() != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck antipode() {
        AxiomCheck c{"antipode"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            ElementBuilder left(h_.context());
            ElementBuilder right(h_.context());
            for (const auto& t : h_.coproduct_of(i)) {
                left.add(h_.multiply(h_.antipode_of(t.left), e(t.right)), t.coef);
                right.add(h_.multiply(e(t.left), h_.antipode_of(t.right)), t.coef);
            }
            Element expect = scale(h_.unit(), h_.counit_of(i));
            if (std::move(left).finish() != expect || std::move(right).finish() != expect) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck coproduct_multiplicative() {
        AxiomCheck c{"coproduct-multiplicative"};
        for (int a : left_factors(c)) {
            for (int b = 0; b < n_ && c.holds; ++b) {
                Tensor lhs = h_.coproduct(h_.product(a, b));
                Tensor rhs = tensor_product(h_, h_.coproduct_of(a), h_.coproduct_of(b));
                if (lhs != rhs) {
                    fail(c, describe(h_, {a, b}));
                }
            }
        }
        return c;
    }

    AxiomCheck counit_multiplicative() {
        AxiomCheck c{"counit-multiplicative"};
        for (int a : left_factors(c)) {
            for (int b = 0; b < n_ && c.holds; ++b) {
                if (h_.counit(h_.product(a, b)) != h_.counit_of(a) * h_.counit_of(b)) {
                    fail(c, describe(h_, {a, b}));
                }
            }
        }
        return c;
    }

    AxiomCheck star_involution() {
        AxiomCheck c{"star-involution"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            if (h_.star(h_.star_of(i)) != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck star_unit() {
        AxiomCheck c{"star-unit"};
        if (h_.star_of(h_.unit_index()) != h_.unit()) {
            fail(c, describe(h_, {h_.unit_index()}));
        }
        return c;
    }

    AxiomCheck star_antihomomorphism() {
        AxiomCheck c{"star-antihomomorphism"};
        for (int a : left_factors(c)) {
            for (int b = 0; b < n_ && c.holds; ++b) {
                Element lhs = h_.star(h_.product(a, b));
                Element rhs = h_.multiply(h_.star_of(b), h_.star_of(a));
                if (lhs != rhs) {
                    fail(c, describe(h_, {a, b}));
                }
            }
        }
        return c;
    }

    AxiomCheck star_coproduct() {
        AxiomCheck c{"star-coproduct"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            Tensor lhs = h_.coproduct(h_.star_of(i));
            TensorBuilder rhs(h_.context());
            for (const auto& t : h_.coproduct_of(i)) {
                Scalar s = conj(t.coef);
                for (const auto& [li, lc] : h_.star_of(t.left)) {
                    for (const auto& [ri, rc] : h_.star_of(t.right)) {
                        rhs.add(li, ri, s * lc * rc);
                    }
                }
            }
            if (lhs != std::move(rhs).finish()) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck star_antipode() {
        AxiomCheck c{"star-antipode"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            if (h_.star(h_.antipode(h_.star(h_.antipode_of(i)))) != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    AxiomCheck counit_star() {
        AxiomCheck c{"counit-star"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            if (h_.counit(h_.star_of(i)) != conj(h_.counit_of(i))) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    // S^-1 = * S *: the map x -> S(x*)* is a two-sided inverse of S.
    AxiomCheck antipode_inverse() {
        AxiomCheck c{"antipode-inverse"};
        for (int i = 0; i < n_ && c.holds; ++i) {
            Element t = h_.star(h_.antipode(h_.star_of(i)));
            if (h_.antipode(t) != e(i) || h_.star(h_.antipode(h_.star(h_.antipode_of(i)))) != e(i)) {
                fail(c, describe(h_, {i}));
            }
        }
        return c;
    }

    const HopfPresentation& h_;
    AxiomOptions opt_;
    int n_;
    std::vector<int> generators_;
    std::vector<int> all_;
    std::map<int, Element> basis_cache_;
};

nlohmann::json element_json(const Element& e) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [i, c] : e) {
        out.push_back({i, to_json(c)});
    }
    return out;
}

}  // namespace

AxiomReport verify_hopf_axioms(const HopfPresentation& h, const AxiomOptions& options) {
    return Verifier(h, options).run();
}

nlohmann::json to_json(const HopfPresentation& h) {
    nlohmann::json j;
    j["descriptor"] = h.descriptor();
    j["conductor"] = h.context().conductor();
    j["dim"] = h.dim();
    j["unit"] = h.unit_index();
    j["basis"] = nlohmann::json::array();
    for (int i = 0; i < h.dim(); ++i) {
        j["basis"].push_back(h.label(i));
    }
    j["generators"] = nlohmann::json::array();
    for (int g = 0; g < h.generator_count(); ++g) {
        j["generators"].push_back({{"name", h.generator_name(g)},
                                   {"basis_index", h.generator_basis(g)},
                                   {"star", element_json(h.generator_star(g))}});
    }
    nlohmann::json mult = nlohmann::json::array();
    for (int a = 0; a < h.dim(); ++a) {
        for (int b = 0; b < h.dim(); ++b) {
            for (const auto& [k, c] : h.product(a, b)) {
                mult.push_back({a, b, k, to_json(c)});
            }
        }
    }
    j["mult"] = std::move(mult);
    nlohmann::json delta = nlohmann::json::array();
    nlohmann::json eps = nlohmann::json::array();
    nlohmann::json s = nlohmann::json::array();
    nlohmann::json star = nlohmann::json::array();
    for (int i = 0; i < h.dim(); ++i) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : h.coproduct_of(i)) {
            terms.push_back({t.left, t.right, to_json(t.coef)});
        }
        delta.push_back(std::move(terms));
        eps.push_back(to_json(h.counit_of(i)));
        s.push_back(element_json(h.antipode_of(i)));
        star.push_back(element_json(h.star_of(i)));
    }
    j["coproduct"] = std::move(delta);
    j["counit"] = std::move(eps);
    j["antipode"] = std::move(s);
    j["star"] = std::move(star);
    return j;
}

nlohmann::json to_json(const AxiomReport& r) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : r.checks) {
        nlohmann::json entry{{"holds", c.holds}, {"mode", c.mode}};
        entry["counterexample"] = c.counterexample ? nlohmann::json(*c.counterexample) : nlohmann::json(nullptr);
        checks[c.name] = std::move(entry);
    }
    return {{"all", r.all()}, {"axioms", std::move(checks)}};
}

}  // namespace hopfstar
