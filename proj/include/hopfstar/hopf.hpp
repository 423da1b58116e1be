#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/scalars.hpp"

namespace hopfstar {

/// Sparse algebra element: (basis index, coefficient) pairs sorted by index,
/// without zero coefficients.
using Element = std::vector<std::pair<int, Scalar>>;

struct TensorTerm {
    int left;
    int right;
    Scalar coef;

    friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

/// Sparse element of A (x) A, sorted by (left, right), without zeros.
using Tensor = std::vector<TensorTerm>;

/// Collects index -> coefficient contributions and emits a canonical Element.
class ElementBuilder {
public:
    explicit ElementBuilder(const FieldContext& ctx) : ctx_(&ctx) {}
    void add(int index, const Scalar& coef);
    void add(const Element& e, const Scalar& factor);
    Element finish() &&;

private:
    const FieldContext* ctx_;
    std::map<int, Scalar> acc_;
};

class TensorBuilder {
public:
    explicit TensorBuilder(const FieldContext& ctx) : ctx_(&ctx) {}
    void add(int left, int right, const Scalar& coef);
    Tensor finish() &&;

private:
    const FieldContext* ctx_;
    std::map<std::pair<int, int>, Scalar> acc_;
};

/// A defining relation sum_t coef_t * word_t = 0, words being sequences of
/// generator indices read left to right as products.
struct Relation {
    std::string text;
    std::vector<std::pair<Scalar, std::vector<int>>> terms;
};

/// Everything a family constructor supplies; the remaining structure tables
/// are derived from it.
struct PresentationData {
    const FieldContext* ctx = nullptr;
    std::string descriptor;
    std::vector<std::vector<int>> labels;  // exponent tuple per basis element
    std::vector<std::vector<int>> words;   // generator word per basis element
    int unit = 0;
    std::vector<std::string> generator_names;
    std::vector<int> generator_basis;  // basis index of each generator
    /// Normal-form product of two basis elements.
    std::function<Element(int, int)> normal_product;
    std::vector<Tensor> generator_coproduct;
    std::vector<Scalar> generator_counit;
    std::vector<Element> generator_antipode;
    std::vector<Element> generator_star;
    std::vector<Relation> relations;
};

/// A finite-dimensional Hopf *-algebra given by structure tables on a fixed
/// PBW basis. Immutable after construction.
class HopfPresentation {
public:
    explicit HopfPresentation(PresentationData data);

    const FieldContext& context() const { return *ctx_; }
    const std::string& descriptor() const { return descriptor_; }
    int dim() const { return static_cast<int>(labels_.size()); }
    int unit_index() const { return unit_; }

    const std::vector<int>& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    std::string label_string(int i) const;
    const std::vector<int>& word(int i) const { return words_.at(static_cast<std::size_t>(i)); }
    std::optional<int> find_label(const std::vector<int>& label) const;

    int generator_count() const { return static_cast<int>(generator_names_.size()); }
    const std::string& generator_name(int g) const { return generator_names_.at(static_cast<std::size_t>(g)); }
    int generator_basis(int g) const { return generator_basis_.at(static_cast<std::size_t>(g)); }
    std::optional<int> find_generator(const std::string& name) const;
    /// Star image of a generator, read from the star table.
    const Element& generator_star(int g) const { return star_.at(static_cast<std::size_t>(generator_basis(g))); }
    const std::vector<Relation>& relations() const { return relations_; }

    Element basis_element(int i) const;
    Element unit() const { return basis_element(unit_); }

    // Structure tables on basis elements.
    const Element& product(int i, int j) const;
    const Tensor& coproduct_of(int i) const { return coproduct_.at(static_cast<std::size_t>(i)); }
    const Scalar& counit_of(int i) const { return counit_.at(static_cast<std::size_t>(i)); }
    const Element& antipode_of(int i) const { return antipode_.at(static_cast<std::size_t>(i)); }
    const Element& star_of(int i) const { return star_.at(static_cast<std::size_t>(i)); }

    // Linear (star: conjugate-linear) extensions. Throw std::invalid_argument
    // when an index falls outside the basis.
    Element multiply(const Element& a, const Element& b) const;
    Tensor coproduct(const Element& a) const;
    Element antipode(const Element& a) const;
    Element star(const Element& a) const;
    Scalar counit(const Element& a) const;

    /// Product of the generators in a word, evaluated through the tables.
    Element word_product(const std::vector<int>& word) const;

    /// Copy whose star table sends basis element `index` to `image`; every
    /// other table entry is unchanged. Used for negative controls.
    HopfPresentation with_star_entry(int index, Element image) const;

private:
    HopfPresentation() = default;
    void check(const Element& a) const;

    const FieldContext* ctx_ = nullptr;
    std::string descriptor_;
    std::vector<std::vector<int>> labels_;
    std::vector<std::vector<int>> words_;
    int unit_ = 0;
    std::vector<std::string> generator_names_;
    std::vector<int> generator_basis_;
    std::vector<Relation> relations_;

    std::vector<Element> mult_;  // dim * dim, row-major
    std::vector<Tensor> coproduct_;
    std::vector<Scalar> counit_;
    std::vector<Element> antipode_;
    std::vector<Element> star_;
};

struct AxiomCheck {
    explicit AxiomCheck(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool holds = true;
    /// "exhaustive" or "generator-reduced" (see verify_hopf_axioms).
    std::string mode = "exhaustive";
    std::optional<std::string> counterexample;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all() const;
    /// Throws std::out_of_range for an unknown axiom name.
    const AxiomCheck& operator[](const std::string& name) const;
};

struct AxiomOptions {
    /// Bilinear axioms are checked on all basis pairs when dim <= this bound.
    int exhaustive_pairs_max_dim = 125;
    /// Associativity is checked on all basis triples when dim <= this bound.
    int exhaustive_triples_max_dim = 64;
};

/// Checks the Hopf *-algebra axioms on the basis.
///
/// Unary axioms are checked on every basis element. Bilinear and trilinear
/// axioms are checked on every pair/triple up to the dimension bounds in
/// `options`; above them they are checked with one factor ranging over the
/// generators, which is equivalent once every basis element is confirmed to
/// be the table product of its generator word (the "basis-words" check).
AxiomReport verify_hopf_axioms(const HopfPresentation& h, const AxiomOptions& options = {});

nlohmann::json to_json(const HopfPresentation& h);
nlohmann::json to_json(const AxiomReport& r);

// Small helpers on sparse elements.
Element scale(const Element& e, const Scalar& s);
Element add(const Element& a, const Element& b);
Element subtract(const Element& a, const Element& b);

}  // namespace hopfstar
