#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/hopf.hpp"
#include "hopfstar/linalg.hpp"

namespace hopfstar {

using AlgebraPtr = std::shared_ptr<const HopfPresentation>;

/// A finite-dimensional module over a HopfPresentation, given by one matrix
/// per distinguished generator. Matrices act on column vectors.
class ModuleRep {
public:
    ModuleRep(AlgebraPtr algebra, std::vector<Matrix> generators, std::string label);

    const HopfPresentation& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    const FieldContext& context() const { return algebra_->context(); }
    int dim() const { return dim_; }
    const std::string& label() const { return label_; }
    ModuleRep relabeled(std::string label) const;

    const std::vector<Matrix>& generators() const { return generators_; }
    const Matrix& generator(int g) const { return generators_.at(static_cast<std::size_t>(g)); }
    /// Matrix of a named generator; throws std::invalid_argument if unknown.
    const Matrix& generator(const std::string& name) const;

    /// Action of a PBW basis element (product of its generator word).
    const Matrix& basis_action(int i) const;
    /// Action of an arbitrary algebra element.
    Matrix act(const Element& h) const;

private:
    struct Cache;

    AlgebraPtr algebra_;
    std::vector<Matrix> generators_;
    std::string label_;
    int dim_;
    std::shared_ptr<Cache> cache_;
};

/// Intertwiners T: source -> target, T rho_src(g) = rho_tgt(g) T.
struct HomSpace {
    int source_dim = 0;
    int target_dim = 0;
    std::vector<Matrix> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

struct QuotientRep {
    ModuleRep module;
    /// quotient_dim x dim(M); maps M onto the representative coordinates.
    Matrix projection;
    /// Coset representatives as rows of an (quotient_dim x dim(M)) matrix.
    Matrix representatives;
};

/// Checks every defining relation of the algebra as a matrix identity.
bool verify_module(const ModuleRep& m);

/// Smallest generator-stable subspace containing the seeds.
Subspace spin(const ModuleRep& m, const std::vector<Vector>& seeds);
bool is_stable(const ModuleRep& m, const Subspace& s);

/// The submodule on S in S's canonical basis coordinates. Throws
/// std::invalid_argument when S is not generator-stable.
ModuleRep restrict_to(const ModuleRep& m, const Subspace& s, std::string label = {});

/// Annihilator of the Jacobson radical of the image algebra.
Subspace socle(const ModuleRep& m);
/// Basis (as matrices) of the image of the algebra in End(M).
std::vector<Matrix> image_algebra(const ModuleRep& m);

/// socle(M) = M and dim End(M) = 1.
bool is_irreducible(const ModuleRep& m);

/// Throws std::invalid_argument on algebra mismatch.
HomSpace hom_space(const ModuleRep& src, const ModuleRep& tgt);

/// Visits the points of {0..bound}^k in order of increasing coordinate sum,
/// lexicographically within a sum, until `visit` returns true. Returns
/// whether some visit returned true.
bool grid_search(int k, int bound, const std::function<bool(const std::vector<int>&)>& visit);

/// An invertible intertwiner src -> tgt, found by a deterministic grid search
/// over combinations of the Hom basis; verified before being returned.
std::optional<Matrix> is_isomorphic(const ModuleRep& src, const ModuleRep& tgt);

/// Quotient by a generator-stable subspace, in quotient_basis coordinates.
/// Throws std::invalid_argument when S is not invariant.
QuotientRep quotient_rep(const ModuleRep& m, const Subspace& s, std::string label = {});

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b, std::string label = {});

/// An intertwining projection P onto S (P|_S = id); present iff S has an
/// invariant complement (ker P). Throws std::invalid_argument when S is not
/// invariant.
std::optional<Matrix> splits(const ModuleRep& m, const Subspace& s);

/// {algebra, dim, label, generators: {name: matrix}}.
nlohmann::json to_json(const ModuleRep& m);
/// Resolves the "algebra" descriptor through `resolve`.
ModuleRep module_from_json(const nlohmann::json& j,
                           const std::function<AlgebraPtr(const std::string&)>& resolve);

}  // namespace hopfstar
