#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/forms.hpp"
#include "hopfstar/rep.hpp"

namespace hopfstar {

struct PreconditionReport {
    bool form_hermitian = false;
    bool form_invariant = false;
    bool form_nondegenerate = false;
    bool submodule_stable = false;
    bool submodule_irreducible = false;
    bool submodule_closed = false;
    bool no_invariant_complement = false;

    bool all() const;
    /// Human-readable reasons for every failed hypothesis.
    std::vector<std::string> failures() const;
};

PreconditionReport check_preconditions(const ModuleRep& m, const Subspace& s, const HermitianForm& f);

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One layer H_j of the chain with the module H_j / H_{j-1} it contributes.
struct ChainStep {
    Subspace space;
    /// Catalog classes of H_j and of H_j / H_{j-1}, when one matches.
    std::optional<std::string> label;
    std::optional<std::string> quotient_label;
    ModuleRep quotient;
};

/// H_1 subset ... subset H_n = M with n in {2, 3}.
struct ArakiChain {
    std::string module;
    std::vector<ChainStep> steps;
    /// The form vanishes on H_1 x H_1.
    bool h1_null = false;

    int length() const { return static_cast<int>(steps.size()); }
    const Subspace& h1() const { return steps.front().space; }
    /// H_1^perp (equal to H_1 when the chain has length 2).
    const Subspace& h2() const { return steps[steps.size() - 2].space; }
};

/// Throws PreconditionError when check_preconditions fails.
ArakiChain araki_chain(const ModuleRep& m, const Subspace& s, const HermitianForm& f);

struct ConjugacyResult {
    /// The pairing matrix is square and invertible.
    bool separation = false;
    bool invariance = false;
    std::optional<std::string> first_failure;

    bool holds() const { return separation && invariance; }
};

/// Checks that `pairing` (rows: basis of rho2's space, columns: basis of
/// rho1's space, <xi, eta> = conj(xi)^T P eta) separates and satisfies
/// <rho2(S^2(h2)*) xi, rho1(S(h1)) eta> = eps(h) <xi, eta> for every PBW
/// basis element h.
ConjugacyResult verify_pairing(const ModuleRep& rho2, const ModuleRep& rho1, const Matrix& pairing);

/// The pairing <xi#, eta> = <xi, eta> between M / H_2 and H_1.
ConjugacyResult verify_conjugacy(const ModuleRep& m, const ArakiChain& chain, const HermitianForm& f);

/// A decomposition of a module into two submodules isomorphic to the given
/// summands that are orthogonal under `f`.
struct OrthogonalSplitting {
    Subspace first;
    Subspace second;
};

/// Searches Hom(a, Q) x Hom(b, Q) for injections with complementary,
/// mutually orthogonal images.
std::optional<OrthogonalSplitting> orthogonal_summands(const ModuleRep& q, const HermitianForm& f, const ModuleRep& a,
                                                       const ModuleRep& b);

struct Theorem1Report {
    std::string module;
    std::string submodule;
    PreconditionReport preconditions;
    std::optional<ArakiChain> chain;
    std::optional<ConjugacyResult> conjugacy;
    /// Only for length-3 chains: the form induced on H_2 / H_1.
    std::optional<HermitianForm> induced_form;
    std::optional<bool> induced_invariant;
    std::optional<bool> induced_nondegenerate;
    /// Set when H_2 / H_1 is identified as a direct sum of two summands.
    std::optional<bool> summands_orthogonal;

    bool applicable() const { return preconditions.all(); }
    /// Preconditions hold and every conclusion checked holds.
    bool all_verified() const;
};

Theorem1Report theorem1_report(const ModuleRep& m, const Subspace& s, const HermitianForm& f,
                               const std::string& submodule_description = "socle");

nlohmann::json to_json(const PreconditionReport& p);
nlohmann::json to_json(const Theorem1Report& r);

}  // namespace hopfstar
