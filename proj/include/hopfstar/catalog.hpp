#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hopfstar/hopf.hpp"
#include "hopfstar/rep.hpp"

namespace hopfstar {

/// Malformed or out-of-range descriptor.
class DescriptorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Family { uqsl2, taft, cyclic };

/// "uqsl2:l=5", "taft:n=4,d=2", "cyclic:n=3".
struct AlgebraDescriptor {
    Family family = Family::uqsl2;
    int l = 0;
    int n = 0;
    int d = 0;

    /// n/d for taft.
    int m() const { return d ? n / d : 0; }
    std::string str() const;
    /// Throws DescriptorError, including for invalid parameters.
    static AlgebraDescriptor parse(std::string_view text);
    void validate() const;

    static AlgebraDescriptor uqsl2(int l);
    static AlgebraDescriptor taft(int n, int d);
    static AlgebraDescriptor cyclic(int n);
};

/// "P:3", "V:2", "W:2" (uqsl2), "M:2:1" (taft: l, i), "C:0,1,1" (cyclic:
/// direct sum of the characters g -> zeta_n^k).
struct ModuleDescriptor {
    char kind = 'P';
    std::vector<int> params;

    std::string str() const;
    /// Human label such as "P_3", "M(2,1)" or "C(0,1)".
    std::string label() const;
    /// Parses and validates against the algebra; i is reduced mod n.
    static ModuleDescriptor parse(std::string_view text, const AlgebraDescriptor& algebra);
};

// Presentations are built once per parameter set and shared.
AlgebraPtr uqsl2(int l);
AlgebraPtr taft(int n, int d);
AlgebraPtr cyclic_group_algebra(int n);
AlgebraPtr build_algebra(const AlgebraDescriptor& a);
/// Parses a descriptor string and builds the algebra.
AlgebraPtr resolve_algebra(const std::string& descriptor);

struct ProjectiveModule {
    ModuleRep module;
    Subspace V;  // span of the a-tower
    Subspace W;  // span of the a-, x- and y-towers
};

/// Basis order x_0..x_{l-r-1}, y_0..y_{l-r-1}, a_0..a_{r-1}, b_0..b_{r-1}.
ProjectiveModule module_P(int l, int r);
ModuleRep module_V(int l, int r);
ModuleRep module_W(int l, int r);
/// g v_j = omega^i q^-j v_j, h v_j = v_{j+1}, h v_{l-1} = 0.
ModuleRep module_M(int n, int d, int l, int i);
ModuleRep character_module(int n, const std::vector<int>& characters);
ModuleRep build_module(const AlgebraDescriptor& a, const ModuleDescriptor& m);

struct CatalogCandidate {
    ModuleRep module;
    /// The indecomposable summands (one entry for an indecomposable).
    std::vector<ModuleRep> summands;
};

/// Labelled catalog modules of the given dimension: the indecomposables of
/// the family and direct sums of two of them.
std::vector<CatalogCandidate> catalog_candidates(const AlgebraDescriptor& a, int dim);

/// First catalog candidate isomorphic to m, if any.
std::optional<CatalogCandidate> identify_candidate(const AlgebraDescriptor& a, const ModuleRep& m);
/// Label of identify_candidate.
std::optional<std::string> identify(const AlgebraDescriptor& a, const ModuleRep& m);

}  // namespace hopfstar
