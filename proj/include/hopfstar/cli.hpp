#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/catalog.hpp"
#include "hopfstar/forms.hpp"

namespace hopfstar::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

struct CaseSpec {
    AlgebraDescriptor algebra;
    ModuleDescriptor module;

    /// "uqsl2:l=5 P:2"
    std::string id() const;
};

/// Expands a sweep grid. Grids are separated by ';'; within one, each key
/// takes "=a,b,c" or "<=N":
///   uqsl2:l=3,5,7    every P_r, 1 <= r < l
///   taft:n<=6        every d | n with d >= 2, every M(l,i)
///   cyclic:n=1,2     the regular module C:0,...,n-1
/// An empty string expands to no cases. Throws DescriptorError.
std::vector<CaseSpec> expand_grid(std::string_view grid);

/// Submodule selector: "socle" or "span:v=1,0,1/2[;v=...]" (spanned
/// submodule of the given vectors). Throws DescriptorError.
Subspace select_submodule(const ModuleRep& m, std::string_view selector);

struct CaseOptions {
    std::optional<int> embedding;
    std::string submodule = "socle";
    bool forms = true;
    bool araki = true;
};

/// One case: form space summary, Araki report and a flat verdict map.
nlohmann::json run_case(const ModuleRep& m, const CaseOptions& options);

/// The verdicts predicted for a catalog case.
nlohmann::json expected_verdicts(const CaseSpec& spec, const CaseOptions& options);

/// Entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hopfstar::cli
