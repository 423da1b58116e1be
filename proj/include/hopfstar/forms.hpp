#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/linalg.hpp"
#include "hopfstar/rep.hpp"

namespace hopfstar {

/// Sesquilinear form <x, y> = sum conj(x_i) H_ij y_j given by its Gram matrix.
struct HermitianForm {
    Matrix gram;

    explicit HermitianForm(Matrix g);

    int dim() const { return gram.rows(); }
    /// conj(H_ji) = H_ij for all i, j.
    bool is_hermitian() const;
    Scalar value(std::span<const Scalar> x, std::span<const Scalar> y) const;
    /// Gram matrix of the restriction to S in S's canonical basis.
    Matrix restricted_gram(const Subspace& s) const;
};

/// All invariant Hermitian forms on a module, as a vector space over the real
/// subfield E+ of the coefficient field.
struct FormSpace {
    std::string module;
    /// E+-basis; also a basis over the full field of the invariant
    /// sesquilinear forms.
    std::vector<Matrix> basis;
    int dim_real = 0;
    /// Dimension over Q of the Hermitian solution space.
    int dim_rational = 0;
};

/// Raised when the Q-dimension of the Hermitian solutions is not a multiple
/// of [E+ : Q] matching the E+-basis found.
class IntegralityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// rho(h*)^dagger H = H rho(h), i.e. <h* x, y> = <x, h y>.
bool satisfies_adjoint(const ModuleRep& m, const Matrix& gram, const Element& h);
/// The adjoint condition for every distinguished generator.
bool is_invariant(const ModuleRep& m, const Matrix& gram);

/// Solves for every invariant Hermitian form: first the invariant
/// sesquilinear forms over the coefficient field K, then the Hermitian ones
/// among their K-combinations as a Q-linear system.
FormSpace invariant_form_space(const ModuleRep& m);

/// Basis order x, y, a, b as in module_P. alpha pairs a_n with b_m and x_k
/// with y_j on the anti-diagonals, beta pairs b_n with b_m.
Matrix theorem2_pattern(int l, int r, const Scalar& alpha, const Scalar& beta);
bool matches_theorem2_pattern(const FormSpace& f, int r, int l);

/// The unique s < l with m s = 2i (mod n), if any.
std::optional<int> theorem3_sum(int n, int d, int l, int i);
/// Anti-diagonal j + k = s with ones; absent when no valid s exists.
std::optional<Matrix> theorem3_pattern(int n, int d, int l, int i);
bool matches_theorem3_pattern(const FormSpace& f, int n, int d, int l, int i);

/// True iff the K-spans of the two lists of matrices agree.
bool same_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

bool is_nondegenerate(const HermitianForm& f);

/// A non-degenerate member of the space, if one exists. det(sum x_t B_t) has
/// degree at most dim M in each x_t, so it vanishes on the integer grid
/// {0..dim M}^k only if it vanishes identically; the grid is scanned in
/// order of increasing coefficient sum.
std::optional<HermitianForm> find_nondegenerate(const FormSpace& f);

/// {xi : <xi, eta> = 0 for all eta in S}.
Subspace polar(const HermitianForm& f, const Subspace& s);

/// The form induced on H2/H1 in the quotient_basis coordinates of H1 inside
/// H2 (H2 in its canonical basis). Throws std::invalid_argument unless
/// H1 is contained in H2 and <H2, H1> = 0.
HermitianForm induced_form_on_quotient(const HermitianForm& f, const Subspace& h2, const Subspace& h1);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

class SignatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalue sign counts under zeta -> exp(2 pi i k / N), counting
/// |lambda| <= 1e-9 * max|lambda| as zero. Throws SignatureError unless
/// gcd(k, N) = 1, the form is Hermitian and the zero count equals the exact
/// corank.
Signature signature(const HermitianForm& f, int embedding_index = 1);

/// Per-condition verdicts of the three invariance formulations, each taken
/// over every PBW basis element h and every pair of module basis vectors.
struct InvarianceEquivalence {
    bool condition_i = true;    // <S^2(h2)* x, S(h1) y> = eps(h) <x, y>
    bool condition_ii = true;   // <S(h1)* x, h2 y> = eps(h) <x, y>
    bool condition_iii = true;  // <h* x, y> = <x, h y>
    std::optional<std::string> first_failure_i;
    std::optional<std::string> first_failure_ii;
    std::optional<std::string> first_failure_iii;

    bool agree() const { return condition_i == condition_ii && condition_ii == condition_iii; }
};

InvarianceEquivalence verify_invariance_equivalences(const ModuleRep& m, const HermitianForm& f);

nlohmann::json to_json(const FormSpace& f);

}  // namespace hopfstar
