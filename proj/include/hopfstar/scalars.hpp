#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <nlohmann/json.hpp>

#include "hopfstar/rational.hpp"

namespace hopfstar {

/// The cyclotomic field Q(zeta_N), stored through the N-th cyclotomic
/// polynomial and a reduction table for the powers of zeta.
///
/// Contexts are interned per conductor and live for the whole process, so a
/// plain reference or pointer to one is always valid.
class FieldContext {
public:
    static const FieldContext& get(int conductor);

    int conductor() const { return conductor_; }
    /// phi(N), the dimension of the field over Q.
    int degree() const { return degree_; }
    /// [E+ : Q] where E+ is the fixed field of complex conjugation.
    int real_subfield_degree() const { return conductor_ <= 2 ? 1 : degree_ / 2; }

    /// Integer coefficients of Phi_N, lowest degree first; size degree()+1.
    const std::vector<std::int64_t>& cyclotomic_polynomial() const { return phi_; }
    /// zeta^k in the power basis, for any integer k.
    const std::vector<std::int64_t>& power(long long k) const;

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

private:
    explicit FieldContext(int conductor);

    int conductor_;
    int degree_;
    std::vector<std::int64_t> phi_;
    std::vector<std::vector<std::int64_t>> powers_;  // indexed by k mod N
};

/// Exact element of Q(zeta_N) in the power basis {1, zeta, ..., zeta^(phi-1)}.
///
/// Always fully reduced, so two scalars are equal iff their coefficient
/// vectors are. Mixing scalars from different contexts is an error.
class CyclotomicScalar {
public:
    using Coeffs = boost::container::small_vector<Rational, 6>;

    explicit CyclotomicScalar(const FieldContext& ctx);
    CyclotomicScalar(const FieldContext& ctx, Rational value);
    CyclotomicScalar(const FieldContext& ctx, Coeffs coeffs);

    static CyclotomicScalar zeta_power(const FieldContext& ctx, long long k);

    const FieldContext& context() const { return *ctx_; }
    std::span<const Rational> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;

    CyclotomicScalar operator-() const;
    CyclotomicScalar& operator+=(const CyclotomicScalar& o);
    CyclotomicScalar& operator-=(const CyclotomicScalar& o);
    CyclotomicScalar& operator*=(const CyclotomicScalar& o);
    CyclotomicScalar& operator*=(const Rational& r);
    CyclotomicScalar& operator/=(const CyclotomicScalar& o);

    friend CyclotomicScalar operator+(CyclotomicScalar a, const CyclotomicScalar& b) { return a += b; }
    friend CyclotomicScalar operator-(CyclotomicScalar a, const CyclotomicScalar& b) { return a -= b; }
    friend CyclotomicScalar operator*(const CyclotomicScalar& a, const CyclotomicScalar& b);
    friend CyclotomicScalar operator/(CyclotomicScalar a, const CyclotomicScalar& b) { return a /= b; }

    friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b);
    friend bool operator!=(const CyclotomicScalar& a, const CyclotomicScalar& b) { return !(a == b); }

    /// Multiplicative inverse; throws std::domain_error on zero.
    CyclotomicScalar inverse() const;
    CyclotomicScalar pow(long long k) const;

    /// a += b * c without a temporary for the product when b or c is rational.
    void add_product(const CyclotomicScalar& b, const CyclotomicScalar& c);

    std::string str() const;

private:
    void check_same(const CyclotomicScalar& o) const;

    const FieldContext* ctx_;
    Coeffs coeffs_;
};

using Scalar = CyclotomicScalar;

/// zeta_N.
Scalar root_of_unity(const FieldContext& ctx);

/// The Galois automorphism zeta -> zeta^(N-1), i.e. complex conjugation.
Scalar conj(const Scalar& x);

/// Balanced q-integer (q^k - q^-k)/(q - q^-1).
///
/// Throws std::domain_error when q - q^-1 = 0 (q = +-1) unless k = 0. With
/// `limit_at_degenerate` the value k*q^(k-1) is returned for q = +-1 instead.
Scalar q_int(long long k, const Scalar& q, bool limit_at_degenerate = false);

/// True iff conj(x) = x.
bool is_real(const Scalar& x);

nlohmann::json to_json(const Scalar& x);
/// Inverse of to_json; the conductor in the payload must match ctx.
Scalar scalar_from_json(const nlohmann::json& j, const FieldContext& ctx);

}  // namespace hopfstar
