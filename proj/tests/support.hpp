#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hopfstar/linalg.hpp"
#include "hopfstar/scalars.hpp"

namespace testsupport {

using hopfstar::FieldContext;
using hopfstar::Rational;
using hopfstar::Scalar;

// Value of x under zeta -> exp(2 pi i k / N), summed directly from the power
// basis coefficients (no use of the library's reduction tables).
inline std::complex<double> embed(const Scalar& x, int k = 1) {
    const int n = x.context().conductor();
    std::complex<double> acc = 0.0;
    auto c = x.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / n;
        acc += c[j].to_double() * std::polar(1.0, angle);
    }
    return acc;
}

inline Rational random_rational(std::mt19937_64& rng, int range = 5) {
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
}

inline Scalar random_scalar(const FieldContext& ctx, std::mt19937_64& rng, int range = 5) {
    Scalar::Coeffs c;
    for (int i = 0; i < ctx.degree(); ++i) {
        c.push_back(random_rational(rng, range));
    }
    return Scalar(ctx, std::move(c));
}

inline Scalar random_nonzero(const FieldContext& ctx, std::mt19937_64& rng) {
    for (;;) {
        Scalar s = random_scalar(ctx, rng);
        if (!s.is_zero()) {
            return s;
        }
    }
}

// Random matrix whose entries are zero with probability `sparsity`.
inline hopfstar::Matrix random_matrix(const FieldContext& ctx, std::mt19937_64& rng, int rows, int cols,
                                      double sparsity = 0.4) {
    hopfstar::Matrix m(ctx, rows, cols);
    std::bernoulli_distribution zero(sparsity);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!zero(rng)) {
                m(r, c) = random_scalar(ctx, rng, 3);
            }
        }
    }
    return m;
}

// Random matrix of rank at most k: product of rows x k and k x cols factors.
inline hopfstar::Matrix random_low_rank(const FieldContext& ctx, std::mt19937_64& rng, int rows, int cols, int k) {
    return random_matrix(ctx, rng, rows, k, 0.2) * random_matrix(ctx, rng, k, cols, 0.2);
}

inline Scalar z(const FieldContext& ctx, long long k) { return Scalar::zeta_power(ctx, k); }
inline Scalar num(const FieldContext& ctx, long long p, long long q = 1) { return Scalar(ctx, Rational(p, q)); }

}  // namespace testsupport
