#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "hopfstar/rational.hpp"
#include "hopfstar/scalars.hpp"
#include "support.hpp"

using namespace hopfstar;
using testsupport::embed;
using testsupport::num;
using testsupport::z;

namespace {

int totient(int n) {
    int count = 0;
    for (int k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) {
            ++count;
        }
    }
    return count;
}

// Remainder of x^N - 1 divided by a monic integer polynomial.
std::vector<long long> remainder_of_xn_minus_1(int n, const std::vector<std::int64_t>& monic) {
    std::vector<long long> r(static_cast<std::size_t>(n) + 1, 0);
    r[0] = -1;
    r[static_cast<std::size_t>(n)] = 1;
    const int d = static_cast<int>(monic.size()) - 1;
    for (int top = n; top >= d; --top) {
        const long long c = r[static_cast<std::size_t>(top)];
        if (c == 0) {
            continue;
        }
        for (int i = 0; i <= d; ++i) {
            r[static_cast<std::size_t>(top - d + i)] -= c * monic[static_cast<std::size_t>(i)];
        }
    }
    r.resize(static_cast<std::size_t>(d));
    return r;
}

}  // namespace

TEST_CASE("rational: inline and big representations agree") {
    const long long big = 1LL << 62;
    Rational a(big);
    Rational sq = a * a;
    CHECK(sq.str() == "21267647932558653966460912964485513216/1");
    CHECK((sq / a) == a);
    CHECK((sq / a).str() == std::to_string(big) + "/1");
    Rational m(std::numeric_limits<long long>::min());
    CHECK(m.str() == "-9223372036854775808/1");
    CHECK((-m).str() == "9223372036854775808/1");
    CHECK((m + Rational(1)) == Rational(std::numeric_limits<long long>::min() + 1));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational::parse("1/x"));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("field context: cyclotomic polynomial is monic of degree phi and divides x^N - 1") {
    for (int n = 1; n <= 30; ++n) {
        const FieldContext& ctx = FieldContext::get(n);
        CHECK(ctx.degree() == totient(n));
        const auto& phi = ctx.cyclotomic_polynomial();
        REQUIRE(static_cast<int>(phi.size()) == ctx.degree() + 1);
        CHECK(phi.back() == 1);
        for (long long c : remainder_of_xn_minus_1(n, phi)) {
            CHECK(c == 0);
        }
        CHECK(z(ctx, n).is_one());
        CHECK(&FieldContext::get(n) == &ctx);
    }
    CHECK(FieldContext::get(12).real_subfield_degree() == 2);
    CHECK(FieldContext::get(2).real_subfield_degree() == 1);
    CHECK_THROWS(FieldContext::get(0));
}

TEST_CASE("root_of_unity") {
    CHECK(root_of_unity(FieldContext::get(1)).is_one());
    const auto& c2 = FieldContext::get(2);
    CHECK(root_of_unity(c2) == num(c2, -1));
    const auto& c4 = FieldContext::get(4);
    Scalar i = root_of_unity(c4);
    CHECK(i * i == num(c4, -1));
    CHECK_FALSE(i.is_rational());
}

TEST_CASE("root_of_unity: zeta^k = 1 iff N | k") {
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15}) {
        const FieldContext& ctx = FieldContext::get(n);
        Scalar zeta = root_of_unity(ctx);
        Scalar p(ctx, Rational(1));
        for (int k = 0; k <= 4 * n; ++k) {
            CHECK(p.is_one() == (k % n == 0));
            CHECK(p == zeta.pow(k));
            p *= zeta;
        }
    }
}

TEST_CASE("conj examples") {
    const auto& c3 = FieldContext::get(3);
    CHECK(conj(z(c3, 1)) == z(c3, 2));
    const auto& c7 = FieldContext::get(7);
    CHECK(conj(num(c7, 5, 7)) == num(c7, 5, 7));

    const auto& c5 = FieldContext::get(5);
    Scalar x = num(c5, 1) + z(c5, 1) + num(c5, 2) * z(c5, 3);
    Scalar cx = conj(x);
    CHECK(cx == num(c5, 1) + z(c5, 4) + num(c5, 2) * z(c5, 2));
    // zeta^4 = -1 - zeta - zeta^2 - zeta^3, so 1 + zeta^4 + 2 zeta^2 = -zeta + zeta^2 - zeta^3.
    std::vector<Rational> frozen{Rational(0), Rational(-1), Rational(1), Rational(-1)};
    REQUIRE(cx.coeffs().size() == frozen.size());
    for (std::size_t k = 0; k < frozen.size(); ++k) {
        CHECK(cx.coeffs()[k] == frozen[k]);
    }
    CHECK(std::abs(embed(cx) - std::conj(embed(x))) < 1e-12);
}

TEST_CASE("q_int") {
    const auto& c3 = FieldContext::get(3);
    Scalar q = root_of_unity(c3);
    CHECK(q_int(0, q).is_zero());
    CHECK(q_int(1, q).is_one());
    CHECK(q_int(2, q) == num(c3, -1));
    CHECK(q_int(3, q).is_zero());
    CHECK(q_int(-1, q) == num(c3, -1));

    const auto& c1 = FieldContext::get(1);
    CHECK_THROWS_AS(q_int(2, num(c1, 1)), std::domain_error);
    CHECK(q_int(0, num(c1, 1)).is_zero());
    CHECK(q_int(4, num(c1, 1), true) == num(c1, 4));
    CHECK(q_int(3, num(c1, -1), true) == num(c1, 3));
    CHECK(q_int(2, num(c1, -1), true) == num(c1, -2));
}

TEST_CASE("q_int agrees with the complex embedding") {
    for (int l : {3, 5, 7}) {
        const FieldContext& ctx = FieldContext::get(l);
        Scalar q = root_of_unity(ctx);
        const std::complex<double> qc = std::polar(1.0, 2.0 * std::numbers::pi / l);
        for (int k = -l; k <= 2 * l; ++k) {
            const std::complex<double> expect = (std::pow(qc, k) - std::pow(qc, -k)) / (qc - 1.0 / qc);
            CHECK(std::abs(embed(q_int(k, q)) - expect) < 1e-9);
        }
    }
}

TEST_CASE("q_int recursion [k+1] = q[k] + q^-k") {
    for (int n : {3, 4, 5, 7, 8, 12}) {
        const FieldContext& ctx = FieldContext::get(n);
        Scalar q = root_of_unity(ctx);
        for (int k = 0; k <= 2 * n; ++k) {
            CHECK(q_int(k + 1, q) == q * q_int(k, q) + q.pow(-k));
        }
    }
}

TEST_CASE("is_real") {
    const auto& c3 = FieldContext::get(3);
    CHECK_FALSE(is_real(z(c3, 1)));
    CHECK(is_real(z(c3, 1) + z(c3, 2)));
    CHECK(z(c3, 1) + z(c3, 2) == num(c3, -1));
    CHECK(is_real(num(c3, -4, 9)));
    const auto& c7 = FieldContext::get(7);
    CHECK(is_real(z(c7, 2) + z(c7, 5)));
    CHECK_FALSE(is_real(z(c7, 2) - z(c7, 5)));
}

TEST_CASE("field axioms and conj on randomized inputs") {
    std::mt19937_64 rng(20240611);
    int instances = 0;
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15}) {
        const FieldContext& ctx = FieldContext::get(n);
        for (int trial = 0; trial < 12; ++trial) {
            Scalar a = testsupport::random_scalar(ctx, rng);
            Scalar b = testsupport::random_scalar(ctx, rng);
            Scalar c = testsupport::random_scalar(ctx, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            Scalar acc = a;
            acc.add_product(b, c);
            CHECK(acc == a + b * c);
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK((b / a) * a == b);
            } else {
                CHECK_THROWS_AS(a.inverse(), std::domain_error);
            }
            CHECK(conj(a * b) == conj(a) * conj(b));
            CHECK(conj(a + b) == conj(a) + conj(b));
            CHECK(conj(conj(a)) == a);
            CHECK(std::abs(embed(a * b) - embed(a) * embed(b)) < 1e-6 * (1 + std::abs(embed(a) * embed(b))));
            ++instances;
        }
    }
    CHECK(instances >= 100);
}

TEST_CASE("scalar JSON round trip") {
    const auto& c5 = FieldContext::get(5);
    Scalar x = num(c5, 3, 2) * z(c5, 1) - num(c5, 7);
    nlohmann::json j = to_json(x);
    CHECK(j["conductor"] == 5);
    CHECK(j["coeffs"][0] == "-7/1");
    CHECK(j["coeffs"][1] == "3/2");
    CHECK(scalar_from_json(j, c5) == x);
    CHECK(scalar_from_json(nlohmann::json("2/3"), c5) == num(c5, 2, 3));
    CHECK(scalar_from_json(nlohmann::json(4), c5) == num(c5, 4));
    CHECK_THROWS(scalar_from_json(j, FieldContext::get(7)));
}

TEST_CASE("mixing fields is an error") {
    CHECK_THROWS(z(FieldContext::get(3), 1) + z(FieldContext::get(5), 1));
}
