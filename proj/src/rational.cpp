#include "hopfstar/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace hopfstar {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// kMin is excluded so that negation never overflows and the inline range is
// symmetric, matching mpz_fits_i64 below.
bool fits(i128 v) { return v > kMin && v <= kMax; }

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    u128 mag = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

bool mpz_fits_i64(const mpz_class& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_to_i64(const mpz_class& z) {
    // Magnitude < 2^63 is guaranteed by the caller.
    mpz_class mag = abs(z);
    std::uint64_t lo = 0;
    mpz_export(&lo, nullptr, -1, sizeof(lo), 0, 0, mag.get_mpz_t());
    auto v = static_cast<std::int64_t>(lo);
    return sgn(z) < 0 ? -v : v;
}

}  // namespace

Rational::Rational(long long n) : num_(n) {
    if (n == kMin) {
        assign_big(mpq_class(to_mpz(n)));
    }
}

Rational::Rational(long long n, long long d) {
    if (d == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    i128 num = n;
    i128 den = d;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 g = gcd128(uabs(num), uabs(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (fits(num) && fits(den)) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
    } else {
        assign_big(mpq_class(to_mpz(num), to_mpz(den)));
    }
}

Rational::Rational(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

void Rational::assign_big(mpq_class q) {
    if (mpz_fits_i64(q.get_num()) && mpz_fits_i64(q.get_den())) {
        num_ = mpz_to_i64(q.get_num());
        den_ = mpz_to_i64(q.get_den());
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("Rational::parse: empty string");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    }
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) {
        return sgn(*big_);
    }
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) {
        return *big_;
    }
    mpq_class q(to_mpz(num_), to_mpz(den_));
    return q;
}

double Rational::to_double() const {
    if (big_) {
        return big_->get_d();
    }
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (big_) {
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.assign_big(-to_mpq());
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t s = 0;
            if (!__builtin_add_overflow(num_, o.num_, &s)) {
                num_ = s;
                return *this;
            }
        }
        i128 num = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
        i128 den = static_cast<i128>(den_) * o.den_;
        u128 g = gcd128(uabs(num), static_cast<u128>(den));
        if (g > 1) {
            num /= static_cast<i128>(g);
            den /= static_cast<i128>(g);
        }
        if (fits(num) && fits(den)) {
            num_ = static_cast<std::int64_t>(num);
            den_ = static_cast<std::int64_t>(den);
            return *this;
        }
        assign_big(mpq_class(to_mpz(num), to_mpz(den)));
        return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t p = 0;
            if (!__builtin_mul_overflow(num_, o.num_, &p)) {
                num_ = p;
                return *this;
            }
        }
        i128 num = static_cast<i128>(num_) * o.num_;
        i128 den = static_cast<i128>(den_) * o.den_;
        u128 g = gcd128(uabs(num), static_cast<u128>(den));
        if (g > 1) {
            num /= static_cast<i128>(g);
            den /= static_cast<i128>(g);
        }
        if (fits(num) && fits(den)) {
            num_ = static_cast<std::int64_t>(num);
            den_ = static_cast<std::int64_t>(den);
            return *this;
        }
        assign_big(mpq_class(to_mpz(num), to_mpz(den)));
        return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    if (!o.big_) {
        // Multiply by the inverse, keeping the denominator positive.
        i128 inv_num = o.num_ < 0 ? -static_cast<i128>(o.den_) : static_cast<i128>(o.den_);
        i128 inv_den = o.num_ < 0 ? -static_cast<i128>(o.num_) : static_cast<i128>(o.num_);
        if (fits(inv_num) && fits(inv_den)) {
            Rational inv;
            inv.num_ = static_cast<std::int64_t>(inv_num);
            inv.den_ = static_cast<std::int64_t>(inv_den);
            return *this *= inv;
        }
    }
    assign_big(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    if (a.big_ && b.big_) {
        return *a.big_ == *b.big_;
    }
    // Canonical representation: a big value never equals a small one.
    return false;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    return a.to_mpq() < b.to_mpq();
}

}  // namespace hopfstar
