#include "hopfstar/scalars.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hopfstar {

namespace {

using Poly = std::vector<std::int64_t>;  // lowest degree first

// Exact division by a monic integer polynomial.
Poly divide_monic(Poly num, const Poly& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() <= dn) {
        return {0};
    }
    Poly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        std::int64_t c = num[i];
        quot[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) {
            num[i - dn + j] -= c * den[j];
        }
    }
    for (std::size_t i = 0; i < dn; ++i) {
        if (num[i] != 0) {
            throw std::logic_error("cyclotomic polynomial division left a remainder");
        }
    }
    return quot;
}

Poly cyclotomic(int n, std::map<int, Poly>& cache) {
    if (auto it = cache.find(n); it != cache.end()) {
        return it->second;
    }
    Poly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) {
            p = divide_monic(p, cyclotomic(d, cache));
        }
    }
    cache.emplace(n, p);
    return p;
}

std::mutex g_registry_mutex;
std::map<int, std::unique_ptr<FieldContext>>& registry() {
    static std::map<int, std::unique_ptr<FieldContext>> r;
    return r;
}

long long mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

FieldContext::FieldContext(int conductor) : conductor_(conductor) {
    std::map<int, Poly> cache;
    phi_ = cyclotomic(conductor, cache);
    degree_ = static_cast<int>(phi_.size()) - 1;

    const auto deg = static_cast<std::size_t>(degree_);
    powers_.reserve(static_cast<std::size_t>(conductor));
    Poly cur(deg, 0);
    cur[0] = 1;
    for (int k = 0; k < conductor; ++k) {
        powers_.push_back(cur);
        // cur <- x * cur mod Phi_N
        std::int64_t top = cur[deg - 1];
        for (std::size_t i = deg - 1; i > 0; --i) {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            cur[i] -= top * phi_[i];
        }
    }
    // zeta^N must reduce to 1.
    Poly one(deg, 0);
    one[0] = 1;
    if (cur != one) {
        throw std::logic_error("FieldContext: zeta^N does not reduce to 1");
    }
}

const FieldContext& FieldContext::get(int conductor) {
    if (conductor < 1) {
        throw std::invalid_argument("FieldContext: conductor must be positive");
    }
    std::lock_guard lock(g_registry_mutex);
    auto& r = registry();
    auto it = r.find(conductor);
    if (it == r.end()) {
        it = r.emplace(conductor, std::unique_ptr<FieldContext>(new FieldContext(conductor))).first;
    }
    return *it->second;
}

const std::vector<std::int64_t>& FieldContext::power(long long k) const {
    return powers_[static_cast<std::size_t>(mod(k, conductor_))];
}

// ---------------------------------------------------------------------------

CyclotomicScalar::CyclotomicScalar(const FieldContext& ctx)
    : ctx_(&ctx), coeffs_(static_cast<std::size_t>(ctx.degree())) {}

CyclotomicScalar::CyclotomicScalar(const FieldContext& ctx, Rational value) : CyclotomicScalar(ctx) {
    coeffs_[0] = std::move(value);
}

CyclotomicScalar::CyclotomicScalar(const FieldContext& ctx, Coeffs coeffs) : ctx_(&ctx) {
    const auto deg = static_cast<std::size_t>(ctx.degree());
    if (coeffs.size() <= deg) {
        coeffs.resize(deg);
        coeffs_ = std::move(coeffs);
        return;
    }
    coeffs_.resize(deg);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) {
            continue;
        }
        if (k < deg) {
            coeffs_[k] += coeffs[k];
        } else {
            const auto& p = ctx.power(static_cast<long long>(k));
            for (std::size_t t = 0; t < deg; ++t) {
                if (p[t] != 0) {
                    coeffs_[t] += coeffs[k] * Rational(p[t]);
                }
            }
        }
    }
}

CyclotomicScalar CyclotomicScalar::zeta_power(const FieldContext& ctx, long long k) {
    CyclotomicScalar s(ctx);
    const auto& p = ctx.power(k);
    for (std::size_t t = 0; t < p.size(); ++t) {
        s.coeffs_[t] = Rational(p[t]);
    }
    return s;
}

void CyclotomicScalar::check_same(const CyclotomicScalar& o) const {
    if (ctx_ != o.ctx_) {
        throw std::invalid_argument("CyclotomicScalar: operands live in different cyclotomic fields");
    }
}

bool CyclotomicScalar::is_zero() const {
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

bool CyclotomicScalar::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) {
            return false;
        }
    }
    return true;
}

bool CyclotomicScalar::is_one() const { return is_rational() && coeffs_[0] == Rational(1); }

CyclotomicScalar CyclotomicScalar::operator-() const {
    CyclotomicScalar r(*ctx_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) {
            r.coeffs_[i] = -coeffs_[i];
        }
    }
    return r;
}

CyclotomicScalar& CyclotomicScalar::operator+=(const CyclotomicScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!o.coeffs_[i].is_zero()) {
            coeffs_[i] += o.coeffs_[i];
        }
    }
    return *this;
}

CyclotomicScalar& CyclotomicScalar::operator-=(const CyclotomicScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!o.coeffs_[i].is_zero()) {
            coeffs_[i] -= o.coeffs_[i];
        }
    }
    return *this;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const Rational& r) {
    for (auto& c : coeffs_) {
        if (!c.is_zero()) {
            c *= r;
        }
    }
    return *this;
}

CyclotomicScalar operator*(const CyclotomicScalar& a, const CyclotomicScalar& b) {
    a.check_same(b);
    if (b.is_rational()) {
        CyclotomicScalar r = a;
        r *= b.coeffs_[0];
        return r;
    }
    if (a.is_rational()) {
        CyclotomicScalar r = b;
        r *= a.coeffs_[0];
        return r;
    }
    const std::size_t deg = a.coeffs_.size();
    boost::container::small_vector<Rational, 12> acc(2 * deg - 1);
    for (std::size_t i = 0; i < deg; ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < deg; ++j) {
            if (b.coeffs_[j].is_zero()) {
                continue;
            }
            acc[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    CyclotomicScalar r(*a.ctx_);
    for (std::size_t t = 0; t < deg; ++t) {
        r.coeffs_[t] = std::move(acc[t]);
    }
    for (std::size_t k = deg; k < acc.size(); ++k) {
        if (acc[k].is_zero()) {
            continue;
        }
        const auto& p = a.ctx_->power(static_cast<long long>(k));
        for (std::size_t t = 0; t < deg; ++t) {
            if (p[t] != 0) {
                r.coeffs_[t] += acc[k] * Rational(p[t]);
            }
        }
    }
    return r;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const CyclotomicScalar& o) {
    *this = *this * o;
    return *this;
}

void CyclotomicScalar::add_product(const CyclotomicScalar& b, const CyclotomicScalar& c) {
    if (b.is_zero() || c.is_zero()) {
        return;
    }
    check_same(b);
    if (b.is_rational() || c.is_rational()) {
        const CyclotomicScalar& full = b.is_rational() ? c : b;
        const Rational& factor = b.is_rational() ? b.coeffs_[0] : c.coeffs_[0];
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!full.coeffs_[i].is_zero()) {
                coeffs_[i] += full.coeffs_[i] * factor;
            }
        }
        return;
    }
    *this += b * c;
}

CyclotomicScalar CyclotomicScalar::inverse() const {
    if (is_zero()) {
        throw std::domain_error("CyclotomicScalar: inverse of zero");
    }
    if (is_rational()) {
        return CyclotomicScalar(*ctx_, Rational(1) / coeffs_[0]);
    }
    // Solve (x * c) = 1 where column j of the system is x * zeta^j.
    const std::size_t deg = coeffs_.size();
    std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg + 1));
    for (std::size_t j = 0; j < deg; ++j) {
        CyclotomicScalar col = *this * zeta_power(*ctx_, static_cast<long long>(j));
        for (std::size_t i = 0; i < deg; ++i) {
            m[i][j] = col.coeffs_[i];
        }
    }
    m[0][deg] = Rational(1);
    for (std::size_t c = 0; c < deg; ++c) {
        std::size_t piv = c;
        while (piv < deg && m[piv][c].is_zero()) {
            ++piv;
        }
        if (piv == deg) {
            throw std::logic_error("CyclotomicScalar: singular multiplication matrix");
        }
        std::swap(m[piv], m[c]);
        Rational inv = Rational(1) / m[c][c];
        for (std::size_t k = c; k <= deg; ++k) {
            m[c][k] *= inv;
        }
        for (std::size_t r = 0; r < deg; ++r) {
            if (r == c || m[r][c].is_zero()) {
                continue;
            }
            Rational f = m[r][c];
            for (std::size_t k = c; k <= deg; ++k) {
                if (!m[c][k].is_zero()) {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    CyclotomicScalar r(*ctx_);
    for (std::size_t i = 0; i < deg; ++i) {
        r.coeffs_[i] = m[i][deg];
    }
    return r;
}

CyclotomicScalar& CyclotomicScalar::operator/=(const CyclotomicScalar& o) {
    check_same(o);
    return *this *= o.inverse();
}

CyclotomicScalar CyclotomicScalar::pow(long long k) const {
    if (k < 0) {
        return inverse().pow(-k);
    }
    CyclotomicScalar result(*ctx_, Rational(1));
    CyclotomicScalar base = *this;
    while (k > 0) {
        if (k & 1) {
            result *= base;
        }
        k >>= 1;
        if (k > 0) {
            base *= base;
        }
    }
    return result;
}

bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
}

std::string CyclotomicScalar::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        std::string c = coeffs_[i].str();
        if (c.size() > 2 && c.compare(c.size() - 2, 2, "/1") == 0) {
            c.resize(c.size() - 2);
        }
        if (i == 0) {
            os << c;
        } else {
            os << "(" << c << ")*z" << ctx_->conductor() << "^" << i;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Scalar root_of_unity(const FieldContext& ctx) { return Scalar::zeta_power(ctx, 1); }

Scalar conj(const Scalar& x) {
    const FieldContext& ctx = x.context();
    const auto coeffs = x.coeffs();
    const auto n = static_cast<std::size_t>(ctx.conductor());
    // zeta^k -> zeta^(N-k), then reduce through the power table.
    Scalar::Coeffs image(n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        image[(n - k) % n] = coeffs[k];
    }
    return Scalar(ctx, std::move(image));
}

Scalar q_int(long long k, const Scalar& q, bool limit_at_degenerate) {
    const FieldContext& ctx = q.context();
    Scalar qinv = q.inverse();
    Scalar denom = q - qinv;
    if (denom.is_zero()) {
        if (k == 0) {
            return Scalar(ctx);
        }
        if (!limit_at_degenerate) {
            throw std::domain_error("q_int: q - q^-1 vanishes (q = +-1)");
        }
        return Scalar(ctx, Rational(k)) * q.pow(k - 1);
    }
    return (q.pow(k) - qinv.pow(k)) / denom;
}

bool is_real(const Scalar& x) { return conj(x) == x; }

nlohmann::json to_json(const Scalar& x) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : x.coeffs()) {
        coeffs.push_back(c.str());
    }
    return {{"conductor", x.context().conductor()}, {"coeffs", coeffs}};
}

Scalar scalar_from_json(const nlohmann::json& j, const FieldContext& ctx) {
    if (j.is_number_integer()) {
        return Scalar(ctx, Rational(j.get<long long>()));
    }
    if (j.is_string()) {
        return Scalar(ctx, Rational::parse(j.get<std::string>()));
    }
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs")) {
        throw std::invalid_argument("scalar JSON must be {conductor, coeffs}");
    }
    if (j.at("conductor").get<int>() != ctx.conductor()) {
        throw std::invalid_argument("scalar JSON conductor does not match the algebra's field");
    }
    Scalar::Coeffs coeffs;
    for (const auto& c : j.at("coeffs")) {
        coeffs.push_back(Rational::parse(c.get<std::string>()));
    }
    return Scalar(ctx, std::move(coeffs));
}

}  // namespace hopfstar
