#include "hopfstar/catalog.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

namespace hopfstar {

namespace {

int parse_int(std::string_view s, std::string_view what) {
    int v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw DescriptorError("expected an integer for " + std::string(what) + ", got \"" + std::string(s) + "\"");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

int mod(long long a, long long n) { return static_cast<int>(((a % n) + n) % n); }

Scalar one(const FieldContext& ctx) { return Scalar(ctx, Rational(1)); }

// ---------------------------------------------------------------------------
// U_q sl(2): basis E^a F^b K^c, index (a*l + b)*l + c.

class Uqsl2Rewriter {
public:
    explicit Uqsl2Rewriter(int l)
        : l_(l),
          ctx_(FieldContext::get(l)),
          q_(root_of_unity(ctx_)),
          cq_((q_ - q_.inverse()).inverse()),
          f_left_(static_cast<std::size_t>(l * l * l)),
          f_pow_(static_cast<std::size_t>(l * l * l * l)) {}

    int index(int a, int b, int c) const { return (a * l_ + b) * l_ + mod(c, l_); }

    Element product(int x, int y) {
        const int a = x / (l_ * l_);
        const int b = (x / l_) % l_;
        const int c = x % l_;
        const int a2 = y / (l_ * l_);
        const int b2 = (y / l_) % l_;
        const int c2 = y % l_;
        // K^c E^a2 F^b2 = q^(2c(a2-b2)) E^a2 F^b2 K^c
        Scalar k_factor = Scalar::zeta_power(ctx_, 2LL * c * (a2 - b2));
        const Element& fz = f_power(b, index(a2, b2, c2 + c));
        ElementBuilder out(ctx_);
        for (const auto& [i, coef] : fz) {
            const int ai = i / (l_ * l_);
            if (ai + a < l_) {
                out.add(i + a * l_ * l_, coef * k_factor);
            }
        }
        return std::move(out).finish();
    }

private:
    // E^shift . element
    Element e_shift(const Element& e, int shift) const {
        Element out;
        for (const auto& [i, c] : e) {
            if (i / (l_ * l_) + shift < l_) {
                out.emplace_back(i + shift * l_ * l_, c);
            }
        }
        return out;
    }

    // F . E^a F^b K^c, using F E = E F - (K - K^-1)/(q - q^-1).
    const Element& f_left(int x) {
        auto& slot = f_left_[static_cast<std::size_t>(x)];
        if (slot) {
            return *slot;
        }
        const int a = x / (l_ * l_);
        const int b = (x / l_) % l_;
        const int c = x % l_;
        Element result;
        if (a == 0) {
            if (b + 1 < l_) {
                result.emplace_back(index(0, b + 1, c), one(ctx_));
            }
        } else {
            ElementBuilder acc(ctx_);
            acc.add(e_shift(f_left(index(a - 1, b, c)), 1), one(ctx_));
            // K E^(a-1) F^b K^c = q^(2(a-1-b)) E^(a-1) F^b K^(c+1), similarly for K^-1.
            const long long w = 2LL * (a - 1 - b);
            acc.add(index(a - 1, b, c + 1), -(cq_ * Scalar::zeta_power(ctx_, w)));
            acc.add(index(a - 1, b, c - 1), cq_ * Scalar::zeta_power(ctx_, -w));
            result = std::move(acc).finish();
        }
        slot = std::move(result);
        return *slot;
    }

    // F^k . monomial
    const Element& f_power(int k, int x) {
        auto& slot = f_pow_[static_cast<std::size_t>(k * l_ * l_ * l_ + x)];
        if (slot) {
            return *slot;
        }
        if (k == 0) {
            slot = Element{{x, one(ctx_)}};
            return *slot;
        }
        ElementBuilder acc(ctx_);
        for (const auto& [i, c] : f_power(k - 1, x)) {
            acc.add(f_left(i), c);
        }
        slot = std::move(acc).finish();
        return *slot;
    }

    int l_;
    const FieldContext& ctx_;
    Scalar q_;
    Scalar cq_;
    std::vector<std::optional<Element>> f_left_;
    std::vector<std::optional<Element>> f_pow_;
};

AlgebraPtr build_uqsl2(int l) {
    const FieldContext& ctx = FieldContext::get(l);
    auto rw = std::make_shared<Uqsl2Rewriter>(l);
    PresentationData p;
    p.ctx = &ctx;
    p.descriptor = AlgebraDescriptor::uqsl2(l).str();
    for (int a = 0; a < l; ++a) {
        for (int b = 0; b < l; ++b) {
            for (int c = 0; c < l; ++c) {
                p.labels.push_back({a, b, c});
                std::vector<int> w(static_cast<std::size_t>(a), 0);
                w.insert(w.end(), static_cast<std::size_t>(b), 1);
                w.insert(w.end(), static_cast<std::size_t>(c), 2);
                p.words.push_back(std::move(w));
            }
        }
    }
    const int E = rw->index(1, 0, 0);
    const int F = rw->index(0, 1, 0);
    const int K = rw->index(0, 0, 1);
    const int Kinv = rw->index(0, 0, -1);
    const int u = rw->index(0, 0, 0);
    const Scalar q = root_of_unity(ctx);
    const Scalar o = one(ctx);
    p.unit = u;
    p.generator_names = {"E", "F", "K"};
    p.generator_basis = {E, F, K};
    p.normal_product = [rw](int x, int y) { return rw->product(x, y); };
    p.generator_coproduct = {
        Tensor{{u, E, o}, {E, K, o}},
        Tensor{{Kinv, F, o}, {F, u, o}},
        Tensor{{K, K, o}},
    };
    p.generator_counit = {Scalar(ctx), Scalar(ctx), o};
    // S(F) = -KF = -q^-2 FK
    p.generator_antipode = {
        Element{{rw->index(1, 0, -1), -o}},
        Element{{rw->index(0, 1, 1), -Scalar::zeta_power(ctx, -2)}},
        Element{{Kinv, o}},
    };
    p.generator_star = {Element{{E, o}}, Element{{F, o}}, Element{{K, o}}};

    const std::vector<int> el(static_cast<std::size_t>(l), 0);
    const std::vector<int> fl(static_cast<std::size_t>(l), 1);
    const std::vector<int> kl(static_cast<std::size_t>(l), 2);
    const std::vector<int> kinv(static_cast<std::size_t>(l - 1), 2);
    const Scalar d = q - q.inverse();
    p.relations = {
        {"E^l = 0", {{o, el}}},
        {"F^l = 0", {{o, fl}}},
        {"K^l = 1", {{o, kl}, {-o, {}}}},
        {"KE = q^2 EK", {{o, {2, 0}}, {-(q * q), {0, 2}}}},
        {"KF = q^-2 FK", {{o, {2, 1}}, {-Scalar::zeta_power(ctx, -2), {1, 2}}}},
        {"(q - q^-1)(EF - FE) = K - K^-1", {{d, {0, 1}}, {-d, {1, 0}}, {-o, {2}}, {o, kinv}}},
    };
    return std::make_shared<const HopfPresentation>(std::move(p));
}

// ---------------------------------------------------------------------------
// Generalized Taft algebra: basis g^i h^j, index i*d + j.

AlgebraPtr build_taft(int n, int d) {
    const FieldContext& ctx = FieldContext::get(n);
    const int m = n / d;
    PresentationData p;
    p.ctx = &ctx;
    p.descriptor = AlgebraDescriptor::taft(n, d).str();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            p.labels.push_back({i, j});
            std::vector<int> w(static_cast<std::size_t>(i), 0);
            w.insert(w.end(), static_cast<std::size_t>(j), 1);
            p.words.push_back(std::move(w));
        }
    }
    auto idx = [n, d](int i, int j) { return mod(i, n) * d + j; };
    const Scalar o = one(ctx);
    // q = omega^m with omega = zeta_n.
    auto qpow = [&ctx, m](long long k) { return Scalar::zeta_power(ctx, static_cast<long long>(m) * k); };
    p.unit = 0;
    p.generator_names = {"g", "h"};
    p.generator_basis = {idx(1, 0), idx(0, 1)};
    p.normal_product = [d, idx, qpow](int x, int y) -> Element {
        const int i = x / d;
        const int j = x % d;
        const int i2 = y / d;
        const int j2 = y % d;
        if (j + j2 >= d) {
            return {};
        }
        // h^j g^i2 = q^(j i2) g^i2 h^j
        return {{idx(i + i2, j + j2), qpow(static_cast<long long>(j) * i2)}};
    };
    p.generator_coproduct = {
        Tensor{{idx(1, 0), idx(1, 0), o}},
        Tensor{{idx(0, 0), idx(0, 1), o}, {idx(0, 1), idx(1, 0), o}},
    };
    p.generator_counit = {o, Scalar(ctx)};
    p.generator_antipode = {
        Element{{idx(-1, 0), o}},
        Element{{idx(-1, 1), -qpow(-1)}},
    };
    p.generator_star = {Element{{idx(1, 0), o}}, Element{{idx(0, 1), o}}};
    p.relations = {
        {"g^n = 1", {{o, std::vector<int>(static_cast<std::size_t>(n), 0)}, {-o, {}}}},
        {"h^d = 0", {{o, std::vector<int>(static_cast<std::size_t>(d), 1)}}},
        {"hg = q gh", {{o, {1, 0}}, {-qpow(1), {0, 1}}}},
    };
    return std::make_shared<const HopfPresentation>(std::move(p));
}

// ---------------------------------------------------------------------------
// Group algebra of Z_n with g* = g^-1.

AlgebraPtr build_cyclic(int n) {
    const FieldContext& ctx = FieldContext::get(n);
    PresentationData p;
    p.ctx = &ctx;
    p.descriptor = AlgebraDescriptor::cyclic(n).str();
    for (int i = 0; i < n; ++i) {
        p.labels.push_back({i});
        p.words.push_back(std::vector<int>(static_cast<std::size_t>(i), 0));
    }
    const Scalar o = one(ctx);
    const int g = 1 % n;
    const int ginv = mod(-1, n);
    p.unit = 0;
    p.generator_names = {"g"};
    p.generator_basis = {g};
    p.normal_product = [n, &ctx](int x, int y) -> Element { return {{(x + y) % n, one(ctx)}}; };
    p.generator_coproduct = {Tensor{{g, g, o}}};
    p.generator_counit = {o};
    p.generator_antipode = {Element{{ginv, o}}};
    p.generator_star = {Element{{ginv, o}}};
    p.relations = {{"g^n = 1", {{o, std::vector<int>(static_cast<std::size_t>(n), 0)}, {-o, {}}}}};
    return std::make_shared<const HopfPresentation>(std::move(p));
}

AlgebraPtr cached(const AlgebraDescriptor& a, AlgebraPtr (*build)(const AlgebraDescriptor&)) {
    static std::mutex mu;
    static std::map<std::string, AlgebraPtr> cache;
    const std::string key = a.str();
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    AlgebraPtr built = build(a);
    std::lock_guard lock(mu);
    return cache.try_emplace(key, std::move(built)).first->second;
}

Matrix diagonal(const FieldContext& ctx, const std::vector<Scalar>& d) {
    Matrix m(ctx, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

AlgebraDescriptor AlgebraDescriptor::uqsl2(int l) {
    AlgebraDescriptor a;
    a.family = Family::uqsl2;
    a.l = l;
    return a;
}

AlgebraDescriptor AlgebraDescriptor::taft(int n, int d) {
    AlgebraDescriptor a;
    a.family = Family::taft;
    a.n = n;
    a.d = d;
    return a;
}

AlgebraDescriptor AlgebraDescriptor::cyclic(int n) {
    AlgebraDescriptor a;
    a.family = Family::cyclic;
    a.n = n;
    return a;
}

std::string AlgebraDescriptor::str() const {
    switch (family) {
        case Family::uqsl2:
            return "uqsl2:l=" + std::to_string(l);
        case Family::taft:
            return "taft:n=" + std::to_string(n) + ",d=" + std::to_string(d);
        case Family::cyclic:
            return "cyclic:n=" + std::to_string(n);
    }
    return {};
}

void AlgebraDescriptor::validate() const {
    switch (family) {
        case Family::uqsl2:
            if (l < 3 || l % 2 == 0) {
                throw DescriptorError("uqsl2 needs odd l >= 3, got l=" + std::to_string(l));
            }
            break;
        case Family::taft:
            if (n < 2 || d < 2 || n % d != 0) {
                throw DescriptorError("taft needs n,d >= 2 with d | n, got n=" + std::to_string(n) +
                                      ", d=" + std::to_string(d));
            }
            break;
        case Family::cyclic:
            if (n < 1) {
                throw DescriptorError("cyclic needs n >= 1");
            }
            break;
    }
}

AlgebraDescriptor AlgebraDescriptor::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw DescriptorError("algebra descriptor needs the form family:key=value,...");
    }
    const std::string_view fam = text.substr(0, colon);
    std::map<std::string, int> kv;
    for (auto part : split(text.substr(colon + 1), ',')) {
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) {
            throw DescriptorError("expected key=value in algebra descriptor, got \"" + std::string(part) + "\"");
        }
        std::string key(part.substr(0, eq));
        if (!kv.emplace(key, parse_int(part.substr(eq + 1), key)).second) {
            throw DescriptorError("repeated parameter " + key);
        }
    }
    auto take = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw DescriptorError("missing parameter " + key + " in \"" + std::string(text) + "\"");
        }
        const int v = it->second;
        kv.erase(it);
        return v;
    };
    AlgebraDescriptor a;
    if (fam == "uqsl2") {
        a = uqsl2(take("l"));
    } else if (fam == "taft") {
        const int n = take("n");
        a = taft(n, take("d"));
    } else if (fam == "cyclic" || fam == "cyclic-group") {
        a = cyclic(take("n"));
    } else {
        throw DescriptorError("unknown algebra family \"" + std::string(fam) + "\"");
    }
    if (!kv.empty()) {
        throw DescriptorError("unexpected parameter " + kv.begin()->first);
    }
    a.validate();
    return a;
}

std::string ModuleDescriptor::str() const {
    std::ostringstream os;
    os << kind;
    if (kind == 'C') {
        os << ':';
        for (std::size_t i = 0; i < params.size(); ++i) {
            os << (i ? "," : "") << params[i];
        }
    } else {
        for (int p : params) {
            os << ':' << p;
        }
    }
    return os.str();
}

std::string ModuleDescriptor::label() const {
    std::ostringstream os;
    if (kind == 'M') {
        os << "M(" << params.at(0) << ',' << params.at(1) << ')';
    } else if (kind == 'C') {
        os << "C(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            os << (i ? "," : "") << params[i];
        }
        os << ')';
    } else {
        os << kind << '_' << params.at(0);
    }
    return os.str();
}

ModuleDescriptor ModuleDescriptor::parse(std::string_view text, const AlgebraDescriptor& a) {
    if (text.size() < 3 || text[1] != ':') {
        throw DescriptorError("module descriptor needs the form K:params, got \"" + std::string(text) + "\"");
    }
    ModuleDescriptor m;
    m.kind = text[0];
    const std::string_view rest = text.substr(2);
    switch (m.kind) {
        case 'P':
        case 'V':
        case 'W': {
            if (a.family != Family::uqsl2) {
                throw DescriptorError(std::string("module ") + m.kind + " belongs to uqsl2");
            }
            const int r = parse_int(rest, "r");
            if (r < 1 || r > a.l - 1) {
                throw DescriptorError("r must satisfy 1 <= r <= l-1, got r=" + std::to_string(r));
            }
            m.params = {r};
            break;
        }
        case 'M': {
            if (a.family != Family::taft) {
                throw DescriptorError("module M belongs to taft");
            }
            auto parts = split(rest, ':');
            if (parts.size() != 2) {
                throw DescriptorError("module M needs M:l:i");
            }
            const int l = parse_int(parts[0], "l");
            const int i = parse_int(parts[1], "i");
            if (l < 1 || l > a.d) {
                throw DescriptorError("M(l,i) needs 1 <= l <= d, got l=" + std::to_string(l));
            }
            m.params = {l, mod(i, a.n)};
            break;
        }
        case 'C': {
            if (a.family != Family::cyclic) {
                throw DescriptorError("module C belongs to cyclic");
            }
            for (auto part : split(rest, ',')) {
                m.params.push_back(mod(parse_int(part, "character"), a.n));
            }
            break;
        }
        default:
            throw DescriptorError(std::string("unknown module kind ") + m.kind);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Algebras

AlgebraPtr uqsl2(int l) {
    AlgebraDescriptor::uqsl2(l).validate();
    return cached(AlgebraDescriptor::uqsl2(l), [](const AlgebraDescriptor& a) { return build_uqsl2(a.l); });
}

AlgebraPtr taft(int n, int d) {
    AlgebraDescriptor::taft(n, d).validate();
    return cached(AlgebraDescriptor::taft(n, d), [](const AlgebraDescriptor& a) { return build_taft(a.n, a.d); });
}

AlgebraPtr cyclic_group_algebra(int n) {
    AlgebraDescriptor::cyclic(n).validate();
    return cached(AlgebraDescriptor::cyclic(n), [](const AlgebraDescriptor& a) { return build_cyclic(a.n); });
}

AlgebraPtr build_algebra(const AlgebraDescriptor& a) {
    switch (a.family) {
        case Family::uqsl2:
            return uqsl2(a.l);
        case Family::taft:
            return taft(a.n, a.d);
        case Family::cyclic:
            return cyclic_group_algebra(a.n);
    }
    throw DescriptorError("unknown family");
}

AlgebraPtr resolve_algebra(const std::string& descriptor) { return build_algebra(AlgebraDescriptor::parse(descriptor)); }

// ---------------------------------------------------------------------------
// Modules

ProjectiveModule module_P(int l, int r) {
    AlgebraPtr alg = uqsl2(l);
    if (r < 1 || r > l - 1) {
        throw DescriptorError("module_P needs 1 <= r <= l-1");
    }
    const FieldContext& ctx = alg->context();
    const Scalar q = root_of_unity(ctx);
    const Scalar o = one(ctx);
    const int L = l - r;
    const int dim = 2 * l;
    auto x = [](int k) { return k; };
    auto y = [L](int k) { return L + k; };
    auto a = [L](int k) { return 2 * L + k; };
    auto b = [L, r](int k) { return 2 * L + r + k; };

    Matrix E(ctx, dim, dim);
    Matrix F(ctx, dim, dim);
    std::vector<Scalar> kdiag;
    // Column j holds the image of basis vector j.
    for (int k = 1; k < L; ++k) {
        const Scalar c = q_int(k, q) * q_int(L - k, q);
        E(x(k - 1), x(k)) = c;
        E(y(k - 1), y(k)) = c;
    }
    E(a(r - 1), y(0)) = o;
    for (int n = 1; n < r; ++n) {
        const Scalar c = q_int(n, q) * q_int(r - n, q);
        E(a(n - 1), a(n)) = c;
        E(b(n - 1), b(n)) = c;
        E(a(n - 1), b(n)) = o;
    }
    E(x(L - 1), b(0)) = o;

    for (int k = 0; k + 1 < L; ++k) {
        F(x(k + 1), x(k)) = o;
        F(y(k + 1), y(k)) = o;
    }
    F(a(0), x(L - 1)) = o;
    for (int n = 0; n + 1 < r; ++n) {
        F(a(n + 1), a(n)) = o;
        F(b(n + 1), b(n)) = o;
    }
    F(y(0), b(r - 1)) = o;

    for (int tower = 0; tower < 2; ++tower) {
        for (int k = 0; k < L; ++k) {
            kdiag.push_back(q.pow(L - 1 - 2 * k));
        }
    }
    for (int tower = 0; tower < 2; ++tower) {
        for (int n = 0; n < r; ++n) {
            kdiag.push_back(q.pow(r - 1 - 2 * n));
        }
    }
    ModuleRep module(alg, {E, F, diagonal(ctx, kdiag)}, "P_" + std::to_string(r));

    std::vector<Vector> v_vecs;
    std::vector<Vector> w_vecs;
    for (int n = 0; n < r; ++n) {
        v_vecs.push_back(unit_vector(ctx, dim, a(n)));
    }
    for (int k = 0; k < 2 * L + r; ++k) {
        w_vecs.push_back(unit_vector(ctx, dim, k));
    }
    return {std::move(module), Subspace::span(ctx, dim, v_vecs), Subspace::span(ctx, dim, w_vecs)};
}

ModuleRep module_V(int l, int r) {
    AlgebraPtr alg = uqsl2(l);
    if (r < 1 || r > l - 1) {
        throw DescriptorError("module_V needs 1 <= r <= l-1");
    }
    const FieldContext& ctx = alg->context();
    const Scalar q = root_of_unity(ctx);
    Matrix E(ctx, r, r);
    Matrix F(ctx, r, r);
    std::vector<Scalar> kdiag;
    for (int n = 0; n < r; ++n) {
        if (n >= 1) {
            E(n - 1, n) = q_int(n, q) * q_int(r - n, q);
        }
        if (n + 1 < r) {
            F(n + 1, n) = one(ctx);
        }
        kdiag.push_back(q.pow(r - 1 - 2 * n));
    }
    return ModuleRep(alg, {E, F, diagonal(ctx, kdiag)}, "V_" + std::to_string(r));
}

ModuleRep module_W(int l, int r) {
    ProjectiveModule p = module_P(l, r);
    return restrict_to(p.module, p.W, "W_" + std::to_string(r));
}

ModuleRep module_M(int n, int d, int l, int i) {
    AlgebraPtr alg = taft(n, d);
    if (l < 1 || l > d) {
        throw DescriptorError("module_M needs 1 <= l <= d");
    }
    const FieldContext& ctx = alg->context();
    const int m = n / d;
    const int ii = mod(i, n);
    std::vector<Scalar> gdiag;
    Matrix h(ctx, l, l);
    for (int j = 0; j < l; ++j) {
        // omega^i q^-j = zeta_n^(i - m j)
        gdiag.push_back(Scalar::zeta_power(ctx, ii - static_cast<long long>(m) * j));
        if (j + 1 < l) {
            h(j + 1, j) = one(ctx);
        }
    }
    return ModuleRep(alg, {diagonal(ctx, gdiag), h}, "M(" + std::to_string(l) + "," + std::to_string(ii) + ")");
}

ModuleRep character_module(int n, const std::vector<int>& characters) {
    AlgebraPtr alg = cyclic_group_algebra(n);
    const FieldContext& ctx = alg->context();
    std::vector<Scalar> gdiag;
    ModuleDescriptor md{'C', {}};
    for (int k : characters) {
        gdiag.push_back(Scalar::zeta_power(ctx, k));
        md.params.push_back(mod(k, n));
    }
    return ModuleRep(alg, {diagonal(ctx, gdiag)}, md.label());
}

ModuleRep build_module(const AlgebraDescriptor& a, const ModuleDescriptor& m) {
    switch (m.kind) {
        case 'P':
            return module_P(a.l, m.params.at(0)).module;
        case 'V':
            return module_V(a.l, m.params.at(0));
        case 'W':
            return module_W(a.l, m.params.at(0));
        case 'M':
            return module_M(a.n, a.d, m.params.at(0), m.params.at(1));
        case 'C':
            return character_module(a.n, m.params);
        default:
            throw DescriptorError(std::string("unknown module kind ") + m.kind);
    }
}

std::vector<CatalogCandidate> catalog_candidates(const AlgebraDescriptor& a, int dim) {
    std::vector<ModuleRep> indecomposable;
    switch (a.family) {
        case Family::uqsl2:
            for (int r = 1; r < a.l; ++r) {
                indecomposable.push_back(module_V(a.l, r));
            }
            for (int r = 1; r < a.l; ++r) {
                indecomposable.push_back(module_W(a.l, r));
            }
            for (int r = 1; r < a.l; ++r) {
                indecomposable.push_back(module_P(a.l, r).module);
            }
            break;
        case Family::taft:
            for (int l = 1; l <= a.d; ++l) {
                for (int i = 0; i < a.n; ++i) {
                    indecomposable.push_back(module_M(a.n, a.d, l, i));
                }
            }
            break;
        case Family::cyclic:
            for (int k = 0; k < a.n; ++k) {
                indecomposable.push_back(character_module(a.n, {k}));
            }
            break;
    }
    std::vector<CatalogCandidate> out;
    for (const auto& m : indecomposable) {
        if (m.dim() == dim) {
            out.push_back({m, {m}});
        }
    }
    for (std::size_t i = 0; i < indecomposable.size(); ++i) {
        for (std::size_t j = i; j < indecomposable.size(); ++j) {
            if (indecomposable[i].dim() + indecomposable[j].dim() == dim) {
                out.push_back({direct_sum(indecomposable[i], indecomposable[j]), {indecomposable[i], indecomposable[j]}});
            }
        }
    }
    return out;
}

std::optional<CatalogCandidate> identify_candidate(const AlgebraDescriptor& a, const ModuleRep& m) {
    for (auto& c : catalog_candidates(a, m.dim())) {
        if (is_isomorphic(c.module, m)) {
            return std::move(c);
        }
    }
    return std::nullopt;
}

std::optional<std::string> identify(const AlgebraDescriptor& a, const ModuleRep& m) {
    if (auto c = identify_candidate(a, m)) {
        return c->module.label();
    }
    return std::nullopt;
}

}  // namespace hopfstar
