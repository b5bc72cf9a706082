#include "zdred/zmod.hpp"

#include <algorithm>
#include <numeric>

namespace zdred {

Modulus::Modulus(std::int64_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("modulus must be >= 2");
    std::int64_t x = d;
    for (std::int64_t p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            int e = 0;
            while (x % p == 0) {
                x /= p;
                ++e;
            }
            factors_.push_back({p, e});
        }
    }
    if (x > 1) factors_.push_back({x, 1});
}

int Modulus::exponent_of(std::int64_t p) const noexcept {
    for (const auto& f : factors_)
        if (f.prime == p) return f.exponent;
    return 0;
}

std::int64_t Modulus::prime_power(std::int64_t p) const {
    for (const auto& f : factors_) {
        if (f.prime == p) {
            std::int64_t q = 1;
            for (int i = 0; i < f.exponent; ++i) q *= p;
            return q;
        }
    }
    throw std::invalid_argument("prime does not divide the modulus");
}

std::int64_t Modulus::reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % d_;
    return r < 0 ? r + d_ : r;
}

std::int64_t Modulus::add(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) + reduce(b));
}

std::int64_t Modulus::sub(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) - reduce(b));
}

std::int64_t Modulus::mul(std::int64_t a, std::int64_t b) const noexcept {
    return static_cast<std::int64_t>(
        (static_cast<__int128>(reduce(a)) * reduce(b)) % d_);
}

std::int64_t Modulus::neg(std::int64_t a) const noexcept {
    return reduce(-reduce(a));
}

std::int64_t Modulus::pow(std::int64_t a, std::int64_t e) const noexcept {
    std::int64_t base = reduce(a), acc = reduce(1);
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool Modulus::is_unit(std::int64_t a) const noexcept {
    return std::gcd(reduce(a), d_) == 1;
}

ExtendedGcd ext_gcd(std::int64_t a, std::int64_t b) {
    // invariant: r0 = x0*a + y0*b, r1 = x1*a + y1*b
    std::int64_t r0 = a, r1 = b;
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t x2 = x0 - q * x1;
        std::int64_t y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    if (r0 < 0) {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    return {r0, x0, y0};
}

std::int64_t order(std::int64_t a, const Modulus& m) {
    return m.d() / std::gcd(m.reduce(a), m.d());
}

std::int64_t canonical_gcd(std::span<const std::int64_t> as, const Modulus& m) {
    std::int64_t g = m.d();
    for (std::int64_t a : as) g = std::gcd(g, m.reduce(a));
    return m.reduce(g);
}

std::int64_t lcm_zd(std::span<const std::int64_t> as, const Modulus& m) {
    // fold via gcd with d, so every intermediate divides d
    std::int64_t l = 1;
    for (std::int64_t a : as) {
        std::int64_t ga = std::gcd(m.reduce(a), m.d());
        l = l / std::gcd(l, ga) * ga;
    }
    return m.reduce(l);
}

int vp(std::int64_t a, std::int64_t p, const Modulus& m) {
    int s = m.exponent_of(p);
    if (s == 0) throw std::invalid_argument("prime does not divide the modulus");
    std::int64_t q = m.prime_power(p);
    std::int64_t x = m.reduce(a) % q;
    if (x == 0) return s;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

CrtVector crt_split(std::int64_t a, const Modulus& m) {
    CrtVector out;
    std::int64_t r = m.reduce(a);
    for (const auto& f : m.factors())
        out.components.push_back({f.prime, r % m.prime_power(f.prime)});
    return out;
}

std::int64_t crt_join(const CrtVector& c, const Modulus& m) {
    if (c.components.size() != m.factors().size())
        throw std::invalid_argument("CRT component count mismatch");
    std::int64_t x = 0;
    for (const auto& comp : c.components) {
        std::int64_t q = m.prime_power(comp.prime);
        if (comp.value < 0 || comp.value >= q)
            throw std::invalid_argument("CRT component out of range");
        std::int64_t rest = m.d() / q;
        auto eg = ext_gcd(rest % q, q);  // rest coprime to q
        std::int64_t inv = ((eg.x % q) + q) % q;
        // basis element: rest*inv == 1 mod q, == 0 mod the other factors
        std::int64_t e = m.mul(rest % m.d(), inv);
        x = m.add(x, m.mul(e, comp.value));
    }
    return x;
}

std::int64_t unit_inverse(std::int64_t a, const Modulus& m) {
    auto eg = ext_gcd(m.reduce(a), m.d());
    if (eg.g != 1) throw std::invalid_argument("not a unit");
    return m.reduce(eg.x);
}

namespace {

struct FactorBezout {
    std::int64_t u, v, delta;
    bool both_units;
};

// Per-factor Bezout pair over Z/qZ, q = p^s, scanning the three candidate
// coefficient pairs for an all-units one.
FactorBezout factor_bezout(std::int64_t alpha, std::int64_t beta,
                           std::int64_t p, int s, std::int64_t q) {
    if (alpha == 0 && beta == 0) return {1, 1, 0, true};
    auto val = [&](std::int64_t x) {
        if (x == 0) return s;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    int k = std::min(val(alpha), val(beta));
    std::int64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    std::int64_t a1 = alpha / pk, b1 = beta / pk;
    auto eg = ext_gcd(a1, b1);  // eg.g coprime to p
    auto inv_eg = ext_gcd(((eg.g % q) + q) % q, q);
    std::int64_t w = ((inv_eg.x % q) + q) % q;
    auto mulq = [&](std::int64_t x, std::int64_t y) {
        return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % q);
    };
    auto red = [&](std::int64_t x) { return ((x % q) + q) % q; };
    std::int64_t u0 = mulq(red(eg.x), w);
    std::int64_t v0 = mulq(red(eg.y), w);
    // now u0*a1 + v0*b1 == 1 mod q
    const std::int64_t cand[3][2] = {
        {u0, v0},
        {red(u0 + b1), red(v0 - a1)},
        {red(u0 - b1), red(v0 + a1)},
    };
    auto is_unit = [&](std::int64_t x) { return x % p != 0; };
    for (const auto& c : cand)
        if (is_unit(c[0]) && is_unit(c[1])) return {c[0], c[1], pk % q, true};
    for (const auto& c : cand)
        if (is_unit(c[0])) return {c[0], c[1], pk % q, false};
    throw std::logic_error("bezout: no unit-u candidate");
}

}  // namespace

BezoutResult bezout_invertible(std::int64_t a, std::int64_t b, const Modulus& m) {
    std::int64_t ra = m.reduce(a), rb = m.reduce(b);
    CrtVector us, vs, ds;
    bool both = true;
    for (const auto& f : m.factors()) {
        std::int64_t q = m.prime_power(f.prime);
        auto fb = factor_bezout(ra % q, rb % q, f.prime, f.exponent, q);
        us.components.push_back({f.prime, fb.u});
        vs.components.push_back({f.prime, fb.v});
        ds.components.push_back({f.prime, fb.delta});
        both = both && fb.both_units;
    }
    std::int64_t u = crt_join(us, m), v = crt_join(vs, m);
    std::int64_t joined = crt_join(ds, m);
    // the join of the prime-power deltas is associated to the canonical gcd;
    // rescale so the reported delta is the canonical representative
    std::vector<std::int64_t> fam{ra, rb};
    std::int64_t target = canonical_gcd(fam, m);
    auto lambda = associated_unit(target, joined, m);
    if (!lambda) throw std::logic_error("bezout: delta normalisation failed");
    return {m.mul(u, *lambda), m.mul(v, *lambda), target, both};
}

std::vector<std::int64_t> multi_bezout(std::span<const std::int64_t> as,
                                       std::size_t unit_index, const Modulus& m) {
    if (as.empty()) throw std::invalid_argument("multi_bezout: empty family");
    if (unit_index >= as.size())
        throw std::invalid_argument("multi_bezout: unit index out of range");
    std::vector<std::int64_t> coef(as.size(), 0);
    coef[unit_index] = 1;
    std::int64_t g = m.reduce(as[unit_index]);
    for (std::size_t j = 0; j < as.size(); ++j) {
        if (j == unit_index) continue;
        auto bz = bezout_invertible(g, as[j], m);
        for (std::size_t t = 0; t < coef.size(); ++t) coef[t] = m.mul(coef[t], bz.u);
        coef[j] = bz.v;
        g = bz.delta;
    }
    // fold lands on the running gcd; normalise to the canonical representative
    std::int64_t target = canonical_gcd(as, m);
    auto lambda = associated_unit(target, g, m);
    if (!lambda) throw std::logic_error("multi_bezout: gcd normalisation failed");
    for (auto& c : coef) c = m.mul(c, *lambda);
    return coef;
}

std::optional<std::int64_t> associated_unit(std::int64_t a, std::int64_t b,
                                            const Modulus& m) {
    std::int64_t ra = m.reduce(a), rb = m.reduce(b);
    if (order(ra, m) != order(rb, m)) return std::nullopt;
    CrtVector ls;
    for (const auto& f : m.factors()) {
        std::int64_t q = m.prime_power(f.prime);
        std::int64_t alpha = ra % q, beta = rb % q;
        if (alpha == 0 && beta == 0) {
            ls.components.push_back({f.prime, 1});
            continue;
        }
        std::int64_t pk = 1;
        std::int64_t x = alpha;
        while (x % f.prime == 0) {
            x /= f.prime;
            pk *= f.prime;
        }
        // equal orders give equal valuations per factor
        std::int64_t au = alpha / pk, bu = beta / pk;
        auto eg = ext_gcd(bu % q, q);
        std::int64_t inv = ((eg.x % q) + q) % q;
        std::int64_t lam = static_cast<std::int64_t>(
            (static_cast<__int128>(au % q) * inv) % q);
        ls.components.push_back({f.prime, lam});
    }
    return crt_join(ls, m);
}

std::int64_t divide_exact(std::int64_t x, std::int64_t a, const Modulus& m) {
    std::int64_t rx = m.reduce(x), ra = m.reduce(a);
    std::int64_t g = std::gcd(ra, m.d());  // gcd(0, d) = d
    if (rx % g != 0) throw std::invalid_argument("divide_exact: not a multiple");
    auto lambda = associated_unit(ra, m.reduce(g), m);
    if (!lambda) throw std::logic_error("divide_exact: association failed");
    return m.mul(unit_inverse(*lambda, m), rx / g);
}

}  // namespace zdred
