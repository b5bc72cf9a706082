#include "zdred/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace zdred::oracle {

namespace {

std::int64_t checked_power(std::int64_t base, std::size_t exp, std::int64_t cap) {
    std::int64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > cap / base) return cap + 1;
        out *= base;
    }
    return out;
}

// Writes the mixed-radix digits of `code` into a fresh column.
ZdMatrix decode_code(std::int64_t code, std::size_t ambient, const Modulus& m) {
    ZdMatrix v(ambient, 1, m);
    for (std::size_t i = 0; i < ambient; ++i) {
        v.set(i, 0, code % m.d());
        code /= m.d();
    }
    return v;
}

void sort_unique(std::vector<std::int64_t>& codes) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
}

void validate_closure(const ElementSet& set, const ZdMatrix& generators) {
    if (set.codes.empty() || set.codes.front() != 0)
        throw std::logic_error("element set misses 0");
    const std::int64_t d = set.mod.d();
    std::vector<std::int64_t> x(set.ambient);
    for (std::int64_t code : set.codes) {
        std::int64_t rest = code;
        for (std::size_t i = 0; i < set.ambient; ++i) {
            x[i] = rest % d;
            rest /= d;
        }
        for (std::size_t j = 0; j < generators.cols(); ++j) {
            std::int64_t ycode = 0;
            for (std::size_t r = set.ambient; r-- > 0;)
                ycode = ycode * d + set.mod.add(x[r], generators(r, j));
            if (!set.contains(ycode))
                throw std::logic_error("element set is not closed under addition");
        }
    }
}

}  // namespace

std::int64_t ElementSet::encode(const ZdMatrix& v) const {
    std::int64_t code = 0;
    for (std::size_t i = ambient; i-- > 0;) code = code * mod.d() + v(i, 0);
    return code;
}

ZdMatrix ElementSet::decode(std::int64_t code) const {
    return decode_code(code, ambient, mod);
}

bool ElementSet::contains(std::int64_t code) const {
    return std::binary_search(codes.begin(), codes.end(), code);
}

namespace {

// Odometer walk over all coefficient tuples in [begin, end), keeping the
// running combination B * c updated incrementally (no per-tuple allocation).
void enumerate_range(const Submodule& s, std::int64_t begin, std::int64_t end,
                     std::vector<std::int64_t>& sink) {
    const Modulus& m = s.mod;
    const std::int64_t d = m.d();
    const std::size_t cols = s.basis.cols(), n = s.ambient;
    std::vector<std::int64_t> digit(cols, 0), cur(n, 0);
    std::int64_t rest = begin;
    for (std::size_t i = 0; i < cols; ++i) {
        digit[i] = rest % d;
        rest /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < cols; ++c)
            acc = m.add(acc, m.mul(s.basis(r, c), digit[c]));
        cur[r] = acc;
    }
    for (std::int64_t idx = begin; idx < end; ++idx) {
        std::int64_t code = 0;
        for (std::size_t r = n; r-- > 0;) code = code * d + cur[r];
        sink.push_back(code);
        for (std::size_t i = 0; i < cols; ++i) {
            for (std::size_t r = 0; r < n; ++r)
                cur[r] = m.add(cur[r], s.basis(r, i));
            if (++digit[i] < d) break;
            digit[i] = 0;  // wrap carries into the next column
        }
    }
}

template <typename RangeBody>
std::vector<std::int64_t> chunked_scan(std::int64_t total, const RangeBody& body) {
    std::vector<std::int64_t> codes;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<std::int64_t> local;
#pragma omp for schedule(static) nowait
        for (int chunk = 0; chunk < 64; ++chunk) {
            std::int64_t begin = total * chunk / 64;
            std::int64_t end = total * (chunk + 1) / 64;
            if (begin < end) body(begin, end, local);
        }
#pragma omp critical
        codes.insert(codes.end(), local.begin(), local.end());
    }
#else
    body(0, total, codes);
#endif
    sort_unique(codes);
    return codes;
}

}  // namespace

ElementSet enumerate_serial(const Submodule& s) {
    std::int64_t total = checked_power(s.mod.d(), s.basis.cols(), kEnumerationGuard);
    if (total > kEnumerationGuard)
        throw std::invalid_argument("enumeration guard exceeded");
    ElementSet out{s.mod, s.ambient, {}};
    enumerate_range(s, 0, total, out.codes);
    sort_unique(out.codes);
    validate_closure(out, s.basis);
    return out;
}

ElementSet enumerate(const Submodule& s) {
    std::int64_t total = checked_power(s.mod.d(), s.basis.cols(), kEnumerationGuard);
    if (total > kEnumerationGuard)
        throw std::invalid_argument("enumeration guard exceeded");
    ElementSet out{s.mod, s.ambient, {}};
    out.codes = chunked_scan(total, [&](std::int64_t b, std::int64_t e,
                                        std::vector<std::int64_t>& sink) {
        enumerate_range(s, b, e, sink);
    });
    validate_closure(out, s.basis);
    return out;
}

namespace {

// Walks all ambient vectors, maintaining the pairing against every generator
// incrementally; collects the codes annihilating all of them.
void orthogonal_range(const Submodule& s, const SymplecticSpace& sp,
                      std::int64_t begin, std::int64_t end,
                      std::vector<std::int64_t>& sink) {
    const Modulus& m = s.mod;
    const std::int64_t d = m.d();
    const std::size_t n = s.ambient, k = s.basis.cols();
    // jb(i, j) = (J b_j)_i, so omega(x, b_j) = sum_i x_i * jb(i, j)
    ZdMatrix jb = sp.j() * s.basis;
    std::vector<std::int64_t> digit(n, 0), dot(k, 0);
    std::int64_t rest = begin;
    for (std::size_t i = 0; i < n; ++i) {
        digit[i] = rest % d;
        rest /= d;
    }
    for (std::size_t j = 0; j < k; ++j) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc = m.add(acc, m.mul(digit[i], jb(i, j)));
        dot[j] = acc;
    }
    for (std::int64_t idx = begin; idx < end; ++idx) {
        bool ok = true;
        for (std::size_t j = 0; j < k; ++j)
            if (dot[j] != 0) {
                ok = false;
                break;
            }
        if (ok) sink.push_back(idx);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) dot[j] = m.add(dot[j], jb(i, j));
            if (++digit[i] < d) break;
            digit[i] = 0;
        }
    }
}

ElementSet orthogonal_scan(const Submodule& s, const SymplecticSpace& sp,
                           bool parallel) {
    if (s.ambient != sp.dim() || s.mod.d() != sp.mod().d())
        throw std::invalid_argument("brute_orthogonal shape mismatch");
    std::int64_t total = checked_power(s.mod.d(), s.ambient, kEnumerationGuard);
    if (total > kEnumerationGuard)
        throw std::invalid_argument("enumeration guard exceeded");
    ElementSet out{s.mod, s.ambient, {}};
    if (parallel) {
        out.codes = chunked_scan(total, [&](std::int64_t b, std::int64_t e,
                                            std::vector<std::int64_t>& sink) {
            orthogonal_range(s, sp, b, e, sink);
        });
    } else {
        orthogonal_range(s, sp, 0, total, out.codes);
        sort_unique(out.codes);
    }
    return out;
}

}  // namespace

ElementSet brute_orthogonal(const Submodule& s, const SymplecticSpace& sp) {
    return orthogonal_scan(s, sp, true);
}

ElementSet brute_orthogonal_serial(const Submodule& s, const SymplecticSpace& sp) {
    return orthogonal_scan(s, sp, false);
}

IsotropyFlags brute_classify(const Submodule& s, const SymplecticSpace& sp) {
    ElementSet mine = enumerate(s);
    ElementSet orth = brute_orthogonal(s, sp);
    bool iso = std::includes(orth.codes.begin(), orth.codes.end(),
                             mine.codes.begin(), mine.codes.end());
    bool coiso = std::includes(mine.codes.begin(), mine.codes.end(),
                               orth.codes.begin(), orth.codes.end());
    std::vector<std::int64_t> both;
    std::set_intersection(mine.codes.begin(), mine.codes.end(), orth.codes.begin(),
                          orth.codes.end(), std::back_inserter(both));
    return {iso, coiso, both.size() == 1, iso && coiso};
}

std::vector<ZdMatrix> enumerate_symplectic_group(const SymplecticSpace& sp) {
    if (sp.mod().d() != 2 || sp.n() > 2)
        throw std::invalid_argument("symplectic group enumeration wants d = 2, n <= 2");
    const std::size_t dim = sp.dim();
    const std::size_t bits = dim * dim;
    std::vector<std::int64_t> hits = chunked_scan(
        std::int64_t{1} << bits,
        [&](std::int64_t begin, std::int64_t end, std::vector<std::int64_t>& sink) {
            for (std::int64_t idx = begin; idx < end; ++idx) {
                ZdMatrix l(dim, dim, sp.mod());
                for (std::size_t b = 0; b < bits; ++b)
                    if (idx & (std::int64_t{1} << b)) l.set(b / dim, b % dim, 1);
                if (is_symplectic_matrix(l, sp)) sink.push_back(idx);
            }
        });
    std::vector<ZdMatrix> out;
    out.reserve(hits.size());
    for (std::int64_t idx : hits) {
        ZdMatrix l(dim, dim, sp.mod());
        for (std::size_t b = 0; b < bits; ++b)
            if (idx & (std::int64_t{1} << b)) l.set(b / dim, b % dim, 1);
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<Submodule> all_submodules(const Modulus& m, std::size_t ambient) {
    std::int64_t total = checked_power(m.d(), ambient * ambient, std::int64_t{1} << 20);
    if (total > (std::int64_t{1} << 20))
        throw std::invalid_argument("all_submodules guard exceeded");
    std::map<std::vector<std::int64_t>, ZdMatrix> seen;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        ZdMatrix b(ambient, ambient, m);
        std::int64_t rest = idx;
        for (std::size_t pos = 0; pos < ambient * ambient; ++pos) {
            b.set(pos / ambient, pos % ambient, rest % m.d());
            rest /= m.d();
        }
        auto set = enumerate(Submodule(b));
        seen.emplace(std::move(set.codes), std::move(b));
    }
    std::vector<Submodule> out;
    out.reserve(seen.size());
    for (auto& [codes, basis] : seen) out.emplace_back(std::move(basis));
    return out;
}

namespace {

unsigned long long upow(std::int64_t p, long long e) {
    if (e < 0) throw std::invalid_argument("negative exponent in preimage count");
    unsigned long long out = 1;
    for (long long i = 0; i < e; ++i) out *= static_cast<unsigned long long>(p);
    return out;
}

}  // namespace

unsigned long long count_order_preimages(const std::vector<int>& r_levels,
                                         std::int64_t p, int s, int i) {
    if (static_cast<int>(r_levels.size()) != s)
        throw std::invalid_argument("r_levels must list levels 0..s-1");
    if (i < 0 || i >= s) throw std::invalid_argument("i must lie in 0..s-1");
    unsigned long long total = 0;
    for (int j = 0; j <= i; ++j) {
        unsigned long long term = 1;
        for (int k = 0; k < j; ++k)
            term *= upow(p, static_cast<long long>((s - 1) - (i - k)) * r_levels[k]);
        term *= upow(p, static_cast<long long>((s - 1) - (i - j - 1)) * r_levels[j]) -
                upow(p, static_cast<long long>((s - 1) - (i - j)) * r_levels[j]);
        for (int k = j + 1; k <= i; ++k)
            term *= upow(p, static_cast<long long>((s - 1) - (i - k - 1)) * r_levels[k]);
        total += term;
    }
    for (int l = i + 1; l <= s - 1; ++l)
        total *= upow(p, static_cast<long long>(s) * r_levels[l]);
    return total;
}

unsigned long long count_zero_preimages(const std::vector<int>& r_levels,
                                        std::int64_t p, int s) {
    if (static_cast<int>(r_levels.size()) != s)
        throw std::invalid_argument("r_levels must list levels 0..s-1");
    unsigned long long out = 1;
    for (int k = 0; k < s; ++k) out *= upow(p, static_cast<long long>(k) * r_levels[k]);
    return out;
}

unsigned long long brute_count_order_preimages(const std::vector<int>& r_levels,
                                               std::int64_t p, int s, int i) {
    if (static_cast<int>(r_levels.size()) != s)
        throw std::invalid_argument("r_levels must list levels 0..s-1");
    std::int64_t q = 1;
    for (int k = 0; k < s; ++k) q *= p;
    Modulus m(q);
    int r = std::accumulate(r_levels.begin(), r_levels.end(), 0);
    ZdMatrix diag(r, r, m);
    {
        int pos = 0;
        for (int level = 0; level < s; ++level)
            for (int c = 0; c < r_levels[level]; ++c) {
                diag.set(pos, pos, m.pow(p, level));
                ++pos;
            }
    }
    std::int64_t target = 1;
    for (int k = 0; k < s - i; ++k) target *= p;  // order p^{s-i}
    std::int64_t total = checked_power(q, static_cast<std::size_t>(r), kEnumerationGuard);
    if (total > kEnumerationGuard)
        throw std::invalid_argument("enumeration guard exceeded");
    unsigned long long count = 0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        ZdMatrix x = decode_code(idx, static_cast<std::size_t>(r), m);
        if (vector_order(diag * x) == target) ++count;
    }
    return count;
}

}  // namespace zdred::oracle
