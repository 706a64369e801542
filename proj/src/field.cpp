#include "ffec/field.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>

namespace ffec {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, nt = 1;
    std::int64_t r = std::int64_t(m), nr = std::int64_t(a % m);
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod_u64: not invertible");
    if (t < 0) t += std::int64_t(m);
    return std::uint64_t(t);
}

std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (unsigned __int128)(r)*b % m;
        b = (unsigned __int128)(b)*b % m;
        e >>= 1;
    }
    return r;
}

namespace {

// Dense F_p[x] helpers used only during field construction (the modulus
// search and the exp-table sweep run before the dlog tables exist).
using fpvec = std::vector<std::uint32_t>;

void fp_trim(fpvec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

fpvec fp_mul(const fpvec& a, const fpvec& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    fpvec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = std::uint32_t((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    fp_trim(r);
    return r;
}

// Remainder of a by monic g.
fpvec fp_rem(fpvec a, const fpvec& g, std::uint32_t p) {
    size_t dg = g.size() - 1;
    while (a.size() > dg) {
        std::uint32_t lead = a.back();
        size_t shift = a.size() - 1 - dg;
        if (lead != 0)
            for (size_t i = 0; i < dg; ++i)
                a[shift + i] = std::uint32_t((a[shift + i] + std::uint64_t(p - 1) * lead % p * g[i]) % p);
        a.pop_back();
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

fpvec fp_mulrem(const fpvec& a, const fpvec& b, const fpvec& g, std::uint32_t p) {
    return fp_rem(fp_mul(a, b, p), g, p);
}

fpvec fp_powrem(fpvec base, std::uint64_t n, const fpvec& g, std::uint32_t p) {
    fpvec r{1};
    while (n) {
        if (n & 1) r = fp_mulrem(r, base, g, p);
        base = fp_mulrem(base, base, g, p);
        n >>= 1;
    }
    return r;
}

fpvec fp_make_monic(fpvec a, std::uint32_t p) {
    if (a.empty()) return a;
    std::uint64_t s = inv_mod_u64(a.back(), p);
    for (auto& c : a) c = std::uint32_t(c * s % p);
    return a;
}

fpvec fp_gcd(fpvec a, fpvec b, std::uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        fpvec r = fp_rem(a, fp_make_monic(b, p), p);
        // fp_rem needs monic divisor; rescaling does not change the gcd.
        a = b;
        b = r;
    }
    return fp_make_monic(a, p);
}

fpvec fp_sub(fpvec a, const fpvec& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_trim(a);
    return a;
}

// Monic g of degree m >= 1: irreducible iff x^{p^m} = x mod g and
// gcd(x^{p^{m/r}} - x, g) = 1 for every prime r | m.
bool fp_irreducible(const fpvec& g, std::uint32_t p) {
    size_t m = g.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    auto pf = prime_factors(m);
    fpvec w{0, 1};  // x
    fpvec x{0, 1};
    for (size_t k = 1; k <= m; ++k) {
        w = fp_powrem(w, p, g, p);
        bool checkpoint = false;
        for (auto r : pf)
            if (k == m / r) checkpoint = true;
        if (checkpoint) {
            fpvec d = fp_gcd(fp_sub(w, x, p), g, p);
            if (!(d.size() == 1 && d[0] == 1)) return false;
        }
    }
    return w == x;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

fpvec unpack(fe_t a, std::uint32_t p, std::uint32_t e) {
    fpvec c(e, 0);
    for (std::uint32_t i = 0; i < e && a; ++i) {
        c[i] = a % p;
        a /= p;
    }
    return c;
}

fe_t pack(const fpvec& c, std::uint32_t p) {
    fe_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = fe_t(v * p + c[i]);
    return v;
}

}  // namespace

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint32_t p, std::uint32_t e,
                                               std::uint64_t seed, std::uint64_t cap) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FieldCtx: p must be prime");
    if (e < 1) throw std::invalid_argument("FieldCtx: e must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > cap) throw std::length_error("FieldCtx: p^e exceeds cap");
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->e_ = e;
    ctx->q_ = q;
    ctx->qm1_ = q - 1;
    ctx->seed_ = seed;

    if (e > 1) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(p) ^ splitmix64(std::uint64_t(e) << 32)));
        fpvec g(e + 1, 0);
        g[e] = 1;
        for (;;) {
            for (std::uint32_t i = 0; i < e; ++i) g[i] = std::uint32_t(rng() % p);
            if (fp_irreducible(g, p)) break;
        }
        ctx->modulus_ = g;
    }

    auto mul_coeff = [&](fe_t a, fe_t b) -> fe_t {
        if (e == 1) return fe_t(std::uint64_t(a) * b % p);
        fpvec r = fp_mulrem(unpack(a, p, e), unpack(b, p, e), ctx->modulus_, p);
        return pack(r, p);
    };
    auto pow_coeff = [&](fe_t a, std::uint64_t n) -> fe_t {
        fe_t r = 1;
        while (n) {
            if (n & 1) r = mul_coeff(r, a);
            a = mul_coeff(a, a);
            n >>= 1;
        }
        return r;
    };

    auto pf = prime_factors(q - 1);
    fe_t gen = 0;
    for (std::uint64_t cand = q > 2 ? 2 : 1; cand < q; ++cand) {
        bool ok = true;
        for (auto r : pf)
            if (pow_coeff(fe_t(cand), (q - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = fe_t(cand);
            break;
        }
    }
    if (gen == 0) throw std::logic_error("FieldCtx: generator search failed");
    ctx->gen_ = gen;

    ctx->exp_.resize(q - 1);
    ctx->log_.assign(q, 0);
    fe_t cur = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        ctx->exp_[k] = cur;
        ctx->log_[cur] = std::uint32_t(k);
        cur = mul_coeff(cur, gen);
    }
    if (cur != 1) throw std::logic_error("FieldCtx: generator order mismatch");
    return ctx;
}

fe_t FieldCtx::add(fe_t a, fe_t b) const {
    if (e_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    fe_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += place * s;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

fe_t FieldCtx::neg(fe_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    fe_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t c = a % p_;
        r += place * (c == 0 ? 0 : p_ - c);
        a /= p_;
        place *= p_;
    }
    return r;
}

fe_t FieldCtx::sub(fe_t a, fe_t b) const { return add(a, neg(b)); }

fe_t FieldCtx::inv(fe_t a) const {
    if (a == 0) throw std::domain_error("FieldCtx::inv: zero");
    std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : qm1_ - l];
}

fe_t FieldCtx::pow(fe_t a, std::int64_t n) const {
    if (a == 0) {
        if (n == 0) return 1;
        if (n < 0) throw std::domain_error("FieldCtx::pow: 0 to negative power");
        return 0;
    }
    std::int64_t m = std::int64_t(qm1_);
    std::int64_t k = n % m;
    if (k < 0) k += m;
    return exp_[std::uint64_t(log_[a]) * std::uint64_t(k) % qm1_];
}

std::uint64_t FieldCtx::dlog(fe_t a) const {
    if (a == 0) throw std::domain_error("FieldCtx::dlog: zero");
    return log_[a];
}

std::vector<std::uint32_t> FieldCtx::coeffs(fe_t a) const { return unpack(a, p_, e_); }

fe_t FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != e_) throw std::invalid_argument("FieldCtx::from_coeffs: wrong length");
    fe_t v = 0;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] >= p_) throw std::invalid_argument("FieldCtx::from_coeffs: entry out of range");
        v = fe_t(v * p_ + c[i]);
    }
    return v;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t e, std::uint64_t seed, std::uint64_t cap) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>, FieldPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(p, e, seed);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = FieldCtx::make(p, e, seed, cap);
    cache[key] = f;
    return f;
}

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->e() % src_->e() != 0)
        throw std::invalid_argument("Embedding: not an extension");
    ratio_ = (dst_->q() - 1) / (src_->q() - 1);

    fe_t img;
    if (src_->e() == 1) {
        img = dst_->from_prime(src_->generator());
    } else {
        // Roots of src's modulus lie in the subfield {0} u <G^ratio>; the
        // canonical root is the one with smallest packed index.
        const auto& mod = src_->modulus();
        fe_t best = 0;
        bool found = false;
        for (std::uint64_t k = 0; k < src_->q() - 1; ++k) {
            fe_t cand = dst_->exp(k * ratio_);
            fe_t v = 0;
            for (size_t i = mod.size(); i-- > 0;)
                v = dst_->add(dst_->mul(v, cand), dst_->from_prime(mod[i]));
            if (v == 0 && (!found || cand < best)) {
                best = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("Embedding: no root of modulus in dst");
        auto digits = src_->coeffs(src_->generator());
        img = 0;
        fe_t tp = 1;
        for (std::uint32_t i = 0; i < src_->e(); ++i) {
            img = dst_->add(img, dst_->mul(dst_->from_prime(digits[i]), tp));
            tp = dst_->mul(tp, best);
        }
    }
    log_image_gen_ = dst_->dlog(img);
    if (log_image_gen_ % ratio_ != 0)
        throw std::logic_error("Embedding: image generator has wrong order");
    unit_ = log_image_gen_ / ratio_;
    unit_inv_ = inv_mod_u64(unit_, src_->q() - 1);
}

fe_t Embedding::map(fe_t x) const {
    if (x == 0) return 0;
    return dst_->exp(src_->dlog(x) * log_image_gen_ % (dst_->q() - 1));
}

bool Embedding::invert(fe_t y, fe_t& out) const {
    if (y == 0) {
        out = 0;
        return true;
    }
    std::uint64_t w = dst_->dlog(y);
    if (w % ratio_ != 0) return false;
    out = src_->exp((w / ratio_) % (src_->q() - 1) * unit_inv_ % (src_->q() - 1));
    return true;
}

}  // namespace ffec
