#include "ffec/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffec {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (a.k.get() != b.k.get()) throw std::invalid_argument("poly: field mismatch");
}

void trim(Poly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

}  // namespace

Poly poly_zero(FieldPtr k) { return Poly{std::move(k), {}}; }

Poly poly_one(FieldPtr k) { return Poly{std::move(k), {1}}; }

Poly poly_x(FieldPtr k) { return Poly{std::move(k), {0, 1}}; }

Poly poly_const(FieldPtr k, fe_t a) {
    Poly r{std::move(k), {a}};
    trim(r);
    return r;
}

Poly poly_from_coeffs(FieldPtr k, std::vector<fe_t> c) {
    for (fe_t v : c)
        if (v >= k->q()) throw std::invalid_argument("poly_from_coeffs: coefficient out of range");
    Poly r{std::move(k), std::move(c)};
    trim(r);
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.k->add(r.c[i], b.c[i]);
    trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.k->sub(r.c[i], b.c[i]);
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return poly_zero(a.k);
    Poly r{a.k, std::vector<fe_t>(a.c.size() + b.c.size() - 1, 0)};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.k->add(r.c[i + j], a.k->mul(a.c[i], b.c[j]));
    }
    return r;
}

Poly poly_scale(const Poly& a, fe_t s) {
    Poly r = a;
    for (auto& v : r.c) v = a.k->mul(v, s);
    trim(r);
    return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero");
    quo = poly_zero(a.k);
    rem = a;
    int db = b.degree();
    if (rem.degree() < db) return;
    quo.c.assign(rem.c.size() - db, 0);
    fe_t ilc = a.k->inv(b.lc());
    while (rem.degree() >= db) {
        int shift = rem.degree() - db;
        fe_t t = a.k->mul(rem.lc(), ilc);
        quo.c[shift] = t;
        for (int i = 0; i <= db; ++i)
            rem.c[shift + i] = a.k->sub(rem.c[shift + i], a.k->mul(t, b.c[i]));
        trim(rem);
        if (rem.is_zero()) break;
    }
    trim(quo);
}

Poly poly_rem(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

Poly poly_quo(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return q;
}

Poly poly_make_monic(const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return poly_scale(a, a.k->inv(a.lc()));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(a);
}

Poly poly_derivative(const Poly& a) {
    if (a.degree() < 1) return poly_zero(a.k);
    Poly r{a.k, std::vector<fe_t>(a.c.size() - 1, 0)};
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = a.k->mul(a.c[i], a.k->from_prime(std::uint32_t(i % a.k->p())));
    trim(r);
    return r;
}

fe_t poly_eval(const Poly& a, fe_t t) {
    fe_t v = 0;
    for (size_t i = a.c.size(); i-- > 0;) v = a.k->add(a.k->mul(v, t), a.c[i]);
    return v;
}

Poly poly_pow_mod(Poly base, std::uint64_t n, const Poly& mod) {
    base = poly_rem(base, mod);
    Poly r = poly_rem(poly_one(mod.k), mod);
    while (n) {
        if (n & 1) r = poly_rem(poly_mul(r, base), mod);
        base = poly_rem(poly_mul(base, base), mod);
        n >>= 1;
    }
    return r;
}

fe_t poly_resultant(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    const auto& k = f.k;
    if (f.is_zero() || g.is_zero()) return 0;
    Poly a = f, b = g;
    fe_t res = 1;
    bool flip = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) flip = !flip;
        std::swap(a, b);
    }
    while (b.degree() > 0) {
        Poly r = poly_rem(a, b);
        if (r.is_zero()) return 0;
        if ((a.degree() & 1) && (b.degree() & 1)) flip = !flip;
        res = k->mul(res, k->pow(b.lc(), a.degree() - r.degree()));
        a = std::move(b);
        b = std::move(r);
    }
    res = k->mul(res, k->pow(b.lc(), a.degree()));
    return flip ? k->neg(res) : res;
}

bool poly_canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

std::uint64_t poly_key(const Poly& a) {
    std::uint64_t key = 0;
    std::uint64_t q = a.k->q();
    for (size_t i = a.c.size(); i-- > 0;) {
        if (key > (std::uint64_t(1) << 62) / q) throw std::overflow_error("poly_key: overflow");
        key = key * q + a.c[i];
    }
    return key;
}

std::string poly_to_string(const Poly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        bool scalar = (i == 0);
        if (a.c[i] != 1 || scalar) {
            if (a.k->e() == 1)
                os << a.c[i];
            else
                os << "e" << a.c[i];
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::uint64_t monic_count(const FieldPtr& k, unsigned d) {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < d; ++i) {
        if (n > (std::uint64_t(1) << 62) / k->q()) throw std::overflow_error("monic_count: overflow");
        n *= k->q();
    }
    return n;
}

Poly monic_at(const FieldPtr& k, unsigned d, std::uint64_t idx) {
    std::vector<fe_t> c(d + 1, 0);
    c[d] = 1;
    for (unsigned i = 0; i < d; ++i) {
        c[i] = fe_t(idx % k->q());
        idx /= k->q();
    }
    if (idx != 0) throw std::out_of_range("monic_at: index out of range");
    return Poly{k, std::move(c)};
}

bool is_irreducible(const Poly& g0) {
    if (g0.is_zero()) throw std::invalid_argument("is_irreducible: zero");
    Poly g = poly_make_monic(g0);
    int m = g.degree();
    if (m < 1) return false;
    if (m == 1) return true;
    auto pf = prime_factors(std::uint64_t(m));
    Poly x = poly_x(g.k);
    Poly w = x;
    for (int k = 1; k <= m; ++k) {
        w = poly_pow_mod(w, g.k->q(), g);
        bool checkpoint = false;
        for (auto r : pf)
            if (std::uint64_t(k) == std::uint64_t(m) / r) checkpoint = true;
        if (checkpoint) {
            Poly d = poly_gcd(poly_sub(w, x), g);
            if (d.degree() != 0) return false;
        }
    }
    return w == x;
}

Factorization factor_squarefree(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_squarefree: zero");
    Factorization out;
    out.unit = f.lc();
    Poly h = poly_make_monic(f);
    if (h.degree() == 0) return out;
    Poly d0 = poly_gcd(h, poly_derivative(h));
    if (d0.degree() != 0) throw std::invalid_argument("factor_squarefree: input not squarefree");

    Poly x = poly_x(f.k);
    Poly w = poly_rem(x, h);
    unsigned d = 0;
    while (h.degree() > 0) {
        ++d;
        if (int(2 * d) > h.degree()) {
            out.factors.push_back(h);
            break;
        }
        w = poly_pow_mod(w, f.k->q(), h);
        Poly block = poly_gcd(h, poly_sub(w, x));
        if (block.degree() > 0) {
            // Every factor of the block is irreducible of degree d, so any
            // monic degree-d divisor found by trial division is a factor.
            std::uint64_t total = monic_count(f.k, d);
            for (std::uint64_t idx = 0; idx < total && block.degree() > 0; ++idx) {
                Poly cand = monic_at(f.k, d, idx);
                if (block.degree() >= int(d) && poly_rem(block, cand).is_zero()) {
                    out.factors.push_back(cand);
                    block = poly_quo(block, cand);
                    h = poly_quo(h, cand);
                }
            }
            if (block.degree() != 0) throw std::logic_error("factor_squarefree: block not exhausted");
            w = poly_rem(w, h);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), poly_canonical_less);
    return out;
}

int von_mangoldt(const Poly& h0) {
    if (h0.is_zero()) throw std::invalid_argument("von_mangoldt: zero");
    Poly h = poly_make_monic(h0);
    int m = h.degree();
    if (m == 0) return 0;
    if (m == 1) return 1;
    Poly x = poly_x(h.k);
    Poly w = poly_rem(x, h);
    for (int d = 1; d <= m; ++d) {
        w = poly_pow_mod(w, h.k->q(), h);
        Poly g = poly_gcd(h, poly_sub(w, x));
        if (g.degree() > 0) {
            if (g.degree() != d || m % d != 0) return 0;
            // h must be g^(m/d) exactly.
            Poly rest = h;
            for (int i = 0; i < m / d; ++i) {
                Poly q, r;
                poly_divmod(rest, g, q, r);
                if (!r.is_zero()) return 0;
                rest = q;
            }
            return rest.degree() == 0 ? d : 0;
        }
    }
    return 0;
}

std::string default_cache_dir() {
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::string(x) + "/ffec";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::string(h) + "/.cache/ffec";
    return ".ffec-cache";
}

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'F', 'I', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back(std::uint8_t(v >> (8 * i)));
}

bool get_u32(const std::vector<std::uint8_t>& b, size_t& pos, std::uint32_t& v) {
    if (pos + 4 > b.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[pos + i]) << (8 * i);
    pos += 4;
    return true;
}

bool get_u64(const std::vector<std::uint8_t>& b, size_t& pos, std::uint64_t& v) {
    if (pos + 8 > b.size()) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[pos + i]) << (8 * i);
    pos += 8;
    return true;
}

std::uint64_t fnv1a(const std::uint8_t* data, size_t len) {
    std::uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string resolve_cache_dir(const std::string& arg) {
    if (arg == "auto") return default_cache_dir();
    if (!arg.empty()) return arg;
    if (const char* env = std::getenv("FFEC_CACHE_DIR"); env && *env) return env;
    return "";
}

}  // namespace

IrreducibleTable::IrreducibleTable(FieldPtr k, unsigned d_max, const std::string& cache_dir)
    : k_(std::move(k)), d_max_(d_max) {
    if (d_max_ < 1) throw std::invalid_argument("IrreducibleTable: d_max must be >= 1");
    std::string dir = resolve_cache_dir(cache_dir);
    if (!dir.empty()) {
        std::ostringstream name;
        name << dir << "/irr_p" << k_->p() << "_e" << k_->e() << "_s" << k_->seed() << "_d"
             << d_max_ << ".bin";
        path_ = name.str();
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                            std::istreambuf_iterator<char>());
            if (deserialize(bytes)) {
                loaded_ = true;
                checksum_ = fnv1a(bytes.data(), bytes.size() - 8);
                return;
            }
            by_degree_.clear();
        }
    }
    build();
    auto bytes = serialize();
    checksum_ = fnv1a(bytes.data(), bytes.size() - 8);
    if (!path_.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(std::filesystem::path(path_).parent_path(), ec);
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        if (out) out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    }
}

const std::vector<Poly>& IrreducibleTable::degree(unsigned d) const {
    if (d < 1 || d > d_max_) throw std::out_of_range("IrreducibleTable::degree");
    return by_degree_[d];
}

void IrreducibleTable::build() {
    by_degree_.assign(d_max_ + 1, {});
    for (unsigned d = 1; d <= d_max_; ++d) {
        std::uint64_t total = monic_count(k_, d);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly g = monic_at(k_, d, idx);
            if (is_irreducible(g)) by_degree_[d].push_back(std::move(g));
        }
    }
}

std::vector<std::uint8_t> IrreducibleTable::serialize() const {
    std::vector<std::uint8_t> b;
    b.insert(b.end(), kMagic, kMagic + 4);
    put_u32(b, kVersion);
    put_u32(b, k_->p());
    put_u32(b, k_->e());
    put_u64(b, k_->seed());
    put_u32(b, d_max_);
    for (unsigned d = 1; d <= d_max_; ++d) {
        put_u64(b, by_degree_[d].size());
        for (const Poly& g : by_degree_[d])
            for (unsigned i = 0; i < d; ++i) put_u32(b, i < g.c.size() ? g.c[i] : 0);
    }
    put_u64(b, fnv1a(b.data(), b.size()));
    return b;
}

bool IrreducibleTable::deserialize(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 12 + 8) return false;
    if (!std::equal(kMagic, kMagic + 4, bytes.begin())) return false;
    if (fnv1a(bytes.data(), bytes.size() - 8) !=
        [&] {
            size_t pos = bytes.size() - 8;
            std::uint64_t v;
            get_u64(bytes, pos, v);
            return v;
        }())
        return false;
    size_t pos = 4;
    std::uint32_t version, p, e, dmax;
    std::uint64_t seed;
    if (!get_u32(bytes, pos, version) || version != kVersion) return false;
    if (!get_u32(bytes, pos, p) || p != k_->p()) return false;
    if (!get_u32(bytes, pos, e) || e != k_->e()) return false;
    if (!get_u64(bytes, pos, seed) || seed != k_->seed()) return false;
    if (!get_u32(bytes, pos, dmax) || dmax != d_max_) return false;
    by_degree_.assign(d_max_ + 1, {});
    for (unsigned d = 1; d <= d_max_; ++d) {
        std::uint64_t count;
        if (!get_u64(bytes, pos, count)) return false;
        by_degree_[d].reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::vector<fe_t> c(d + 1, 0);
            c[d] = 1;
            for (unsigned j = 0; j < d; ++j) {
                std::uint32_t v;
                if (!get_u32(bytes, pos, v) || v >= k_->q()) return false;
                c[j] = v;
            }
            by_degree_[d].push_back(Poly{k_, std::move(c)});
        }
    }
    return pos + 8 == bytes.size();
}

std::map<Poly, std::int64_t, PolyLess> psi_mass(const Poly& f, unsigned m,
                                                const IrreducibleTable& irr) {
    if (f.degree() < 1) throw std::invalid_argument("psi_mass: modulus must have degree >= 1");
    if (m >= 1 && irr.d_max() < m) throw std::invalid_argument("psi_mass: table too small");
    std::map<Poly, std::int64_t, PolyLess> out;
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        for (const Poly& p : irr.degree(d)) {
            if (poly_rem(f, p).is_zero()) continue;
            Poly r = poly_pow_mod(p, m / d, f);
            out[r] += d;
        }
    }
    return out;
}

std::map<Poly, std::int64_t, PolyLess> psi_mass(const Poly& f, unsigned m) {
    IrreducibleTable irr(f.k, m >= 1 ? m : 1, "");
    return psi_mass(f, m, irr);
}

}  // namespace ffec
