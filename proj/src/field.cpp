#include "parab/field.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace parab {

namespace {

using Vec = std::vector<std::uint32_t>;

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) {
    // p prime, a != 0
    u64 r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

Vec pmul(const Vec& a, const Vec& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = std::uint32_t((r[i + j] + u64(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

Vec pmod(Vec a, const Vec& m, std::uint32_t p) {
    trim(a);
    u64 li = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        u64 c = a.back() * li % p;
        size_t sh = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[sh + i] = std::uint32_t((a[sh + i] + (p - c) * m[i]) % p);
        trim(a);
    }
    return a;
}

Vec psub(Vec a, const Vec& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

Vec pgcd(Vec a, Vec b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^n) mod m
Vec frob_power(const Vec& m, std::uint32_t p, int n) {
    Vec cur = pmod({0, 1}, m, p);
    for (int it = 0; it < n; ++it) {
        Vec r{1}, b = cur;
        u64 e = p;
        while (e) {
            if (e & 1) r = pmod(pmul(r, b, p), m, p);
            b = pmod(pmul(b, b, p), m, p);
            e >>= 1;
        }
        cur = r;
    }
    return cur;
}

bool irreducible(const Vec& m, std::uint32_t p) {
    int k = int(m.size()) - 1;
    if (k == 1) return true;
    Vec x{0, 1};
    if (psub(frob_power(m, p, k), pmod(x, m, p), p).size() != 0) return false;
    for (int r = 2; r <= k; ++r) {
        if (k % r || !is_prime(u64(r))) continue;
        Vec g = pgcd(m, psub(frob_power(m, p, k / r), x, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const Field& Field::get(std::uint32_t p, int k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<Field>> reg;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = reg.find(key);
    if (it != reg.end()) return *it->second;
    auto f = std::unique_ptr<Field>(new Field(p, k));
    auto& ref = *f;
    reg.emplace(key, std::move(f));
    return ref;
}

Field::Field(std::uint32_t p, int k) : p_(p), k_(k) {
    if (p == 2) throw ValidationError("p = 2 is not supported");
    if (!is_prime(p) || p > 65521) throw ValidationError("p must be an odd prime below 2^16, got " + std::to_string(p));
    if (k < 1) throw ValidationError("extension degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
        if (q_ > (u64(1) << 62) / p) throw ValidationError("field too large");
        q_ *= p;
    }
    if (k == 1) {
        mod_ = {0, 1};
        return;
    }
    // least monic irreducible, lower coefficients read as base-p digits of N
    for (u64 n = 0;; ++n) {
        Vec m(k + 1, 0);
        u64 t = n;
        for (int i = 0; i < k; ++i) {
            m[i] = std::uint32_t(t % p);
            t /= p;
        }
        m[k] = 1;
        if (m[0] == 0) continue;
        if (irreducible(m, p)) {
            mod_ = m;
            break;
        }
    }
    if (q_ <= 65536) {
        // log/exp tables from the least primitive element
        u64 order = q_ - 1;
        std::vector<u64> primes;
        u64 t = order;
        for (u64 d = 2; d * d <= t; ++d)
            if (t % d == 0) {
                primes.push_back(d);
                while (t % d == 0) t /= d;
            }
        if (t > 1) primes.push_back(t);
        u64 g = 0;
        for (u64 c = 2; c < q_; ++c) {
            bool ok = true;
            for (u64 r : primes) {
                u64 acc = 1, b = c, e = order / r;
                while (e) {
                    if (e & 1) acc = mul_slow(acc, b);
                    b = mul_slow(b, b);
                    e >>= 1;
                }
                if (acc == 1) { ok = false; break; }
            }
            if (ok) { g = c; break; }
        }
        exp_.assign(2 * order, 0);
        log_.assign(q_, 0);
        u64 cur = 1;
        for (u64 i = 0; i < order; ++i) {
            exp_[i] = cur;
            exp_[i + order] = cur;
            log_[cur] = std::uint32_t(i);
            cur = mul_slow(cur, g);
        }
    }
}

std::vector<std::uint32_t> Field::digits(u64 a) const {
    Vec d(k_, 0);
    for (int i = 0; i < k_; ++i) {
        d[i] = std::uint32_t(a % p_);
        a /= p_;
    }
    return d;
}

u64 Field::encode(const std::vector<std::uint32_t>& d) const {
    u64 v = 0;
    for (int i = int(d.size()) - 1; i >= 0; --i) v = v * p_ + d[i] % p_;
    return v;
}

u64 Field::add_slow(u64 a, u64 b) const {
    u64 r = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        u64 s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * pw;
        pw *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

u64 Field::neg_slow(u64 a) const {
    u64 r = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        u64 c = a % p_;
        r += (c ? p_ - c : 0) * pw;
        pw *= p_;
        a /= p_;
    }
    return r;
}

u64 Field::mul_slow(u64 a, u64 b) const {
    Vec x = digits(a), y = digits(b);
    std::vector<u64> r(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < k_; ++j) r[i + j] = (r[i + j] + u64(x[i]) * y[j]) % p_;
    }
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        u64 c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (int i = 0; i < k_; ++i) r[d - k_ + i] = (r[d - k_ + i] + (p_ - c) * mod_[i]) % p_;
    }
    u64 v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + r[i];
    return v;
}

u64 Field::pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 Field::inv(u64 a) const {
    if (a == 0) throw ArithmeticError("division by zero in " + name());
    if (k_ == 1) return inv_mod(a, p_);
    if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

u64 Field::from_int(i64 n) const {
    i64 r = n % i64(p_);
    if (r < 0) r += p_;
    return u64(r);
}

Fq Field::zero() const { return {this, 0}; }
Fq Field::one() const { return {this, 1}; }
Fq Field::elem(u64 code) const {
    if (code >= q_) throw ValidationError("element code out of range for " + name());
    return {this, code};
}
Fq Field::of(i64 n) const { return {this, from_int(n)}; }
Fq Field::gen() const { return k_ == 1 ? Fq{this, 0} : Fq{this, p_}; }
Fq Field::random(std::mt19937_64& rng) const {
    return {this, std::uniform_int_distribution<u64>(0, q_ - 1)(rng)};
}
std::vector<Fq> Field::elements() const {
    std::vector<Fq> out;
    out.reserve(q_);
    for (u64 v = 0; v < q_; ++v) out.emplace_back(this, v);
    return out;
}

std::string Field::name() const {
    return k_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(k_);
}

std::string Fq::str() const {
    if (!f_) return "?";
    if (f_->k() == 1) return std::to_string(v_);
    std::string s = "[";
    auto d = coords();
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

}  // namespace parab
