#include "parab/roots.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "parab/matrix.hpp"

namespace parab {

namespace {

// p-th root of a polynomial whose exponents are all divisible by p
Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    Poly g = f.unfrob();
    std::vector<u64> c = g.codes();
    u64 e = F.q() / F.p();
    for (auto& v : c) v = F.pow(v, e);
    return Poly(F, std::move(c));
}

void edf(const Poly& f, std::mt19937_64& rng, std::vector<Fq>& out) {
    const Field& F = f.field();
    if (f.deg() == 1) {
        out.push_back(-f.coeff(0) / f.coeff(1));
        return;
    }
    u64 e = (F.q() - 1) / 2;
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<u64> c(f.deg(), 0);
        for (auto& v : c) v = F.random(rng).code();
        Poly a(F, c);
        if (a.deg() < 1) continue;
        Poly b = powmod(a, e, f) - Poly(F, {1});
        Poly g = gcd(b, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, rng, out);
            edf(f.exact_div(g), rng, out);
            return;
        }
    }
    throw ArithmeticError("equal-degree splitting failed");
}

std::mutex emb_mu;
std::map<std::pair<const Field*, const Field*>, u64> emb_cache;

Fq embedding_image_of_gen(const Field& small, const Field& big) {
    {
        std::lock_guard<std::mutex> lock(emb_mu);
        auto it = emb_cache.find({&small, &big});
        if (it != emb_cache.end()) return big.elem(it->second);
    }
    std::vector<u64> m;
    for (auto c : small.modulus()) m.push_back(c);
    auto roots = split_roots(Poly(big, m));
    Fq r = *std::min_element(roots.begin(), roots.end());
    std::lock_guard<std::mutex> lock(emb_mu);
    emb_cache[{&small, &big}] = r.code();
    return r;
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& f) {
    if (f.is_zero()) throw ValidationError("square-free factorization of zero");
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly m = f.monic();
    if (m.deg() == 0) return out;
    Poly c = gcd(m, m.derivative());
    Poly w = m.exact_div(c);
    int i = 1;
    while (w.deg() > 0) {
        Poly y = gcd(w, c);
        Poly z = w.exact_div(y);
        if (z.deg() > 0) out.emplace_back(z, i);
        ++i;
        w = y;
        c = c.exact_div(y);
    }
    if (c.deg() > 0) {
        for (auto& [g, mult] : squarefree_factorization(pth_root(c))) out.emplace_back(g, mult * int(F.p()));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    // merge equal multiplicities coming from the recursive branch
    std::vector<std::pair<Poly, int>> merged;
    for (auto& pr : out) {
        if (!merged.empty() && merged.back().second == pr.second) merged.back().first = merged.back().first * pr.first;
        else merged.push_back(pr);
    }
    return merged;
}

std::vector<std::pair<Poly, int>> distinct_degree_factorization(const Poly& f, int max_degree) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f.monic();
    Poly xq = Poly::x(F) % rest;
    for (int d = 1; d <= max_degree && rest.deg() >= d; ++d) {
        xq = powmod(xq, F.q(), rest);
        Poly g = gcd(xq - Poly::x(F), rest);
        if (g.deg() > 0) {
            out.emplace_back(g, d);
            rest = rest.exact_div(g);
            xq = xq % rest;
        }
    }
    return out;
}

std::vector<Fq> split_roots(const Poly& f) {
    std::mt19937_64 rng(0x5eed + f.deg());
    std::vector<Fq> out;
    if (f.deg() < 1) return out;
    edf(f.monic(), rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

Fq embed(const Fq& a, const Field& big) {
    const Field& small = a.field();
    if (&small == &big) return a;
    if (small.p() != big.p() || big.k() % small.k()) throw ArithmeticError("no embedding " + small.name() + " -> " + big.name());
    if (small.k() == 1) return big.elem(a.code());
    Fq r = embedding_image_of_gen(small, big);
    auto d = a.coords();
    Fq acc = big.zero();
    for (int i = int(d.size()) - 1; i >= 0; --i) acc = acc * r + big.of(d[i]);
    return acc;
}

Poly embed(const Poly& f, const Field& big) {
    std::vector<u64> c;
    for (int i = 0; i <= f.deg(); ++i) c.push_back(embed(f.coeff(i), big).code());
    return Poly(big, std::move(c));
}

Fq restrict_to(const Fq& a, const Field& small) {
    const Field& big = a.field();
    if (&small == &big) return a;
    if (small.k() == 1) {
        if (!a.in_prime_field()) throw ArithmeticError("element not in the prime field");
        return small.elem(a.code());
    }
    // solve sum c_i r^i = a over F_p
    const Field& fp = Field::get(big.p(), 1);
    Fq r = embedding_image_of_gen(small, big);
    int k = small.k(), K = big.k();
    std::vector<std::vector<u64>> rows(K, std::vector<u64>(k, 0));
    Fq pw = big.one();
    for (int i = 0; i < k; ++i) {
        auto d = pw.coords();
        for (int j = 0; j < K; ++j) rows[j][i] = d[j];
        pw = pw * r;
    }
    std::vector<u64> rhs;
    for (auto d : a.coords()) rhs.push_back(d);
    std::vector<u64> sol;
    if (!solve(fp, rows, rhs, k, sol)) throw ArithmeticError("element not in subfield " + small.name());
    std::vector<std::uint32_t> dig(sol.begin(), sol.end());
    return small.elem(small.encode(dig));
}

std::vector<Root> poly_roots_with_multiplicity(const Poly& f, int max_ext_degree) {
    if (f.is_zero()) throw ValidationError("roots of the zero polynomial");
    if (max_ext_degree < 1) throw ValidationError("max_ext_degree must be >= 1");
    const Field& F = f.field();
    std::vector<Root> out;
    for (auto& [g, mult] : squarefree_factorization(f)) {
        for (auto& [h, d] : distinct_degree_factorization(g, max_ext_degree)) {
            const Field& big = Field::get(F.p(), F.k() * d);
            for (const Fq& r : split_roots(embed(h, big))) out.push_back({r, mult, d});
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.value.code() < b.value.code();
    });
    return out;
}

}  // namespace parab
