#include "parab/suites.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "parab/samples.hpp"
#include "parab/serialize.hpp"

namespace parab {

void SuiteResult::check(bool cond, const std::string& what) {
    ++cases;
    if (!cond) failures.push_back(what);
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs fn, turning an exception into a recorded failure.
template <class Fn>
void guarded(SuiteResult& r, const std::string& what, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        ++r.cases;
        r.failures.push_back(what + ": " + e.what());
    }
}

template <class Fn>
SuiteResult timed(const std::string& name, Fn&& body) {
    SuiteResult r;
    r.name = name;
    auto t0 = Clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::string tag(std::uint32_t p, int it) {
    return "p=" + std::to_string(p) + " #" + std::to_string(it);
}

Rng make_rng(const SuiteOptions& o, std::uint64_t salt) { return Rng(o.seed * 0x9E3779B97F4A7C15ULL + salt); }

Fq random_lambda0(Rng& rng, const Field& f) {
    Fq a = f.random(rng);
    while (a.is_zero() || a.is_one()) a = f.random(rng);
    return a;
}

Fq random_nonzero(Rng& rng, const Field& f) {
    Fq a = f.random(rng);
    while (a.is_zero()) a = f.random(rng);
    return a;
}

bool nilpotent(const FqMat& R) {
    FqMat P = R;
    for (int i = 1; i < R.rows(); ++i) P = P * R;
    return P.is_zero();
}

// lambda0 values of the sweeps: all of F_p minus {0, 1}, plus three from F_{p^2} minus F_p
std::vector<Fq> sweep_lambda0(Rng& rng, std::uint32_t p) {
    std::vector<Fq> out;
    const Field& f = Field::get(p);
    for (const auto& a : f.elements())
        if (!a.is_zero() && !a.is_one()) out.push_back(a);
    const Field& f2 = Field::get(p, 2);
    std::vector<Fq> ext;
    while (ext.size() < 3) {
        Fq a = f2.random(rng);
        if (a.in_prime_field() || std::find(ext.begin(), ext.end(), a) != ext.end()) continue;
        ext.push_back(a);
    }
    out.insert(out.end(), ext.begin(), ext.end());
    return out;
}

// the (p, lambda0) cells shared by the sweeps
std::vector<std::pair<std::uint32_t, std::vector<Fq>>> sweep_cells(const SuiteOptions& o) {
    Rng rng = make_rng(o, 6);
    std::vector<std::pair<std::uint32_t, std::vector<Fq>>> out;
    for (auto p : o.sweep_primes) out.emplace_back(p, sweep_lambda0(rng, p));
    return out;
}

int coprime_cover_degree(int candidate, std::uint32_t p) {
    while (candidate % int(p) == 0) ++candidate;
    return candidate;
}

// --- two-chart cover with the divisor point 1 on the overlap -----------------------

struct GmSetup {
    Cover cover;
    Divisor divisor;
};

GmSetup gm_cover(const Field& f) {
    GmSetup g;
    g.cover.field = &f;
    g.cover.charts.emplace_back("V0", f, std::vector<PointP1>{PointP1::infinity(f)});
    g.cover.charts.emplace_back("V1", f, std::vector<PointP1>{PointP1::finite(f.zero())});
    g.divisor = Divisor({PointP1::finite(f.one())});
    return g;
}

RatFn random_laurent(Rng& rng, const Field& f, int m) {
    RatFn s = RatFn::zero(f), x = RatFn::x(f);
    for (int k = -m; k <= m; ++k) s += x.pow(k) * f.random(rng);
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------------

SuiteResult suite_arith(const SuiteOptions& o) {
    return timed("arith", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 1);
        for (auto p : o.primes)
            for (int k : {1, 2}) {
                const Field& f = Field::get(p, k);
                for (int it = 0; it < o.instances; ++it) {
                    std::string t = tag(p, it) + " k=" + std::to_string(k);
                    Fq a = f.random(rng), b = f.random(rng), c = f.random(rng);
                    r.check((a + b) * c == a * c + b * c && (a * b) * c == a * (b * c), t + " field axioms");
                    if (!a.is_zero()) r.check(a * a.inv() == f.one(), t + " inverse");
                    Wp2Elem w = wp2_from_witt(a, b);
                    auto [w0, w1] = w.witt();
                    r.check(w0 == a && w1 == b && w.reduce() == a, t + " witt roundtrip");
                    r.check(Wp2Elem::teichmuller(a * b) == Wp2Elem::teichmuller(a) * Wp2Elem::teichmuller(b),
                            t + " Teichmuller multiplicativity");
                }
            }
        // root finding against a brute-force scan of F_{p^2}
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            const Field& f2 = Field::get(p, 2);
            for (int it = 0; it < o.instances; ++it) {
                int d = 1 + it % 4;
                std::vector<u64> c(d + 1);
                for (auto& v : c) v = f.random(rng).code();
                c[d] = 1;
                Poly P(f, c);
                std::map<u64, int> brute;
                Poly P2 = embed(P, f2);
                for (const auto& z : f2.elements())
                    if (int m = P2.order_at(z); m > 0) brute[z.code()] = m;
                std::map<u64, int> found;
                for (const auto& root : poly_roots_with_multiplicity(P, 2)) {
                    Fq z = root.degree == 1 ? embed(root.value, f2) : root.value;
                    found[z.code()] += root.multiplicity;
                }
                r.check(found == brute, tag(p, it) + " roots of " + P.str());
            }
        }
        // p alpha split into integer and fractional part
        for (auto p : o.primes)
            for (int it = 0; it < o.instances; ++it) {
                Rational a = random_weight(rng, p);
                auto [n, w] = frac_int_parts(a * Rational(p), p);
                r.check(Rational(n) + w.value() == a * Rational(p) && w.value() >= Rational(0) &&
                            w.value() < Rational(1),
                        tag(p, it) + " frac_int_parts of p*" + a.str());
            }
    });
}

SuiteResult suite_p1(const SuiteOptions& o) {
    return timed("p1", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 2);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            for (int it = 0; it < o.instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t, [&] {
                    StandardCover sc = standard_cover_4pts(random_lambda0(rng, f));
                    int ell = 2 + it % 5;
                    CechCocycle c{-ell, random_overlap_function(rng, sc, 2, 3)};
                    auto a = h1_reduce(sc, c), b = h1_reduce_oracle(sc, c);
                    r.check(a == b, t + " h1_reduce vs linear-system oracle");
                    // reduce the reconstructed representative again
                    RatFn rep = RatFn::zero(f), tau = RatFn::x(f) / (RatFn::x(f) - RatFn::one(f));
                    for (int j = 1; j < ell; ++j) rep += tau.pow(j) * a[j - 1];
                    r.check(h1_reduce(sc, {-ell, rep}) == a, t + " h1_reduce idempotent");
                    FqMat A = serre_pairing_matrix(sc, ell);
                    auto s = serre_coordinates(sc, c);
                    bool eq = true;
                    for (int i = 0; i < ell - 1; ++i) {
                        Fq v = f.zero();
                        for (int j = 0; j < ell - 1; ++j) v += A(i, j) * a[j];
                        eq = eq && v == s[i];
                    }
                    r.check(eq, t + " residue pairing factors through h1_reduce");
                    r.check(h1_dimension_by_rank(sc, ell) == ell - 1, t + " dim H^1(O(-l)) = l - 1");
                    int l0 = it % 5 - 1;
                    auto basis = h0_basis(f, l0);
                    bool reg = int(basis.size()) == std::max(l0 + 1, 0);
                    for (const auto& b0 : basis)
                        reg = reg && sc.cover.charts[0].is_regular(b0) &&
                              sc.cover.charts[1].is_regular(transition_scalar(f, -l0) * b0);
                    r.check(reg, t + " h0 basis of O(" + std::to_string(l0) + ")");
                });
            }
        }
    });
}

SuiteResult suite_algebra(const SuiteOptions& o) {
    return timed("algebra", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 3);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            for (int it = 0; it < o.algebra_instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t, [&] {
                    StandardCover sc = standard_cover_4pts(random_lambda0(rng, f));
                    int r1 = 1 + it % 2, r2 = 1 + (it / 2) % 2;
                    ParaBundle V = random_standard_bundle(rng, sc, r1, random_weights(rng, p, 4, r1));
                    ParaBundle W = random_standard_bundle(rng, sc, r2, random_weights(rng, p, 4, r2));
                    r.check(validate_bundle(V).ok, t + " random bundle validates");
                    ParaBundle VW = tensor(V, W);
                    r.check(validate_bundle(VW).ok, t + " tensor validates");
                    r.check(para_degree(VW) == Rational(r2) * para_degree(V) + Rational(r1) * para_degree(W),
                            t + " pardeg additivity");
                    ParaBundle Vd = hom_dual(V);
                    r.check(validate_bundle(Vd).ok, t + " dual validates");
                    r.check(para_degree(Vd) == -para_degree(V), t + " pardeg duality");
                    r.check(weights_from_snapshots(V) == V.weights, t + " jump set equals weights");
                    r.check(degree(filtration_snapshot(V, Rational(0))) == underlying_degree(V), t + " V_0 = V");
                    if (it % 10 == 0) {
                        r.check(find_bundle_isomorphism(hom_dual(Vd), V).has_value(), t + " double dual");
                        r.check(find_bundle_isomorphism(VW, tensor(W, V)).has_value(), t + " tensor commutes");
                    }
                });
                // divisibility on the overlap: validate against the entry values at the point 1
                guarded(r, t + " divisibility", [&] {
                    GmSetup g = gm_cover(f);
                    std::vector<std::vector<Rational>> w{{random_weight(rng, p), random_weight(rng, p)}};
                    RatFn x = RatFn::x(f), xm1 = x - RatFn::one(f);
                    RatFn gg = random_laurent(rng, f, 1), hh = random_laurent(rng, f, 1);
                    if (rng() % 2) gg = gg * xm1;
                    if (rng() % 2) hh = hh * xm1;
                    RatFn d1 = x.pow(int(rng() % 3) - 1) * random_nonzero(rng, f), d2 = x.pow(int(rng() % 3) - 1) * random_nonzero(rng, f);
                    RMat E(2, 2, RatFn::zero(f));
                    E(0, 0) = d1 + gg * d2 * hh;
                    E(0, 1) = gg * d2;
                    E(1, 0) = d2 * hh;
                    E(1, 1) = d2;
                    bool expect = true;
                    for (int l = 0; l < 2; ++l)
                        for (int m = 0; m < 2; ++m)
                            if (w[0][l] > w[0][m] && !E(l, m).eval(f.one()).is_zero()) expect = false;
                    ParaBundle V = make_bundle(g.cover, g.divisor, 2, w, {rmat_identity(f, 2), E});
                    r.check(validate_bundle(V).ok == expect, t + " divisibility verdict");
                    // rank one: any unit transition, parabolic transition of order 0
                    ParaBundle L = make_bundle(g.cover, g.divisor, 1, {{random_weight(rng, p)}},
                                               {rmat_identity(f, 1), RMat(1, 1, d1)});
                    auto pt = parabolic_transition(L, 0, 1);
                    r.check(validate_bundle(L).ok && formal_order(L, pt[0][0], 0) == Rational(0),
                            t + " rank-1 parabolic transition");
                });
                // morphisms of parabolic line bundles on the affine line
                guarded(r, t + " morphism", [&] {
                    AffineSetup X = affine_line(f);
                    Rational a = random_weight(rng, p), b = random_weight(rng, p);
                    int k = int(rng() % 2);
                    ParaBundle V = trivial_bundle(X.cover, X.divisor, 1, {{a}});
                    ParaBundle W = trivial_bundle(X.cover, X.divisor, 1, {{b}});
                    RatFn u = RatFn::x(f).pow(k) * (RatFn::constant(random_nonzero(rng, f)) + RatFn::x(f) * f.random(rng));
                    bool expect = Rational(k) + b - a >= Rational(0);
                    r.check(validate_morphism(ParaMorphism{{RMat(1, 1, u)}}, V, W).ok == expect,
                            t + " morphism verdict " + a.str() + " -> " + b.str() + " k=" + std::to_string(k));
                });
            }
        }
    });
}

SuiteResult suite_serialize(const SuiteOptions& o) {
    return timed("serialize", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 4);
        for (auto p : o.primes)
            for (int it = 0; it < o.instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t, [&] {
                    const Field& f = Field::get(p, 1 + it % 2);
                    StandardCover sc = standard_cover_4pts(random_lambda0(rng, f));
                    int rk = 1 + it % 2;
                    LambdaConn H = random_nilpotent_higgs(rng, sc, rk, random_weights(rng, p, 4, rk));
                    json j = json::parse(to_json(H).dump());
                    r.check(same_data(conn_from_json(j), H), t + " Higgs JSON roundtrip");
                    r.check(same_data(bundle_from_json(json::parse(to_json(H.bundle).dump())), H.bundle),
                            t + " bundle JSON roundtrip");
                    std::vector<Rational> w;
                    for (int l = 0; l < rk; ++l) w.push_back(random_weight(rng, p));
                    LambdaConn A = random_affine_conn(rng, f, rk, w, f.random(rng));
                    r.check(same_data(conn_from_json(json::parse(to_json(A).dump())), A),
                            t + " affine connection JSON roundtrip");
                });
            }
    });
}

SuiteResult suite_connections(const SuiteOptions& o) {
    return timed("connections", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 5);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            for (int it = 0; it < o.instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t + " frobenius pullback", [&] {
                    StandardCover sc = standard_cover_4pts(random_lambda0(rng, f));
                    int rk = 1 + it % 2;
                    auto w = random_weights(rng, p, 4, rk);
                    ParaBundle V = random_standard_bundle(rng, sc, rk, w);
                    LambdaConn C = frobenius_pullback(V);
                    r.check(validate_conn(C).ok, t + " F*V validates");
                    r.check(p_curvature_vanishes(C), t + " p-curvature of F*V vanishes");
                    r.check(classify(C) != ResidueClass::neither && adjusted_by_eigenvalues(C),
                            t + " F*V is adjusted");
                    bool res = true, wts = true;
                    for (int d = 0; d < 4; ++d) {
                        FqMat R = ordinary_residue(C, d);
                        for (int l = 0; l < rk; ++l) {
                            Rational frac = (w[d][l] * Rational(p)).frac();
                            wts = wts && C.bundle.weights[d][l] == frac;
                            for (int m = 0; m < rk; ++m)
                                res = res && R(l, m) == (l == m ? frac.to_field(f) : f.zero());
                        }
                    }
                    r.check(wts, t + " F*V weights {p alpha}");
                    r.check(res, t + " F*V residue diag({p alpha})");
                });
                guarded(r, t + " residue classes", [&] {
                    int rk = 1 + it % 3;
                    std::vector<Rational> w;
                    for (int l = 0; l < rk; ++l) w.push_back(it % 2 ? random_weight(rng, p) : Rational(int(rng() % 2), 2));
                    Fq lam = f.random(rng);
                    LambdaConn C = random_affine_conn(rng, f, rk, w, lam);
                    RatFn xi = RatFn::x(f).inv();
                    // residue part: lambda alpha on the diagonal, strictly upper inside equal weights
                    for (int l = 0; l < rk; ++l)
                        for (int m = 0; m < rk; ++m) {
                            RatFn poly = C.conn[0](l, m) - xi * C.conn[0](l, m).residue(f.zero());
                            Fq c = f.zero();
                            if (l == m) c = lam * w[l].to_field(f);
                            else if (w[l] < w[m] || (w[l] == w[m] && l < m)) c = f.random(rng);
                            C.conn[0](l, m) = poly + xi * c;
                        }
                    r.check(validate_conn(C).ok, t + " adjusted sample validates");
                    bool strong = true, adj = true;
                    FqMat R = parabolic_residue(C, 0);
                    strong = R.is_zero();
                    adj = nilpotent(R);
                    ResidueClass cls = classify(C);
                    r.check(adj && cls == (strong ? ResidueClass::strong : ResidueClass::adjusted),
                            t + " classify on an adjusted sample");
                    if (adjusted_by_eigenvalues(C) != adj)
                        r.notes.push_back(t + ": eigenvalue form and nilpotent form disagree");
                    // an eigenvalue shift by one breaks it
                    LambdaConn D = C;
                    D.conn[0](0, 0) = D.conn[0](0, 0) + xi;
                    r.check(classify(D) == ResidueClass::neither, t + " shifted residue is neither");
                });
                guarded(r, t + " p-curvature", [&] {
                    const Field& f2 = Field::get(p, 2);
                    AffineSetup X = affine_line(f2);
                    Fq c = f2.random(rng);
                    LambdaConn C = zero_conn(trivial_bundle(X.cover, X.divisor, 1, {{Rational(0)}}), f2.one());
                    C.conn[0](0, 0) = RatFn::x(f2).inv() * c;
                    r.check(p_curvature(C, 0)(0, 0) == RatFn::constant(c.pow(p) - c), t + " psi(x d/dx) = c^p - c");
                });
                guarded(r, t + " cyclic", [&] {
                    int N = coprime_cover_degree(2 + it % 3, p);
                    int rk = 1 + it % 2;
                    std::vector<Rational> w;
                    for (int l = 0; l < rk; ++l) w.push_back(random_weight(rng, p));
                    Fq lam = f.random(rng);
                    LambdaConn H = random_affine_conn(rng, f, rk, w, lam);
                    LambdaConn up = pullback_cyclic(H, N), down = pushforward_cyclic(H, N);
                    r.check(validate_conn(up).ok && validate_conn(down).ok, t + " cyclic functors validate");
                    Rational sum(0), expect(0);
                    for (const auto& a : down.bundle.weights[0]) sum += a;
                    for (const auto& a : w) expect += a + Rational(N - 1, 2);
                    r.check(sum == expect, t + " pushforward weight sum");
                    AffineSetup X = affine_line(f);
                    LambdaConn O = zero_conn(trivial_bundle(X.cover, X.divisor, 1, {{Rational(0)}}), lam);
                    r.check(find_isomorphism(pushforward_cyclic(up, N), tensor(H, pushforward_cyclic(O, N))).has_value(),
                            t + " projection formula N=" + std::to_string(N));
                });
            }
        }
    });
}

// --- Delta, det, roots, DI ----------------------------------------------------------

SuiteResult suite_delta(const SuiteOptions& o) {
    return timed("delta", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 13);
        for (const auto& [p, l0s] : sweep_cells(o))
            for (const auto& l0 : l0s) {
                const Field& f = l0.field();
                for (const auto& l1 : {f.zero(), f.one(), f.random(rng)}) {
                    std::string t = "p=" + std::to_string(p) + " l0=" + l0.str() + " l1=" + l1.str();
                    guarded(r, t, [&] {
                        FrobLift F = frobenius_lifts_4pts(wp2_from_witt(l0, l1));
                        FqMat D = boundary_delta(legendre_family(l0.frob()), deligne_illusie(F));
                        r.check(D == delta_closed_form(p, l0, l1), t + " boundary map equals closed form");
                    });
                }
            }
    });
}

SuiteResult suite_det(const SuiteOptions& o) {
    return timed("det", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 14);
        for (const auto& [p, l0s] : sweep_cells(o))
            for (const auto& l0 : l0s) {
                std::string t = "p=" + std::to_string(p) + " l0=" + l0.str();
                guarded(r, t, [&] {
                    const Field& f = l0.field();
                    Poly d = det_poly_lambda1(p, l0);
                    r.check(d.deg() == int(p) && d.lc().is_one(), t + " monic of degree p");
                    r.check(d.coeff(0) == delta_closed_form_constant(p, l0).det(), t + " constant term = det Delta0");
                    // evaluation oracle: Gaussian-elimination determinant
                    const Field& f2 = Field::get(p, 2 * f.k());
                    for (int s = 0; s < 3; ++s) {
                        Fq l1 = f2.random(rng);
                        r.check(embed(d, f2).eval(l1) == delta_closed_form(p, embed(l0, f2), l1).det(),
                                t + " det(lambda1) at " + l1.str());
                    }
                });
            }
    });
}

SuiteResult suite_roots(const SuiteOptions& o) {
    return timed("roots", [&](SuiteResult& r) {
        for (const auto& [p, l0s] : sweep_cells(o))
            for (const auto& l0 : l0s) {
                std::string t = "p=" + std::to_string(p) + " l0=" + l0.str();
                guarded(r, t, [&] {
                    RootTable rt = periodicity_roots(p, l0, 0);
                    r.check(rt.total_multiplicity == int(p), t + " total multiplicity p");
                    int sum = 0, maxdeg = 1;
                    for (auto [deg, mult] : rt.factors) {
                        sum += deg * mult;
                        maxdeg = std::max(maxdeg, deg);
                    }
                    r.check(sum == int(p), t + " factor degrees sum to p");
                    r.notes.push_back(t + ": distinct " + std::to_string(rt.distinct_count) + ", total " +
                                      std::to_string(rt.total_multiplicity));
                    if (maxdeg <= 3 || p <= 5) {
                        RootTable full = periodicity_roots(p, l0, maxdeg);
                        r.check(full.found_multiplicity == int(p), t + " listed roots account for p");
                        bool vanish = true;
                        for (const auto& root : full.roots)
                            vanish = vanish && embed(full.det, root.value.field()).eval(root.value).is_zero();
                        r.check(vanish, t + " listed roots are roots");
                    }
                });
            }
    });
}

SuiteResult suite_di(const SuiteOptions& o) {
    return timed("di", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 7);
        for (auto p : o.sweep_primes) {
            const Field& f = Field::get(p);
            for (const auto& l0 : f.elements()) {
                if (l0.is_zero() || l0.is_one()) continue;
                for (const auto& l1 : f.elements()) {
                    std::string t = "p=" + std::to_string(p) + " l0=" + l0.str() + " l1=" + l1.str();
                    guarded(r, t, [&] {
                        Wp2Elem lam = wp2_from_witt(l0, l1);
                        DICocycle k = deligne_illusie(frobenius_lifts_4pts(lam));
                        r.check(k.h[0][1] == di_closed_form(lam), t + " W2 computation equals closed form");
                        r.check(k.h[1][0] == -k.h[0][1], t + " antisymmetry");
                    });
                }
            }
            // a few lambda0 off the prime field
            const Field& f2 = Field::get(p, 2);
            for (int s = 0; s < 3; ++s) {
                Fq l0 = random_lambda0(rng, f2), l1 = f2.random(rng);
                std::string t = "p=" + std::to_string(p) + " l0=" + l0.str() + " l1=" + l1.str();
                guarded(r, t, [&] {
                    Wp2Elem lam = wp2_from_witt(l0, l1);
                    r.check(deligne_illusie(frobenius_lifts_4pts(lam)).h[0][1] == di_closed_form(lam),
                            t + " W2 computation equals closed form");
                });
            }
        }
    });
}

// --- Cartier ------------------------------------------------------------------------

SuiteResult suite_cartier(const SuiteOptions& o) {
    return timed("cartier", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 8);
        for (auto p : o.primes) {
            for (int it = 0; it < o.instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t, [&] {
                    const Field& f = Field::get(p, it % 4 == 3 ? 2 : 1);
                    Fq l0 = random_lambda0(rng, f), l1 = f.random(rng);
                    FrobLift F = frobenius_lifts_4pts(wp2_from_witt(l0, l1));
                    StandardCover sc = standard_cover_4pts(l0.frob());
                    int rk = 1 + it % 2;
                    auto w = it % 3 == 0 ? std::vector<std::vector<Rational>>(4, std::vector<Rational>(rk))
                                         : random_weights(rng, p, 4, rk);
                    LambdaConn H = random_nilpotent_higgs(rng, sc, rk, w);
                    LambdaConn C = inverse_cartier(H, F);
                    r.check(validate_conn(C).ok, t + " C^-1 validates");
                    r.check(classify(C) != ResidueClass::neither, t + " C^-1 has nilpotent parabolic residues");
                    auto n = frobenius_twist_exponents(H.bundle);
                    bool nil = true, matches = true;
                    for (int i = 0; i < C.bundle.charts(); ++i) {
                        RMat psi = p_curvature_dx(C, i);
                        nil = nil && (psi * psi).is_zero();
                        RMat T = C.bundle.section_diag(i, [&](int d, int l) { return n[d][l]; });
                        matches = matches && psi == -(T.inverse() * rmat_subs_power(H.conn[i], int(p)) * T);
                    }
                    r.check(nil, t + " psi^2 = 0");
                    r.check(matches, t + " psi = -F*theta");
                    LambdaConn C2 = exp_twist(C, F);
                    bool par = true;
                    for (int i = 0; i < C.bundle.charts(); ++i) par = par && is_parallel(p_curvature_dx(C, i), C2.conn[i]);
                    r.check(par, t + " psi parallel under the twisted connection");
                    r.check(p_curvature_vanishes(C2), t + " twisted connection has vanishing p-curvature");
                    LambdaConn Hb = cartier(C, F);
                    r.check(validate_conn(Hb).ok && Hb.lambda.is_zero(), t + " C validates");
                    r.check(find_isomorphism(Hb, H).has_value(), t + " C(C^-1(E)) = E");
                    r.check(find_isomorphism(inverse_cartier(Hb, F), C).has_value(), t + " C^-1(C(H)) = H");
                    if (rk == 2 && !H.conn[0](0, 1).is_zero())
                        r.check(!find_isomorphism(Hb, zero_conn(H.bundle, f.zero())).has_value(),
                                t + " isomorphism search separates theta from 0");
                });
            }
            // synthetic three-chart cover of A^1: cocycle of the exponential twist
            const Field& f = Field::get(p);
            for (int it = 0; it < std::max(3, o.instances / 4); ++it) {
                std::string t = tag(p, it) + " three charts";
                guarded(r, t, [&] {
                    std::vector<Fq> centers{f.of(0), f.of(1), f.of(2)};
                    Cover cov = principal_open_cover(f, centers);
                    std::vector<Wp2Elem> lifts;
                    for (const auto& c : centers) lifts.push_back(wp2_from_witt(c, f.random(rng)));
                    FrobLift F = translate_lifts(cov, lifts);
                    DICocycle k = deligne_illusie(F);
                    bool coc = true;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c) coc = coc && k.h[a][b] + k.h[b][c] == k.h[a][c];
                    r.check(coc, t + " h_ij + h_jk = h_ik");
                    LambdaConn H = zero_conn(trivial_bundle(cov.twist(), Divisor{}, 2, {}), f.zero());
                    RatFn th = RatFn::zero(f);
                    for (int e = 0; e <= 2; ++e) th += RatFn::x(f).pow(e) * f.random(rng);
                    for (auto& M : H.conn) M(0, 1) = th;
                    RMat A = H.conn[0];
                    r.check(truncated_exp(A) == rmat_identity(f, 2) + A, t + " exp(A) = 1 + A when A^2 = 0");
                    LambdaConn C = inverse_cartier(H, F);
                    r.check(validate_conn(C).ok, t + " exponential twist satisfies the cocycle condition");
                    if (!th.is_zero()) {
                        LambdaConn B = C;
                        B.bundle.trans[0][1] = B.bundle.trans[0][1] * truncated_exp(A);
                        r.check(!validate_bundle(B.bundle).ok, t + " a broken glueing is rejected");
                    }
                });
            }
        }
    });
}

SuiteResult suite_descent(const SuiteOptions& o) {
    return timed("descent", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 9);
        for (auto p : o.primes)
            for (int it = 0; it < o.instances; ++it) {
                std::string t = tag(p, it);
                guarded(r, t, [&] {
                    const Field& f = Field::get(p, it % 4 == 3 ? 2 : 1);
                    StandardCover sc = standard_cover_4pts(random_lambda0(rng, f));
                    int rk = 1 + it % 2;
                    ParaBundle V = random_standard_bundle(rng, sc, rk, random_weights(rng, p, 4, rk));
                    LambdaConn C = frobenius_pullback(V);
                    bool proj = true;
                    for (int i = 0; i < C.bundle.charts(); ++i) {
                        RatFn y = C.bundle.cover.charts[i].coordinate();
                        std::vector<RatFn> v;
                        for (int l = 0; l < rk; ++l) {
                            RatFn s = RatFn::zero(f);
                            for (int e = 0; e <= 3 * int(p); ++e) s += y.pow(e) * f.random(rng);
                            v.push_back(s);
                        }
                        auto Pv = apply_P(C, i, v);
                        proj = proj && apply_P(C, i, Pv) == Pv;
                        for (const auto& e : apply_nabla_dy(C, i, Pv)) proj = proj && e.is_zero();
                    }
                    r.check(proj, t + " P^2 = P and nabla P = 0");
                    Descent D = cartier_descend(C);
                    bool wts = true;
                    for (int d = 0; d < V.divisor.size(); ++d)
                        for (int l = 0; l < rk; ++l)
                            wts = wts && D.bundle.weights[d][l] ==
                                             (C.bundle.weights[d][l] + Rational(D.ell[d][l])) / Rational(p) &&
                                  D.bundle.weights[d][l] == V.weights[d][l];
                    r.check(wts, t + " descended weights (gamma + l)/p");
                    r.check(validate_bundle(D.bundle).ok, t + " descended bundle validates");
                    r.check(find_bundle_isomorphism(D.bundle, V).has_value(), t + " descend(F*V) = V");
                });
            }
    });
}

SuiteResult suite_bis(const SuiteOptions& o) {
    return timed("bis", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 10);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            AffineSetup X = affine_line(f);
            for (int it = 0; it < o.instances; ++it) {
                int N = 2 + it % 3;
                if (N % int(p) == 0) continue;
                std::string t = tag(p, it) + " N=" + std::to_string(N);
                guarded(r, t, [&] {
                    int rk = 1 + (it / 3) % 2;
                    Fq lam = it % 3 == 0 ? f.zero() : (it % 3 == 1 ? f.one() : f.random(rng));
                    std::vector<Rational> w;
                    for (int l = 0; l < rk; ++l) w.push_back(random_weight(rng, p));
                    LambdaConn A = random_affine_conn(rng, f, rk, w, lam);
                    EquivConn E = pullback_cyclic_equivariant(A, N);
                    r.check(validate_equivariant(E).ok, t + " pullback is equivariant");
                    r.check(find_isomorphism(invariants_cyclic(E), A).has_value(), t + " (f_*)^G f^* = Id");
                    EquivConn U = random_equivariant(rng, f, rk, N, lam);
                    LambdaConn down = invariants_cyclic(U);
                    EquivConn back = pullback_cyclic_equivariant(down, N);
                    r.check(back.chi == U.chi, t + " characters recovered");
                    r.check(find_isomorphism(back.conn, U.conn).has_value(), t + " f^* (f_*)^G = Id");
                    LambdaConn P = pushforward_cyclic(A, N);
                    bool wl = true;
                    for (int l = 0; l < rk; ++l)
                        for (int s = 0; s < N; ++s) wl = wl && P.bundle.weights[0][l * N + s] == (w[l] + Rational(s)) / Rational(N);
                    r.check(wl, t + " pushforward weights (alpha + t)/N");
                    // rank one, pure residue: parabolic matrix m_par/N times dy/y on every summand
                    Fq m = f.random(rng);
                    LambdaConn L = zero_conn(trivial_bundle(X.cover, X.divisor, 1, {{w[0]}}), lam);
                    L.conn[0](0, 0) = RatFn::x(f).inv() * m;
                    LambdaConn PL = pushforward_cyclic(L, N);
                    Fq mpar = parabolic_residue(L, 0)(0, 0);
                    FqMat R = parabolic_residue(PL, 0);
                    bool rule = true;
                    for (int a = 0; a < N; ++a)
                        for (int b = 0; b < N; ++b) {
                            rule = rule && R(a, b) == (a == b ? mpar / f.of(N) : f.zero());
                            if (a != b) rule = rule && PL.conn[0](a, b).is_zero();
                        }
                    r.check(rule, t + " 1/N rule on the parabolic residue");
                });
            }
        }
    });
}

SuiteResult suite_functoriality(const SuiteOptions& o) {
    return timed("functoriality", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 11);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            FrobLift F = affine_lift(f);
            for (int it = 0; it < o.instances; ++it) {
                int N = 2 + it % 2;
                if (N % int(p) == 0) N = 2;
                std::string t = tag(p, it) + " N=" + std::to_string(N);
                guarded(r, t, [&] {
                    int rk = 1 + (it / 2) % 2;
                    std::vector<Rational> w;
                    for (int l = 0; l < rk; ++l) w.push_back(random_weight(rng, p));
                    LambdaConn H = random_affine_nilpotent_higgs(rng, f, rk, w);
                    LambdaConn C = inverse_cartier(H, F);
                    r.check(find_isomorphism(pullback_cyclic(C, N), inverse_cartier(pullback_cyclic(H, N), F)).has_value(),
                            t + " pullback commutes with C^-1");
                    r.check(find_isomorphism(pushforward_cyclic(C, N), inverse_cartier(pushforward_cyclic(H, N), F))
                                .has_value(),
                            t + " pushforward commutes with C^-1");
                });
            }
        }
    });
}

// --- flow ----------------------------------------------------------------------------

// Every root of det(lambda0, .) is periodic with period one.
RootTable check_flow_roots(SuiteResult& r, Rng& rng, std::uint32_t p, const Fq& l0, const std::string& t0) {
    RootTable rt = periodicity_roots(p, l0, 0);
    int maxdeg = 1;
    for (auto [d, m] : rt.factors) maxdeg = std::max(maxdeg, d);
    rt = periodicity_roots(p, l0, maxdeg);
    r.check(rt.found_multiplicity == int(p), t0 + " all roots located");
    for (const auto& root : rt.roots) {
        std::string t = t0 + " root " + root.value.str();
        const Field& F = root.value.field();
        Fq L0 = embed(l0, F);
        FrobLift lift = frobenius_lifts_4pts(wp2_from_witt(L0, root.value));
        GradedHiggsR2 E = legendre_family(L0.frob());
        r.check(hn_type(E, deligne_illusie(lift)) == 1, t + " hn type a = 1");
        r.check(hom_from_O1_dimension(E, lift) == 1, t + " dim Hom(O(1), H) = 1");
        FlowStep s = flow_step(E, lift);
        r.check(!s.graded.theta.is_zero(), t + " induced theta nonzero");
        r.check(is_period_one(s), t + " period one");
        Fq c = random_nonzero(rng, F);
        r.check(hn_type(legendre_family(L0.frob(), c), deligne_illusie(lift)) == 1,
                t + " hn type invariant under scaling theta");
    }
    return rt;
}

SuiteResult suite_flow(const SuiteOptions& o) {
    return timed("flow", [&](SuiteResult& r) {
        Rng rng = make_rng(o, 12);
        for (auto p : o.primes) {
            const Field& f = Field::get(p);
            for (const auto& l0 : f.elements()) {
                if (l0.is_zero() || l0.is_one()) continue;
                std::string t0 = "p=" + std::to_string(p) + " l0=" + l0.str();
                guarded(r, t0, [&] {
                    RootTable rt = check_flow_roots(r, rng, p, l0, t0);
                    // non-roots from the prime field and its extensions
                    int nonroots = 0;
                    for (int k : {1, 2, 3}) {
                        const Field& F = Field::get(p, k);
                        Fq L0 = embed(l0, F);
                        Poly dF = embed(rt.det, F);
                        int here = 0;
                        for (const auto& l1 : F.elements()) {
                            if (here >= 3) break;
                            if (k > 1 && l1.in_prime_field()) continue;
                            if (dF.eval(l1).is_zero()) continue;
                            ++here;
                            ++nonroots;
                            std::string t = t0 + " non-root " + l1.str();
                            FrobLift lift = frobenius_lifts_4pts(wp2_from_witt(L0, l1));
                            GradedHiggsR2 E = legendre_family(L0.frob());
                            r.check(hn_type(E, deligne_illusie(lift)) == 0, t + " hn type a = 0");
                            r.check(hom_from_O1_dimension(E, lift) == 0, t + " dim Hom(O(1), H) = 0");
                            bool threw = false;
                            try {
                                flow_step(E, lift);
                            } catch (const NonPeriodicError&) {
                                threw = true;
                            }
                            r.check(threw, t + " flow step reports non-periodic");
                        }
                    }
                    r.check(nonroots >= 5, t0 + " at least five non-roots examined");
                    // hn over F_p agrees with the determinant
                    for (const auto& l1 : f.elements()) {
                        FrobLift lift = frobenius_lifts_4pts(wp2_from_witt(l0, l1));
                        int hn = hn_type(legendre_family(l0.frob()), deligne_illusie(lift));
                        r.check((hn == 1) == rt.det.eval(l1).is_zero(), t0 + " hn = 1 iff det = 0 at " + l1.str());
                    }
                    // extension class: zero for theta = 0 and linear in theta
                    Fq l1 = f.random(rng);
                    DICocycle k = deligne_illusie(frobenius_lifts_4pts(wp2_from_witt(l0, l1)));
                    Fq a = f.random(rng), b = f.random(rng);
                    auto ca = extension_class(legendre_family(l0.frob(), a), k).coords;
                    auto cb = extension_class(legendre_family(l0.frob(), b), k).coords;
                    auto cab = extension_class(legendre_family(l0.frob(), a + b), k).coords;
                    auto c0 = extension_class(legendre_family(l0.frob(), f.zero()), k).coords;
                    bool lin = ca.size() == cab.size() && cb.size() == cab.size();
                    for (size_t i = 0; lin && i < cab.size(); ++i) lin = cab[i] == ca[i] + cb[i];
                    bool zero = true;
                    for (const auto& v : c0) zero = zero && v.is_zero();
                    r.check(lin, t0 + " extension class linear in theta");
                    r.check(zero, t0 + " extension class of theta = 0 vanishes");
                });
            }
            // the sampled lambda0 off the prime field, same draws as the delta sweep
            for (const auto& [q, l0s] : sweep_cells(o)) {
                if (q != p) continue;
                for (const auto& l0 : l0s) {
                    if (l0.in_prime_field()) continue;
                    std::string t0 = "p=" + std::to_string(p) + " l0=" + l0.str();
                    guarded(r, t0, [&] { check_flow_roots(r, rng, p, l0, t0); });
                }
            }
            // Galois conjugation of lambda0 conjugates the determinant
            const Field& f2 = Field::get(p, 2);
            for (int s = 0; s < 3; ++s) {
                Fq l0 = random_lambda0(rng, f2);
                while (l0.in_prime_field()) l0 = random_lambda0(rng, f2);
                std::string t = "p=" + std::to_string(p) + " l0=" + l0.str();
                guarded(r, t, [&] {
                    r.check(det_poly_lambda1(p, l0.frob()) == det_poly_lambda1(p, l0).map_coeffs_frob(1),
                            t + " det of the conjugate is the conjugate det");
                });
            }
        }
    });
}

// ---------------------------------------------------------------------------------

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> all{
        {"arith", "finite fields, W2, root finding", suite_arith},
        {"p1", "Cech cohomology on the standard cover", suite_p1},
        {"algebra", "parabolic bundles: validation, tensor, dual, degrees, filtrations", suite_algebra},
        {"serialize", "JSON round trips", suite_serialize},
        {"connections", "residues, Frobenius pullback, p-curvature, cyclic covers", suite_connections},
        {"delta", "boundary map against the closed form", suite_delta},
        {"det", "determinant polynomial", suite_det},
        {"roots", "root counts of the determinant", suite_roots},
        {"di", "Deligne-Illusie class against the closed form", suite_di},
        {"cartier", "inverse Cartier and Cartier round trips", suite_cartier},
        {"descent", "Cartier descent", suite_descent},
        {"bis", "cyclic cover round trips", suite_bis},
        {"functoriality", "cyclic covers commute with the inverse Cartier transform", suite_functoriality},
        {"flow", "rank-two Higgs-de Rham flow", suite_flow},
    };
    return all;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    for (const auto& s : suites())
        if (s.name == name) return s.run(opts);
    throw ValidationError("unknown suite: " + name);
}

}  // namespace parab
