// parab_cli: batch front end. Exit codes 0 ok, 2 validation, 3 oracle mismatch, 4 non-periodic.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "parab/flow.hpp"
#include "parab/serialize.hpp"
#include "parab/suites.hpp"

using namespace parab;

namespace {

constexpr int kOk = 0, kValidation = 2, kMismatch = 3, kNonPeriodic = 4;

struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::uint32_t p = 0;
    int ext_degree = 1;
    std::string lambda0, lambda1 = "0", theta_scale = "1";
    std::string sweep;
    bool sweep_given = false;
    int root_degree = 1;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    std::vector<std::string> suites;
    int instances = 20, algebra_instances = 100;
    std::vector<std::uint32_t> primes;
};

// "a0,a1,..." low to high in the power basis of F_{p^k}; missing coordinates are zero.
Fq parse_elem(const Field& f, const std::string& s, const char* what) {
    std::vector<std::uint32_t> d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) throw ValidationError(std::string(what) + ": bad coordinate '" + tok + "'");
        if (v < 0 || v >= f.p()) throw ValidationError(std::string(what) + ": coordinate out of range 0.." + std::to_string(f.p() - 1));
        d.push_back(std::uint32_t(v));
    }
    if (d.empty()) throw ValidationError(std::string(what) + ": empty value");
    if (int(d.size()) > f.k()) throw ValidationError(std::string(what) + ": more than " + std::to_string(f.k()) + " coordinates");
    d.resize(f.k(), 0);
    return f.elem(f.encode(d));
}

Fq parse_lambda0(const Field& f, const std::string& s) {
    Fq l0 = parse_elem(f, s, "lambda0");
    if (l0.is_zero() || l0.is_one()) throw ValidationError("lambda0 collides with the divisor points 0, 1");
    return l0;
}

std::string coords_str(const Fq& a, char sep = ' ') {
    std::string s;
    for (auto c : a.coords()) s += (s.empty() ? "" : std::string(1, sep)) + std::to_string(c);
    return s;
}

std::string poly_str(const Poly& f) {
    std::string s;
    for (int i = 0; i <= f.deg(); ++i) s += (i ? ";" : "") + coords_str(f.coeff(i));
    return s;
}

json poly_json(const Poly& f) {
    json a = json::array();
    for (int i = 0; i <= f.deg(); ++i) a.push_back(f.coeff(i).coords());
    return a;
}

std::string field_name(const Field& f) { return std::to_string(f.p()) + "^" + std::to_string(f.k()); }

void emit(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out);
    if (!os) throw ValidationError("cannot open " + c.out);
    os << text;
}

struct Pair {
    FrobLift F;
    DICocycle kappa;
};

Pair lifts(const Fq& l0, const Fq& l1) {
    Pair s{frobenius_lifts_4pts(wp2_from_witt(l0, l1)), {}};
    s.kappa = deligne_illusie(s.F);
    return s;
}

int cmd_delta(const Config& c) {
    const Field& f = Field::get(c.p, c.ext_degree);
    Fq l0 = parse_lambda0(f, c.lambda0), l1 = parse_elem(f, c.lambda1, "lambda1");
    FqMat closed = delta_closed_form(c.p, l0, l1);
    FqMat cech = boundary_delta(legendre_family(l0.frob()), lifts(l0, l1).kappa);
    bool match = closed == cech;
    Poly d = det_poly_lambda1(c.p, l0);
    if (c.format == "csv") {
        std::string s = "source,i,j,value\n";
        for (const auto* m : {&closed, &cech})
            for (int i = 0; i < m->rows(); ++i)
                for (int j = 0; j < m->cols(); ++j)
                    s += std::string(m == &closed ? "closed_form" : "cech") + "," + std::to_string(i) + "," +
                         std::to_string(j) + "," + coords_str((*m)(i, j)) + "\n";
        emit(c, s);
    } else {
        json j{{"p", c.p},
               {"field", field_json(f)},
               {"lambda0", l0.coords()},
               {"lambda1", l1.coords()},
               {"closed_form", to_json(closed)},
               {"cech", to_json(cech)},
               {"match", match},
               {"det_coefficients", poly_json(d)},
               {"det", d.eval(l1).coords()}};
        emit(c, j.dump(2) + "\n");
    }
    if (!match) std::cerr << "closed form and Cech matrices differ\n";
    return match ? kOk : kMismatch;
}

// "" or "none": no cells. "all": F_{p^k} minus {0,1}. Otherwise ';'-separated lambda0 values.
std::vector<Fq> sweep_values(const Field& f, const Config& c) {
    std::vector<Fq> out;
    if (!c.sweep_given) {
        if (c.lambda0.empty()) throw ValidationError("periodicity needs --sweep or --lambda0");
        out.push_back(parse_lambda0(f, c.lambda0));
        return out;
    }
    if (c.sweep == "none") return out;
    if (c.sweep == "all") {
        for (const auto& a : f.elements())
            if (!a.is_zero() && !a.is_one()) out.push_back(a);
        return out;
    }
    std::stringstream ss(c.sweep);
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (!tok.empty()) out.push_back(parse_lambda0(f, tok));
    return out;
}

int cmd_periodicity(const Config& c) {
    const Field& f = Field::get(c.p, c.ext_degree);
    if (c.root_degree < 1) throw ValidationError("--root-degree must be >= 1");
    std::vector<Fq> cells = sweep_values(f, c);
    // sequential; rows come out in sweep order
    std::string csv = "row,p,field,lambda0,det_coefficients,root_degree,root,multiplicity,distinct_count,total_multiplicity,error\n";
    json cells_json = json::array();
    bool failed = false;
    for (const auto& l0 : cells) {
        std::string head = std::to_string(c.p) + "," + field_name(f) + "," + coords_str(l0) + ",";
        try {
            RootTable t = periodicity_roots(c.p, l0, c.root_degree);
            std::string dc = poly_str(t.det);
            json roots = json::array();
            for (const auto& r : t.roots) {
                csv += "root," + head + dc + "," + std::to_string(r.degree) + "," + coords_str(r.value) + "," +
                       std::to_string(r.multiplicity) + ",,,\n";
                roots.push_back({{"degree", r.degree}, {"value", r.value.coords()}, {"multiplicity", r.multiplicity}});
            }
            csv += "summary," + head + dc + ",,,," + std::to_string(t.distinct_count) + "," +
                   std::to_string(t.total_multiplicity) + ",\n";
            json factors = json::array();
            for (const auto& [deg, mult] : t.factors) factors.push_back({{"degree", deg}, {"multiplicity", mult}});
            cells_json.push_back({{"lambda0", l0.coords()},
                                  {"det_coefficients", poly_json(t.det)},
                                  {"roots", roots},
                                  {"factors", factors},
                                  {"distinct_count", t.distinct_count},
                                  {"total_multiplicity", t.total_multiplicity}});
        } catch (const std::exception& e) {
            failed = true;
            std::string msg = e.what();
            for (auto& ch : msg)
                if (ch == ',' || ch == '\n') ch = ' ';
            csv += "error," + head + ",,,,,," + msg + "\n";
            cells_json.push_back({{"lambda0", l0.coords()}, {"error", e.what()}});
        }
    }
    if (c.format == "csv")
        emit(c, csv);
    else
        emit(c, json{{"p", c.p}, {"field", field_json(f)}, {"root_degree", c.root_degree}, {"cells", cells_json}}.dump(2) +
                    "\n");
    return failed ? kMismatch : kOk;
}

int cmd_flow(const Config& c) {
    const Field& f = Field::get(c.p, c.ext_degree);
    if (c.lambda0.empty()) throw ValidationError("flow needs --lambda0");
    Fq l0 = parse_lambda0(f, c.lambda0), l1 = parse_elem(f, c.lambda1, "lambda1");
    Fq scale = parse_elem(f, c.theta_scale, "theta-scale");
    if (scale.is_zero()) throw ValidationError("theta = 0 is outside the graded family");
    Pair s = lifts(l0, l1);
    GradedHiggsR2 E = legendre_family(l0.frob(), scale);
    int a = hn_type(E, s.kappa);
    bool root = det_poly_lambda1(c.p, l0).eval(l1).is_zero();
    if ((a == 1) != root) throw MismatchError("hn_type disagrees with det(lambda0, lambda1)");
    json j{{"p", c.p}, {"field", field_json(f)}, {"lambda0", l0.coords()}, {"lambda1", l1.coords()},
           {"theta_scale", scale.coords()}, {"hn_type", a}};
    int code = kOk;
    if (a == 0) {
        j["verdict"] = "non-periodic";
        code = kNonPeriodic;
    } else {
        FlowStep st = flow_step(E, s.F);
        bool p1 = is_period_one(st);
        j["verdict"] = p1 ? "period 1" : "not period 1";
        j["graded_theta"] = to_json(st.graded.theta);
        j["de_rham"] = to_json(st.deRham);
        if (!p1) code = kMismatch;
    }
    if (c.format == "csv")
        emit(c, "p,field,lambda0,lambda1,hn_type,verdict\n" + std::to_string(c.p) + "," + field_name(f) + "," +
                    coords_str(l0) + "," + coords_str(l1) + "," + std::to_string(a) + "," +
                    j["verdict"].get<std::string>() + "\n");
    else
        emit(c, j.dump(2) + "\n");
    return code;
}

int cmd_selftest(const Config& c) {
    SuiteOptions o;
    o.seed = c.seed;
    o.instances = c.instances;
    o.algebra_instances = c.algebra_instances;
    if (!c.primes.empty()) o.primes = o.sweep_primes = c.primes;
    std::vector<std::string> names = c.suites;
    if (names.empty())
        for (const auto& s : suites()) names.push_back(s.name);
    for (const auto& n : names) {
        bool known = false;
        for (const auto& s : suites()) known = known || s.name == n;
        if (!known) throw ValidationError("unknown suite '" + n + "'");
    }
    bool ok = true;
    json report = json::array();
    std::string csv = "suite,cases,failures,seconds,status\n";
    for (const auto& n : names) {
        SuiteResult r = run_suite(n, o);
        ok = ok && r.ok();
        report.push_back({{"suite", n}, {"cases", r.cases}, {"failures", r.failures}, {"notes", r.notes},
                          {"seconds", r.seconds}, {"ok", r.ok()}});
        csv += n + "," + std::to_string(r.cases) + "," + std::to_string(r.failures.size()) + "," +
               std::to_string(r.seconds) + "," + (r.ok() ? "PASS" : "FAIL") + "\n";
        for (const auto& m : r.failures) std::cerr << n << ": " << m << "\n";
    }
    emit(c, c.format == "csv" ? csv : json{{"seed", c.seed}, {"suites", report}, {"ok", ok}}.dump(2) + "\n");
    return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parabolic Higgs-de Rham computations over finite fields"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s, bool need_p) {
        auto* po = s->add_option("--p", c.p, "odd prime");
        if (need_p) po->required();
        s->add_option("--ext-degree", c.ext_degree, "k for F_{p^k}")->check(CLI::PositiveNumber);
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--out", c.out, "output path (default stdout)");
        s->add_option("--seed", c.seed, "random seed");
    };

    auto* delta = app.add_subcommand("delta", "Delta matrix, closed form against the Cech computation");
    common(delta, true);
    delta->add_option("--lambda0", c.lambda0, "coordinates a0,a1,... of lambda0")->required();
    delta->add_option("--lambda1", c.lambda1, "coordinates of lambda1 (default 0)");

    auto* per = app.add_subcommand("periodicity", "roots of det as a polynomial in lambda1");
    common(per, true);
    per->add_option("--lambda0", c.lambda0, "single lambda0");
    per->add_option("--sweep", c.sweep, "'all', 'none' or ';'-separated lambda0 values");
    per->add_option("--root-degree", c.root_degree, "list roots up to this extension degree (default 1)");

    auto* flow = app.add_subcommand("flow", "one Higgs-de Rham flow step on the Legendre family");
    common(flow, true);
    flow->add_option("--lambda0", c.lambda0, "coordinates of lambda0")->required();
    flow->add_option("--lambda1", c.lambda1, "coordinates of lambda1 (default 0)");
    flow->add_option("--theta-scale", c.theta_scale, "multiplier of the Higgs field (default 1)");

    auto* self = app.add_subcommand("selftest", "run the property suites");
    common(self, false);
    self->add_option("--suite", c.suites, "suite names (repeatable; default all)")->delimiter(',');
    self->add_option("--instances", c.instances, "randomized instances per prime")->check(CLI::PositiveNumber);
    self->add_option("--algebra-instances", c.algebra_instances)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }
    c.sweep_given = per->count("--sweep") > 0;
    if (self->parsed() && self->count("--p") > 0) c.primes = {c.p};

    try {
        if (delta->parsed()) return cmd_delta(c);
        if (per->parsed()) return cmd_periodicity(c);
        if (flow->parsed()) return cmd_flow(c);
        return cmd_selftest(c);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return kMismatch;
    } catch (const ArithmeticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kMismatch;
    }
}
