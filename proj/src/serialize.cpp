#include "parab/serialize.hpp"

namespace parab {

json to_json(const RatFn& f) { return {{"num", f.num().codes()}, {"den", f.den().codes()}}; }

RatFn ratfn_from_json(const Field& f, const json& j) {
    auto codes = [&](const json& a) {
        std::vector<u64> c = a.get<std::vector<u64>>();
        for (u64 v : c)
            if (v >= f.q()) throw ValidationError("coefficient code out of range");
        return Poly(f, c);
    };
    return RatFn(codes(j.at("num")), codes(j.at("den")));
}

json to_json(const RMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
        rows.push_back(r);
    }
    return rows;
}

RMat rmat_from_json(const Field& f, const json& j) {
    int r = int(j.size());
    int c = r ? int(j.at(0).size()) : 0;
    RMat m = rmat_zero(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (int(j.at(i).size()) != c) throw ValidationError("ragged matrix");
        for (int k = 0; k < c; ++k) m(i, k) = ratfn_from_json(f, j.at(i).at(k));
    }
    return m;
}

json to_json(const FqMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k).coords());
        rows.push_back(r);
    }
    return rows;
}

json to_json(const PointP1& P) {
    if (P.is_inf()) return {{"inf", true}};
    return {{"inf", false}, {"coord", P.coord().code()}};
}

PointP1 point_from_json(const Field& f, const json& j) {
    if (j.at("inf").get<bool>()) return PointP1::infinity(f);
    u64 c = j.at("coord").get<u64>();
    if (c >= f.q()) throw ValidationError("point code out of range");
    return PointP1::finite(f.elem(c));
}

json to_json(const Rational& r) { return json::array({r.num(), r.den()}); }

Rational rational_from_json(const json& j) { return Rational(j.at(0).get<i64>(), j.at(1).get<i64>()); }

json field_json(const Field& f) { return {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}}; }

const Field& field_from_json(const json& j) {
    const Field& f = Field::get(j.at("p").get<std::uint32_t>(), j.at("k").get<int>());
    if (j.contains("modulus") && j.at("modulus").get<std::vector<std::uint32_t>>() != f.modulus())
        throw ValidationError("field modulus differs from the canonical one");
    return f;
}

json to_json(const ParaBundle& V) {
    json j;
    j["field"] = field_json(*V.field);
    j["p"] = V.field->p();
    j["rank"] = V.rank;
    json pts = json::array();
    for (const auto& P : V.divisor.points()) pts.push_back(to_json(P));
    j["divisor"] = pts;
    json charts = json::array();
    for (int i = 0; i < V.charts(); ++i) {
        const Chart& ch = V.cover.charts[i];
        json ex = json::array();
        for (const auto& P : ch.excluded()) ex.push_back(to_json(P));
        json secs = json::array();
        for (int d : V.points_in_chart(i)) secs.push_back({{"point", d}, {"section", to_json(V.section(i, d))}});
        charts.push_back({{"id", ch.id()}, {"excluded", ex}, {"sections", secs}});
    }
    j["charts"] = charts;
    json om = json::array();
    for (const auto& P : V.cover.omitted) om.push_back(to_json(P));
    j["omitted"] = om;
    json w = json::array();
    for (const auto& row : V.weights) {
        json r = json::array();
        for (const auto& a : row) r.push_back(to_json(a));
        w.push_back(r);
    }
    j["weights"] = w;
    json tr = json::array();
    for (int i = 0; i < V.charts(); ++i) {
        json row = json::array();
        for (int k = 0; k < V.charts(); ++k) row.push_back(to_json(V.E(i, k)));
        tr.push_back(row);
    }
    j["transitions"] = tr;
    return j;
}

ParaBundle bundle_from_json(const json& j) {
    const Field& f = field_from_json(j.at("field"));
    ParaBundle V;
    V.field = &f;
    V.rank = j.at("rank").get<int>();
    std::vector<PointP1> pts;
    for (const auto& P : j.at("divisor")) pts.push_back(point_from_json(f, P));
    V.divisor = Divisor(pts);
    V.cover.field = &f;
    for (const auto& c : j.at("charts")) {
        std::vector<PointP1> ex;
        for (const auto& P : c.at("excluded")) ex.push_back(point_from_json(f, P));
        Chart ch(c.at("id").get<std::string>(), f, ex);
        for (const auto& s : c.at("sections")) {
            int d = s.at("point").get<int>();
            if (d < 0 || d >= V.divisor.size()) throw ValidationError("section refers to an unknown point");
            ch.set_section(V.divisor.points()[d], ratfn_from_json(f, s.at("section")));
        }
        V.cover.charts.push_back(std::move(ch));
    }
    if (j.contains("omitted"))
        for (const auto& P : j.at("omitted")) V.cover.omitted.push_back(point_from_json(f, P));
    for (const auto& row : j.at("weights")) {
        std::vector<Rational> r;
        for (const auto& a : row) r.push_back(rational_from_json(a));
        V.weights.push_back(r);
    }
    int n = V.cover.size();
    const json& tr = j.at("transitions");
    if (int(tr.size()) != n) throw ValidationError("transition table size differs from the chart count");
    V.trans.assign(n, std::vector<RMat>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) V.trans[i][k] = rmat_from_json(f, tr.at(i).at(k));
    auto rep = validate_bundle(V);
    if (!rep.ok) throw ValidationError("invalid bundle: " + rep.first_violation);
    return V;
}

json to_json(const LambdaConn& C) {
    json j = to_json(C.bundle);
    j["lambda"] = C.lambda.code();
    json m = json::array();
    for (const auto& M : C.conn) m.push_back(to_json(M));
    j["connection"] = m;
    return j;
}

LambdaConn conn_from_json(const json& j) {
    ParaBundle V = bundle_from_json(j);
    const Field& f = *V.field;
    u64 l = j.at("lambda").get<u64>();
    if (l >= f.q()) throw ValidationError("lambda code out of range");
    LambdaConn C{V, f.elem(l), {}};
    for (const auto& M : j.at("connection")) C.conn.push_back(rmat_from_json(f, M));
    auto rep = validate_conn(C);
    if (!rep.ok) throw ValidationError("invalid connection: " + rep.first_violation);
    return C;
}

bool same_data(const ParaBundle& a, const ParaBundle& b) {
    if (a.field != b.field || a.rank != b.rank || a.weights != b.weights || !same_cover(a.cover, b.cover) ||
        a.divisor.points() != b.divisor.points() || a.trans != b.trans)
        return false;
    for (int i = 0; i < a.charts(); ++i)
        for (int d : a.points_in_chart(i))
            if (a.section(i, d) != b.section(i, d)) return false;
    return true;
}

bool same_data(const LambdaConn& a, const LambdaConn& b) {
    return same_data(a.bundle, b.bundle) && a.lambda == b.lambda && a.conn == b.conn;
}

}  // namespace parab
