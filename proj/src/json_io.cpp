#include "hypam/json_io.hpp"

#include <nlohmann/json.hpp>

#include "hypam/error.hpp"

namespace hypam {

namespace {

json cvec_to_json(const std::vector<cplx>& v) {
    json re = json::array(), im = json::array();
    for (const cplx& c : v) {
        re.push_back(std::real(c));
        im.push_back(std::imag(c));
    }
    return json{{"re", re}, {"im", im}};
}

std::vector<cplx> cvec_from_json(const json& j) {
    reject_unknown_fields(j, {"re", "im"});
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) fail(ErrorKind::InputError, "re/im length mismatch");
    std::vector<cplx> out(re.size());
    for (size_t i = 0; i < re.size(); ++i) out[i] = cplx(re[i], im[i]);
    return out;
}

} // namespace

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(ErrorKind::InputError, "expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) fail(ErrorKind::InputError, "unknown field: " + it.key());
    }
}

json to_json(const ProjPoint& p) {
    std::vector<cplx> e = {p.m.a, p.m.b, p.m.c, p.m.d};
    return cvec_to_json(e);
}

ProjPoint projpoint_from_json(const json& j) {
    auto e = cvec_from_json(j);
    if (e.size() != 4) fail(ErrorKind::InputError, "ProjPoint needs 4 entries");
    return ProjPoint(Mat2(e[0], e[1], e[2], e[3]));
}

json to_json(const Line& l) { return json::array({to_json(l.p), to_json(l.d)}); }

Line line_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) fail(ErrorKind::InputError, "Line is two ProjPoints");
    return line_through(projpoint_from_json(j[0]), projpoint_from_json(j[1]));
}

json to_json(const HPoint& x) { return json{{"x", {x.x0, x.x1, x.x2, x.x3}}}; }

HPoint hpoint_from_json(const json& j) {
    reject_unknown_fields(j, {"x"});
    auto v = j.at("x").get<std::vector<double>>();
    if (v.size() != 4) fail(ErrorKind::InputError, "HPoint needs 4 coordinates");
    HPoint x{v[0], v[1], v[2], v[3]};
    if (std::abs(v[0] * v[3] - v[1] * v[1] - v[2] * v[2] - 1.0) > 1e-6 || v[0] <= 0.0)
        fail(ErrorKind::InputError, "not a hyperboloid point");
    return x;
}

json to_json(const PolarCoord& pc) {
    json j;
    j["rho"] = pc.infinite ? json("inf") : json(pc.rho);
    if (pc.phi) {
        auto u = pc.phi->unit_vec();
        j["phi"] = {u[0], u[1], u[2]};
    } else {
        j["phi"] = nullptr;
    }
    return j;
}

json to_json(const RotationElt& r) { return json{{"q", {r.q[0], r.q[1], r.q[2], r.q[3]}}}; }

json to_json(const BallPoint& b) {
    return json{{"v", {b.v[0], b.v[1], b.v[2]}}, {"boundary", b.boundary}};
}

json to_json(const RationalCurve& c) {
    json comps = json::array();
    for (const auto& f : c.components) comps.push_back(cvec_to_json(f.coeffs));
    return json{{"degree", c.degree}, {"components", comps}};
}

RationalCurve curve_from_json(const json& j) {
    reject_unknown_fields(j, {"degree", "components"});
    const json& comps = j.at("components");
    if (!comps.is_array() || comps.size() != 4) fail(ErrorKind::InputError, "curve needs 4 components");
    std::array<BinaryForm, 4> forms;
    for (int i = 0; i < 4; ++i) forms[i].coeffs = cvec_from_json(comps[i]);
    RationalCurve c = RationalCurve::make(forms);
    if (j.at("degree").get<int>() != c.degree) fail(ErrorKind::InputError, "degree mismatch");
    return c;
}

json to_json(const Surface& s) {
    json monos = json::array();
    for (const auto& [e, c] : s.p.monomials)
        monos.push_back(json{{"exp", {e[0], e[1], e[2], e[3]}},
                             {"re", std::real(c)},
                             {"im", std::imag(c)}});
    return json{{"degree", s.degree}, {"monomials", monos}};
}

Surface surface_from_json(const json& j) {
    reject_unknown_fields(j, {"degree", "monomials"});
    Poly4 p;
    for (const json& m : j.at("monomials")) {
        reject_unknown_fields(m, {"exp", "re", "im"});
        auto e = m.at("exp").get<std::vector<int>>();
        if (e.size() != 4) fail(ErrorKind::InputError, "monomial exponent needs 4 entries");
        p.add({e[0], e[1], e[2], e[3]}, cplx(m.at("re").get<double>(), m.value("im", 0.0)));
    }
    Surface s = Surface::make(p);
    if (j.at("degree").get<int>() != s.degree) fail(ErrorKind::InputError, "degree mismatch");
    return s;
}

json to_json(const FloorDiagram& d) {
    json verts = json::array();
    for (const auto& v : d.vertices) {
        json jv;
        jv["r"] = v.infinite ? json("inf") : json(v.width);
        if (v.bidegree) jv["bidegree"] = {v.bidegree->first, v.bidegree->second};
        if (v.delta) jv["delta"] = *v.delta;
        verts.push_back(jv);
    }
    json edges = json::array();
    for (const auto& e : d.edges)
        edges.push_back(json{{"v1", e.v1}, {"v2", e.v2}, {"phi", {e.phi[0], e.phi[1], e.phi[2]}},
                             {"w", e.weight}});
    return json{{"degree", d.degree}, {"vertices", verts}, {"edges", edges}};
}

FloorDiagram diagram_from_json(const json& j) {
    reject_unknown_fields(j, {"degree", "vertices", "edges"});
    FloorDiagram d;
    d.degree = j.at("degree").get<int>();
    for (const json& jv : j.at("vertices")) {
        reject_unknown_fields(jv, {"r", "bidegree", "delta"});
        FloorDiagram::Vertex v;
        if (jv.at("r").is_string()) {
            if (jv.at("r").get<std::string>() != "inf") fail(ErrorKind::InputError, "bad width");
            v.infinite = true;
        } else {
            v.width = jv.at("r").get<double>();
        }
        if (jv.contains("bidegree")) {
            auto b = jv.at("bidegree").get<std::vector<int>>();
            if (b.size() != 2) fail(ErrorKind::InputError, "bidegree needs 2 entries");
            v.bidegree = std::make_pair(b[0], b[1]);
        }
        if (jv.contains("delta")) v.delta = jv.at("delta").get<int>();
        d.vertices.push_back(v);
    }
    for (const json& je : j.at("edges")) {
        reject_unknown_fields(je, {"v1", "v2", "phi", "w"});
        FloorDiagram::Edge e;
        e.v1 = je.at("v1").get<int>();
        e.v2 = je.at("v2").get<int>();
        auto phi = je.at("phi").get<std::vector<double>>();
        if (phi.size() != 3) fail(ErrorKind::InputError, "phi needs 3 entries");
        e.phi = {phi[0], phi[1], phi[2]};
        e.weight = je.at("w").get<int>();
        d.edges.push_back(e);
    }
    return d;
}

json to_json(const MembershipResult& r) {
    return json{{"member", r.member},
                {"min_value", r.min_value},
                {"witness", {r.witness[0], r.witness[1], r.witness[2], r.witness[3]}},
                {"starts", r.starts}};
}

json to_json(const ConvergenceReport& r) {
    return json{{"t", r.t_values},
                {"distances", r.distances},
                {"eventually_decreasing", r.eventually_decreasing},
                {"final_distance", r.final_distance},
                {"pass", r.pass}};
}

json to_json(const Sym2Point& p) {
    std::vector<cplx> e(p.e.begin(), p.e.end());
    return cvec_to_json(e);
}

json to_json(const LineAmoebaClass& c) {
    json params = json::object();
    if (const auto* e = std::get_if<EmptyPlusRuling>(&c)) {
        auto u = e->point.unit_vec();
        params["point"] = {u[0], u[1], u[2]};
    } else if (const auto* h = std::get_if<Horosphere>(&c)) {
        auto u = h->center.unit_vec();
        params["center"] = {u[0], u[1], u[2]};
        params["basepoint"] = to_json(h->basepoint);
    } else if (const auto* cy = std::get_if<Cylinder>(&c)) {
        auto u1 = cy->axis1.unit_vec(), u2 = cy->axis2.unit_vec();
        params["axis"] = {{u1[0], u1[1], u1[2]}, {u2[0], u2[1], u2[2]}};
        params["radius"] = cy->radius;
    } else if (const auto* g = std::get_if<Geodesic>(&c)) {
        auto u1 = g->end1.unit_vec(), u2 = g->end2.unit_vec();
        params["endpoints"] = {{u1[0], u1[1], u1[2]}, {u2[0], u2[1], u2[2]}};
    }
    return json{{"class", class_name(c)}, {"params", params}};
}

} // namespace hypam
