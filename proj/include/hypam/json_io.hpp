#pragma once

#include <nlohmann/json.hpp>

#include "hypam/curves.hpp"
#include "hypam/surfaces.hpp"
#include "hypam/tropical.hpp"

// JSON schemas shared by the CLI and downstream consumers:
//   ProjPoint      {"re":[4],"im":[4]}            (canonical form)
//   Line           [ProjPoint, ProjPoint]
//   HPoint         {"x":[4]}
//   PolarCoord     {"rho": number|"inf", "phi":[3]|null}
//   RotationElt    {"q":[4]}
//   RationalCurve  {"degree":d,"components":[{"re":[...],"im":[...]} x4]}
//   Surface        {"degree":d,"monomials":[{"exp":[4],"re":...,"im":...}]}
//   FloorDiagram   {"degree":d,"vertices":[{"r":num|"inf","bidegree":[2]}|{"r":0,"delta":n}],
//                   "edges":[{"v1":i,"v2":j,"phi":[3],"w":n}]}

namespace hypam {

using json = nlohmann::json;

json to_json(const ProjPoint& p);
ProjPoint projpoint_from_json(const json& j);

json to_json(const Line& l);
Line line_from_json(const json& j);

json to_json(const HPoint& x);
HPoint hpoint_from_json(const json& j);

json to_json(const PolarCoord& pc);
json to_json(const RotationElt& r);
json to_json(const BallPoint& b);

json to_json(const RationalCurve& c);
RationalCurve curve_from_json(const json& j);

json to_json(const Surface& s);
Surface surface_from_json(const json& j);

json to_json(const FloorDiagram& d);
FloorDiagram diagram_from_json(const json& j);

json to_json(const MembershipResult& r);
json to_json(const ConvergenceReport& r);
json to_json(const LineAmoebaClass& c);
json to_json(const Sym2Point& p);

/// Throw InputError when j carries keys outside `allowed`.
void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed);

} // namespace hypam
