#pragma once

#include <json.hpp>

#include "parab/connection.hpp"

namespace parab {

using json = nlohmann::json;

json to_json(const RatFn& f);
RatFn ratfn_from_json(const Field& f, const json& j);
json to_json(const RMat& m);
RMat rmat_from_json(const Field& f, const json& j);
json to_json(const FqMat& m);
json to_json(const PointP1& P);
PointP1 point_from_json(const Field& f, const json& j);
json to_json(const Rational& r);
Rational rational_from_json(const json& j);
json field_json(const Field& f);
const Field& field_from_json(const json& j);

json to_json(const ParaBundle& V);
ParaBundle bundle_from_json(const json& j);
json to_json(const LambdaConn& C);
LambdaConn conn_from_json(const json& j);

bool same_data(const ParaBundle& a, const ParaBundle& b);
bool same_data(const LambdaConn& a, const LambdaConn& b);

}  // namespace parab
