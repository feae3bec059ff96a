#pragma once

#include <nlohmann/json_fwd.hpp>

#include "fdo/fractional.hpp"
#include "fdo/grassmannian.hpp"
#include "fdo/krichever.hpp"
#include "fdo/ratpoly2.hpp"
#include "fdo/relations.hpp"

namespace fdo::jsonio {

using json = nlohmann::json;

json to_json(const Scalar& v);
json to_json(const XSeries& s);
json to_json(const ZSeries& s);
json to_json(const PsDO& p);
json to_json(const FracOp& f);
json to_json(const RatPoly2& f);
json to_json(const Plane& w);
json to_json(const MembershipResult& r);
json to_json(const SpectralCert& c);
json to_json(const FracCert& c);
json to_json(const RankResult& r);
json to_json(const BCReport& r);
json to_json(const DordResult& r);
json to_json(const DiffCert& c);
json to_json(const SectionCheck& c);

Plane plane_from_json(const json& j);

} // namespace fdo::jsonio
