#pragma once

#include <ostream>

#include <json.hpp>

#include "horseshoe/dimension.hpp"
#include "horseshoe/foliation.hpp"
#include "horseshoe/partition.hpp"
#include "horseshoe/tangency.hpp"
#include "horseshoe/torus_map.hpp"

namespace horseshoe {

using nlohmann::json;

void to_json(json& j, const TorusPoint& p);
void to_json(json& j, const Jacobian2& m);
void to_json(json& j, const FixedPointRecord& r);
void to_json(json& j, const CriticalData& c);
void to_json(json& j, const DirectionSample& s);
void to_json(json& j, const ProjectionResult& r);
void to_json(json& j, const CircleInterval& iv);
void to_json(json& j, const EndpointSolve& e);
void to_json(json& j, const MarkovPartition& p);
void to_json(json& j, const CantorApprox& c);
void to_json(json& j, const BowenSolution& b);
void to_json(json& j, const DimensionBracket& b);
void to_json(json& j, const ThicknessReport& t);
void to_json(json& j, const VerifyCaseResult& r);
void to_json(json& j, const VerifyReport& r);
void to_json(json& j, const TangencyCircle& c);
void to_json(json& j, const UnfoldingSpeeds& s);
void to_json(json& j, const TangencyCantorSets& s);
void to_json(json& j, const TangencyEvent& e);

// CSV writers; column orders are part of the tool's file contract.
void write_leaf_csv(std::ostream& os, const LeafTrace& t);                 // x,y
void write_circle_csv(std::ostream& os, const TangencyCircle& c);          // x,sigma
void write_cover_csv(std::ostream& os, const CantorApprox& c);  // level,left,right,deriv_min,deriv_max

}  // namespace horseshoe
