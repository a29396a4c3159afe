#pragma once

#include <json.hpp>
#include <string>

#include "fractalab/content.hpp"
#include "fractalab/cutset.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab::reports {

nlohmann::json vec_json(const Vec& v);

nlohmann::json to_json(const PressureEstimate& p);
nlohmann::json to_json(const DimensionResult& d);
nlohmann::json to_json(const CutSet& c);
nlohmann::json to_json(const AwscReport& a);
nlohmann::json to_json(const GibbsConsistency& g);
nlohmann::json to_json(const ErgodicStats& e);
nlohmann::json to_json(const BoxDimensionEstimate& b);
nlohmann::json to_json(const SeriesBound& s);
nlohmann::json to_json(const BakerConfig& b);
nlohmann::json to_json(const TargetExperiment& t);
nlohmann::json to_json(const ContentEstimate& c);
nlohmann::json to_json(const EssentialContentEstimate& e);

std::string pressure_csv(const PressureEstimate& p);
std::string cutset_csv(const CutSet& c);
/// eps,N,logN
std::string boxcount_csv(const BoxDimensionEstimate& b);
/// s,eta,grid_scale,value,retained_mass
std::string content_csv(const EssentialContentEstimate& e);

}  // namespace fractalab::reports
