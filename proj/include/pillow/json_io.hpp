#pragma once

#include <json.hpp>

#include "pillow/graphsum.hpp"
#include "pillow/localpoly.hpp"
#include "pillow/partition.hpp"
#include "pillow/qmforms.hpp"
#include "pillow/qseries.hpp"
#include "pillow/shifted.hpp"

namespace pillow {

using nlohmann::json;

json to_json(const Partition& p);
Partition partition_from_json(const json& j);

json to_json(const QSeries& s);
QSeries qseries_from_json(const json& j);

json to_json(const ShiftedSymElement& e);

json to_json(const RamificationProfile& p);
RamificationProfile profile_from_json(const json& j);

json to_json(const GlobalGraph& g, const std::vector<int>& eplus);
GlobalGraph graph_from_json(const json& j, std::vector<int>* eplus);

json to_json(const QMForm& f);
QMForm qmform_from_json(const json& j);

json to_json(const GrowthPolynomial& g);

json to_json(const QuasiPolynomial& q);

std::string generator_set_name(GeneratorSet g);
GeneratorSet generator_set_from_name(const std::string& s);

}  // namespace pillow
