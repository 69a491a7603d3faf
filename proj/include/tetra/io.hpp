#pragma once

#include <string>

#include <json.hpp>

#include "tetra/adaptive.hpp"
#include "tetra/bloch.hpp"
#include "tetra/clicks.hpp"
#include "tetra/estimate.hpp"
#include "tetra/metrics.hpp"
#include "tetra/network.hpp"
#include "tetra/pair.hpp"

namespace tetra {

using Json = nlohmann::json;

/// Fixed 12-significant-digit decimal rendering used in every CSV cell, so
/// identical runs diff byte-identically.
std::string format_number(double v);

// states as [sx, sy, sz]
Json state_to_json(const PauliVector& s);
PauliVector state_from_json(const Json& j);

// frames as row-major 9-tuple of the rotation matrix
Json rotation_to_json(const Mat3& r);
Mat3 rotation_from_json(const Json& j);

Json counts_to_json(const ClickCounts& c);
ClickCounts counts_from_json(const Json& j);
Json counts_to_json(const SixCounts& c);
SixCounts six_counts_from_json(const Json& j);

Json estimate_to_json(const Estimate& e);

Json probabilities_to_json(const Probabilities4& p);

/// Flat object; inapplicable predictions serialize as null.
Json predictions_to_json(const PredictionSet& p);

Json joint_to_json(const JointProbabilities& q);             // row-major 16-tuple
JointProbabilities joint_from_json(const Json& j);
Json two_qubit_to_json(const TwoQubitState& rho);            // 16 [re, im] pairs
Json circuit_to_json(const std::vector<GateSpec>& gates);

} // namespace tetra
