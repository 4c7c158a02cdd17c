#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "tate/domain.hpp"
#include "tate/matrix.hpp"
#include "tate/spectral.hpp"

namespace tate {

using json = nlohmann::ordered_json;

/// "%.15g".
std::string format_double(double x);
/// x rounded to 15 significant digits, so serialized floats are stable.
double round15(double x);

/// [{"kind":"radial","n":2,"lambda":"6","mult":8}, {"kind":"angular","l":1,"lambda":1.5,"lambda_exact":"3/2","mult":1}, ...]
json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum);

/// {"p":3,"m":2,"balls":[{"v":0,"k":1,"center":"1","value":"1/2"}, ...]}
json step_function_to_json(const StepFunction& f);
/// Inverse of step_function_to_json; the balls must partition E.
StepFunction step_function_from_json(const json& j);

/// {"level":k,"p":..,"m":..,"basis":[{"label":"v0_c1_k1","v":0,"k":1,"center":"1"}, ...]}
json basis_manifest(const OperatorMatrix& mx);

}  // namespace tate
