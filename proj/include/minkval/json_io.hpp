#pragma once

#include "minkval/bodies.hpp"
#include "minkval/measures.hpp"
#include "minkval/operators.hpp"
#include "minkval/sphere_grid.hpp"

#include <json.hpp>

#include <string>

namespace minkval {

using Json = nlohmann::json;

Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json body_to_json(const BodyHandle& body);
BodyHandle body_from_json(const Json& j);

Json grid_to_json(const SphereGrid& grid);
SphereGridPtr grid_from_json(const Json& j);

Json spherical_function_to_json(const SphericalFunction& f);

Json grassmann_to_json(const GrassmannSample& s);
GrassmannSample grassmann_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const Json& j);

/// Operator specs: {"op":"pi"} | {"op":"pi_i","i":2} | {"op":"difference"}
/// | {"op":"lambda_i","i":1} | {"op":"mean_section_even","i":2,"c":1.0}
/// | {"op":"crofton","i":1,"sample_file":"...","symmetrize":true}.
MinkowskiValuation operator_from_json(const Json& j, int n);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace minkval
