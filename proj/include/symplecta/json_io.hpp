#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "symplecta/blobs.hpp"
#include "symplecta/capacities.hpp"
#include "symplecta/concentration.hpp"
#include "symplecta/error.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/states.hpp"

namespace symplecta::io {

using nlohmann::json;

// Payload that does not match the expected schema.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Vec& v);
Vec vec_from_json(const json& j, const char* what);

// {"n": rows, "rows": [[...], ...]}, row-major.
json to_json(const Mat& m);
Mat mat_from_json(const json& j, const char* what);

// {"kind": "ellipsoid"|"polytope", "space": "x"|"p", "hbar", "Q" | "vertices"}.
// hbar falls back to default_hbar when absent.
json to_json(const ConvexBody& body);
ConvexBody body_from_json(const json& j, double default_hbar);

// {"n", "hbar", "G"}
json to_json(const QuantumBlob& blob);
QuantumBlob blob_from_json(const json& j, double default_hbar);

// {"n", "hbar", "W", "Y"}
json to_json(const GaussianState& s);
GaussianState state_from_json(const json& j, double default_hbar);

// {"n", "hbar", "Sigma"}
json to_json(const CovarianceMatrix& c);
CovarianceMatrix covariance_from_json(const json& j, double default_hbar);

// {"value", "method", "hbar"}
json to_json(const CapacityValue& c);

// {"hbar", "L", "samples_re", "samples_im"}
json to_json(const SampledFunction& f);
SampledFunction function_from_json(const json& j, double default_hbar);

json to_json(const Containment& c);
json to_json(const QuantumPairReport& r);
json to_json(const MahlerReport& r);
json to_json(const QuantumVerdict& v);
json to_json(const Error& e);

}  // namespace symplecta::io
