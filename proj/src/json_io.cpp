#include "symplecta/json_io.hpp"

#include <cmath>

namespace symplecta::io {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  return j.get<double>();
}

double hbar_field(const json& j, double fallback) {
  return j.is_object() && j.contains("hbar") ? number(j.at("hbar"), "hbar") : fallback;
}

// JSON has no NaN; non-finite values become null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void check_n(const json& j, int n, const char* what) {
  if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<int>() != n)) {
    throw InputError(std::string(what) + ": \"n\" does not match the matrix size");
  }
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real(v(i)));
  return out;
}

Vec vec_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a non-empty array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], what);
  return v;
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vec(m.row(i).transpose())));
  return {{"n", m.rows()}, {"rows", rows}};
}

Mat mat_from_json(const json& j, const char* what) {
  const json& rows = j.is_array() ? j : field(j, "rows", what);
  if (!rows.is_array() || rows.empty()) throw InputError(std::string(what) + ": expected rows");
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw InputError(std::string(what) + ": empty row");
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw InputError(std::string(what) + ": ragged rows");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = number(rows[i][k], what);
  }
  if (j.is_object() && j.contains("n") &&
      (!j.at("n").is_number_integer() || j.at("n").get<Eigen::Index>() != m.rows())) {
    throw InputError(std::string(what) + ": \"n\" does not match the row count");
  }
  return m;
}

json to_json(const ConvexBody& body) {
  if (const auto* e = std::get_if<EllipsoidBody>(&body)) {
    return {{"kind", "ellipsoid"}, {"space", to_string(e->space)}, {"hbar", e->hbar},
            {"Q", to_json(e->q)}};
  }
  const auto& p = std::get<PolytopeBody>(body);
  json vertices = json::array(), normals = json::array();
  for (const Vec& v : p.vertices()) vertices.push_back(to_json(v));
  for (const Vec& a : p.normals()) normals.push_back(to_json(a));
  return {{"kind", "polytope"}, {"space", to_string(p.space())}, {"hbar", p.hbar()},
          {"vertices", vertices}, {"normals", normals}};
}

ConvexBody body_from_json(const json& j, double default_hbar) {
  const json& kind = field(j, "kind", "body");
  const json& space_j = field(j, "space", "body");
  if (!space_j.is_string() || (space_j != "x" && space_j != "p")) {
    throw InputError("body: \"space\" must be \"x\" or \"p\"");
  }
  const Space space = space_j == "x" ? Space::position : Space::momentum;
  const double hbar = hbar_field(j, default_hbar);
  if (kind == "ellipsoid") return EllipsoidBody::make(space, mat_from_json(field(j, "Q", "body"), "Q"), hbar);
  if (kind == "polytope") {
    const json& vs = field(j, "vertices", "body");
    if (!vs.is_array() || vs.empty()) throw InputError("body: \"vertices\" must be a non-empty array");
    std::vector<Vec> vertices;
    for (const json& v : vs) vertices.push_back(vec_from_json(v, "vertex"));
    for (const Vec& v : vertices) {
      if (v.size() != vertices.front().size()) throw InputError("body: vertices differ in dimension");
    }
    return PolytopeBody::from_vertices(space, std::move(vertices), hbar);
  }
  throw InputError("body: \"kind\" must be \"ellipsoid\" or \"polytope\"");
}

json to_json(const QuantumBlob& blob) {
  return {{"n", blob.n()}, {"hbar", blob.hbar()}, {"G", to_json(blob.g())}};
}

QuantumBlob blob_from_json(const json& j, double default_hbar) {
  const Mat g = mat_from_json(field(j, "G", "blob"), "G");
  check_n(j, static_cast<int>(g.rows() / 2), "blob");
  return QuantumBlob::from_form(g, hbar_field(j, default_hbar));
}

json to_json(const GaussianState& s) {
  return {{"n", s.n()}, {"hbar", s.hbar}, {"W", to_json(s.w)}, {"Y", to_json(s.y)}};
}

GaussianState state_from_json(const json& j, double default_hbar) {
  const Mat w = mat_from_json(field(j, "W", "state"), "W");
  const Mat y = mat_from_json(field(j, "Y", "state"), "Y");
  check_n(j, static_cast<int>(w.rows()), "state");
  return GaussianState::make(w, y, hbar_field(j, default_hbar));
}

json to_json(const CovarianceMatrix& c) {
  return {{"n", c.n()}, {"hbar", c.hbar}, {"Sigma", to_json(c.sigma)}};
}

CovarianceMatrix covariance_from_json(const json& j, double default_hbar) {
  const Mat sigma = mat_from_json(field(j, "Sigma", "covariance"), "Sigma");
  check_n(j, static_cast<int>(sigma.rows() / 2), "covariance");
  return CovarianceMatrix::make(sigma, hbar_field(j, default_hbar));
}

json to_json(const CapacityValue& c) {
  return {{"value", real(c.value)}, {"method", to_string(c.method)}, {"hbar", c.hbar}};
}

json to_json(const SampledFunction& f) {
  return {{"hbar", f.hbar}, {"L", f.l}, {"samples_re", to_json(Vec(f.values.real()))},
          {"samples_im", to_json(Vec(f.values.imag()))}};
}

SampledFunction function_from_json(const json& j, double default_hbar) {
  const Vec re = vec_from_json(field(j, "samples_re", "function"), "samples_re");
  const Vec im = j.contains("samples_im") ? vec_from_json(j.at("samples_im"), "samples_im")
                                          : Vec(Vec::Zero(re.size()));
  if (re.size() != im.size()) throw InputError("function: samples_re and samples_im differ in length");
  CVec v(re.size());
  v.real() = re;
  v.imag() = im;
  return SampledFunction::from_samples(std::move(v), number(field(j, "L", "function"), "L"),
                                       hbar_field(j, default_hbar));
}

json to_json(const Containment& c) {
  return {{"holds", c.holds}, {"ratio", real(c.ratio)}, {"witness", to_json(c.witness)}};
}

json to_json(const QuantumPairReport& r) {
  json out = {{"holds", r.holds}, {"lambda_max", real(r.lambda_max)}, {"saturated", r.saturated}};
  if (r.witness.size() > 0) out["witness"] = to_json(r.witness);
  return out;
}

json to_json(const MahlerReport& r) {
  return {{"vol_body", real(r.vol_body)},         {"vol_dual", real(r.vol_dual)},
          {"mahler", real(r.mahler)},             {"santalo_bound", real(r.santalo_bound)},
          {"mahler_bound", real(r.mahler_bound)}, {"santalo_holds", r.santalo_holds},
          {"mahler_holds", r.mahler_holds},       {"mahler_asserted", r.mahler_asserted}};
}

json to_json(const QuantumVerdict& v) {
  json out = {{"passes", v.passes},
              {"positive_definite", v.positive_definite},
              {"min_eigenvalue", real(v.min_eigenvalue)},
              {"min_symplectic_eigenvalue", real(v.min_symplectic_eigenvalue)},
              {"symplectic_spectrum", to_json(v.symplectic_spectrum)},
              {"capacity", real(v.capacity)},
              {"rs_margins", to_json(v.rs_margins)},
              {"blob_unique", v.blob_unique}};
  if (v.blob) out["blob"] = to_json(*v.blob);
  return out;
}

json to_json(const Error& e) {
  json details = json::object();
  for (const auto& [name, value] : e.details()) details[name] = real(value);
  json out = {{"kind", to_string(e.kind())}, {"message", e.what()}, {"details", details}};
  if (e.witness().size() > 0) out["witness"] = to_json(e.witness());
  return {{"error", out}};
}

}  // namespace symplecta::io
