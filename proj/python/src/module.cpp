#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symplecta/blobs.hpp"
#include "symplecta/capacities.hpp"
#include "symplecta/cli.hpp"
#include "symplecta/concentration.hpp"
#include "symplecta/error.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/states.hpp"
#include "symplecta/sweep.hpp"
#include "symplecta/symplectic.hpp"

namespace py = pybind11;
using namespace symplecta;

namespace {

py::dict details_of(const Error& e) {
  py::dict d;
  for (const auto& [name, value] : e.details()) d[py::str(name)] = value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_symplecta, m) {
  m.doc() = "Symplectic polar duality, quantum blobs and indeterminacy checks";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> error_type(m, "SymplectaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      exc.attr("details") = details_of(e);
      if (e.witness().size() > 0) exc.attr("witness") = Vec(e.witness());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // symplectic core
  m.def("standard_j", &standard_j, py::arg("n"));
  m.def(
      "is_symplectic",
      [](const Mat& s, double tol) {
        const Check c = is_symplectic(s, tol);
        return py::make_tuple(c.holds, c.residual);
      },
      py::arg("s"), py::arg("tol") = kSymplecticTol);
  m.def("shear_matrix", &shear_matrix, py::arg("p"));
  m.def("dilation_matrix", &dilation_matrix, py::arg("l"));
  m.def(
      "symplectic_inverse",
      [](const Mat& s, double tol) {
        return symplectic_inverse(SymplecticMatrix::from_matrix(s, tol)).matrix();
      },
      py::arg("s"), py::arg("tol") = 1e-9);
  m.def(
      "pre_iwasawa",
      [](const Mat& s, double tol) {
        const PreIwasawaFactors f = pre_iwasawa(SymplecticMatrix::from_matrix(s, tol));
        py::dict d;
        d["P"] = f.p;
        d["L"] = f.l;
        d["R"] = f.r.matrix();
        return d;
      },
      py::arg("s"), py::arg("tol") = 1e-9);
  m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("m"));
  m.def(
      "williamson",
      [](const Mat& mm) {
        const WilliamsonForm w = williamson(mm);
        return py::make_tuple(w.s.matrix(), w.spectrum, w.residual);
      },
      py::arg("m"));
  m.def(
      "random_symplectic",
      [](std::uint64_t seed, int n, double spread) { return random_symplectic(seed, n, spread).matrix(); },
      py::arg("seed"), py::arg("n"), py::arg("spread") = 1.0);

  // polar geometry
  py::enum_<Space>(m, "Space").value("position", Space::position).value("momentum", Space::momentum);
  py::class_<EllipsoidBody>(m, "EllipsoidBody")
      .def(py::init(&EllipsoidBody::make), py::arg("space"), py::arg("q"), py::arg("hbar") = 1.0)
      .def_static("ball", &EllipsoidBody::ball, py::arg("space"), py::arg("dim"), py::arg("radius"),
                  py::arg("hbar") = 1.0)
      .def_readonly("space", &EllipsoidBody::space)
      .def_readonly("q", &EllipsoidBody::q)
      .def_readonly("hbar", &EllipsoidBody::hbar);
  py::class_<PolytopeBody>(m, "PolytopeBody")
      .def_static("from_vertices", &PolytopeBody::from_vertices, py::arg("space"), py::arg("vertices"),
                  py::arg("hbar") = 1.0)
      .def_static("symmetric_hull", &PolytopeBody::symmetric_hull, py::arg("space"),
                  py::arg("generators"), py::arg("hbar") = 1.0)
      .def_static("box", &PolytopeBody::box, py::arg("space"), py::arg("half_widths"),
                  py::arg("hbar") = 1.0)
      .def_property_readonly("space", &PolytopeBody::space)
      .def_property_readonly("hbar", &PolytopeBody::hbar)
      .def_property_readonly("vertices", &PolytopeBody::vertices)
      .def_property_readonly("normals", &PolytopeBody::normals);
  py::class_<Containment>(m, "Containment")
      .def_readonly("holds", &Containment::holds)
      .def_readonly("ratio", &Containment::ratio)
      .def_readonly("witness", &Containment::witness);
  py::class_<QuantumPairReport>(m, "QuantumPairReport")
      .def_readonly("holds", &QuantumPairReport::holds)
      .def_readonly("lambda_max", &QuantumPairReport::lambda_max)
      .def_readonly("saturated", &QuantumPairReport::saturated)
      .def_readonly("witness", &QuantumPairReport::witness);
  py::class_<MahlerReport>(m, "MahlerReport")
      .def_readonly("vol_body", &MahlerReport::vol_body)
      .def_readonly("vol_dual", &MahlerReport::vol_dual)
      .def_readonly("mahler", &MahlerReport::mahler)
      .def_readonly("santalo_bound", &MahlerReport::santalo_bound)
      .def_readonly("mahler_bound", &MahlerReport::mahler_bound)
      .def_readonly("santalo_holds", &MahlerReport::santalo_holds)
      .def_readonly("mahler_holds", &MahlerReport::mahler_holds);
  m.def("polar_dual", &polar_dual, py::arg("body"));
  m.def("support_function", &support_function, py::arg("body"), py::arg("direction"));
  m.def("contains", &contains, py::arg("outer"), py::arg("inner"), py::arg("tol") = 1e-9);
  m.def("quantum_pair_check", &quantum_pair_check, py::arg("x"), py::arg("p"), py::arg("tol") = 1e-9);
  m.def("volume", &volume, py::arg("body"));
  m.def("mahler_volume", &mahler_volume, py::arg("body"), py::arg("rel_tol") = 1e-8);

  // blobs
  m.def(
      "blob_from_symplectic",
      [](const Mat& s, double hbar) {
        const double scale = std::max(1.0, max_abs(s));
        return blob_from_symplectic(SymplecticMatrix::from_matrix(s, 1e-9 * scale * scale), hbar).g();
      },
      py::arg("s"), py::arg("hbar") = 1.0, "Form G of the blob S(B(sqrt(hbar))).");
  m.def(
      "blob_normal_form",
      [](const Mat& g, double hbar) {
        const BlobNormalForm nf = blob_normal_form(QuantumBlob::from_form(g, hbar));
        return py::make_tuple(nf.p, nf.l);
      },
      py::arg("g"), py::arg("hbar") = 1.0);
  m.def(
      "project_blob",
      [](const Mat& g, double hbar, double tol) {
        const BlobProjections r = project_blob(QuantumBlob::from_form(g, hbar), tol);
        py::dict d;
        d["x"] = r.x.q;
        d["p"] = r.p.q;
        d["saturated"] = r.saturated;
        d["lambda_max"] = r.pair.lambda_max;
        d["pair_holds"] = r.pair.holds;
        return d;
      },
      py::arg("g"), py::arg("hbar") = 1.0, py::arg("tol") = 1e-9);
  m.def(
      "john_of_polytope_product",
      [](const PolytopeBody& x, const PolytopeBody& p) {
        const JohnSolution s = john_of_polytope_product(x, p);
        return py::make_tuple(s.ellipsoid.m, s.iterations, s.gap);
      },
      py::arg("x"), py::arg("p"));
  m.def(
      "blob_to_gaussian",
      [](const Mat& g, double hbar) {
        const GaussianState s = blob_to_gaussian(QuantumBlob::from_form(g, hbar));
        return py::make_tuple(s.w, s.y);
      },
      py::arg("g"), py::arg("hbar") = 1.0);

  // states
  m.def(
      "wigner_matrix",
      [](const Mat& w, const Mat& y, double hbar) { return wigner_matrix(GaussianState::make(w, y, hbar)); },
      py::arg("w"), py::arg("y"), py::arg("hbar") = 1.0);
  m.def(
      "covariance",
      [](const Mat& w, const Mat& y, double hbar) {
        return covariance(GaussianState::make(w, y, hbar)).sigma;
      },
      py::arg("w"), py::arg("y"), py::arg("hbar") = 1.0);
  m.def(
      "quantum_condition_check",
      [](const Mat& sigma, double hbar, double tol) {
        const QuantumVerdict v = quantum_condition_check(CovarianceMatrix::make(sigma, hbar), tol);
        py::dict d;
        d["passes"] = v.passes;
        d["positive_definite"] = v.positive_definite;
        d["min_symplectic_eigenvalue"] = v.min_symplectic_eigenvalue;
        d["capacity"] = v.capacity;
        d["rs_margins"] = v.rs_margins;
        d["blob_unique"] = v.blob_unique;
        d["blob"] = v.blob ? py::cast(v.blob->g()) : py::none();
        return d;
      },
      py::arg("sigma"), py::arg("hbar") = 1.0, py::arg("tol") = 1e-9);
  m.def(
      "robertson_schrodinger_check",
      [](const Mat& sigma, double hbar) {
        return robertson_schrodinger_check(CovarianceMatrix::make(sigma, hbar));
      },
      py::arg("sigma"), py::arg("hbar") = 1.0);
  m.def(
      "pauli_partners",
      [](double sxx, double spp, double hbar) {
        std::vector<Mat> out;
        for (const auto& c : pauli_partners(sxx, spp, hbar)) out.push_back(c.sigma);
        return out;
      },
      py::arg("sigma_xx"), py::arg("sigma_pp"), py::arg("hbar") = 1.0);
  m.def(
      "metaplectic_apply",
      [](const Mat& w, const Mat& y, double hbar, const std::string& kind, const Mat& block) {
        const GaussianState s = GaussianState::make(w, y, hbar);
        Generator g = kind == "fourier"  ? Generator::fourier(s.n())
                      : kind == "shear"  ? Generator::shear(block)
                      : kind == "dilation" ? Generator::dilation(block)
                                           : throw py::value_error("kind must be fourier, shear or dilation");
        const GaussianState t = metaplectic_apply(s, g);
        return py::make_tuple(t.w, t.y);
      },
      py::arg("w"), py::arg("y"), py::arg("hbar"), py::arg("kind"), py::arg("block") = Mat());

  // capacities
  m.def(
      "ellipsoid_capacity",
      [](const Mat& mm, double hbar) { return ellipsoid_capacity(PhaseEllipsoid::make(mm, hbar)).value; },
      py::arg("m"), py::arg("hbar") = 1.0);
  m.def(
      "hz_planar_polygon",
      [](const std::vector<Vec>& vertices, double hbar) { return hz_planar(Polygon{vertices}, hbar).value; },
      py::arg("vertices"), py::arg("hbar") = 1.0);
  m.def(
      "hz_product_pair",
      [](const ConvexBody& x, const ConvexBody& p, double tol) {
        const ProductCapacity c = hz_product_pair(x, p, tol);
        return py::make_tuple(c.capacity.value, c.lambda_max, c.saturated);
      },
      py::arg("x"), py::arg("p"), py::arg("tol") = 1e-9);
  m.def(
      "projection_area_check",
      [](const Mat& s, double radius, int j) {
        const double scale = std::max(1.0, max_abs(s));
        const ProjectionArea r =
            projection_area_check(SymplecticMatrix::from_matrix(s, 1e-9 * scale * scale), radius, j);
        return py::make_tuple(r.area, r.passes, r.equality);
      },
      py::arg("s"), py::arg("radius"), py::arg("j"));

  // concentration
  m.def(
      "hbar_fourier",
      [](const CVec& values, double l, double hbar) {
        const SampledFunction g = hbar_fourier(SampledFunction::from_samples(values, l, hbar));
        return py::make_tuple(g.values, g.l);
      },
      py::arg("values"), py::arg("l"), py::arg("hbar") = 1.0,
      "Samples on x_k = -L + 2Lk/N; returns the transform and its grid half width.");
  m.def(
      "concentration",
      [](const CVec& values, double l, double hbar, double a) {
        return concentration(SampledFunction::from_samples(values, l, hbar), a);
      },
      py::arg("values"), py::arg("l"), py::arg("hbar"), py::arg("a"));
  m.def(
      "hermite_function", [](int mm, double hbar, double x) { return hermite_function(mm, hbar, x); },
      py::arg("m"), py::arg("hbar"), py::arg("x"));
  m.def(
      "donoho_stark_check",
      [](double ex, double ep, const Vec& cx, const Vec& cp, double hbar) {
        const DonohoStarkReport r = donoho_stark_check(ex, ep, cx, cp, hbar);
        return py::make_tuple(r.lhs, r.rhs, r.consistent, r.vacuous);
      },
      py::arg("eps_x"), py::arg("eps_p"), py::arg("cx_half"), py::arg("cp_half"), py::arg("hbar") = 1.0);
  m.def(
      "polar_concentration_bound",
      [](int n, double hbar, double ex, double ep) {
        const PolarConcentrationReport r = polar_concentration_bound(n, hbar, ex, ep);
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["stirling_envelope"] = r.stirling_envelope;
        d["eps_sum_floor"] = r.eps_sum_floor;
        d["consistent"] = r.consistent;
        d["vacuous"] = r.vacuous;
        return d;
      },
      py::arg("n"), py::arg("hbar"), py::arg("eps_x"), py::arg("eps_p"));
  m.def(
      "hardy_check",
      [](const Mat& a, const Mat& b, double hbar) {
        const HardyReport r = hardy_check(a, b, hbar);
        return py::make_tuple(r.eigs, std::string(to_string(r.regime)), r.polar_equivalent);
      },
      py::arg("a"), py::arg("b"), py::arg("hbar") = 1.0);

  // sweeps and CLI
  m.def("sweep_suites", &sweep_suites);
  m.def(
      "run_sweep",
      [](const std::vector<std::string>& suites, std::uint64_t first, std::uint64_t last, double hbar) {
        py::list out;
        for (const SweepRow& r : run_sweep(suites, first, last, hbar)) {
          py::dict d;
          d["suite"] = r.suite;
          d["property"] = r.property;
          d["seed"] = r.seed;
          d["measured"] = r.measured;
          d["bound"] = r.bound;
          d["margin"] = r.margin;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("suites"), py::arg("first"), py::arg("last"), py::arg("hbar") = 1.0);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
