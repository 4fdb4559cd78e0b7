#include "symplecta/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "symplecta/blobs.hpp"
#include "symplecta/capacities.hpp"
#include "symplecta/concentration.hpp"
#include "symplecta/json_io.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/states.hpp"
#include "symplecta/sweep.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

namespace {

using io::json;

struct Globals {
  double hbar = 1.0;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
json load(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw io::InputError("cannot read " + arg);
  return json::parse(in);
}

double default_tol() {
  if (const char* env = std::getenv("SYMPLECTA_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    throw io::InputError("SYMPLECTA_TOL is not a positive number");
  }
  return 1e-9;
}

double relative_tol(const Mat& m, double tol) {
  const double s = std::max(1.0, max_abs(m));
  return tol * s * s;
}

SymplecticMatrix load_symplectic(const std::string& arg, double tol) {
  const Mat m = io::mat_from_json(load(arg), "matrix");
  return SymplecticMatrix::from_matrix(m, relative_tol(m, tol));
}

std::pair<std::uint64_t, std::uint64_t> parse_seeds(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw io::InputError("bad seed range");
      return {v, v};
    }
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    const auto a = std::stoull(lo, &used);
    if (used != lo.size()) throw io::InputError("bad seed range");
    const auto b = std::stoull(hi, &used);
    if (used != hi.size() || b < a) throw io::InputError("bad seed range");
    return {a, b};
  } catch (const std::logic_error&) {
    throw io::InputError("bad seed range: " + s);
  }
}

json rows_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const SweepRow& r : rows) {
    out.push_back({{"suite", r.suite},       {"property", r.property}, {"seed", r.seed},
                   {"measured", r.measured}, {"bound", r.bound},       {"margin", r.margin},
                   {"pass", r.pass}});
  }
  return out;
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw io::InputError("cannot write " + g.out);
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symplectic geometry and quantum indeterminacy toolkit", "symplecta"};
  app.require_subcommand(1);
  Globals g;
  std::optional<double> tol_flag;
  app.add_option("--hbar", g.hbar, "Reduced Planck constant (default 1)")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol_flag, "Tolerance (default 1e-9 or $SYMPLECTA_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed (default 0)");
  app.add_option("--out", g.out, "Write the result to this file");
  auto* format_opt = app.add_option("--format", g.format, "json or csv (csv for sweep only; sweep infers csv from --out *.csv)")
                         ->check(CLI::IsMember({"json", "csv"}));
  app.fallthrough();

  std::map<CLI::App*, std::function<std::string()>> handlers;
  auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  auto dump = [](const json& j) { return j.dump(2) + "\n"; };

  std::string body, outer, inner, x, p, blob, state, cov, matrix, function, a_arg, b_arg, block;
  std::vector<double> direction, cx, cp;

  auto* dual = add("dual", "hbar-polar dual of a convex body");
  dual->add_option("--body", body)->required();
  handlers[dual] = [&] { return dump(io::to_json(polar_dual(io::body_from_json(load(body), g.hbar)))); };

  auto* support = add("support", "support function of a body in a direction");
  support->add_option("--body", body)->required();
  support->add_option("--direction", direction)->required()->delimiter(',');
  handlers[support] = [&] {
    const Vec d = Eigen::Map<const Vec>(direction.data(), static_cast<Eigen::Index>(direction.size()));
    return dump({{"value", support_function(io::body_from_json(load(body), g.hbar), d)}});
  };

  auto* cont = add("contains", "decide inner ⊆ outer");
  cont->add_option("--outer", outer)->required();
  cont->add_option("--inner", inner)->required();
  handlers[cont] = [&] {
    return dump(io::to_json(contains(io::body_from_json(load(outer), g.hbar),
                                     io::body_from_json(load(inner), g.hbar), g.tol)));
  };

  auto* pair = add("pair-check", "decide whether (X, P) is a quantum polar pair");
  pair->add_option("--x", x)->required();
  pair->add_option("--p", p)->required();
  handlers[pair] = [&] {
    const QuantumPairReport r = quantum_pair_check(io::body_from_json(load(x), g.hbar),
                                                   io::body_from_json(load(p), g.hbar), g.tol);
    if (!r.holds) {
      throw Error(ErrorKind::domain, "not a quantum polar pair", {{"lambda_max", r.lambda_max}},
                  r.witness);
    }
    return dump(io::to_json(r));
  };

  auto* mahler = add("mahler", "Mahler volume with Santalo and Mahler bounds");
  mahler->add_option("--body", body)->required();
  handlers[mahler] = [&] {
    return dump(io::to_json(mahler_volume(io::body_from_json(load(body), g.hbar))));
  };

  std::string action = "check";
  int dim = 1;
  double spread = 1.0;
  auto* sym = add("symplectic", "symplectic matrix operations");
  sym->add_option("--action", action)
      ->check(CLI::IsMember({"check", "inverse", "iwasawa", "eigenvalues", "williamson", "random"}));
  sym->add_option("--matrix", matrix);
  sym->add_option("--n", dim)->check(CLI::PositiveNumber);
  sym->add_option("--spread", spread)->check(CLI::NonNegativeNumber);
  handlers[sym] = [&] {
    if (action == "random") return dump({{"S", io::to_json(random_symplectic(g.seed, dim, spread).matrix())}});
    if (matrix.empty()) throw io::InputError("--matrix is required for --action " + action);
    const Mat m = io::mat_from_json(load(matrix), "matrix");
    if (action == "check") {
      const Check c = is_symplectic(m, relative_tol(m, g.tol));
      return dump({{"symplectic", c.holds}, {"residual", c.residual}});
    }
    if (action == "eigenvalues") return dump({{"spectrum", io::to_json(symplectic_eigenvalues(m))}});
    if (action == "williamson") {
      const WilliamsonForm w = williamson(m);
      return dump({{"S", io::to_json(w.s.matrix())}, {"spectrum", io::to_json(w.spectrum)},
                   {"residual", w.residual}});
    }
    const SymplecticMatrix s = SymplecticMatrix::from_matrix(m, relative_tol(m, g.tol));
    if (action == "inverse") return dump({{"S", io::to_json(symplectic_inverse(s).matrix())}});
    const PreIwasawaFactors f = pre_iwasawa(s);
    return dump({{"P", io::to_json(f.p)},
                 {"L", io::to_json(f.l)},
                 {"R", io::to_json(f.r.matrix())},
                 {"reconstruction_error", max_abs(f.reconstruct() - m)}});
  };

  std::string blob_action = "from-symplectic";
  auto* blob_cmd = add("blob", "quantum blobs from a symplectic matrix, normal form");
  blob_cmd->add_option("--action", blob_action)->check(CLI::IsMember({"from-symplectic", "normal-form"}));
  blob_cmd->add_option("--matrix", matrix);
  blob_cmd->add_option("--blob", blob);
  handlers[blob_cmd] = [&] {
    if (blob_action == "from-symplectic") {
      if (matrix.empty()) throw io::InputError("--matrix is required");
      const QuantumBlob b = blob_from_symplectic(load_symplectic(matrix, g.tol), g.hbar);
      json j = io::to_json(b);
      j["volume"] = b.volume();
      return dump(j);
    }
    if (blob.empty()) throw io::InputError("--blob is required");
    const BlobNormalForm nf = blob_normal_form(io::blob_from_json(load(blob), g.hbar));
    return dump({{"P", io::to_json(nf.p)}, {"L", io::to_json(nf.l)}});
  };

  auto* project = add("blob-project", "x and p projections of a quantum blob");
  project->add_option("--blob", blob)->required();
  handlers[project] = [&] {
    const BlobProjections r = project_blob(io::blob_from_json(load(blob), g.hbar), g.tol);
    return dump({{"x", io::to_json(ConvexBody(r.x))},
                 {"p", io::to_json(ConvexBody(r.p))},
                 {"saturated", r.saturated},
                 {"pair", io::to_json(r.pair)}});
  };

  std::string rescale = "none";
  double lambda = 1.0;
  auto* john = add("john", "John ellipsoid of X × P and rescaled blobs");
  john->add_option("--x", x)->required();
  john->add_option("--p", p)->required();
  john->add_option("--rescale", rescale)->check(CLI::IsMember({"none", "lambda", "ab"}));
  john->add_option("--lambda", lambda);
  handlers[john] = [&] {
    const ConvexBody xb = io::body_from_json(load(x), g.hbar);
    const ConvexBody pb = io::body_from_json(load(p), g.hbar);
    const auto* xe = std::get_if<EllipsoidBody>(&xb);
    const auto* pe = std::get_if<EllipsoidBody>(&pb);
    if (rescale != "none") {
      if (!xe || !pe) throw io::InputError("--rescale needs two ellipsoids");
      const RescaledBlob r = rescale == "lambda" ? rescaled_blob(xe->q, pe->q, lambda, xe->hbar)
                                                 : rescaled_blob_ab(xe->q, pe->q, xe->hbar);
      return dump({{"blob", io::to_json(r.blob)}, {"contained", r.contained},
                   {"lambda_max", r.lambda_max}});
    }
    if (xe && pe) {
      const JohnOfPair r = john_of_pair(*xe, *pe);
      return dump({{"M", io::to_json(r.ellipsoid.m)}, {"hbar", r.ellipsoid.hbar},
                   {"is_blob", r.is_blob}, {"symplectic_residual", r.symplectic_residual},
                   {"capacity", io::to_json(ellipsoid_capacity(r.ellipsoid))}});
    }
    const auto* xp = std::get_if<PolytopeBody>(&xb);
    const auto* pp = std::get_if<PolytopeBody>(&pb);
    if (!xp || !pp) throw io::InputError("john: need two ellipsoids or two polytopes");
    const JohnSolution r = john_of_polytope_product(*xp, *pp);
    return dump({{"M", io::to_json(r.ellipsoid.m)}, {"hbar", r.ellipsoid.hbar},
                 {"iterations", r.iterations}, {"gap", r.gap},
                 {"capacity", io::to_json(ellipsoid_capacity(r.ellipsoid))}});
  };

  std::string gamma_dir = "to-state";
  auto* gamma = add("gamma", "blob <-> Gaussian state correspondence");
  gamma->add_option("--direction", gamma_dir)->check(CLI::IsMember({"to-state", "to-blob"}));
  gamma->add_option("--blob", blob);
  gamma->add_option("--state", state);
  handlers[gamma] = [&] {
    if (gamma_dir == "to-state") {
      if (blob.empty()) throw io::InputError("--blob is required");
      return dump(io::to_json(blob_to_gaussian(io::blob_from_json(load(blob), g.hbar))));
    }
    if (state.empty()) throw io::InputError("--state is required");
    return dump(io::to_json(gaussian_to_blob(io::state_from_json(load(state), g.hbar))));
  };

  auto covariance_input = [&]() {
    if (!cov.empty()) return io::covariance_from_json(load(cov), g.hbar);
    if (!state.empty()) return covariance(io::state_from_json(load(state), g.hbar));
    throw io::InputError("--cov or --state is required");
  };

  auto* state_check = add("state-check", "quantum condition on a covariance matrix");
  state_check->add_option("--cov", cov);
  state_check->add_option("--state", state);
  handlers[state_check] = [&] {
    const CovarianceMatrix c = covariance_input();
    json j = io::to_json(quantum_condition_check(c, g.tol));
    j["covariance"] = io::to_json(c);
    return dump(j);
  };

  auto* rs = add("rs-check", "Robertson-Schrodinger margins");
  rs->add_option("--cov", cov);
  rs->add_option("--state", state);
  handlers[rs] = [&] {
    return dump({{"margins", io::to_json(robertson_schrodinger_check(covariance_input()))}});
  };

  double sxx = 0.0, spp = 0.0;
  auto* pauli = add("pauli", "Pauli partners for given position and momentum variances (n = 1)");
  pauli->add_option("--sxx", sxx)->required();
  pauli->add_option("--spp", spp)->required();
  handlers[pauli] = [&] {
    json list = json::array();
    for (const CovarianceMatrix& c : pauli_partners(sxx, spp, g.hbar, g.tol)) list.push_back(io::to_json(c));
    return dump({{"partners", list}});
  };

  std::string generator = "fourier";
  auto* meta = add("metaplectic", "apply a metaplectic generator to a Gaussian state");
  meta->add_option("--state", state)->required();
  meta->add_option("--generator", generator)->check(CLI::IsMember({"fourier", "shear", "dilation"}));
  meta->add_option("--block", block, "P for shear, L for dilation");
  handlers[meta] = [&] {
    const GaussianState s = io::state_from_json(load(state), g.hbar);
    Generator gen = Generator::fourier(s.n());
    if (generator != "fourier") {
      if (block.empty()) throw io::InputError("--block is required");
      const Mat m = io::mat_from_json(load(block), "block");
      gen = generator == "shear" ? Generator::shear(m) : Generator::dilation(m);
    }
    const GaussianState t = metaplectic_apply(s, gen);
    return dump({{"state", io::to_json(t)}, {"covariance", io::to_json(covariance(t))}});
  };

  std::string polygon;
  bool planar = false;
  auto* cap = add("capacity", "symplectic capacity of an ellipsoid or planar polygon");
  cap->add_option("--ellipsoid", matrix, "M of {Mz·z <= hbar}");
  cap->add_option("--polygon", polygon, "{\"vertices\": [[x, p], ...]}");
  cap->add_flag("--planar", planar, "use the planar area formula for a 2x2 ellipsoid");
  handlers[cap] = [&] {
    if (!polygon.empty()) {
      const json j = load(polygon);
      if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
        throw io::InputError("polygon: missing \"vertices\"");
      }
      Polygon k;
      for (const json& v : j["vertices"]) k.vertices.push_back(io::vec_from_json(v, "vertex"));
      return dump(io::to_json(hz_planar(k, j.value("hbar", g.hbar))));
    }
    if (matrix.empty()) throw io::InputError("--ellipsoid or --polygon is required");
    const PhaseEllipsoid e = PhaseEllipsoid::make(io::mat_from_json(load(matrix), "M"), g.hbar);
    return dump(io::to_json(planar ? hz_planar(e) : ellipsoid_capacity(e)));
  };

  auto* hz = add("hz-pair", "Hofer-Zehnder capacity of X × P");
  hz->add_option("--x", x)->required();
  hz->add_option("--p", p)->required();
  handlers[hz] = [&] {
    const ProductCapacity c = hz_product_pair(io::body_from_json(load(x), g.hbar),
                                              io::body_from_json(load(p), g.hbar), g.tol);
    return dump({{"capacity", io::to_json(c.capacity)}, {"lambda_max", c.lambda_max},
                 {"saturated", c.saturated},
                 {"planar_area", std::isfinite(c.planar_area) ? json(c.planar_area) : json(nullptr)}});
  };

  double radius = 1.0;
  int plane = 1;
  auto* gromov = add("gromov-check", "area of a projected symplectic ball");
  gromov->add_option("--matrix", matrix)->required();
  gromov->add_option("--radius", radius)->check(CLI::PositiveNumber);
  gromov->add_option("--plane", plane);
  handlers[gromov] = [&] {
    const ProjectionArea r = projection_area_check(load_symplectic(matrix, g.tol), radius, plane, g.tol);
    return dump({{"area", r.area}, {"bound", r.bound}, {"passes", r.passes}, {"equality", r.equality}});
  };

  auto* fourier = add("fourier", "hbar-scaled Fourier transform of a sampled function");
  fourier->add_option("--function", function)->required();
  handlers[fourier] = [&] {
    return dump(io::to_json(hbar_fourier(io::function_from_json(load(function), g.hbar))));
  };

  std::vector<double> gaussian;
  int hermite = -1;
  double half_x = 1.0;
  std::optional<double> half_p;
  auto* conc = add("concentration", "concentration of a function and its Fourier transform");
  conc->add_option("--function", function);
  conc->add_option("--gaussian", gaussian, "w,y")->delimiter(',')->expected(2);
  conc->add_option("--hermite", hermite, "order m");
  conc->add_option("--half-width", half_x)->check(CLI::NonNegativeNumber);
  conc->add_option("--p-half-width", half_p)->check(CLI::NonNegativeNumber);
  handlers[conc] = [&] {
    SampledFunction f;
    if (!function.empty()) {
      f = io::function_from_json(load(function), g.hbar);
    } else if (!gaussian.empty()) {
      const double scale = std::sqrt(g.hbar / gaussian[0]);
      f = sample_gaussian(gaussian[0], gaussian[1], g.hbar, default_half_width(scale));
    } else if (hermite >= 0) {
      f = sample_hermite(hermite, g.hbar, default_half_width(std::sqrt(g.hbar * (2 * hermite + 1))));
    } else {
      throw io::InputError("--function, --gaussian or --hermite is required");
    }
    json j = {{"eps_x", concentration(f, half_x)}, {"x_half_width", half_x}};
    if (half_p) {
      j["eps_p"] = concentration(hbar_fourier(f), *half_p);
      j["p_half_width"] = *half_p;
    }
    return dump(j);
  };

  double eps_x = 0.0, eps_p = 0.0;
  bool polar = false;
  auto* ds = add("ds-check", "Donoho-Stark and polar concentration bounds");
  ds->add_option("--eps-x", eps_x)->required();
  ds->add_option("--eps-p", eps_p)->required();
  ds->add_option("--cx", cx, "half widths of C_X")->delimiter(',');
  ds->add_option("--cp", cp, "half widths of C_P")->delimiter(',');
  ds->add_flag("--polar", polar, "evaluate the polar-duality bound instead");
  ds->add_option("--n", dim);
  handlers[ds] = [&] {
    if (polar) {
      const PolarConcentrationReport r = polar_concentration_bound(dim, g.hbar, eps_x, eps_p, g.tol);
      return dump({{"lhs", r.lhs}, {"rhs", r.rhs}, {"stirling_envelope", r.stirling_envelope},
                   {"eps_sum_floor", r.eps_sum_floor}, {"vacuous", r.vacuous},
                   {"consistent", r.consistent}});
    }
    if (cx.empty() || cp.empty()) throw io::InputError("--cx and --cp are required");
    const DonohoStarkReport r = donoho_stark_check(
        eps_x, eps_p, Eigen::Map<const Vec>(cx.data(), static_cast<Eigen::Index>(cx.size())),
        Eigen::Map<const Vec>(cp.data(), static_cast<Eigen::Index>(cp.size())), g.hbar, g.tol);
    return dump({{"lhs", r.lhs}, {"rhs", r.rhs}, {"vacuous", r.vacuous}, {"consistent", r.consistent}});
  };

  auto* hardy = add("hardy-check", "Hardy regime of Gaussian decay bounds A, B");
  hardy->add_option("--a", a_arg)->required();
  hardy->add_option("--b", b_arg)->required();
  handlers[hardy] = [&] {
    const HardyReport r = hardy_check(io::mat_from_json(load(a_arg), "A"),
                                      io::mat_from_json(load(b_arg), "B"), g.hbar, g.tol);
    return dump({{"eigs", io::to_json(r.eigs)}, {"regime", to_string(r.regime)},
                 {"polar_equivalent", r.polar_equivalent}});
  };

  std::vector<std::string> suites = {"all"};
  std::string seeds;
  auto* sweep = add("sweep", "run property suites over a seed range");
  sweep->add_option("--suite", suites)->delimiter(',');
  sweep->add_option("--seeds", seeds, "a..b (inclusive); defaults to --seed");
  handlers[sweep] = [&] {
    const auto [first, last] = seeds.empty() ? std::pair{g.seed, g.seed} : parse_seeds(seeds);
    const auto rows = run_sweep(suites, first, last, g.hbar);
    return g.format == "csv" ? to_csv(rows) : dump(rows_to_json(rows));
  };

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << json{{"error", {{"kind", "malformed_input"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 1;
  }

  try {
    g.tol = tol_flag ? *tol_flag : default_tol();
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == sweep && format_opt->count() == 0 && g.out.size() >= 4 &&
        g.out.compare(g.out.size() - 4, 4, ".csv") == 0) {
      g.format = "csv";
    }
    if (g.format == "csv" && chosen != sweep) throw io::InputError("--format csv is only supported by sweep");
    emit(handlers.at(chosen)(), g, out);
    return 0;
  } catch (const Error& e) {
    err << "symplecta: " << to_string(e.kind()) << ": " << e.what() << "\n";
    out << io::to_json(e).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    // InputError, JSON parse/type errors, unknown sweep suites.
    err << "symplecta: malformed input: " << e.what() << "\n";
    out << json{{"error", {{"kind", "malformed_input"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 1;
  }
}

}  // namespace symplecta
