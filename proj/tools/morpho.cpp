// morpho: generate, analyze, verify and render erosion-resilient sets.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "morpho/acceptance.hpp"
#include "morpho/scene.hpp"
#include "morpho/svg.hpp"

namespace {

using namespace morpho;

enum Exit { kPass = 0, kInputError = 2, kNotResilient = 3, kVerifyFailed = 4 };

struct Common {
  std::optional<int> grid;
  std::optional<double> spacing;
  unsigned seed = 0;

  WindowOverride window() const { return {grid, spacing}; }
};

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") std::cout << dump_json(j);
  else write_text(out, dump_json(j));
}

Similarityd load_sigma(const std::string& arg, int dimension) {
  if (arg == "identity") return Similarityd::identity(dimension);
  Similarityd s = similarity_from_json(read_json(arg));
  if (s.dimension() != dimension) throw Error(ErrorKind::DimensionMismatch, "similarity and scene dimensions differ");
  return s;
}

int cmd_generate(const std::string& spec, const std::string& out, const Common& c) {
  const Scene scene = load_scene(spec, c.window());
  save_payload(scene, out);
  std::cerr << "wrote " << payload_name(scene.payload) << " to " << out << "\n";
  return kPass;
}

int cmd_analyze(const std::string& path, std::optional<double> tol, std::vector<double> radii, const std::string& out,
                const Common& c) {
  const Scene scene = load_scene(path, c.window());
  const auto* p = std::get_if<HPolytope>(&scene.payload);
  if (!p) throw Error(ErrorKind::InvalidArgument, "analyze needs a polytope payload");
  if (radii.empty()) radii = scene.radii;
  const ResilienceCertificate cert = classify(*p, tol);
  Json j = to_json(cert);
  Json predicted = Json::array();
  std::cerr << "kind: " << to_string(cert.kind) << "\n";
  if (cert.inscribed) std::cerr << "inscribed radius: " << cert.inscribed->radius << "\n";
  if (cert.exscribed) std::cerr << "exscribed radius: " << cert.exscribed->radius << "\n";
  if (cert.direction) std::cerr << "translation direction: " << cert.direction->transpose() << "\n";
  if (!cert.diagnostic.empty()) std::cerr << "note: " << cert.diagnostic << "\n";
  if (cert.kind != ResilienceKind::None) {
    for (double r : radii) {
      const Similarityd s = predicted_sigma(cert, r);
      predicted.push_back(Json{{"radius", r}, {"sigma", to_json(s)}});
      std::cerr << "r = " << r << ": scale " << s.scale() << ", offset " << s.offset().transpose() << "\n";
    }
  }
  j["predicted"] = predicted;
  emit(j, out);
  return cert.kind == ResilienceKind::None ? kNotResilient : kPass;
}

int cmd_verify(const std::string& path, double r, const std::string& sigma_arg, bool predicted, std::optional<double> tol,
               std::optional<double> window, const std::string& out, const Common& c) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidRadius, "--radius must be > 0");
  const Scene scene = load_scene(path, c.window());
  Json rep{{"format", kFormatVersion}, {"payload", payload_name(scene.payload)}, {"radius", r}};
  bool passed = false;

  auto pick_sigma = [&]() -> Similarityd {
    if (!sigma_arg.empty()) return load_sigma(sigma_arg, scene.dimension);
    if (scene.spiral && (predicted || !scene.transform)) return spiral_sigma(*scene.spiral, r);
    if (scene.transform) return *scene.transform;
    throw Error(ErrorKind::InvalidArgument, "no similarity: pass --sigma or --predicted");
  };

  if (const auto* p = std::get_if<HPolytope>(&scene.payload)) {
    Similarityd s = Similarityd::identity(scene.dimension);
    if (predicted && sigma_arg.empty()) {
      const ResilienceCertificate cert = classify(*p, tol);
      rep["kind"] = to_string(cert.kind);
      s = cert.kind == ResilienceKind::None ? chebyshev_candidate(*p, r) : predicted_sigma(cert, r);
    } else {
      s = pick_sigma();
    }
    const SimilarityCheck chk = verify_similarity_report(*p, r, s, tol);
    passed = chk.passed;
    rep["sigma"] = to_json(s);
    rep["facet_residual"] = chk.max_offset_residual;
    rep["max_angle"] = chk.max_angle;
    rep["eroded_facets"] = chk.eroded_facets;
    rep["image_facets"] = chk.image_facets;
    if (!chk.reason.empty()) rep["reason"] = chk.reason;
  } else if (const auto* rs = std::get_if<RasterSet>(&scene.payload)) {
    const Similarityd s = pick_sigma();
    const RasterVerification v = verify_resilience_raster(*rs, r, s, tol.value_or(2.0));
    passed = v.passed;
    rep["sigma"] = to_json(s);
    rep["hausdorff_pixels"] = v.hausdorff / v.spacing;
    rep["tolerance_pixels"] = v.tolerance / v.spacing;
    rep["spacing"] = v.spacing;
    rep["valid_area"] = v.valid_area;
  } else {
    const auto& x = std::get<IntervalSet1D>(scene.payload);
    const Similarityd s = pick_sigma();
    // Doubles are dyadic rationals, so the conversion is exact.
    const Rational a = Rational(s.scale()) * Rational(s.rotation()(0, 0));
    const Rational b(s.offset()(0));
    if (b != 0) throw Error(ErrorKind::InvalidArgument, "interval verification supports maps x -> c x only");
    IntervalSet1D lhs = erode1d(x, Rational(r)), rhs = scale1d(x, a);
    if (window) {
      lhs = restrict_to(lhs, Rational(*window));
      rhs = restrict_to(rhs, Rational(*window));
      rep["window"] = *window;
    }
    passed = lhs == rhs;
    rep["factor"] = format_rational(a);
  }
  rep["passed"] = passed;
  emit(rep, out);
  return passed ? kPass : kVerifyFailed;
}

int cmd_render(const std::string& path, const std::string& out, const std::string& layers, const Common& c) {
  const Scene scene = load_scene(path, c.window());
  if (scene.dimension != 2) throw Error(ErrorKind::UnsupportedDimension, "render needs a 2-D payload");
  write_text(out, render_svg(scene, parse_layers(layers)));
  return kPass;
}

int cmd_acceptance(const std::string& filter, const std::string& out, const std::string& data_dir, const Common& c) {
  AcceptanceOptions opts{filter, data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir), c.seed};
  const auto results = run_acceptance(opts, [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; });
  const Json j = results_json(results);
  if (!out.empty()) write_text(out, dump_json(j));
  return j["passed"].get<bool>() ? kPass : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphological erosion, resilience classification and example-set construction."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--grid", common.grid, "Raster side length for generated scenes");
  app.add_option("--spacing", common.spacing, "Pixel spacing for generated scenes (world units)");
  app.add_option("--seed", common.seed, "Random seed")->default_val(0);

  std::string scene, out, sigma, layers, filter, data_dir;
  std::optional<double> tol, window;
  std::vector<double> radii;
  double radius = 0;
  bool predicted = false;

  auto* gen = app.add_subcommand("generate", "Build a set from a generator spec");
  gen->add_option("spec", scene, "Generator spec or scene JSON")->required();
  gen->add_option("-o,--out", out, "Output file (.json, .txt or .pgm by payload)")->required();

  auto* ana = app.add_subcommand("analyze", "Classify a polytope");
  ana->add_option("scene", scene)->required();
  ana->add_option("--tol", tol, "Tangency tolerance (default 1e-8 * max(1, max |offset|))");
  ana->add_option("--radius", radii, "Radii for which to print the predicted similarity");
  ana->add_option("-o,--out", out, "Certificate JSON (default stdout)");

  auto* ver = app.add_subcommand("verify", "Check e_r(X) = sigma(X)");
  ver->add_option("scene", scene)->required();
  ver->add_option("--radius", radius, "Erosion radius (world units)")->required();
  auto* sig = ver->add_option("--sigma", sigma, "Similarity JSON file, or 'identity'");
  ver->add_flag("--predicted", predicted, "Use the predicted similarity")->excludes(sig);
  ver->add_option("--tol", tol, "Facet tolerance (polytopes) or Hausdorff pixels (rasters, default 2)");
  ver->add_option("--window", window, "Interval sets: compare on [-w, w] only");
  ver->add_option("-o,--out", out, "Report JSON (default stdout)");

  auto* ren = app.add_subcommand("render", "Render a 2-D scene to SVG");
  ren->add_option("scene", scene)->required();
  ren->add_option("-o,--out", out, "SVG file")->required();
  ren->add_option("--layers", layers, "erosion:r1,r2 and/or inscribed, joined by ';'");

  auto* acc = app.add_subcommand("acceptance", "Run the acceptance criteria");
  acc->add_option("--filter", filter, "Suite name or criterion number");
  acc->add_option("--json", out, "Results JSON file");
  acc->add_option("--data-dir", data_dir, "Golden files (default $MORPHO_DATA_DIR or the source tree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) return cmd_generate(scene, out, common);
    if (*ana) return cmd_analyze(scene, tol, radii, out, common);
    if (*ver) return cmd_verify(scene, radius, sigma, predicted, tol, window, out, common);
    if (*ren) return cmd_render(scene, out, layers, common);
    if (*acc) return cmd_acceptance(filter, out, data_dir, common);
  } catch (const Error& e) {
    std::cerr << "morpho: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "morpho: " << e.what() << "\n";
    return 1;
  }
  return kInputError;
}
