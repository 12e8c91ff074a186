#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sys/wait.h>

#include "morpho/scene.hpp"
#include "morpho/svg.hpp"

using namespace morpho;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("morpho_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

const char* kSquare = R"({"format": 1, "dimension": 2, "polytope": [
  {"normal": [1, 0], "offset": 1}, {"normal": [-1, 0], "offset": 0},
  {"normal": [0, 1], "offset": 1}, {"normal": [0, -1], "offset": 0}]})";

fs::path put(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  write_text(p, text);
  return p;
}

// Exit status of the CLI; stdout goes to <scratch>/stdout.
int run(const std::string& args) {
  const std::string cmd = std::string("\"") + MORPHO_CLI + "\" " + args + " > \"" + (scratch() / "stdout").string() +
                          "\" 2> \"" + (scratch() / "stderr").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("pgm round trip keeps bits, window and policy") {
  Vecd origin(2);
  origin << -3.125, 0.7;
  RasterSet rs(RasterWindow(origin, 0.37, {13, 7}), BorderPolicy::Inside, 1.5);
  std::mt19937_64 g(2);
  for (std::size_t i = 0; i < rs.size(); ++i) rs.set(i, g() % 3 == 0);
  const fs::path p = scratch() / "round.pgm";
  write_pgm(p, rs);
  CHECK(fs::exists(sidecar_path(p)));
  CHECK(read_pgm(p) == rs);

  // Flip a pixel byte to a gray level.
  std::string bytes = read_text(p);
  bytes[bytes.size() - 5] = 7;
  write_text(p, bytes);
  CHECK_THROWS_AS(read_pgm(p), Error);
}

TEST_CASE("pgm orientation puts the top row at the largest y index") {
  RasterSet rs(RasterWindow(Vecd::Zero(2), 1.0, {3, 2}));
  rs.set(rs.window().flat_index({0, 1, 0}), true);
  const fs::path p = scratch() / "orient.pgm";
  write_pgm(p, rs);
  const std::string bytes = read_text(p);
  CHECK(static_cast<unsigned char>(bytes[bytes.size() - 6]) == 255);
  CHECK(static_cast<unsigned char>(bytes[bytes.size() - 3]) == 0);
}

TEST_CASE("scene parsing errors") {
  auto kind_of = [](const std::string& text) {
    try {
      scene_from_json(parse_json(text), scratch());
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind_of(R"({"polytope": [], "generator": {"type": "koch"}})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"format": 2, "generator": {"type": "koch"}})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"generator": {"type": "nonsense"}})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"generator": {"type": "regular_polygon"}})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"dimension": 3, "generator": {"type": "regular_polygon", "sides": 5}})") == ErrorKind::DimensionMismatch);
  CHECK(kind_of(R"({"polytope": [{"normal": [1, 0]}]})") == ErrorKind::Parse);
  CHECK_THROWS_AS(parse_json("{\"format\": 1,"), Error);

  const Scene s = load_scene(put("square.json", kSquare));
  CHECK(s.dimension == 2);
  CHECK(std::holds_alternative<HPolytope>(s.payload));
}

TEST_CASE("layer specs") {
  const LayerSpec both = parse_layers("erosion:0.1,0.25;inscribed");
  CHECK(both.erosion_radii == std::vector<double>{0.1, 0.25});
  CHECK(both.inscribed);
  CHECK(parse_layers("").erosion_radii.empty());
  CHECK_THROWS_AS(parse_layers("erosion:-1"), Error);
  CHECK_THROWS_AS(parse_layers("shading"), Error);
}

TEST_CASE("svg output is deterministic with one group per layer") {
  const Scene s = load_scene(put("square.json", kSquare));
  const std::string a = render_svg(s, parse_layers("erosion:0.1,0.25"));
  CHECK(a == render_svg(s, parse_layers("erosion:0.1,0.25")));
  CHECK(occurrences(a, "<g id=\"layer-") == 3);
  CHECK(occurrences(render_svg(s, parse_layers("inscribed")), "<circle") == 1);
}

TEST_CASE("cli exit codes") {
  const fs::path square = put("square.json", kSquare);
  const fs::path rect = put("rect.json", R"({"type": "box", "lo": [0, 0], "hi": [1, 2]})");
  const fs::path cube = put("cube.json", R"({"type": "box", "lo": [0, 0, 0], "hi": [1, 1, 1]})");
  const fs::path broken = put("broken.json", "{\"format\": 1, ");

  CHECK(run("analyze " + quoted(square)) == 0);
  CHECK(read_text(scratch() / "stdout").find("\"decreasing\"") != std::string::npos);
  CHECK(run("analyze " + quoted(rect)) == 3);
  CHECK(run("verify " + quoted(square) + " --radius 0.25 --predicted") == 0);
  CHECK(run("verify " + quoted(square) + " --radius 0.25 --sigma identity") == 4);
  CHECK(run("render " + quoted(cube) + " -o " + quoted(scratch() / "cube.svg")) == 2);
  CHECK(run("analyze " + quoted(broken)) == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("generate " + quoted(square) + " -o " + quoted(scratch() / "copy.json")) == 0);
  CHECK(load_scene(scratch() / "copy.json").dimension == 2);
  CHECK(run("acceptance --filter 5") == 0);
  CHECK(read_text(scratch() / "stdout").rfind("PASS [5]", 0) == 0);
  CHECK(run("acceptance --filter nothing") == 2);
}
