#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "csrbf/raster.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the tool with stderr folded into the captured output.
Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CSRBF_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("csrbf-cli-test-" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

const fs::path kData(CSRBF_DATA_DIR);

}  // namespace

TEST_CASE("min-support") {
  const Run one = cli("min-support --family gneiting-7-2 --delta 1");
  CHECK(one.code == 0);
  CHECK(one.out == "family,r_star_over_c,slope_min,c_min_over_delta,c_min\n"
                   "gneiting-7-2,0.172602199,-3.59850681,5.08905713,5.08905713\n");

  const Run all = cli("min-support --all --delta 1");
  CHECK(all.code == 0);
  const auto wu = all.out.find("\nwu,");
  const auto wendland = all.out.find("\nwendland,");
  const auto g72 = all.out.find("\ngneiting-7-2,");
  const auto g5 = all.out.find("\ngneiting-5,");
  CHECK(wu < wendland);
  CHECK(wendland < g72);
  CHECK(g72 < g5);
  CHECK(g5 != std::string::npos);

  CHECK(cli("min-support --family wendland --delta 0").code == 2);
  CHECK(cli("min-support --family nope --delta 1").code == 2);
  CHECK(cli("min-support --family gneiting --delta 1").code == 2);
  CHECK(cli("min-support --family gneiting --l 3 --delta 1").code == 2);
  CHECK(cli("min-support --family gneiting --l 6 --delta 1").code == 0);
  CHECK(cli("no-such-command").code == 2);
}

TEST_CASE("figures are deterministic") {
  TempDir a;
  TempDir b;
  b.path += "-b";
  fs::create_directories(b.path);
  REQUIRE(cli("figures --id 5.2 --kernel gneiting-7-2 --out-dir \"" + a.path.string() + "\"").code == 0);
  REQUIRE(cli("figures --id 5.2 --kernel gneiting-7-2 --out-dir \"" + b.path.string() + "\"").code == 0);
  const std::string svg = slurp(a.path / "fig5.2-gneiting-7-2.svg");
  CHECK(svg.find("c = 100") != std::string::npos);
  CHECK(svg == slurp(b.path / "fig5.2-gneiting-7-2.svg"));
  fs::remove_all(b.path);

  REQUIRE(cli("figures --id 4.1 --out-dir \"" + a.path.string() + "\"").code == 0);
  for (const char* k : {"wendland", "wu", "gneiting-7-2", "gneiting-5"}) {
    CHECK(fs::exists(a.path / (std::string("fig4.1-") + k + ".svg")));
  }

  REQUIRE(cli("figures --id fig2-curve --out-dir \"" + a.path.string() + "\"").code == 0);
  const std::string csv = slurp(a.path / "fig2-curve.csv");
  CHECK(csv.rfind("y,kernel,det\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);

  CHECK(cli("figures --id 9.9").code == 2);
  CHECK(cli("figures --id 4.1 --c -1").code == 2);
}

TEST_CASE("fit-warp") {
  TempDir tmp;
  const std::string image = "--image \"" + (kData / "brain_synthetic.pgm").string() + "\"";
  const std::string out = " --out \"" + (tmp.path / "out.pgm").string() + "\"";

  SUBCASE("identity landmarks leave the image byte-identical") {
    std::ofstream(tmp.path / "id.csv") << "sx,sy,tx,ty\n30,30,30,30\n90,70,90,70\n";
    const Run r = cli("fit-warp --kernel wu --c 25 --landmarks \"" + (tmp.path / "id.csv").string() + "\" " + image + out);
    CHECK(r.code == 0);
    CHECK(slurp(tmp.path / "out.pgm") == slurp(kData / "brain_synthetic.pgm"));
  }
  SUBCASE("topology contrast, JSON landmarks and det CSV") {
    const std::string lm = " --landmarks \"" + (kData / "brain_landmarks.json").string() + "\" ";
    const std::string det = " --det-csv \"" + (tmp.path / "det.csv").string() + "\" --det-nx 64 --det-ny 32";
    CHECK(cli("fit-warp --kernel gneiting-7-2 --c 20 --require-topology" + lm + image + out + det).code == 0);
    const std::string csv = slurp(tmp.path / "det.csv");
    CHECK(csv.rfind("# region: 0,0,127,127\n# resolution: 64,32\n# min_det: ", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 35);
    CHECK(cli("fit-warp --kernel gneiting-7-2 --c 2 --require-topology" + lm + image + out).code == 3);
    CHECK(cli("fit-warp --kernel gneiting-7-2 --c 2" + lm + image + out).code == 0);
    CHECK(cli("fit-warp --kernel gneiting-7-2 --c auto --require-topology" + lm + image + out).code == 0);
  }
  SUBCASE("malformed landmarks report the line") {
    std::ofstream(tmp.path / "bad.csv") << "sx,sy,tx,ty\n1,2,3,4\n5,6,seven,8\n";
    const Run r = cli("fit-warp --kernel wu --c 5 --landmarks \"" + (tmp.path / "bad.csv").string() + "\" " + image + out);
    CHECK(r.code == 2);
    CHECK(r.out.find("line 3") != std::string::npos);
  }
  SUBCASE("near-duplicate landmarks are a conditioning failure") {
    std::ofstream(tmp.path / "dup.csv") << "sx,sy,tx,ty\n40,40,41,40\n60,60,41,40.0000000001\n";
    const Run r = cli("fit-warp --kernel gneiting-5 --c 30 --landmarks \"" + (tmp.path / "dup.csv").string() + "\" " +
                      image + out);
    CHECK(r.code == 4);
  }
  SUBCASE("usage errors") {
    const std::string lm = " --landmarks \"" + (kData / "brain_landmarks.csv").string() + "\" ";
    CHECK(cli("fit-warp --kernel wu --c zero" + lm + image + out).code == 2);
    CHECK(cli("fit-warp --kernel wu" + lm + image + out).code == 2);
    CHECK(cli("fit-warp --kernel wu --c 5 --landmarks /nonexistent.csv " + image + out).code == 2);
  }
}
