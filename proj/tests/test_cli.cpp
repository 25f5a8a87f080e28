#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "mband/io.hpp"

using namespace mband;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "mband_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  const std::string cmd = "cd '" + work_dir().string() + "' && '" MBAND_CLI_PATH "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path file(const std::string& name) { return work_dir() / name; }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("filter command") {
  const Result q = run("filter --family bspline --N 3 --degree 2");
  CHECK(q.code == 0);
  CHECK(contains(q.out, "h[-2] = (1/9)/sqrt(3)"));
  CHECK(contains(q.out, "h[1] = (7/9)/sqrt(3)"));
  CHECK(contains(q.out, "h[4] = (1/9)/sqrt(3)"));

  const Result h = run("filter --family haar --N 4");
  CHECK(h.code == 0);
  for (int k = 0; k < 4; ++k) CHECK(contains(h.out, "h[" + std::to_string(k) + "] = (1)/sqrt(4) = 0.5\n"));

  CHECK(run("filter --family bspline --N 3 --degree 99").code == 2);
  CHECK(run("filter --family bspline --N 1 --degree 1").code == 2);
  CHECK(run("filter --family wobble --N 3").code == 2);
  CHECK(run("filter --family shannon --N 2 --half-width 8 --output shannon.json").code == 0);
  CHECK(fs::exists(file("shannon.json")));
}

TEST_CASE("bank and verify commands") {
  REQUIRE(run("bank --family bspline --N 3 --degree 1 --output b31.json").code == 0);
  const Result v = run("verify b31.json");
  CHECK(v.code == 0);
  CHECK(contains(v.out, "distortion sum_i G_i(z) H_i(1/z) = (1)"));
  CHECK(contains(v.out, "s = 2"));
  CHECK(contains(v.out, "PASS"));
  CHECK(run("verify --exact b31.json").code == 0);
  CHECK(run("verify --float b31.json").code == 0);
  CHECK(run("verify --exact --float b31.json").code == 2);

  // perturb one synthesis tap by 1e-3
  nlohmann::json j = nlohmann::json::parse(read_text(file("b31.json")));
  for (auto& f : j["filters"])
    if (f["role"] == "synthesis" && f["channel"] == 1) {
      f["taps_float"][0] = f["taps_float"][0].get<double>() + 1e-3;
      f["taps_exact"] = nullptr;
    }
  write_text(file("perturbed.json"), j.dump(2));
  const Result bad = run("verify perturbed.json");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "FAIL"));

  for (int n = 2; n <= 6; ++n) {
    REQUIRE(run("bank --family haar --N " + std::to_string(n) + " --output haar.json").code == 0);
    CHECK(run("verify haar.json").code == 0);
  }
  for (const char* a0 : {"unit", "orthogonal"})
    CHECK(run(std::string("bank --family bspline --N 3 --degree 2 --a0 ") + a0 + " --output q.json").code == 0);

  write_text(file("a0.txt"), "1 1 1\n1 -1 0\n1 1 -2\n");
  REQUIRE(run("bank --family bspline --N 3 --degree 2 --a0 file:a0.txt --output custom.json").code == 0);
  CHECK(run("verify custom.json").code == 0);
  write_text(file("singular.txt"), "1 1 1\n1 -1 0\n2 0 1\n");
  CHECK(run("bank --family bspline --N 3 --degree 2 --a0 file:singular.txt").code == 2);
  CHECK(run("bank --family bspline --N 3 --degree 2 --a0 file:missing.txt").code == 3);
  CHECK(run("bank --family bspline --N 3 --degree 2 --a0 sideways").code == 2);

  CHECK(run("verify nothing_here.json").code == 3);
  write_text(file("broken.json"), "{\"schema_version\": 1}");
  CHECK(run("verify broken.json").code == 3);
}

TEST_CASE("bank on stdout parses back") {
  const Result r = run("bank --family bspline --N 4 --degree 2");
  REQUIRE(r.code == 0);
  const FilterBank b = bank_from_json(nlohmann::json::parse(r.out));
  CHECK(b.dilation == 4);
  CHECK(verify_pr(b).pass());
}

TEST_CASE("analyze and synthesize") {
  REQUIRE(run("bank --family bspline --N 3 --degree 1 --output b.json").code == 0);
  Signal ramp(81);
  for (int i = 0; i < 81; ++i) ramp[i] = i;
  write_signal(file("ramp.txt"), ramp);
  const Result a = run("analyze --bank b.json --signal ramp.txt --levels 2 --output ramp_out");
  REQUIRE(a.code == 0);
  CHECK(contains(a.out, "round-trip max error"));
  for (const char* f : {"approximation.txt", "level1_detail1.txt", "level1_detail2.txt", "level2_detail1.txt",
                        "level2_detail2.txt", "manifest.json"})
    CHECK(fs::exists(file("ramp_out") / f));
  CHECK(read_signal(file("ramp_out/level1_detail1.txt")).size() == 27);
  CHECK(read_signal(file("ramp_out/approximation.txt")).size() == 9);

  REQUIRE(run("synthesize --input ramp_out --output ramp_back.txt").code == 0);
  const Signal back = read_signal(file("ramp_back.txt"));
  REQUIRE(back.size() == 81);
  CHECK((back - ramp).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(run("synthesize --input ramp_out/manifest.json --output ramp_back2.txt").code == 0);
  CHECK(read_text(file("ramp_back.txt")) == read_text(file("ramp_back2.txt")));

  REQUIRE(run("bank --family haar --N 3 --output h3.json").code == 0);
  write_signal(file("const.txt"), Signal::Constant(27, 2.5));
  REQUIRE(run("analyze --bank h3.json --signal const.txt --levels 3 --output const_out").code == 0);
  for (int level = 1; level <= 3; ++level)
    for (int k = 1; k <= 2; ++k) {
      const Signal d = read_signal(file("const_out") / ("level" + std::to_string(level) + "_detail" + std::to_string(k) + ".txt"));
      CHECK(d.cwiseAbs().maxCoeff() < 1e-14);
    }

  write_signal(file("s80.txt"), Signal::LinSpaced(80, 0, 1));
  CHECK(run("analyze --bank b.json --signal s80.txt --levels 2 --output s80_out").code == 2);
  REQUIRE(run("analyze --bank b.json --signal s80.txt --levels 2 --pad --output s80_pad").code == 0);
  REQUIRE(run("synthesize --input s80_pad --output s80_back.txt").code == 0);
  CHECK(read_signal(file("s80_back.txt")).size() == 80);
  CHECK(run("analyze --bank b.json --signal s80.txt --levels 1 --boundary zero --output s80_zero").code == 0);
  CHECK(run("analyze --bank b.json --signal nothing.txt --levels 1 --output x").code == 3);
  CHECK(run("synthesize --input nowhere").code == 3);
}

TEST_CASE("render command") {
  REQUIRE(run("bank --family bspline --N 3 --degree 1 --output b.json").code == 0);
  REQUIRE(run("render phi --bank b.json --depth 6 --output hat.txt").code == 0);
  const Signal x = read_signal(file("hat.txt"), 0), y = read_signal(file("hat.txt"), 1);
  REQUIRE(x.size() == y.size());
  CHECK(x.size() > 1000);
  double worst = 0;
  for (int i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - std::max(0.0, 1 - std::abs(x[i]))));
  CHECK(worst < 1e-6);

  REQUIRE(run("bank --family haar --N 2 --output h2.json").code == 0);
  REQUIRE(run("render psi --bank h2.json --channel 1 --depth 4 --output psi.txt").code == 0);
  const Signal px = read_signal(file("psi.txt"), 0), py = read_signal(file("psi.txt"), 1);
  for (int i = 0; i < px.size(); ++i) CHECK(std::abs(py[i]) == doctest::Approx(px[i] < 1.0 ? 1.0 : 0.0));

  CHECK(run("render phi --bank b.json --depth 0").code == 2);
  CHECK(run("render psi --bank h2.json --channel 2 --depth 3").code == 2);
  CHECK(run("render psi --bank h2.json --channel 0 --depth 3").code == 2);
  CHECK(run("render chi --bank h2.json --depth 3").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("filter --N").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bank --family bspline --N 3 --degree 2 --a0 orthogonal --output det.json", "det.json"},
      {"bank --family shannon --N 3 --half-width 32 --output det.json", "det.json"},
      {"render psi --bank b.json --channel 2 --depth 5 --output det.txt", "det.txt"},
      {"synthesize --input ramp_out --output det.txt", "det.txt"},
  };
  REQUIRE(run("bank --family bspline --N 3 --degree 1 --output b.json").code == 0);
  for (const auto& [args, out] : commands) {
    const Result r1 = run(args);
    REQUIRE(r1.code == 0);
    const std::string first = read_text(file(out));
    const Result r2 = run(args);
    CHECK(r2.out == r1.out);
    CHECK(read_text(file(out)) == first);
  }
  const Result f1 = run("filter --family bspline --N 5 --degree 4");
  CHECK(run("filter --family bspline --N 5 --degree 4").out == f1.out);

  REQUIRE(run("analyze --bank b.json --signal ramp.txt --levels 2 --output det_a").code == 0);
  REQUIRE(run("analyze --bank b.json --signal ramp.txt --levels 2 --output det_b").code == 0);
  for (const auto& entry : fs::directory_iterator(file("det_a")))
    CHECK(read_text(entry.path()) == read_text(file("det_b") / entry.path().filename()));
}
