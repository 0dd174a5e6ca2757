#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/invariants.hpp"
#include "crflat/io.hpp"
#include "crflat/sampling.hpp"
#include "test_helpers.hpp"

using namespace crflat;
using namespace crflat::testing;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::current_path() / "crflat_io_cli_work";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int run_cli(const std::string& args, const fs::path& stdout_to = {}) {
  const char* bin = std::getenv("CRFLAT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CRFLAT_BIN must point at the crflat binary");
  std::string cmd = std::string("'") + bin + "' " + args;
  cmd += stdout_to.empty() ? " > /dev/null 2>/dev/null"
                           : " > '" + stdout_to.string() + "' 2>/dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("series JSON: round trip, canonical order, byte stability") {
  Sampler s(401);
  for (int k = 0; k < 5; ++k) {
    Series a = s.random_series(8, 30);
    std::string text = series_to_json(a);
    Series b = series_from_json(text);
    CHECK(max_coeff_distance(a, b, 8) == 0.0);
    CHECK(b.order() == a.order());
    CHECK(series_to_json(b) == text);  // write-read-write is stable

    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "crflat-series-v1");
    CHECK(j["vars"] == nlohmann::json({"z1", "z1b", "z2", "z2b"}));
    // gradlex: degree ascending, ties lexicographic
    auto deg = [](const nlohmann::json& t) {
      int d = 0;
      for (int e : t["exp"]) d += e;
      return d;
    };
    for (size_t i = 1; i < j["terms"].size(); ++i) {
      int d0 = deg(j["terms"][i - 1]), d1 = deg(j["terms"][i]);
      CHECK(d0 <= d1);
      if (d0 == d1) CHECK(j["terms"][i - 1]["exp"] < j["terms"][i]["exp"]);
    }
  }

  CHECK_THROWS_AS((void)series_from_json("{\"format\":\"nope\"}"), Error);
  CHECK_THROWS_AS((void)series_from_json("not json"), Error);
}

TEST_CASE("config and sidecar files") {
  ConstructConfig cfg;
  cfg.order = 10;
  cfg.rho.set_coeff(1, Complex(1.0, 0.25));
  cfg.seed.set_coeff(0, Complex(0.5, -0.5));
  fs::path p = work_dir() / "config.json";
  write_config_file(p.string(), cfg);
  ConstructConfig back = read_config_file(p.string());
  CHECK(back.order == 10);
  CHECK(std::abs(back.rho.coeff(1) - Complex(1.0, 0.25)) < 1e-16);
  CHECK(std::abs(back.seed.coeff(0) - Complex(0.5, -0.5)) < 1e-16);

  Sampler s(409);
  AdmissibleInput in = s.admissible_input(4);
  RigidModelData d = build_model_data(in.rho, in.seed, 10);
  fs::path sp = work_dir() / "sidecar.json";
  write_sidecar_file(sp.string(), d);
  RigidModelData back2 = read_sidecar_file(sp.string());
  CHECK(max_coeff_distance(d.r, back2.r) == 0.0);
  CHECK(max_coeff_distance(d.u, back2.u) == 0.0);
}

TEST_CASE("report JSON: flags, magnitudes, error markers, tolerances") {
  InvariantReport rep = full_report(mtilde0(12));
  auto j = nlohmann::json::parse(report_to_json(rep, false));
  CHECK(j["format"] == "crflat-report-v1");
  CHECK(j["order_in"] == 12);
  CHECK(j["flags"]["cr_flat_candidate"]["value"] == true);
  CHECK(j["flags"]["cr_flat_candidate"]["order"] == 6);
  CHECK(j["max_residual_magnitudes"]["ma"].get<double>() <= 1e-9);
  CHECK(j["tolerances"]["cmp_rel"].get<double>() == 1e-9);
  CHECK_FALSE(j.contains("errors"));
  CHECK_FALSE(j.contains("series"));

  auto je = nlohmann::json::parse(report_to_json(rep, true));
  CHECK(je.contains("series"));
  CHECK(je["series"]["S"]["format"] == "crflat-series-v1");

  Series f2 = (z1() * z1b()) * (one() + z2() * z2b());
  InvariantReport rep2 = full_report(HypersurfaceGerm(f2.truncated(10)));
  auto j2 = nlohmann::json::parse(report_to_json(rep2, false));
  CHECK(j2["max_residual_magnitudes"]["J"].is_null());
  CHECK(j2["errors"]["J"] == "TwoDegenerate");
}

TEST_CASE("grid CSV shape") {
  GridSample g = eval_grid(one(4), 0.3, 8, Var::z2);
  std::string csv = grid_to_csv(g);
  CHECK(csv.rfind("x,y,re,im\n", 0) == 0);
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 65);  // header + 64 nodes
}

TEST_CASE("cli: mtilde0 output, determinism, bounds") {
  fs::path out = work_dir() / "m4.json";
  CHECK(run_cli("mtilde0 --order 4 --out '" + out.string() + "'") == 0);
  Series f4 = read_series_file(out.string());
  CHECK(f4.terms().size() == 4);
  CHECK(std::abs(f4.coeff(mono(2, 0, 0, 1)) - Complex(0.5)) < 1e-16);

  fs::path out2 = work_dir() / "m4_again.json";
  CHECK(run_cli("mtilde0 --order 4 --out '" + out2.string() + "'") == 0);
  CHECK(slurp(out) == slurp(out2));

  fs::path out3 = work_dir() / "m2.json";
  CHECK(run_cli("mtilde0 --order 2 --out '" + out3.string() + "'") == 0);
  CHECK(read_series_file(out3.string()).terms().size() == 1);

  CHECK(run_cli("mtilde0 --order 1 --out '" + out.string() + "'") == 2);
  CHECK(run_cli("mtilde0 --order 40 --out '" + out.string() + "'") == 2);
}

TEST_CASE("cli: construct pipeline, validation exits") {
  ConstructConfig cfg;
  cfg.order = 12;
  cfg.rho.set_coeff(1, Complex(1.0));  // rho = z2
  fs::path cfgp = work_dir() / "c_idmap.json";
  write_config_file(cfgp.string(), cfg);

  fs::path fout = work_dir() / "c_F.json";
  fs::path side = work_dir() / "c_side.json";
  CHECK(run_cli("construct --config '" + cfgp.string() + "' --out '" +
                fout.string() + "' --sidecar '" + side.string() + "'") == 0);
  Series F = read_series_file(fout.string());
  Series doubled = 2.0 * mtilde0(12).graphing_function();
  CHECK(max_coeff_distance(F, doubled, 12) <= 1e-10);
  RigidModelData d = read_sidecar_file(side.string());
  CHECK(approx_equal(diff(d.t, Var::z2b), 0.25 * (d.r * d.r)));

  // rho with vanishing derivative: precondition exit
  ConstructConfig bad = cfg;
  bad.rho = HoloSeries{};
  bad.rho.set_coeff(0, Complex(0.5));
  fs::path badp = work_dir() / "c_bad.json";
  write_config_file(badp.string(), bad);
  CHECK(run_cli("construct --config '" + badp.string() + "' --out '" +
                fout.string() + "'") == 2);

  ConstructConfig low = cfg;
  low.order = 4;
  fs::path lowp = work_dir() / "c_low.json";
  write_config_file(lowp.string(), low);
  CHECK(run_cli("construct --config '" + lowp.string() + "' --out '" +
                fout.string() + "'") == 2);

  CHECK(run_cli("construct --config '" + (work_dir() / "missing.json").string() +
                "' --out '" + fout.string() + "'") == 3);
}

TEST_CASE("cli: invariants exit codes 0/1/2") {
  fs::path m12 = work_dir() / "i_m12.json";
  REQUIRE(run_cli("mtilde0 --order 12 --out '" + m12.string() + "'") == 0);
  fs::path rep = work_dir() / "i_report.json";
  CHECK(run_cli("invariants --in '" + m12.string() + "' --report '" +
                rep.string() + "'") == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  CHECK(j["flags"]["cr_flat_candidate"]["value"] == true);

  fs::path quad = work_dir() / "i_quadric.json";
  write_series_file(quad.string(), (z1() * z1b() + z2() * z2b()).truncated(8));
  CHECK(run_cli("invariants --in '" + quad.string() + "' --report '" +
                rep.string() + "'") == 1);
  auto j1 = nlohmann::json::parse(slurp(rep));
  CHECK(j1["flags"]["levi_rank_one"]["value"] == false);

  fs::path notreal = work_dir() / "i_notreal.json";
  write_series_file(notreal.string(),
                    (z1() * z1b() + z2()).truncated(8));
  CHECK(run_cli("invariants --in '" + notreal.string() + "' --report '" +
                rep.string() + "'") == 2);

  fs::path low = work_dir() / "i_low.json";
  write_series_file(low.string(), (z1() * z1b()).truncated(4));
  CHECK(run_cli("invariants --in '" + low.string() + "' --report '" +
                rep.string() + "'") == 2);
}

TEST_CASE("cli: check subcommand verdicts and validation") {
  fs::path m12 = work_dir() / "k_m12.json";
  REQUIRE(run_cli("mtilde0 --order 12 --out '" + m12.string() + "'") == 0);
  fs::path verdict = work_dir() / "k_fd.jsonl";
  CHECK(run_cli("check --kind fd --in '" + m12.string() + "' --radius 0.3 --n 16",
                verdict) == 0);
  {
    std::ifstream in(verdict);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
      auto j = nlohmann::json::parse(line);
      CHECK(j["check"] == "fd");
      CHECK(j["pass"] == true);
      ++count;
    }
    CHECK(count == 2);
  }

  ConstructConfig cfg;
  cfg.order = 12;
  cfg.rho.set_coeff(1, Complex(1.0));
  cfg.seed.set_coeff(0, Complex(1.0));
  fs::path cfgp = work_dir() / "k_cfg.json";
  write_config_file(cfgp.string(), cfg);
  fs::path fout = work_dir() / "k_F.json";
  fs::path side = work_dir() / "k_side.json";
  REQUIRE(run_cli("construct --config '" + cfgp.string() + "' --out '" +
                  fout.string() + "' --sidecar '" + side.string() + "'") == 0);
  fs::path cpv = work_dir() / "k_cp.jsonl";
  CHECK(run_cli("check --kind cauchy-pompeiu --in '" + side.string() +
                "' --radius 0.3 --n 64", cpv) == 0);
  auto j = nlohmann::json::parse(slurp(cpv));
  CHECK(j["check"] == "cauchy-pompeiu");
  CHECK(j["max_residual"].get<double>() <= 5e-3);

  CHECK(run_cli("check --kind cauchy-pompeiu --in '" + side.string() +
                "' --radius 0.3 --n 4") == 2);
  CHECK(run_cli("check --kind nonsense --in '" + side.string() +
                "' --radius 0.3 --n 64") == 2);
}
