#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hecke/error.hpp"
#include "hecke/plot_data.hpp"
#include "hecke/run.hpp"

using namespace hecke;
namespace fs = std::filesystem;

TEST_SUITE("run") {
  TEST_CASE("flags beat the file, the file beats defaults") {
    fs::path p = fs::temp_directory_path() / "hecke-run-config.txt";
    {
      std::ofstream out(p);
      out << "# moments knobs\nT = 300\nsamples=20  # trailing comment\nseed = 9\n";
    }
    RunConfig c = make_config("moments", {{"disc", "47"}, {"seed", "4"}}, p.string());
    CHECK(c.text("T") == "300");
    CHECK(c.sources.at("T") == "file");
    CHECK(c.integer("seed") == 4);
    CHECK(c.sources.at("seed") == "flag");
    CHECK(c.text("A") == "1");
    CHECK(c.sources.at("A") == "default");
    {
      std::ofstream out(p);
      out << "bins = 3\n";
    }
    CHECK_THROWS_AS(make_config("moments", {{"disc", "47"}}, p.string()), DomainError);
    CHECK_THROWS_AS(make_config("field", {{"disc", "47"}, {"T", "5"}}), DomainError);
    fs::remove(p);
  }

  TEST_CASE("validation happens before any work") {
    CHECK_THROWS_AS(validate(make_config("field", {{"disc", "25"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("field", {})), DomainError);
    CHECK_THROWS_AS(validate(make_config("eval", {{"disc", "23"}, {"t", "1,x"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("eval", {{"disc", "23"}, {"t", "50000"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("eval", {{"disc", "23"}, {"t", "5"}, {"char", "3"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("clt", {{"disc", "47"}, {"pair", "1,4"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("clt", {{"disc", "47"}, {"pair", "1,2"}, {"T", "50"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("ssum", {{"disc", "47"}, {"X", "500"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("ssum", {{"disc", "47"}, {"X", "5"}, {"method", "fast"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("count", {{"disc", "23"}, {"combo", "0:1"}, {"to", "10"}})), DomainError);
    CHECK_THROWS_AS(validate(make_config("moments", {{"disc", "47"}, {"T", "5"}})), DomainError);
    CHECK_NOTHROW(validate(make_config("scan", {{"disc", "47"}, {"combo", "1:1,2:1"}, {"to", "10"}})));
  }

  TEST_CASE("field envelope") {
    RunOutput o = run(make_config("field", {{"disc", "23"}}));
    CHECK(o.exit_code == 0);
    const auto& r = o.envelope["report"];
    CHECK(r["h"] == 3);
    CHECK(r["forms"].size() == 3);
    CHECK(o.envelope["errors"].empty());
    CHECK(o.envelope["config"]["disc"] == "23");
    CHECK(o.envelope.contains("timestamps"));
  }

  TEST_CASE("same config gives the same envelope") {
    auto cfg = make_config("clt", {{"disc", "47"}, {"pair", "1,2"}, {"T", "100"}, {"samples", "50"}, {"csv", "x"}});
    RunOutput a = run(cfg), b = run(cfg);
    CHECK(canonical_json(strip_timestamps(a.envelope)) == canonical_json(strip_timestamps(b.envelope)));
    REQUIRE(a.files.size() == 1);
    CHECK(a.files[0].body == b.files[0].body);
    CHECK(a.files[0].body.rfind("bin_lo,bin_hi,mass,target_mass\n", 0) == 0);
  }

  TEST_CASE("compute failures land in the errors section") {
    // tol too tight for the critical-line residue check is caught at validation; a bad table length is not
    auto cfg = make_config("ssum", {{"disc", "47"}, {"X", "10"}});
    cfg.values["theta"] = "0.5";
    RunOutput o = run(cfg);
    CHECK(o.exit_code == 1);
    CHECK(o.envelope["errors"].size() == 1);
  }

  TEST_CASE("plot data layout") {
    ScanResult empty;
    std::string s = zeros_plot(empty);
    CHECK(s == "# critical-line sign changes\n# ordinate[t] bracket_width[t]\n");
    DistReport d;
    d.histogram = {{-1, 0, 0.25, 0.3}, {0, 1, 0.75, 0.7}};
    std::string h = clt_plot(d);
    CHECK(h.find("\n-0.5 0.25 0.29999999999999999\n") != std::string::npos);
    CHECK(moments_plot({}).find("# T[t] rho5[1] rho6[1] rho7[1]\n") != std::string::npos);
    CHECK(csv_table({{"a", ""}, {"b", ""}}, {{1, 2}}) == "a,b\n1,2\n");
  }
}
