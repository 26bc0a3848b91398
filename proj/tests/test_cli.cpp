#include "locps/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using locps::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = locps::cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("locps_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, GenBoundsCheckOraclePipeline) {
  const std::string a = temp_path("a.json");
  ASSERT_EQ(run({"gen", "uniform-offdiag", "--n", "3", "--x", "1", "-o", a}).code, 0);

  const auto b = run({"bounds", a, "--which", "hadamard"});
  ASSERT_EQ(b.code, 0) << b.err;
  const json rb = json::parse(b.out);
  EXPECT_EQ(rb["schema_version"], 1);
  const json& v = rb["payload"]["verdicts"][0];
  EXPECT_EQ(v["inequality"], "EXT_HADAMARD");
  EXPECT_EQ(v["lhs"], "-4/1");
  EXPECT_EQ(v["rhs"], "-4/1");
  EXPECT_EQ(v["slack"], "0/1");

  const auto c = run({"check", a});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["payload"]["classification"], "LOCALLY_PSD");

  const auto o = run({"oracle", a});
  ASSERT_EQ(o.code, 0);
  const auto ro = json::parse(o.out)["payload"];
  EXPECT_EQ(ro["determinant"], "-4/1");
  EXPECT_EQ(ro["principal_minors"].size(), 7u);
  for (const auto& m : ro["principal_minors"])
    if (m["indices"].size() == 2) {
      EXPECT_EQ(m["value"], "0/1");
    }
}

TEST(Cli, GenRoundTripsEntrywise) {
  const std::string path = temp_path("rt.json");
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"gen", "ar-family", "--n", "5", "--r", "-0.3"},
        {"gen", "bordered-equality", "--n", "4"},
        {"gen", "kotel-example"},
        {"gen", "counterexample-2x2", "--t", "10"},
        {"gen", "counterexample-bordered", "--t", "3/2"},
        {"gen", "uniform-offdiag", "--n", "4", "--x", "1/3", "--float"}}) {
    auto with_out = args;
    with_out.insert(with_out.end(), {"-o", path});
    ASSERT_EQ(run(with_out).code, 0);
    const json first = json::parse(slurp(path));
    std::ifstream f(path);
    const auto loaded = locps::read_matrix_file(f);
    const json again = std::visit(
        [&](const auto& m) {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, locps::SymMatrix<locps::Surd>>) return json();
          else return locps::matrix_file_json(m, first["family"]);
        },
        loaded.matrix);
    EXPECT_EQ(first, again) << args[1];
  }
}

TEST(Cli, FisherSharpCarriesExactSidecar) {
  const std::string path = temp_path("fs.json");
  ASSERT_EQ(run({"gen", "fisher-sharp", "--n", "4", "-o", path}).code, 0);
  const json file = json::parse(slurp(path));
  EXPECT_EQ(file["mode"], "float");
  EXPECT_EQ(file["s_squared"], "43/162");

  const auto c = run({"check", path, "--expect", "locally-psd"});
  EXPECT_EQ(c.code, 0);
  const auto rc = json::parse(c.out);
  EXPECT_EQ(rc["mode"], "surd");
  EXPECT_EQ(rc["payload"]["det"], "-1/2");

  const auto b = json::parse(run({"bounds", path, "--which", "fisher", "--alpha", "4"}).out);
  EXPECT_EQ(b["payload"]["verdicts"][0]["slack"], "0/1");

  const auto f = json::parse(run({"check", path, "--no-sidecar"}).out);
  EXPECT_EQ(f["mode"], "float");
  EXPECT_EQ(f["payload"]["classification"], "LOCALLY_PSD");
}

TEST(Cli, KoteljanskiiGoldenOutput) {
  const auto gen = run({"gen", "kotel-example"});
  ASSERT_EQ(gen.code, 0);
  const auto b = run({"bounds", "-", "--alpha", "1,2,3,4", "--beta", "3,4,5,6", "--which", "koteljanskii"}, gen.out);
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string golden = slurp(std::string(LOCPS_GOLDEN_DIR) + "/kotel_bounds.json");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(b.out, golden);
  const json report = json::parse(b.out);
  const json& v = report["payload"]["verdicts"][0];
  EXPECT_EQ(v["lhs"], "-46875/65536");
  EXPECT_EQ(v["rhs"], "-421875/1048576");
  EXPECT_EQ(v["constant"], "-27/16");
  EXPECT_EQ(v["holds"], false);
}

TEST(Cli, ExpectAssertionsExitOne) {
  const auto gen = run({"gen", "kotel-example"});
  EXPECT_EQ(run({"check", "-", "--expect", "pd"}, gen.out).code, 1);
  EXPECT_EQ(run({"check", "-", "--expect", "locally-psd"}, gen.out).code, 0);
  EXPECT_EQ(run({"bounds", "-", "--which", "hadamard", "--expect", "holds"}, gen.out).code, 0);
  EXPECT_EQ(run({"bounds", "-", "--alpha", "1,2,3,4", "--beta", "3,4,5,6", "--which", "koteljanskii", "--expect",
                 "holds"},
                gen.out)
                .code,
            1);
  EXPECT_EQ(run({"fuzz", "--kind", "ext-fisher", "--n", "4", "--trials", "0", "--expect", "no-violations"}).code, 1);
  EXPECT_EQ(run({"fuzz", "--kind", "ext-hadamard", "--n", "4", "--trials", "50", "--expect", "no-violations"}).code,
            0);
}

TEST(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(run({"gen", "no-such-family", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"gen", "uniform-offdiag", "--n", "4", "--x", "1"}).code, 2);  // out of regime
  EXPECT_EQ(run({"gen", "uniform-offdiag", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"gen", "uniform-offdiag", "--n", "4", "--x", "abc"}).code, 2);
  EXPECT_EQ(run({"check", "-"}, "not json").code, 2);
  EXPECT_EQ(run({"check", "-"}, R"({"n":2,"mode":"rational","entries":[["1/1",0.5],["1/2","1/1"]]})").code, 2);
  EXPECT_EQ(run({"check", "-"}, R"({"n":2,"mode":"float","entries":[[1,0.5],[0.25,1]]})").code, 2);
  EXPECT_EQ(run({"check", "-"}, R"({"n":2,"mode":"float","entries":[[1,0.5]]})").code, 2);
  EXPECT_EQ(run({"check", "-"}, R"({"n":2,"mode":"exact","entries":[[1,0],[0,1]]})").code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/file.json"}).code, 2);
  const auto gen = run({"gen", "kotel-example"});
  EXPECT_EQ(run({"bounds", "-", "--alpha", "0,1"}, gen.out).code, 2);
  EXPECT_EQ(run({"bounds", "-", "--alpha", "1,x"}, gen.out).code, 2);
  EXPECT_EQ(run({"bounds", "-", "--alpha", "7"}, gen.out).code, 2);
  EXPECT_EQ(run({"bounds", "-", "--which", "fisher"}, gen.out).code, 2);
  EXPECT_EQ(run({"bounds", "-", "--which", "everything"}, gen.out).code, 2);
  EXPECT_EQ(run({"fuzz", "--kind", "nope", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"suite", "--n", "9", "--trials", "3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, OracleGuard) {
  std::string big = R"({"n":13,"mode":"float","entries":[)";
  for (int i = 0; i < 13; ++i) {
    big += i ? ",[" : "[";
    for (int j = 0; j < 13; ++j) big += std::string(j ? "," : "") + (i == j ? "1" : "0");
    big += "]";
  }
  big += "]}";
  const auto r = run({"oracle", "-"}, big);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("guard"), std::string::npos);
}

TEST(Cli, FuzzIsReproducible) {
  const std::vector<std::string> args{"fuzz", "--kind", "ext-koteljanskii", "--n", "6", "--trials", "100", "--seed", "5"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto r = json::parse(a.out)["payload"];
  EXPECT_EQ(r["seed"], 5);
  EXPECT_EQ(r["probes"].size(), 2u);
}

TEST(Cli, SeedFallsBackToEnvironment) {
  ::setenv("LOCPS_SEED", "31", 1);
  const auto r = json::parse(run({"fuzz", "--kind", "ext-hadamard", "--n", "3", "--trials", "5"}).out);
  EXPECT_EQ(r["payload"]["seed"], 31);
  ::setenv("LOCPS_SEED", "x", 1);
  EXPECT_EQ(run({"fuzz", "--kind", "ext-hadamard", "--n", "3", "--trials", "5"}).code, 2);
  ::unsetenv("LOCPS_SEED");
}

TEST(Cli, SuiteAndPrettyOutput) {
  const auto s = run({"suite", "--n", "4", "--trials", "20", "--seed", "1", "--expect-pass"});
  ASSERT_EQ(s.code, 0);
  EXPECT_TRUE(json::parse(s.out)["payload"]["passed"].get<bool>());
  const auto p = run({"suite", "--n", "4", "--trials", "5", "--pretty"});
  EXPECT_NE(p.out.find("crabtree_haynsworth_quotient"), std::string::npos);
  const auto gen = run({"gen", "uniform-offdiag", "--n", "3", "--x", "1"});
  const auto c = run({"check", "-", "--pretty", "--k", "2"}, gen.out);
  EXPECT_NE(c.out.find("LOCALLY_PSD"), std::string::npos);
}

TEST(Cli, CheckWithLocalOrderAndTolerance) {
  const auto gen = run({"gen", "kotel-example"});
  const auto r = json::parse(run({"check", "-", "--k", "5", "--tol", "1e-6"}, gen.out).out);
  EXPECT_EQ(r["tolerance"]["eig_rel"], 1e-6);
  EXPECT_EQ(r["payload"]["local"]["witnesses"].size(), 6u);
  EXPECT_TRUE(r["payload"]["local"]["all_psd"].get<bool>());
}
