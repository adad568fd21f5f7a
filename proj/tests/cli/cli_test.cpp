#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace {

  struct Run {
    int code = -1;
    std::string out;
  };

  Run forge(std::string const& args) {
    std::string const cmd = std::string(FORGE_BINARY) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
      return r;
    }
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
      r.out.append(buf.data(), n);
    }
    int const status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string data(char const* name) {
    return std::string(FORGE_TEST_DATA) + "/" + name;
  }

  bool contains(std::string const& hay, std::string const& needle) {
    return hay.find(needle) != std::string::npos;
  }

  class TempDir {
   public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("forge_cli_" + std::to_string(::getpid()))) {
      std::filesystem::create_directories(path_);
    }
    ~TempDir() {
      std::error_code ec;
      std::filesystem::remove_all(path_, ec);
    }
    [[nodiscard]] std::string file(char const* name) const {
      return (path_ / name).string();
    }

   private:
    std::filesystem::path path_;
  };

  TEST(Cli, UsageErrors) {
    EXPECT_EQ(forge("").code, 64);
    EXPECT_EQ(forge("frobnicate").code, 64);
    EXPECT_EQ(forge("check-sc missing.txt").code, 64);
    EXPECT_EQ(forge("check-sc " + data("bad.txt")).code, 64);
    EXPECT_EQ(forge("dehn " + data("surf.txt") + " --word 'a$'").code, 64);
    EXPECT_EQ(forge("witness parse 'E y (x = 1)'").code, 64);
  }

  TEST(Cli, CheckSc) {
    auto const r = forge("check-sc " + data("surf.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "lambda = 1/8"));
    EXPECT_TRUE(contains(r.out, "tight: yes"));
    EXPECT_EQ(forge("check-sc " + data("z2.txt")).code, 1);
    auto const j = nlohmann::json::parse(forge("check-sc --json " + data("power5.txt")).out);
    EXPECT_EQ(j.at("schema"), "forge/1");
    EXPECT_EQ(j.at("report").at("lambda"), "1/20");
  }

  TEST(Cli, DehnExitCodes) {
    EXPECT_EQ(forge("dehn " + data("surf.txt") + " --word a").code, 1);
    auto const t = forge("dehn " + data("power5.txt") + " --word '(a2b2)5' --trace");
    EXPECT_EQ(t.code, 0);
    EXPECT_TRUE(contains(t.out, "at 0:"));
    EXPECT_FALSE(contains(forge("dehn " + data("power5.txt") + " --word '(a2b2)5'").out, "at 0:"));
    EXPECT_EQ(forge("dehn " + data("z2.txt") + " --word a").code, 2);
    EXPECT_EQ(forge("eq " + data("power5.txt") + " --lhs a2b2 --rhs '(a2b2)5a2b2'").code, 0);
    EXPECT_EQ(forge("eq " + data("power5.txt") + " --lhs a --rhs b").code, 1);
    EXPECT_EQ(forge("inject " + data("power5.txt") + " --radius 2").code, 0);
  }

  TEST(Cli, PowerRelatorReproduction) {
    auto const r = forge("repro-remark18 --n 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "Delta = 1"));
    EXPECT_TRUE(contains(r.out, "T = 20"));
    EXPECT_TRUE(contains(r.out, "lambda = 1/20"));
    EXPECT_TRUE(contains(r.out, "hom verified"));
  }

  TEST(Cli, Generators) {
    auto const a = forge("gen-absorb --gamma s --json");
    EXPECT_EQ(a.code, 0);
    auto const j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j.at("certificate").at("report").at("cprime_sixth"), true);
    EXPECT_EQ(forge("gen-absorb --gamma s --p 3 --q 2").code, 1);
    EXPECT_EQ(forge("gen-absorb --gamma ss").code, 64);
    auto const s = forge("gen-scl --gamma t --gamma1 x --alpha x --sigma 1/10 --q 11");
    EXPECT_TRUE(contains(s.out, "1/11"));
    EXPECT_EQ(forge("gen-scl --gamma t --gamma1 x --alpha x --sigma 1/10 --q 5").code, 64);
  }

  TEST(Cli, TowerFlow) {
    TempDir dir;
    std::string const f = dir.file("t.json");
    EXPECT_EQ(forge("tower init " + f).code, 0);
    EXPECT_EQ(forge("tower push " + f + " --absorb s --survive x --inject-ball 1").code, 0);
    EXPECT_EQ(forge("tower eval " + f + " --word x").code, 1);
    EXPECT_EQ(forge("tower eval " + f + " --word x --stage 0").code, 1);
    auto const scl = forge("tower push " + f + " --scl t --gamma1 x --alpha x --sigma 1/10 --q 11");
    EXPECT_TRUE(contains(scl.out, "scl_bound: certified"));
    auto const status = forge("tower status --json " + f);
    EXPECT_EQ(status.code, 0);
    auto const j = nlohmann::json::parse(status.out);
    EXPECT_EQ(j.at("tower").at("schema"), "forge/1");
    EXPECT_EQ(j.at("tower").at("stages").size(), 3u);
    EXPECT_EQ(forge("tower eval " + f + " --word x --stage 9").code, 64);
    EXPECT_EQ(forge("tower push " + dir.file("none.json") + " --absorb s").code, 64);
  }

  TEST(Cli, Witness) {
    auto const p = forge("witness parse 'E y A x ([x,y]=1)'");
    EXPECT_EQ(p.code, 0);
    EXPECT_TRUE(contains(p.out, "E y A x (x y x^-1 y^-1 = 1)"));
    EXPECT_TRUE(contains(forge("witness classify 'A x E y (y^2 = x)'").out, "exists-forall: no"));
    auto const e = forge("witness extract 'E y A x (x y = 1) & (x = 1)'");
    EXPECT_EQ(e.code, 0);
    EXPECT_TRUE(contains(e.out, "V = {x}"));
    EXPECT_EQ(forge("witness extract 'A x E y (y^2 = x)'").code, 64);
    EXPECT_EQ(forge("witness check-finite 'A x E y (y^2 = x)' --group " + data("z3.txt")).code, 0);
    auto const b = forge("witness check-finite 'A x E y (y^2 = x)' --battery");
    EXPECT_EQ(b.code, 1);
    EXPECT_TRUE(contains(b.out, "Z4: false"));
    EXPECT_EQ(forge("witness check-finite 'A x (x = 1)'").code, 64);
    EXPECT_EQ(forge("witness silly x2y3").code, 0);
    EXPECT_EQ(forge("witness silly x2").code, 1);
  }

  TEST(Cli, Norms) {
    EXPECT_EQ(forge("norm cl " + data("surf.txt") + " --element abAB").code, 0);
    EXPECT_TRUE(contains(forge("norm cl " + data("surf.txt") + " --element a").out, "infinite"));
    EXPECT_EQ(forge("norm ell-alpha " + data("surf.txt") + " --element 'b#B'").code, 64);
    auto const e = forge("norm ell-alpha " + data("surf.txt") + " --element baBa --alpha a --json");
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(nlohmann::json::parse(e.out).at("result").at("certificate").at("bound"), "2");
    EXPECT_EQ(forge("norm w-length " + data("surf.txt") + " --element abABacAC --word xyXY").code, 0);
    EXPECT_EQ(forge("norm cl " + data("surf.txt") + " --element abAB --budget 3").code, 64);
  }

}  // namespace
