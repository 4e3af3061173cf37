#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "qhecke/cli/cache.hpp"
#include "qhecke/cli/parse.hpp"
#include "qhecke/cli/report.hpp"

using namespace qhecke;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Parse, GaussianIntegers) {
  EXPECT_EQ(cli::parse_gint("3-2i"), (gint{3, -2}));
  EXPECT_EQ(cli::parse_gint("-3"), (gint{-3, 0}));
  EXPECT_EQ(cli::parse_gint("i"), (gint{0, 1}));
  EXPECT_EQ(cli::parse_gint("-i"), (gint{0, -1}));
  EXPECT_EQ(cli::parse_gint("1+16i"), (gint{1, 16}));
  EXPECT_EQ(cli::parse_gint(" -15 + 32i "), (gint{-15, 32}));
  EXPECT_EQ(cli::parse_gint("7-i"), (gint{7, -1}));
  EXPECT_THROW(cli::parse_gint("1.5+2i"), domain_error);
  EXPECT_THROW(cli::parse_gint(""), domain_error);
  EXPECT_THROW(cli::parse_gint("abc"), domain_error);
}

TEST(Parse, ComplexNumbers) {
  EXPECT_EQ(cli::parse_complex("0.5+14.1i"), cd(0.5, 14.1));
  EXPECT_EQ(cli::parse_complex("0.5"), cd(0.5, 0));
  EXPECT_EQ(cli::parse_complex("-2.5i"), cd(0, -2.5));
  EXPECT_EQ(cli::parse_complex("1e-3-2e+1i"), cd(1e-3, -20));
  EXPECT_EQ(cli::parse_complex("1-i"), cd(1, -1));
  EXPECT_THROW(cli::parse_complex("0.5+xi"), domain_error);
}

TEST(Cache, ChecksumDetectsSingleByteChange) {
  auto d = fresh_dir("qhecke_test_checksum");
  fs::create_directories(d);
  {
    std::ofstream(d / "a") << "hello";
    std::ofstream(d / "b") << "hellp";
  }
  EXPECT_NE(cli::file_checksum(d / "a"), cli::file_checksum(d / "b"));
  // FNV-1a 64 of the empty input is the offset basis
  std::ofstream(d / "e").close();
  EXPECT_EQ(cli::file_checksum(d / "e"), 1469598103934665603ULL);
  fs::remove_all(d);
}

TEST(Cache, SpotSampleIsOnePercentAndSeeded) {
  auto a = cli::spot_sample(10'000, 5), b = cli::spot_sample(10'000, 5);
  EXPECT_EQ(a, b);
  EXPECT_LE(a.size(), 100u);
  EXPECT_GE(a.size(), 90u);
  EXPECT_EQ(cli::spot_sample(10, 1).size(), 1u);
  EXPECT_TRUE(cli::spot_sample(0, 1).empty());
}

TEST(Cache, PrimesBuildLoadCorruptRegenerate) {
  auto d = fresh_dir("qhecke_test_cache_primes");
  cli::cache_status st;
  std::vector<gint> built;
  {
    cli::cache_manifest m(d);
    built = cli::cached_primes(m, 50'000, &st);
    EXPECT_FALSE(st.loaded);
    EXPECT_FALSE(st.regenerated);
  }
  {
    cli::cache_manifest m(d);
    EXPECT_TRUE(m.verified("primes", 50'000));
    auto again = cli::cached_primes(m, 50'000, &st);
    EXPECT_TRUE(st.loaded);
    EXPECT_GE(st.spot_checked, 1u);
    EXPECT_EQ(again, built);
  }
  {
    std::ofstream(d / "primes_50000.txt", std::ios::app) << "1 16\n";
    cli::cache_manifest m(d);
    EXPECT_FALSE(m.verified("primes", 50'000));
    auto again = cli::cached_primes(m, 50'000, &st);
    EXPECT_TRUE(st.regenerated);
    EXPECT_FALSE(st.warning.empty());
    EXPECT_EQ(again, built);
    EXPECT_TRUE(m.verified("primes", 50'000));
  }
  {
    // a manifest from another version is ignored
    std::ofstream(d / "manifest.txt", std::ios::trunc) << "qhecke-manifest 99\nprimes primes_50000.txt 50000 1\n";
    cli::cache_manifest m(d);
    EXPECT_EQ(m.version(), 99);
    EXPECT_EQ(m.find("primes", 50'000), nullptr);
    cli::cached_primes(m, 50'000, &st);
    EXPECT_FALSE(st.loaded);
    cli::cache_manifest n(d);
    EXPECT_TRUE(n.verified("primes", 50'000));
  }
  fs::remove_all(d);
}

TEST(Cache, GaussBuildThenSpotCheckedLoad) {
  auto d = fresh_dir("qhecke_test_cache_gauss");
  cli::cache_status st;
  {
    cli::cache_manifest m(d);
    cli::cached_gauss_sums(m, 5000, &st);
    EXPECT_FALSE(st.loaded);
    EXPECT_GT(st.records, 0u);
  }
  cli::cache_manifest m(d);
  cli::cached_gauss_sums(m, 5000, &st);
  EXPECT_TRUE(st.loaded);
  EXPECT_LT(st.spot_max_error, 1e-9);
  fs::remove_all(d);
}

TEST(Report, DeterministicWithoutTiming) {
  experiment_report r;
  r.theorem = "first-moment";
  r.variant = "first";
  r.scale = 4096;
  r.lhs = cd(1.25, -0.5);
  r.rhs = cd(1.0, 0);
  r.ratio = r.lhs / r.rhs;
  r.runtime_seconds = 3.5;
  auto a = cli::to_json(r, false).dump(), b = cli::to_json(r, false).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("runtime"), std::string::npos);
  EXPECT_NE(cli::to_json(r, true).dump().find("runtime_seconds"), std::string::npos);
  auto j = cli::to_json(r, false);
  EXPECT_EQ(j["order"], "canonical-norm-order");
  EXPECT_EQ(j["lhs"]["im"], -0.5);
  auto e = cli::error_json("domain_error", "x", 2);
  EXPECT_EQ(e["schema"], cli::kReportSchema);
  EXPECT_EQ(e["exit_code"], 2);
}
