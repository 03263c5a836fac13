#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "vecfilt/bench.hpp"
#include "vecfilt/errors.hpp"
#include "vecfilt/filter.hpp"
#include "vecfilt/ppm_io.hpp"

using namespace vecfilt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("vecfilt_bench_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const Image& img) const {
    const fs::path p = path / (name + ".ppm");
    write_ppm(p, img);
    return p;
  }
};

BenchRow row(std::string image, std::string filter, double mae, double level = 0.1) {
  BenchRow r;
  r.image = std::move(image);
  r.filter = std::move(filter);
  r.level = level;
  r.mae = r.mse = r.ncd = mae;
  r.time_ms = mae;
  return r;
}

const RankGroup& group_for(const RankTable& t, Criterion c, double level = 0.1) {
  for (const RankGroup& g : t.groups) {
    if (g.criterion == c && g.level == level) return g;
  }
  FAIL("missing rank group");
  return t.groups.front();
}

double rank_of(const RankGroup& g, const std::string& filter) {
  for (const RankEntry& e : g.ranking) {
    if (e.filter == filter) return e.average_rank;
  }
  FAIL("filter missing from ranking");
  return -1.0;
}

std::string without_time(const std::vector<BenchRow>& rows) {
  std::vector<BenchRow> copy = rows;
  for (BenchRow& r : copy) r.time_ms = 0.0;
  std::ostringstream out;
  write_results_csv(out, copy);
  return out.str();
}

}  // namespace

TEST_CASE("one image, two filters, one model and level gives two rows") {
  TempDir dir;
  std::mt19937_64 rng(131);
  BenchConfig cfg;
  cfg.images = {dir.write("scene", testing::random_image(rng, 24, 20))};
  cfg.filters = {"vmf", "atvmf"};
  cfg.levels = {0.1};
  const BenchResult res = run_benchmark(cfg);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].filter == "vmf");
  CHECK(res.rows[1].filter == "atvmf");
  CHECK(res.rows[0].image == "scene");
  CHECK(res.rows[0].seed == derive_seed(0, "scene", NoiseModel::correlated, 0.1));
  CHECK(res.rows[0].time_ms == 0.0);
  CHECK(res.errors.empty());
}

TEST_CASE("row order and determinism") {
  TempDir dir;
  std::mt19937_64 rng(132);
  BenchConfig cfg;
  cfg.images = {dir.write("b", testing::random_image(rng, 16, 16)),
                dir.write("a", testing::random_image(rng, 16, 16))};
  cfg.filters = {"none", "vmf", "pgf", "bvdf"};
  cfg.models = {NoiseModel::uncorrelated, NoiseModel::correlated};
  cfg.levels = {0.05, 0.2};
  cfg.seed = 77;
  cfg.threads = 3;
  const BenchResult first = run_benchmark(cfg);
  REQUIRE(first.rows.size() == 2 * 4 * 2 * 2);
  CHECK(first.rows.front().image == "b");
  CHECK(first.rows.back().image == "a");
  CHECK(first.rows[4].level == 0.2);
  CHECK(first.rows[8].model == NoiseModel::correlated);

  cfg.threads = 1;
  const BenchResult serial = run_benchmark(cfg);
  CHECK(without_time(first.rows) == without_time(serial.rows));

  cfg.timed = true;
  const BenchResult timed = run_benchmark(cfg);
  CHECK(without_time(first.rows) == without_time(timed.rows));
  for (const BenchRow& r : timed.rows) CHECK(r.time_ms >= 0.0);

  cfg.seed = 78;
  cfg.timed = false;
  CHECK(without_time(run_benchmark(cfg).rows) != without_time(first.rows));
}

TEST_CASE("adding an image leaves existing realizations unchanged") {
  TempDir dir;
  std::mt19937_64 rng(133);
  BenchConfig cfg;
  cfg.images = {dir.write("one", testing::random_image(rng, 16, 16))};
  cfg.filters = {"none", "vmf"};
  cfg.levels = {0.1};
  const BenchResult alone = run_benchmark(cfg);
  cfg.images.insert(cfg.images.begin(), dir.write("zero", testing::random_image(rng, 16, 16)));
  const BenchResult both = run_benchmark(cfg);
  REQUIRE(both.rows.size() == 4);
  const std::vector<BenchRow> tail(both.rows.begin() + 2, both.rows.end());
  CHECK(without_time(tail) == without_time(alone.rows));
}

TEST_CASE("unfiltered MAE matches the analytic expectation") {
  // A constant 128 image: each channel is hit with probability phi * (1/4 + 1/4)
  // and an impulse lies 123 (low range) or 122 (high range) away on average.
  TempDir dir;
  BenchConfig cfg;
  cfg.images = {dir.write("gray", Image(256, 256, Rgb8{128, 128, 128}))};
  cfg.filters = {"none"};
  cfg.levels = {0.1};
  cfg.seed = 5;
  const BenchResult res = run_benchmark(cfg);
  REQUIRE(res.rows.size() == 1);
  const double expected = 0.1 * 0.5 * 122.5;
  CHECK(res.rows[0].mae == doctest::Approx(expected).epsilon(0.05));

  cfg.models = {NoiseModel::uncorrelated};
  const BenchResult unc = run_benchmark(cfg);
  CHECK(unc.rows[0].mae == doctest::Approx(0.1 * 122.5).epsilon(0.05));
}

TEST_CASE("a constant image without noise gives zero error for every filter") {
  TempDir dir;
  BenchConfig cfg;
  cfg.images = {dir.write("flat", Image(12, 12, Rgb8{90, 140, 30}))};
  cfg.levels = {0.0};
  const BenchResult res = run_benchmark(cfg);
  CHECK(res.rows.size() == filter_catalog().size());
  for (const BenchRow& r : res.rows) {
    INFO(r.filter);
    CHECK(r.mae == 0.0);
    CHECK(r.mse == 0.0);
    CHECK(r.ncd == 0.0);
  }
}

TEST_CASE("unreadable images are recorded and skipped") {
  TempDir dir;
  std::mt19937_64 rng(134);
  BenchConfig cfg;
  cfg.filters = {"vmf"};
  cfg.levels = {0.1};
  cfg.images = {dir.path / "missing.ppm", dir.write("ok", testing::random_image(rng, 8, 8))};
  const BenchResult res = run_benchmark(cfg);
  CHECK(res.rows.size() == 1);
  CHECK(res.errors.size() == 1);

  cfg.images = {dir.path / "missing.ppm"};
  CHECK_THROWS_AS(run_benchmark(cfg), IoError);
}

TEST_CASE("invalid configurations") {
  BenchConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  cfg.images = {"x.ppm"};
  cfg.validate();
  cfg.levels = {1.0};
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  cfg.levels = {0.1};
  cfg.window = 4;
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  cfg.window = 3;
  cfg.filters = {"nope"};
  CHECK_THROWS_AS(run_benchmark(cfg), RegistryError);
}

TEST_CASE("ranking examples") {
  SUBCASE("dominant filter ranks 0") {
    const std::vector<BenchRow> rows = {row("i1", "A", 1), row("i1", "B", 2), row("i2", "A", 3),
                                        row("i2", "B", 4)};
    const RankTable t = aggregate_rankings(rows);
    CHECK(t.groups.size() == 4);
    CHECK(t.warnings.empty());
    const RankGroup& g = group_for(t, Criterion::mae);
    CHECK(g.images == 2);
    CHECK(g.ranking[0].filter == "A");
    CHECK(g.ranking[0].average_rank == 0.0);
    CHECK(g.ranking[1].average_rank == 1.0);
  }
  SUBCASE("ties share the average position") {
    const RankTable t = aggregate_rankings({row("i1", "A", 1), row("i1", "B", 1), row("i1", "C", 0)});
    const RankGroup& g = group_for(t, Criterion::mae);
    CHECK(rank_of(g, "C") == 0.0);
    CHECK(rank_of(g, "A") == 1.5);
    CHECK(rank_of(g, "B") == 1.5);
    CHECK(g.ranking[1].filter == "A");
  }
  SUBCASE("a single exact tie gives 0.5") {
    const RankTable t = aggregate_rankings({row("i1", "A", 2), row("i1", "B", 2)});
    const RankGroup& g = group_for(t, Criterion::mae);
    CHECK(rank_of(g, "A") == 0.5);
    CHECK(rank_of(g, "B") == 0.5);
  }
  SUBCASE("none is never ranked") {
    const RankTable t = aggregate_rankings({row("i1", "A", 2), row("i1", "none", 9)});
    const RankGroup& g = group_for(t, Criterion::mae);
    CHECK(g.ranking.size() == 1);
  }
  SUBCASE("groups are separated by level") {
    const std::vector<BenchRow> rows = {row("i1", "A", 2, 0.1), row("i1", "B", 1, 0.1),
                                        row("i1", "A", 1, 0.2), row("i1", "B", 2, 0.2)};
    const RankTable t = aggregate_rankings(rows);
    CHECK(rank_of(group_for(t, Criterion::mae, 0.1), "B") == 0.0);
    CHECK(rank_of(group_for(t, Criterion::mae, 0.2), "A") == 0.0);
  }
  SUBCASE("duplicates are rejected") {
    CHECK_THROWS_AS(aggregate_rankings({row("i1", "A", 1), row("i1", "A", 2)}), ContractViolation);
  }
}

TEST_CASE("incomplete coverage excludes the image with a warning") {
  const std::vector<BenchRow> rows = {row("i1", "A", 1), row("i1", "B", 2), row("i2", "A", 5)};
  const RankTable t = aggregate_rankings(rows);
  CHECK(!t.warnings.empty());
  const RankGroup& g = group_for(t, Criterion::mae);
  CHECK(g.images == 1);
  CHECK(rank_of(g, "A") == 0.0);
}

TEST_CASE("rankings are invariant to row order and bounded") {
  std::mt19937_64 rng(135);
  std::uniform_int_distribution<int> value(0, 6);
  std::vector<BenchRow> rows;
  const std::vector<std::string> filters = {"f0", "f1", "f2", "f3", "f4", "f5"};
  for (int i = 0; i < 7; ++i) {
    for (const auto& f : filters) rows.push_back(row("img" + std::to_string(i), f, value(rng)));
  }
  std::ostringstream base;
  write_rankings_csv(base, aggregate_rankings(rows));
  for (int t = 0; t < 20; ++t) {
    std::shuffle(rows.begin(), rows.end(), rng);
    std::ostringstream again;
    const RankTable table = aggregate_rankings(rows);
    write_rankings_csv(again, table);
    CHECK(again.str() == base.str());
    for (const RankGroup& g : table.groups) {
      double total = 0.0;
      for (std::size_t i = 0; i < g.ranking.size(); ++i) {
        CHECK(g.ranking[i].average_rank >= 0.0);
        CHECK(g.ranking[i].average_rank <= double(filters.size() - 1));
        if (i > 0) CHECK(g.ranking[i - 1].average_rank <= g.ranking[i].average_rank);
        total += g.ranking[i].average_rank;
      }
      // Ranks on each image always sum to 0 + 1 + ... + (F-1).
      CHECK(total == doctest::Approx(15.0));
    }
  }
}

TEST_CASE("results csv round trip") {
  std::vector<BenchRow> rows = {row("a", "vmf", 0.1), row("b", "pgf", 1.0 / 3.0)};
  rows[0].seed = 18446744073709551615ULL;
  rows[0].time_ms = 12.25;
  rows[1].model = NoiseModel::uncorrelated;
  rows[1].mse = 1e-300;
  rows[1].time_ms = 0.0;
  std::stringstream io;
  write_results_csv(io, rows);
  CHECK(io.str().rfind("image,filter,model,level,seed,mae,mse,ncd,time_ms\n", 0) == 0);
  CHECK(io.str().find(",12.250\n") != std::string::npos);
  const std::vector<BenchRow> back = read_results_csv(io);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].image == rows[i].image);
    CHECK(back[i].filter == rows[i].filter);
    CHECK(back[i].model == rows[i].model);
    CHECK(back[i].level == rows[i].level);
    CHECK(back[i].seed == rows[i].seed);
    CHECK(back[i].mae == rows[i].mae);
    CHECK(back[i].mse == rows[i].mse);
    CHECK(back[i].ncd == rows[i].ncd);
    CHECK(back[i].time_ms == rows[i].time_ms);
  }
}

TEST_CASE("malformed results csv") {
  auto offset_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_results_csv(in);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  const std::string header = "image,filter,model,level,seed,mae,mse,ncd,time_ms\n";
  const std::string good = "a,vmf,correlated,0.1,1,2,3,4,0.000\n";
  CHECK(offset_of("") == 0);
  CHECK(offset_of("wrong\n") == 0);
  CHECK(offset_of(header + good + "a,vmf,sideways,0.1,1,2,3,4,0\n") == header.size() + good.size());
  CHECK(offset_of(header + "a,vmf,correlated,x,1,2,3,4,0\n") == header.size());
  CHECK(offset_of(header + "a,vmf\n") == header.size());
  CHECK(offset_of(header + good) == std::string::npos);
}

TEST_CASE("seed derivation") {
  const auto s = derive_seed(1, "img", NoiseModel::correlated, 0.1);
  CHECK(s == derive_seed(1, "img", NoiseModel::correlated, 0.1));
  CHECK(s != derive_seed(2, "img", NoiseModel::correlated, 0.1));
  CHECK(s != derive_seed(1, "img2", NoiseModel::correlated, 0.1));
  CHECK(s != derive_seed(1, "img", NoiseModel::uncorrelated, 0.1));
  CHECK(s != derive_seed(1, "img", NoiseModel::correlated, 0.15));
}

TEST_CASE("json report mirrors the rows") {
  TempDir dir;
  std::mt19937_64 rng(136);
  BenchConfig cfg;
  cfg.images = {dir.write("pic", testing::random_image(rng, 8, 8))};
  cfg.filters = {"vmf", "atvmf"};
  cfg.levels = {0.1};
  const BenchResult res = run_benchmark(cfg);
  const RankTable table = aggregate_rankings(res.rows);
  const auto report = nlohmann::json::parse(bench_report_json(cfg, res, table));
  CHECK(report["rows"].size() == 2);
  CHECK(report["rows"][0]["mae"].get<double>() == res.rows[0].mae);
  CHECK(report["config"]["seed"].get<std::uint64_t>() == 0);
  CHECK(report["rankings"].size() == 4);
}

TEST_CASE("model and criterion names") {
  CHECK(parse_model("uncorrelated") == NoiseModel::uncorrelated);
  CHECK(model_name(parse_model("correlated")) == "correlated");
  CHECK_THROWS_AS(parse_model("pink"), RegistryError);
  CHECK(criterion_name(Criterion::time) == "time");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}
