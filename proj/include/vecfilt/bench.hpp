#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vecfilt/color_math.hpp"
#include "vecfilt/noise.hpp"

namespace vecfilt {

/// Pseudo-filter name for the unfiltered noisy image. It is measured like any
/// filter but never ranked.
inline constexpr std::string_view kNoFilter = "none";

std::string_view model_name(NoiseModel model);
/// Throws RegistryError on unknown names.
NoiseModel parse_model(std::string_view name);

struct BenchConfig {
  std::vector<std::filesystem::path> images;
  /// Empty means all catalog filters.
  std::vector<std::string> filters;
  std::vector<NoiseModel> models = {NoiseModel::correlated};
  std::vector<double> levels = {0.05, 0.10, 0.15};
  std::uint64_t seed = 0;
  int window = 3;
  double p = 2.0;
  AcosMode acos = AcosMode::approximate;
  /// Filters run one at a time and time_ms is measured; otherwise filters may
  /// run in parallel and time_ms is 0.
  bool timed = false;
  /// Worker count for untimed runs; 0 picks the hardware concurrency.
  int threads = 0;

  /// Throws ContractViolation on an empty or out-of-range configuration.
  void validate() const;
};

struct BenchRow {
  std::string image;
  std::string filter;
  NoiseModel model = NoiseModel::correlated;
  double level = 0.0;
  std::uint64_t seed = 0;
  double mae = 0.0;
  double mse = 0.0;
  double ncd = 0.0;
  double time_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// One message per image that could not be processed.
  std::vector<std::string> errors;
};

/// Image id used in rows and seed derivation: the file stem.
std::string image_id(const std::filesystem::path& path);

/// Noise seed of one (image, model, level) realization. Depends only on its
/// arguments, so adding images leaves existing realizations unchanged.
std::uint64_t derive_seed(std::uint64_t master, std::string_view image, NoiseModel model,
                          double level);

/// Rows are ordered by image (config order), model, level, then filter
/// (config order). Throws IoError when no image could be processed.
BenchResult run_benchmark(const BenchConfig& cfg,
                          const std::function<void(const std::string&)>& progress = {});

enum class Criterion { mae, mse, ncd, time };
std::string_view criterion_name(Criterion c);

struct RankEntry {
  std::string filter;
  double average_rank = 0.0;
};

struct RankGroup {
  NoiseModel model = NoiseModel::correlated;
  double level = 0.0;
  Criterion criterion = Criterion::mae;
  std::size_t images = 0;
  /// Ascending average rank; equal ranks ordered by filter name.
  std::vector<RankEntry> ranking;
};

struct RankTable {
  std::vector<RankGroup> groups;
  std::vector<std::string> warnings;
};

/// Per image, ranks start at 0 and tied values share the mean of their
/// positions. The result does not depend on row order. Throws
/// ContractViolation on duplicate (image, filter) rows within a group.
RankTable aggregate_rankings(const std::vector<BenchRow>& rows);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

void write_results_csv(std::ostream& out, const std::vector<BenchRow>& rows);
/// Throws ParseError with the byte offset of the offending line.
std::vector<BenchRow> read_results_csv(std::istream& in);

void write_rankings_csv(std::ostream& out, const RankTable& table);

/// JSON mirror of the CSV plus configuration metadata and rankings.
std::string bench_report_json(const BenchConfig& cfg, const BenchResult& result,
                              const RankTable& table);

}  // namespace vecfilt
