#include "vecfilt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "vecfilt/errors.hpp"
#include "vecfilt/filter.hpp"
#include "vecfilt/metrics.hpp"
#include "vecfilt/ppm_io.hpp"

namespace vecfilt {

std::string_view model_name(NoiseModel model) {
  return model == NoiseModel::uncorrelated ? "uncorrelated" : "correlated";
}

NoiseModel parse_model(std::string_view name) {
  if (name == "uncorrelated") return NoiseModel::uncorrelated;
  if (name == "correlated") return NoiseModel::correlated;
  throw RegistryError("unknown noise model '" + std::string(name) + "'");
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::mae:
      return "mae";
    case Criterion::mse:
      return "mse";
    case Criterion::ncd:
      return "ncd";
    case Criterion::time:
      return "time";
  }
  return "unknown";
}

void BenchConfig::validate() const {
  if (images.empty()) throw ContractViolation("bench needs at least one image");
  if (models.empty()) throw ContractViolation("bench needs at least one noise model");
  if (levels.empty()) throw ContractViolation("bench needs at least one noise level");
  for (double level : levels) {
    if (!(level >= 0.0 && level < 1.0)) throw ContractViolation("noise levels must lie in [0, 1)");
  }
  if (window < 3 || window > kMaxWindowSide || window % 2 == 0) {
    throw ContractViolation("window side must be odd and in [3, 9]");
  }
  if (!(p >= 1.0)) throw ContractViolation("p must be >= 1");
}

std::string image_id(const std::filesystem::path& path) { return path.stem().string(); }

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t double_bits(double v) {
  std::uint64_t bits = 0;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof v);
  return bits;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view image, NoiseModel model,
                          double level) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ fnv1a(image));
  h = mix64(h ^ static_cast<std::uint64_t>(model));
  return mix64(h ^ double_bits(level));
}

BenchResult run_benchmark(const BenchConfig& cfg,
                          const std::function<void(const std::string&)>& progress) {
  cfg.validate();
  std::vector<std::string> filters = cfg.filters;
  if (filters.empty()) {
    for (const FilterInfo& info : filter_catalog()) filters.push_back(info.name);
  }
  // Fail on unknown names before any work is done.
  std::vector<std::unique_ptr<WindowFilter>> built(filters.size());
  for (std::size_t f = 0; f < filters.size(); ++f) {
    if (filters[f] == kNoFilter) continue;
    built[f] = make_filter({filters[f], {}, cfg.p, cfg.acos});
  }

  auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  BenchResult result;
  std::size_t processed = 0;
  for (const auto& path : cfg.images) {
    Image clean;
    try {
      clean = read_ppm(path);
    } catch (const IoError& e) {
      result.errors.push_back(e.what());
      say(std::string("skipping image: ") + e.what());
      continue;
    }
    ++processed;
    const std::string id = image_id(path);
    for (const NoiseModel model : cfg.models) {
      for (const double level : cfg.levels) {
        NoiseConfig noise;
        noise.model = model;
        noise.phi = level;
        noise.seed = derive_seed(cfg.seed, id, model, level);
        const Image noisy = corrupt(clean, noise);
        say(id + " " + std::string(model_name(model)) + " " + format_double(level));

        std::vector<BenchRow> rows(filters.size());
        auto run_one = [&](std::size_t f) {
          BenchRow& row = rows[f];
          row = {id, filters[f], model, level, noise.seed, 0, 0, 0, 0};
          Image out;
          if (!built[f]) {
            out = noisy;
          } else if (cfg.timed) {
            const auto start = std::chrono::steady_clock::now();
            out = apply_filter(noisy, *built[f], cfg.window, 1);
            const auto stop = std::chrono::steady_clock::now();
            row.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
          } else {
            out = apply_filter(noisy, *built[f], cfg.window, 1);
          }
          const MetricReport m = evaluate(clean, out);
          row.mae = m.mae;
          row.mse = m.mse;
          row.ncd = m.ncd;
        };

        int workers = cfg.threads > 0 ? cfg.threads
                                      : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
        if (cfg.timed) workers = 1;
        workers = std::min<int>(workers, static_cast<int>(filters.size()));
        if (workers <= 1) {
          for (std::size_t f = 0; f < filters.size(); ++f) run_one(f);
        } else {
          std::atomic<std::size_t> next{0};
          std::exception_ptr error;
          std::mutex error_lock;
          std::vector<std::thread> pool;
          for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
              for (std::size_t f = next++; f < filters.size(); f = next++) {
                try {
                  run_one(f);
                } catch (...) {
                  const std::lock_guard<std::mutex> hold(error_lock);
                  if (!error) error = std::current_exception();
                }
              }
            });
          }
          for (auto& t : pool) t.join();
          if (error) std::rethrow_exception(error);
        }
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
      }
    }
  }
  if (processed == 0) throw IoError("no image could be processed");
  return result;
}

namespace {

double criterion_value(const BenchRow& row, Criterion c) {
  switch (c) {
    case Criterion::mae:
      return row.mae;
    case Criterion::mse:
      return row.mse;
    case Criterion::ncd:
      return row.ncd;
    case Criterion::time:
      return row.time_ms;
  }
  return 0.0;
}

// Ranks start at 0; a run of equal values shares the mean of its positions.
std::vector<double> tied_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

RankTable aggregate_rankings(const std::vector<BenchRow>& rows) {
  // (model, level) -> image -> filter -> row
  using ByFilter = std::map<std::string, const BenchRow*>;
  using ByImage = std::map<std::string, ByFilter>;
  std::map<std::pair<int, double>, ByImage> groups;
  for (const BenchRow& row : rows) {
    if (row.filter == kNoFilter) continue;
    auto& slot = groups[{static_cast<int>(row.model), row.level}][row.image][row.filter];
    if (slot != nullptr) {
      throw ContractViolation("duplicate result for image '" + row.image + "', filter '" +
                              row.filter + "'");
    }
    slot = &row;
  }

  RankTable table;
  for (const auto& [key, images] : groups) {
    const auto model = static_cast<NoiseModel>(key.first);
    const std::string label = std::string(model_name(model)) + " " + format_double(key.second);
    std::vector<std::string> filters;
    for (const auto& [image, by_filter] : images) {
      for (const auto& entry : by_filter) filters.push_back(entry.first);
    }
    std::sort(filters.begin(), filters.end());
    filters.erase(std::unique(filters.begin(), filters.end()), filters.end());

    std::vector<const ByFilter*> complete;
    for (const auto& [image, by_filter] : images) {
      if (by_filter.size() == filters.size()) {
        complete.push_back(&by_filter);
      } else {
        table.warnings.push_back(label + ": image '" + image + "' covers " +
                                 std::to_string(by_filter.size()) + " of " +
                                 std::to_string(filters.size()) + " filters; excluded");
      }
    }
    if (complete.empty()) {
      table.warnings.push_back(label + ": no image with complete filter coverage");
      continue;
    }

    for (const Criterion c : {Criterion::mae, Criterion::mse, Criterion::ncd, Criterion::time}) {
      std::vector<double> sum(filters.size(), 0.0);
      for (const ByFilter* by_filter : complete) {
        std::vector<double> values;
        for (const std::string& f : filters) values.push_back(criterion_value(*by_filter->at(f), c));
        const std::vector<double> ranks = tied_ranks(values);
        for (std::size_t i = 0; i < filters.size(); ++i) sum[i] += ranks[i];
      }
      RankGroup group{model, key.second, c, complete.size(), {}};
      for (std::size_t i = 0; i < filters.size(); ++i) {
        group.ranking.push_back({filters[i], sum[i] / static_cast<double>(complete.size())});
      }
      std::stable_sort(group.ranking.begin(), group.ranking.end(),
                       [](const RankEntry& a, const RankEntry& b) {
                         return a.average_rank < b.average_rank;
                       });
      table.groups.push_back(std::move(group));
    }
  }
  return table;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_time(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

constexpr std::string_view kResultsHeader = "image,filter,model,level,seed,mae,mse,ncd,time_ms";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

template <class T>
T parse_number(const std::string& field, const char* what, std::size_t offset) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError(std::string("results csv: bad ") + what + " '" + field + "'", offset);
  }
  return value;
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kResultsHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.image << ',' << r.filter << ',' << model_name(r.model) << ',' << format_double(r.level)
        << ',' << r.seed << ',' << format_double(r.mae) << ',' << format_double(r.mse) << ','
        << format_double(r.ncd) << ',' << format_time(r.time_ms) << '\n';
  }
}

std::vector<BenchRow> read_results_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(in, line)) throw ParseError("results csv: empty input", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw ParseError("results csv: unexpected header", 0);
  offset += line.size() + 1;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw ParseError("results csv: expected 9 fields", at);
    BenchRow r;
    r.image = f[0];
    r.filter = f[1];
    try {
      r.model = parse_model(f[2]);
    } catch (const RegistryError& e) {
      throw ParseError(std::string("results csv: ") + e.what(), at);
    }
    r.level = parse_number<double>(f[3], "level", at);
    r.seed = parse_number<std::uint64_t>(f[4], "seed", at);
    r.mae = parse_number<double>(f[5], "mae", at);
    r.mse = parse_number<double>(f[6], "mse", at);
    r.ncd = parse_number<double>(f[7], "ncd", at);
    r.time_ms = parse_number<double>(f[8], "time_ms", at);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_rankings_csv(std::ostream& out, const RankTable& table) {
  out << "model,level,criterion,images,position,filter,average_rank\n";
  for (const RankGroup& g : table.groups) {
    for (std::size_t i = 0; i < g.ranking.size(); ++i) {
      out << model_name(g.model) << ',' << format_double(g.level) << ','
          << criterion_name(g.criterion) << ',' << g.images << ',' << i << ','
          << g.ranking[i].filter << ',' << format_double(g.ranking[i].average_rank) << '\n';
    }
  }
}

std::string bench_report_json(const BenchConfig& cfg, const BenchResult& result,
                              const RankTable& table) {
  using nlohmann::json;
  json config;
  config["images"] = json::array();
  for (const auto& p : cfg.images) config["images"].push_back(p.string());
  config["filters"] = cfg.filters;
  config["models"] = json::array();
  for (const NoiseModel m : cfg.models) config["models"].push_back(model_name(m));
  config["levels"] = cfg.levels;
  config["seed"] = cfg.seed;
  config["window"] = cfg.window;
  config["p"] = cfg.p;
  config["acos"] = cfg.acos == AcosMode::approximate ? "approx" : "ref";
  config["timed"] = cfg.timed;

  json rows = json::array();
  for (const BenchRow& r : result.rows) {
    rows.push_back({{"image", r.image},
                    {"filter", r.filter},
                    {"model", model_name(r.model)},
                    {"level", r.level},
                    {"seed", r.seed},
                    {"mae", r.mae},
                    {"mse", r.mse},
                    {"ncd", r.ncd},
                    {"time_ms", r.time_ms}});
  }
  json rankings = json::array();
  for (const RankGroup& g : table.groups) {
    json entries = json::array();
    for (const RankEntry& e : g.ranking) {
      entries.push_back({{"filter", e.filter}, {"average_rank", e.average_rank}});
    }
    rankings.push_back({{"model", model_name(g.model)},
                        {"level", g.level},
                        {"criterion", criterion_name(g.criterion)},
                        {"images", g.images},
                        {"ranking", entries}});
  }
  json report = {{"config", config},
                 {"errors", result.errors},
                 {"warnings", table.warnings},
                 {"rows", rows},
                 {"rankings", rankings}};
  return report.dump(2);
}

}  // namespace vecfilt
