// Command-line front end: list, apply, corrupt, evaluate, bench, rank.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vecfilt/bench.hpp"
#include "vecfilt/errors.hpp"
#include "vecfilt/filter.hpp"
#include "vecfilt/metrics.hpp"
#include "vecfilt/noise.hpp"
#include "vecfilt/ppm_io.hpp"

namespace fs = std::filesystem;
using namespace vecfilt;

namespace {

constexpr int kUsage = 1;
constexpr int kIo = 2;
constexpr int kInvariant = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw RegistryError("--param expects k=v, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw RegistryError("--param value for '" + item.substr(0, eq) + "' is not a number");
    }
    params[item.substr(0, eq)] = v;
  }
  return params;
}

AcosMode parse_acos(const std::string& s) {
  return s == "ref" ? AcosMode::reference : AcosMode::approximate;
}

std::string six(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<fs::path> ppm_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw IoError("no .ppm images in " + dir.string());
  return out;
}

const CLI::Validator kOddWindow(
    [](std::string& value) -> std::string {
      int side = 0;
      if (!CLI::detail::lexical_cast(value, side) || side < 3 || side > kMaxWindowSide ||
          side % 2 == 0) {
        return "window side must be odd and in [3, " + std::to_string(kMaxWindowSide) + "]";
      }
      return {};
    },
    "ODD[3-" + std::to_string(kMaxWindowSide) + "]");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector filters for impulsive noise in color images"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the benchmark filters with family tags");

  auto* apply = app.add_subcommand("apply", "Filter an image");
  std::string filter_name, input, output, acos = "approx";
  int window = 3;
  double p = 2.0;
  std::vector<std::string> params;
  apply->add_option("--filter", filter_name, "Filter name")->required();
  apply->add_option("--input", input, "Input PPM")->required();
  apply->add_option("--output", output, "Output PPM")->required();
  apply->add_option("--window", window, "Odd window side")->check(kOddWindow);
  apply->add_option("--p", p, "Minkowski order")->check(CLI::PositiveNumber);
  apply->add_option("--acos", acos, "Arc cosine evaluation")->check(CLI::IsMember({"approx", "ref"}));
  apply->add_option("--param", params, "Filter parameter k=v");

  auto* corrupt_cmd = app.add_subcommand("corrupt", "Add impulsive noise");
  std::string model = "correlated";
  double level = 0.1, p1 = 0.25, p2 = 0.25, p3 = 0.25;
  std::uint64_t seed = 0;
  corrupt_cmd->add_option("--model", model)->check(CLI::IsMember({"uncorrelated", "correlated"}));
  corrupt_cmd->add_option("--p", level, "Corruption probability")->required();
  corrupt_cmd->add_option("--p1", p1);
  corrupt_cmd->add_option("--p2", p2);
  corrupt_cmd->add_option("--p3", p3);
  corrupt_cmd->add_option("--seed", seed)->required();
  corrupt_cmd->add_option("--input", input)->required();
  corrupt_cmd->add_option("--output", output)->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare a test image with a reference");
  std::string reference, test;
  evaluate_cmd->add_option("--reference", reference)->required();
  evaluate_cmd->add_option("--test", test)->required();

  auto* bench = app.add_subcommand("bench", "Corrupt, filter and measure an image set");
  std::string images_dir, filters = "all", models = "correlated", levels = "0.05,0.10,0.15", out_csv,
                          report;
  bool timed = false;
  int threads = 0;
  bench->add_option("--images", images_dir, "Directory of .ppm images")->required();
  bench->add_option("--filters", filters, "Comma-separated names; \"all\" expands to the catalog, \"none\" is the noisy input");
  bench->add_option("--models", models, "Comma-separated noise models");
  bench->add_option("--levels", levels, "Comma-separated noise levels");
  bench->add_option("--seed", seed);
  bench->add_option("--window", window, "Odd window side")->check(kOddWindow);
  bench->add_option("--p", p)->check(CLI::PositiveNumber);
  bench->add_option("--acos", acos)->check(CLI::IsMember({"approx", "ref"}));
  bench->add_option("--out", out_csv, "Results CSV")->required();
  bench->add_option("--report", report, "JSON report");
  bench->add_option("--threads", threads, "Workers for untimed runs (0 = all cores)");
  bench->add_flag("--timed", timed, "Run filters serially and record time_ms");

  auto* rank = app.add_subcommand("rank", "Average rankings from a results CSV");
  std::string rank_in, rank_out;
  rank->add_option("--in", rank_in)->required();
  rank->add_option("--out", rank_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*list) {
      for (const FilterInfo& info : filter_catalog()) {
        std::cout << info.name << '\t' << family_name(info.family)
                  << (info.switching ? "\tswitching" : "") << '\n';
      }
    } else if (*apply) {
      const FilterSpec spec{filter_name, parse_params(params), p, parse_acos(acos)};
      const auto filter = make_filter(spec);
      write_ppm(output, apply_filter(read_ppm(input), *filter, window));
    } else if (*corrupt_cmd) {
      NoiseConfig cfg;
      cfg.model = parse_model(model);
      cfg.phi = level;
      cfg.phi1 = p1;
      cfg.phi2 = p2;
      cfg.phi3 = p3;
      cfg.seed = seed;
      try {
        cfg.validate();
      } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
      }
      write_ppm(output, corrupt(read_ppm(input), cfg));
    } else if (*evaluate_cmd) {
      const MetricReport m = evaluate(read_ppm(reference), read_ppm(test));
      std::cout << "mae=" << six(m.mae) << " mse=" << six(m.mse) << " ncd=" << six(m.ncd) << '\n';
    } else if (*bench) {
      BenchConfig cfg;
      cfg.images = ppm_files(images_dir);
      for (const auto& name : split_list(filters)) {
        if (name != "all") {
          cfg.filters.push_back(name);
          continue;
        }
        for (const FilterInfo& info : filter_catalog()) cfg.filters.push_back(info.name);
      }
      cfg.models.clear();
      for (const auto& m : split_list(models)) cfg.models.push_back(parse_model(m));
      cfg.levels.clear();
      for (const auto& l : split_list(levels)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(l, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != l.size()) throw RegistryError("bad noise level '" + l + "'");
        cfg.levels.push_back(v);
      }
      cfg.seed = seed;
      cfg.window = window;
      cfg.p = p;
      cfg.acos = parse_acos(acos);
      cfg.timed = timed;
      cfg.threads = threads;
      try {
        cfg.validate();
      } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
      }
      const BenchResult result =
          run_benchmark(cfg, [](const std::string& msg) { std::cerr << msg << '\n'; });
      const RankTable table = aggregate_rankings(result.rows);
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
      std::ofstream csv(out_csv, std::ios::binary);
      if (!csv) throw IoError("cannot write " + out_csv);
      write_results_csv(csv, result.rows);
      if (!report.empty()) {
        std::ofstream json(report, std::ios::binary);
        if (!json) throw IoError("cannot write " + report);
        json << bench_report_json(cfg, result, table) << '\n';
      }
    } else if (*rank) {
      std::ifstream in(rank_in, std::ios::binary);
      if (!in) throw IoError("cannot open " + rank_in);
      const RankTable table = aggregate_rankings(read_results_csv(in));
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
      std::ofstream out(rank_out, std::ios::binary);
      if (!out) throw IoError("cannot write " + rank_out);
      write_rankings_csv(out, table);
    }
  } catch (const RegistryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return 0;
}
