#include "vecfilt/filter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <utility>

#include "vecfilt/errors.hpp"
#include "vecfilt/filters_basic.hpp"
#include "vecfilt/filters_fuzzy.hpp"
#include "vecfilt/filters_hybrid.hpp"
#include "vecfilt/filters_misc.hpp"
#include "vecfilt/filters_switching.hpp"
#include "vecfilt/filters_weighted.hpp"

namespace vecfilt {

std::unique_ptr<WindowFilter> WindowFilter::bind(const Image&) const { return nullptr; }

std::string_view family_name(FilterFamily family) {
  switch (family) {
    case FilterFamily::basic:
      return "basic";
    case FilterFamily::fuzzy:
      return "fuzzy";
    case FilterFamily::hybrid:
      return "hybrid";
    case FilterFamily::center_weighted:
      return "center-weighted";
    case FilterFamily::entropy:
      return "entropy";
    case FilterFamily::peer_group:
      return "peer-group";
    case FilterFamily::sigma:
      return "sigma";
    case FilterFamily::misc:
      return "misc";
  }
  return "unknown";
}

namespace {

using WindowFn = std::function<Vec3(const Window&)>;

class FunctionFilter final : public WindowFilter {
 public:
  explicit FunctionFilter(WindowFn fn) : fn_(std::move(fn)) {}
  Vec3 operator()(const Window& win) const override { return fn_(win); }

 private:
  WindowFn fn_;
};

// KVMF needs the kernel width of the whole image unless one is given.
class KernelFilter final : public WindowFilter {
 public:
  KernelFilter(double beta, double h, double p) : beta_(beta), h_(h), p_(p) {}

  Vec3 operator()(const Window& win) const override {
    if (!(h_ > 0.0)) throw ContractViolation("kvmf used without a kernel width; bind it to an image");
    return kvmf(win, h_, p_);
  }

  std::unique_ptr<WindowFilter> bind(const Image& img) const override {
    if (h_ > 0.0) return nullptr;
    return std::make_unique<KernelFilter>(beta_, estimate_kernel_width(img, beta_), p_);
  }

 private:
  double beta_;
  double h_;
  double p_;
};

void require(bool ok, const std::string& name, const std::string& what) {
  if (!ok) throw RegistryError(name + ": " + what);
}

class Params {
 public:
  Params(const FilterSpec& spec, const std::vector<std::string>& keys) : spec_(spec) {
    for (const auto& [key, value] : spec.params) {
      require(std::find(keys.begin(), keys.end(), key) != keys.end(), spec.name,
              "unknown parameter '" + key + "'");
      require(std::isfinite(value), spec.name, "parameter '" + key + "' must be finite");
    }
  }

  double real(const std::string& key, double fallback) const {
    const auto it = spec_.params.find(key);
    return it == spec_.params.end() ? fallback : it->second;
  }

  /// 0 means "derive from the window size".
  int integer(const std::string& key, int fallback) const {
    const double v = real(key, fallback);
    require(v == std::floor(v), spec_.name, "parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  const std::string& name() const { return spec_.name; }
  double p() const { return spec_.p; }
  AcosMode acos() const { return spec_.acos; }

 private:
  const FilterSpec& spec_;
};

using Factory = std::function<std::unique_ptr<WindowFilter>(const Params&)>;

struct Entry {
  FilterInfo info;
  std::vector<std::string> keys;
  Factory make;
};

std::unique_ptr<WindowFilter> wrap(WindowFn fn) {
  return std::make_unique<FunctionFilter>(std::move(fn));
}

int half_up(const Window& win) { return static_cast<int>((win.size() + 1) / 2); }

DistanceKind kind_for(const std::string& base, const Params& P, double gamma) {
  if (base == "vmf") return DistanceKind::minkowski(P.p());
  if (base == "bvdf") return DistanceKind::angular();
  return DistanceKind::directional(gamma, P.p());
}

void check_kind(const DistanceKind& kind, const std::string& name) {
  try {
    kind.validate();
  } catch (const ContractViolation& e) {
    throw RegistryError(name + ": " + e.what());
  }
}

std::vector<Entry> build_entries() {
  std::vector<Entry> e;
  auto add = [&](std::string name, FilterFamily family, bool switching,
                 std::vector<std::string> keys, Factory make) {
    e.push_back({{std::move(name), family, switching}, std::move(keys), std::move(make)});
  };

  // Basic.
  add("vmf", FilterFamily::basic, false, {}, [](const Params& P) {
    const double p = P.p();
    return wrap([p](const Window& w) { return vmf(w, p); });
  });
  add("atvmf", FilterFamily::basic, false, {"alpha"}, [](const Params& P) {
    const int alpha = P.integer("alpha", -1);
    require(alpha >= -1, P.name(), "alpha must be >= 0");
    const double p = P.p();
    return wrap([alpha, p](const Window& w) {
      return atvmf(w, alpha < 0 ? static_cast<int>(w.size() / 2) : alpha, p);
    });
  });
  add("bvdf", FilterFamily::basic, false, {}, [](const Params& P) {
    const AcosMode m = P.acos();
    return wrap([m](const Window& w) { return bvdf(w, m); });
  });
  add("gvdf", FilterFamily::basic, false, {"k"}, [](const Params& P) {
    const int k = P.integer("k", 0);
    require(k >= 0, P.name(), "k must be >= 1");
    const AcosMode m = P.acos();
    return wrap([k, m](const Window& w) { return gvdf(w, k == 0 ? half_up(w) : k, m); });
  });
  add("ddf", FilterFamily::basic, false, {"gamma"}, [](const Params& P) {
    const double g = P.real("gamma", 0.5);
    check_kind(DistanceKind::directional(g, P.p()), P.name());
    const double p = P.p();
    const AcosMode m = P.acos();
    return wrap([g, p, m](const Window& w) { return ddf(w, g, p, m); });
  });
  add("cbrf", FilterFamily::basic, false, {}, [](const Params&) {
    return wrap([](const Window& w) { return cbrf(w); });
  });

  // Adaptive fuzzy.
  auto fuzzy = [&](std::string name, bool ordered, std::vector<std::string> keys,
                   std::function<FuzzyWeightKind(const Params&)> kind) {
    add(std::move(name), FilterFamily::fuzzy, false, std::move(keys),
        [ordered, kind](const Params& P) {
          const FuzzyWeightKind k = kind(P);
          require(k.gamma > 0.0 && k.beta > 0.0, P.name(), "gamma and beta must be positive");
          const AcosMode m = P.acos();
          if (ordered) return wrap([k, m](const Window& w) { return fovf(w, k, m); });
          return wrap([k, m](const Window& w) { return fwaf(w, k, m); });
        });
  };
  fuzzy("fvmf", false, {"gamma", "beta"}, [](const Params& P) {
    return FuzzyWeightKind::exponential(P.real("gamma", 0.5), P.real("beta", 1.0), P.p());
  });
  fuzzy("fvdf", false, {"gamma", "beta"}, [](const Params& P) {
    return FuzzyWeightKind::sigmoidal(P.real("gamma", 1.0), P.real("beta", 2.0));
  });
  fuzzy("annf", false, {}, [](const Params&) {
    return FuzzyWeightKind::nearest_neighbor(DistanceKind::angular());
  });
  fuzzy("annmf", false, {}, [](const Params&) { return FuzzyWeightKind::composite_nn(); });
  fuzzy("fovmf", true, {"gamma", "beta"}, [](const Params& P) {
    return FuzzyWeightKind::exponential(P.real("gamma", 0.5), P.real("beta", 1.0), P.p());
  });
  fuzzy("fovdf", true, {"gamma", "beta"}, [](const Params& P) {
    return FuzzyWeightKind::sigmoidal(P.real("gamma", 1.0), P.real("beta", 2.0));
  });

  // Hybrid.
  add("exvmf", FilterFamily::hybrid, false, {}, [](const Params& P) {
    const double p = P.p();
    return wrap([p](const Window& w) { return exvmf(w, p); });
  });
  add("hdf", FilterFamily::hybrid, false, {}, [](const Params& P) {
    const double p = P.p();
    const AcosMode m = P.acos();
    return wrap([p, m](const Window& w) { return hdf(w, p, m); });
  });
  add("ahdf", FilterFamily::hybrid, false, {}, [](const Params& P) {
    const double p = P.p();
    const AcosMode m = P.acos();
    return wrap([p, m](const Window& w) { return ahdf(w, p, m); });
  });
  const std::vector<std::string> rational_keys = {"alpha1", "alpha2", "alpha3", "beta1",
                                                  "beta2",  "gamma",  "gamma_dd"};
  auto rational = [&](std::string name, RationalFlavor flavor) {
    add(std::move(name), FilterFamily::hybrid, false, rational_keys,
        [flavor](const Params& P) {
          RationalParams rp;
          rp.alpha1 = P.real("alpha1", rp.alpha1);
          rp.alpha2 = P.real("alpha2", rp.alpha2);
          rp.alpha3 = P.real("alpha3", rp.alpha3);
          rp.beta1 = P.real("beta1", rp.beta1);
          rp.beta2 = P.real("beta2", rp.beta2);
          rp.gamma_fuzzy = P.real("gamma", rp.gamma_fuzzy);
          rp.gamma_dd = P.real("gamma_dd", rp.gamma_dd);
          rp.p = P.p();
          try {
            rp.validate();
          } catch (const ContractViolation& ex) {
            throw RegistryError(P.name() + ": " + ex.what());
          }
          const AcosMode m = P.acos();
          return wrap([flavor, rp, m](const Window& w) { return rational_hybrid(w, flavor, rp, m); });
        });
  };
  rational("vmrhf", RationalFlavor::vmrhf);
  rational("fvmrhf", RationalFlavor::fvmrhf);
  rational("fvdrhf", RationalFlavor::fvdrhf);
  rational("fddrhf", RationalFlavor::fddrhf);
  add("kvmf", FilterFamily::hybrid, false, {"beta", "h"}, [](const Params& P) {
    const double beta = P.real("beta", 0.5);
    const double h = P.real("h", 0.0);
    require(beta > 0.0, P.name(), "beta must be positive");
    require(h >= 0.0, P.name(), "h must be positive (0 estimates it from the image)");
    return std::unique_ptr<WindowFilter>(std::make_unique<KernelFilter>(beta, h, P.p()));
  });

  // Adaptive center-weighted.
  add("mcwvmf", FilterFamily::center_weighted, true, {"w"}, [](const Params& P) {
    const double wt = P.real("w", 0.5);
    require(wt >= 0.0 && wt <= 1.0, P.name(), "w must lie in [0, 1]");
    const double p = P.p();
    return wrap([wt, p](const Window& w) { return mcwvmf(w, wt, p); });
  });
  auto acw = [&](std::string name, std::string base, double threshold) {
    std::vector<std::string> keys = {"lambda", "T"};
    if (base == "ddf") keys.push_back("gamma");
    add(std::move(name), FilterFamily::center_weighted, true, keys,
        [base, threshold](const Params& P) {
          const int lambda = P.integer("lambda", 2);
          const double t = P.real("T", threshold);
          require(lambda >= 1, P.name(), "lambda must be >= 1");
          const DistanceKind kind = kind_for(base, P, P.real("gamma", 0.5));
          check_kind(kind, P.name());
          const AcosMode m = P.acos();
          return wrap([kind, lambda, t, m](const Window& w) { return acwvf(w, kind, lambda, t, m); });
        });
  };
  acw("acwvmf", "vmf", 80.0);
  acw("acwvdf", "bvdf", 0.19);
  acw("acwddf", "ddf", 10.8);

  // Entropy.
  auto entropy = [&](std::string name, std::string base) {
    std::vector<std::string> keys;
    if (base == "ddf") keys.push_back("gamma");
    add(std::move(name), FilterFamily::entropy, true, keys, [base](const Params& P) {
      const DistanceKind kind = kind_for(base, P, P.real("gamma", 0.5));
      check_kind(kind, P.name());
      const AcosMode m = P.acos();
      return wrap([kind, m](const Window& w) { return entropy_vf(w, kind, m); });
    });
  };
  entropy("evmf", "vmf");
  entropy("ebvdf", "bvdf");
  entropy("eddf", "ddf");

  // Peer group.
  add("pgf", FilterFamily::peer_group, true, {"T", "m"}, [](const Params& P) {
    const double t = P.real("T", 45.0);
    const int mm = P.integer("m", 0);
    require(t > 0.0, P.name(), "T must be positive");
    require(mm >= 0, P.name(), "m must be >= 1");
    const double p = P.p();
    return wrap([t, mm, p](const Window& w) { return pgf(w, t, mm, p); });
  });
  add("fpgf", FilterFamily::peer_group, true, {"T", "m"}, [](const Params& P) {
    const double t = P.real("T", 45.0);
    const int mm = P.integer("m", 3);
    require(t > 0.0, P.name(), "T must be positive");
    require(mm >= 1, P.name(), "m must be >= 1");
    const double p = P.p();
    return wrap([t, mm, p](const Window& w) { return fpgf(w, t, mm, p); });
  });

  // Vector sigma.
  for (const bool adaptive : {false, true}) {
    for (const std::string base : {"vmf", "bvdf", "ddf"}) {
      for (const auto reference : {SigmaReference::mean, SigmaReference::rank}) {
        std::string name = std::string(adaptive ? "as" : "s") + base +
                           (reference == SigmaReference::mean ? "_mean" : "_rank");
        std::vector<std::string> keys;
        if (!adaptive) keys.push_back("lambda");
        if (base == "ddf") keys.push_back("gamma");
        add(std::move(name), FilterFamily::sigma, true, keys,
            [base, adaptive, reference](const Params& P) {
              SigmaParams sp;
              sp.lambda = P.real("lambda", 4.0);
              sp.reference = reference;
              sp.adaptive = adaptive;
              require(sp.lambda > 0.0, P.name(), "lambda must be positive");
              const DistanceKind kind = kind_for(base, P, P.real("gamma", 0.5));
              check_kind(kind, P.name());
              const AcosMode m = P.acos();
              return wrap([kind, sp, m](const Window& w) { return sigma_vf(w, kind, sp, m); });
            });
      }
    }
  }

  // Miscellaneous.
  add("vsdromf", FilterFamily::misc, true, {"T1", "T2", "T3", "T4"}, [](const Params& P) {
    const std::array<double, 4> t = {P.real("T1", 35.0), P.real("T2", 40.0), P.real("T3", 45.0),
                                     P.real("T4", 50.0)};
    require(std::is_sorted(t.begin(), t.end()) && t[0] > 0.0, P.name(),
            "thresholds must be positive and non-decreasing");
    const double p = P.p();
    return wrap([t, p](const Window& w) { return vsdromf(w, t, p); });
  });
  auto amnf_entry = [&](std::string name, AmnfKernel kernel) {
    add(std::move(name), FilterFamily::misc, false, {"k", "c"}, [kernel](const Params& P) {
      const double k = P.real("k", 0.33);
      const int c = P.integer("c", 3);
      require(k > 0.0 && c >= 1, P.name(), "k must be positive and c >= 1");
      return wrap([kernel, k, c](const Window& w) { return amnf(w, kernel, k, c); });
    });
  };
  amnf_entry("amnfe", AmnfKernel::exponential);
  amnf_entry("amnfg", AmnfKernel::gaussian);
  add("fmvmf", FilterFamily::misc, true, {"T"}, [](const Params& P) {
    const double t = P.real("T", 0.75);
    require(t >= 0.0, P.name(), "T must be non-negative");
    const double p = P.p();
    return wrap([t, p](const Window& w) { return fmvmf(w, t, p); });
  });
  auto adaptive_vf = [&](std::string name, std::string base, double threshold) {
    add(std::move(name), FilterFamily::misc, true, {"T", "k"}, [base, threshold](const Params& P) {
      const double t = P.real("T", threshold);
      const int k = P.integer("k", 0);
      require(k >= 0, P.name(), "k must be >= 1");
      const DistanceKind kind = kind_for(base, P, 0.5);
      const AcosMode m = P.acos();
      return wrap([kind, t, k, m](const Window& w) {
        return avf_adaptive(w, kind, t, k == 0 ? half_up(w) : k, m);
      });
    });
  };
  adaptive_vf("avmf", "vmf", 100.0);
  adaptive_vf("abvdf", "bvdf", 0.16);
  add("ffnrf", FilterFamily::misc, true, {"K", "alpha"}, [](const Params& P) {
    const double K = P.real("K", 1024.0);
    const double alpha = P.real("alpha", 3.5);
    require(K > 0.0 && alpha > 0.0, P.name(), "K and alpha must be positive");
    auto table = std::make_shared<const FuzzyMetricTable>(K, alpha);
    return wrap([table](const Window& w) { return ffnrf(w, *table); });
  });
  return e;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = build_entries();
  return table;
}

const Entry* find_entry(const std::string& name) {
  for (const Entry& e : entries()) {
    if (e.info.name == name) return &e;
  }
  return nullptr;
}

// "cwvmf:K" / "cwvdf:K" / "cwddf:K"
std::unique_ptr<WindowFilter> make_center_weighted(const FilterSpec& spec) {
  const auto colon = spec.name.find(':');
  const std::string base = spec.name.substr(0, colon);
  const std::string arg = spec.name.substr(colon + 1);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(arg, &used);
    require(used == arg.size(), spec.name, "smoothing parameter must be an integer");
  } catch (const std::logic_error&) {
    throw RegistryError(spec.name + ": smoothing parameter must be an integer");
  }
  require(k >= 1, spec.name, "smoothing parameter must be >= 1");
  const Params P(spec, {"gamma"});
  const std::string kind_base = base == "cwvmf" ? "vmf" : base == "cwvdf" ? "bvdf" : "ddf";
  const DistanceKind kind = kind_for(kind_base, P, P.real("gamma", 0.5));
  check_kind(kind, spec.name);
  const AcosMode m = spec.acos;
  return wrap([k, kind, m](const Window& w) { return cwvf(w, k, kind, m); });
}

bool is_center_weighted_name(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) return false;
  const std::string base = name.substr(0, colon);
  return base == "cwvmf" || base == "cwvdf" || base == "cwddf";
}

}  // namespace

const std::vector<FilterInfo>& filter_catalog() {
  static const std::vector<FilterInfo> catalog = [] {
    std::vector<FilterInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

std::vector<std::string> filter_parameters(const std::string& name) {
  if (is_center_weighted_name(name)) return {"gamma"};
  const Entry* e = find_entry(name);
  if (e == nullptr) throw RegistryError("unknown filter '" + name + "'");
  return e->keys;
}

std::unique_ptr<WindowFilter> make_filter(const FilterSpec& spec) {
  if (!(spec.p >= 1.0)) throw RegistryError(spec.name + ": p must be >= 1");
  if (is_center_weighted_name(spec.name)) return make_center_weighted(spec);
  const Entry* e = find_entry(spec.name);
  if (e == nullptr) throw RegistryError("unknown filter '" + spec.name + "'");
  return e->make(Params(spec, e->keys));
}

Rgb8 quantize(const Vec3& v) {
  auto channel = [](double c) {
    if (!std::isfinite(c)) throw ContractViolation("filter produced a non-finite value");
    return static_cast<std::uint8_t>(std::clamp(std::round(c), 0.0, 255.0));
  };
  return {channel(v.r), channel(v.g), channel(v.b)};
}

Image apply_filter(const Image& img, const WindowFilter& filter, int side, int threads) {
  if (img.empty()) throw ContractViolation("cannot filter an empty image");
  std::unique_ptr<WindowFilter> bound = filter.bind(img);
  const WindowFilter& f = bound ? *bound : filter;
  Image out(img.width(), img.height());

  auto rows = [&](int y0, int y1) {
    Window win;
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < img.width(); ++x) {
        extract_window_into(img, x, y, side, win);
        out.at(x, y) = quantize(f(win));
      }
    }
  };

  threads = std::clamp(threads, 1, img.height());
  if (threads == 1) {
    rows(0, img.height());
    return out;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const int y0 = img.height() * t / threads;
    const int y1 = img.height() * (t + 1) / threads;
    workers.emplace_back([&, t, y0, y1] {
      try {
        rows(y0, y1);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

Image apply_filter(const Image& img, const FilterSpec& spec, int side, int threads) {
  return apply_filter(img, *make_filter(spec), side, threads);
}

}  // namespace vecfilt
