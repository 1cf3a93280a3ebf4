#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rgp/connectivity.hpp"
#include "rgp/generators.hpp"
#include "rgp/graph.hpp"
#include "rgp/matching.hpp"
#include "rgp/percolation.hpp"
#include "rgp/process.hpp"
#include "rgp/rng.hpp"
#include "rgp/stats.hpp"
#include "rgp/structure.hpp"
#include "rgp/traversal.hpp"

namespace rgp {

using Json = nlohmann::ordered_json;

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A recorded trial broke a deterministic invariant (e.g. tau_k > tau_kc).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kReportFormatVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct ExperimentConfig {
  std::string graph_source;  // echo only: generator description or file path
  std::size_t k = 1;
  std::size_t trials = 100;
  std::optional<std::size_t> process_trials;  // tightness: process part (defaults to trials)
  std::uint64_t base_seed = kDefaultSeed;
  std::optional<double> phi;  // default ln n
  double big_c = 1.0;
  double epsilon = 0.1;
  std::vector<double> p_grid;
  std::optional<double> p_override;  // structure: percolate at this p instead of the threshold
  std::optional<bool> exhaustive;    // hitting: nullopt = automatic when m <= 8
  unsigned threads = 1;

  void validate() const {
    if (trials == 0) throw ExperimentError("trials must be >= 1");
    if (process_trials && *process_trials == 0) throw ExperimentError("process trials must be >= 1");
    if (k == 0) throw ExperimentError("k must be >= 1");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) throw ExperimentError("p_grid entries must lie in [0, 1]");
      if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw ExperimentError("p_grid must be strictly increasing");
    }
    if (p_override) require_probability(*p_override, "p_override");
  }

  /// Everything that influences the output; threads is deliberately absent.
  Json to_json() const {
    Json j;
    j["graph_source"] = graph_source;
    j["k"] = k;
    j["trials"] = trials;
    j["process_trials"] = process_trials ? Json(*process_trials) : Json(nullptr);
    j["base_seed"] = base_seed;
    j["phi"] = phi ? Json(*phi) : Json(nullptr);
    j["C"] = big_c;
    j["epsilon"] = epsilon;
    j["p_grid"] = p_grid;
    j["p_override"] = p_override ? Json(*p_override) : Json(nullptr);
    j["exhaustive"] = exhaustive ? Json(*exhaustive) : Json(nullptr);
    return j;
  }
};

/// Serialized experiment outcome. Per-trial records are ordered by trial index.
struct Report {
  int format_version = kReportFormatVersion;
  std::string experiment;
  Json config = Json::object();
  Json host = Json::object();
  Json trials = Json::array();
  Json aggregates = Json::object();
  std::optional<double> wall_clock_seconds;  // only serialized when set

  friend bool operator==(const Report&, const Report&) = default;
};

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string write_report(const Report& r) {
  Json j;
  j["format_version"] = r.format_version;
  j["experiment"] = r.experiment;
  j["config"] = r.config;
  j["host"] = r.host;
  j["aggregates"] = r.aggregates;
  j["trials"] = r.trials;
  if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
  return j.dump(1) + "\n";
}

inline Report read_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ReportError(std::string("report: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version")) throw ReportError("report: missing format_version");
  if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != kReportFormatVersion) {
    throw ReportError("report: unsupported format version");
  }
  for (const char* key : {"experiment", "config", "host", "aggregates", "trials"}) {
    if (!j.contains(key)) throw ReportError(std::string("report: missing key ") + key);
  }
  if (!j["experiment"].is_string() || !j["config"].is_object() || !j["host"].is_object() ||
      !j["aggregates"].is_object() || !j["trials"].is_array()) {
    throw ReportError("report: schema mismatch");
  }
  Report r;
  r.format_version = kReportFormatVersion;
  r.experiment = j["experiment"].get<std::string>();
  r.config = j["config"];
  r.host = j["host"];
  r.aggregates = j["aggregates"];
  r.trials = j["trials"];
  if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
  return r;
}

// ---------------------------------------------------------------------------

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots; the first exception by index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline Json interval_json(const Interval& ci) { return Json::array({ci.lo, ci.hi}); }

inline Json proportion_json(std::size_t successes, std::size_t trials) {
  Json j;
  j["successes"] = successes;
  j["trials"] = trials;
  j["fraction"] = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  j["ci95"] = interval_json(wilson_interval(successes, trials));
  return j;
}

inline Json host_json(const Graph& g) {
  Json j;
  j["n"] = g.order();
  j["m"] = g.size();
  j["d"] = g.regular_degree() ? Json(*g.regular_degree()) : Json(nullptr);
  if (const auto* h = std::get_if<HypercubeFamily>(&g.family())) {
    j["family"] = "hypercube";
    j["dim"] = h->dim;
  } else if (const auto* c = std::get_if<ConstructionLayout>(&g.family())) {
    j["family"] = "construction";
    j["hubs"] = c->hubs;
    j["d1"] = c->d1;
  } else {
    j["family"] = nullptr;
  }
  return j;
}

template <typename T>
Json quantiles_json(std::vector<T> xs) {
  Json j = Json::object();
  if (xs.empty()) return j;
  std::sort(xs.begin(), xs.end());
  for (double level : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
    auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(xs.size())));
    rank = std::clamp<std::size_t>(rank, 1, xs.size());
    char key[16];
    std::snprintf(key, sizeof key, "q%02d", static_cast<int>(std::lround(level * 100)));
    j[key] = xs[rank - 1];
  }
  return j;
}

// ---------------------------------------------------------------------------
// Hitting times of min degree k and k-connectivity.

/// Each trial draws a fresh process (seed split_seed(base_seed, i)) and
/// records (tau_k, tau_kc). With m <= 8 every ordering is enumerated instead,
/// giving the exact equality probability.
inline Report run_hitting_experiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.validate();
  if (!is_k_connected(g, cfg.k)) throw ExperimentError("host is not k-connected");
  const bool exhaustive = cfg.exhaustive.value_or(g.size() <= kExhaustiveEdgeLimit);

  std::vector<HittingTimes> results;
  std::vector<std::uint64_t> seeds;
  if (exhaustive) {
    for_each_ordering(g, [&](const ProcessTrace& t) { results.push_back(hitting_times(g, t, cfg.k, true)); });
  } else {
    results.resize(cfg.trials);
    seeds.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
      seeds[i] = split_seed(cfg.base_seed, i);
      results[i] = hitting_times(g, process_permutation(g, seeds[i]), cfg.k, true);
    });
  }

  Report r;
  r.experiment = "hitting";
  r.config = cfg.to_json();
  r.host = host_json(g);
  std::size_t equal = 0;
  std::size_t strict = 0;
  std::vector<std::size_t> gaps;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& h = results[i];
    if (h.tau_k > h.tau_kc) throw InvariantViolation("hitting time of min degree exceeds that of k-connectivity");
    equal += h.tau_k == h.tau_kc;
    strict += h.tau_k < h.tau_kc;
    gaps.push_back(h.tau_kc - h.tau_k);
    Json rec;
    rec["trial"] = i;
    if (!exhaustive) rec["seed"] = seeds[i];
    rec["tau_k"] = h.tau_k;
    rec["tau_kc"] = h.tau_kc;
    r.trials.push_back(std::move(rec));
  }
  r.aggregates["mode"] = exhaustive ? "exhaustive" : "monte_carlo";
  r.aggregates["equal"] = proportion_json(equal, results.size());
  r.aggregates["strictly_less"] = proportion_json(strict, results.size());
  if (exhaustive) r.aggregates["equal_exact"] = std::to_string(equal) + "/" + std::to_string(results.size());
  r.aggregates["gap_quantiles"] = quantiles_json(gaps);
  return r;
}

// ---------------------------------------------------------------------------
// Core structure, low-degree distance and component gap at the threshold p.

inline double structure_probability(const Graph& g, const ExperimentConfig& cfg) {
  if (cfg.p_override) return *cfg.p_override;
  const auto d = g.regular_degree();
  if (!d) throw ExperimentError("structure experiment needs a regular host (or an explicit p)");
  const double n = static_cast<double>(g.order());
  return mindeg_threshold_p(n, *d, cfg.phi.value_or(std::log(n))).p;
}

/// k distinct vertices drawn uniformly from Stream(seed).
inline VertexSet random_vertex_set(std::size_t n, std::size_t k, std::uint64_t seed) {
  Stream rng(seed);
  std::vector<Vertex> ids;
  while (ids.size() < std::min(k, n)) {
    const auto v = static_cast<Vertex>(rng.below(n));
    if (std::find(ids.begin(), ids.end(), v) == ids.end()) ids.push_back(v);
  }
  return VertexSet::of(std::move(ids), n);
}

inline Report run_structure_experiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.validate();
  const double p = structure_probability(g, cfg);

  struct Outcome {
    std::uint64_t seed = 0;
    std::size_t retained = 0;
    CoreVerdict core;
    DistanceVerdict distance;
    VertexSet removed;
    std::size_t gap_violations = 0;
  };
  std::vector<Outcome> out(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    Outcome& o = out[i];
    o.seed = split_seed(cfg.base_seed, i);
    const auto sample = percolate(g, p, o.seed);
    o.retained = sample.retained.size();
    o.core = core_structure_check(g, sample, cfg.k);
    o.distance = low_degree_distance_check(g, sample, cfg.k);
    o.removed = random_vertex_set(g.order(), cfg.k, split_seed(o.seed, 1));
    o.gap_violations = component_gap_check(g, sample, o.removed, cfg.big_c, cfg.k).violations.size();
  });

  Report r;
  r.experiment = "structure";
  r.config = cfg.to_json();
  r.host = host_json(g);
  std::size_t core_pass = 0;
  std::size_t dist_pass = 0;
  std::size_t gap_pass = 0;
  std::size_t all_pass = 0;
  std::map<std::string, std::size_t> failures;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& o = out[i];
    if (o.core.pass && !o.distance.pass) throw InvariantViolation("core check passed but distance check failed");
    core_pass += o.core.pass;
    dist_pass += o.distance.pass;
    gap_pass += o.gap_violations == 0;
    all_pass += o.core.pass && o.distance.pass && o.gap_violations == 0;
    ++failures[to_string(o.core.failure)];
    Json rec;
    rec["trial"] = i;
    rec["seed"] = o.seed;
    rec["retained"] = o.retained;
    rec["core_pass"] = o.core.pass;
    rec["core_failure"] = to_string(o.core.failure);
    rec["outsiders"] = o.core.outsiders.size();
    rec["distance_pass"] = o.distance.pass;
    rec["K"] = std::vector<Vertex>(o.removed.begin(), o.removed.end());
    rec["gap_violations"] = o.gap_violations;
    r.trials.push_back(std::move(rec));
  }
  r.aggregates["p"] = p;
  r.aggregates["dp"] = p * g.regular_degree().value_or(0);
  r.aggregates["core"] = proportion_json(core_pass, out.size());
  r.aggregates["distance"] = proportion_json(dist_pass, out.size());
  r.aggregates["gap"] = proportion_json(gap_pass, out.size());
  r.aggregates["all"] = proportion_json(all_pass, out.size());
  r.aggregates["core_failures"] = failures;
  return r;
}

// ---------------------------------------------------------------------------
// Threshold separation on the hub-and-gadget construction.

inline ConstructionLayout construction_layout_of(const Graph& g) {
  if (const auto* c = std::get_if<ConstructionLayout>(&g.family())) return *c;
  if (auto c = detect_construction(g)) return *c;
  throw ExperimentError("graph lacks construction metadata");
}

inline Report run_tightness_experiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.validate();
  const ConstructionLayout layout = construction_layout_of(g);
  const double n = static_cast<double>(g.order());
  const double d = layout.d;
  const double p = construction_threshold_p(n, d);

  // Edges tying each gadget to its hub.
  std::vector<std::vector<EdgeIndex>> ties(layout.hubs);
  for (std::size_t h = 0; h < layout.hubs; ++h) {
    for (unsigned l = 0; l < 2 * layout.matching_size(); ++l) {
      ties[h].push_back(*g.find_edge(static_cast<Vertex>(h), layout.gadget_vertex(h, l)));
    }
  }

  struct PercOutcome {
    std::size_t isolated = 0;
    std::size_t cut_gadgets = 0;
    bool connected = false;
  };
  const std::uint64_t perc_base = split_seed(cfg.base_seed, 1);
  const std::uint64_t proc_base = split_seed(cfg.base_seed, 2);
  std::vector<PercOutcome> perc(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    const auto sample = percolate(g, p, split_seed(perc_base, i));
    std::vector<std::uint8_t> kept(g.size(), 0);
    for (EdgeIndex e : sample.retained) kept[e] = 1;
    const auto deg = sample_degrees(g, sample);
    PercOutcome& o = perc[i];
    o.isolated = static_cast<std::size_t>(std::count(deg.begin(), deg.end(), std::size_t{0}));
    for (const auto& t : ties) {
      o.cut_gadgets += std::none_of(t.begin(), t.end(), [&](EdgeIndex e) { return kept[e] != 0; });
    }
    UnionFind uf(g.order());
    for (EdgeIndex e : sample.retained) uf.unite(g.edge(e).u, g.edge(e).v);
    o.connected = uf.components() == 1;
  });

  const std::size_t proc_trials = cfg.process_trials.value_or(cfg.trials);
  struct ProcOutcome {
    std::size_t tau_1 = 0;
    std::size_t tau_conn = 0;
  };
  std::vector<ProcOutcome> proc(proc_trials);
  parallel_for(proc_trials, cfg.threads, [&](std::size_t i) {
    const auto t = process_permutation(g, split_seed(proc_base, i));
    proc[i] = {hitting_time_min_degree(g, t, 1), hitting_time_connectivity(g, t)};
  });

  Report r;
  r.experiment = "tightness";
  r.config = cfg.to_json();
  r.host = host_json(g);

  std::size_t mindeg_ok = 0;
  std::size_t connected = 0;
  std::size_t some_cut = 0;
  std::vector<std::size_t> isolated;
  for (std::size_t i = 0; i < perc.size(); ++i) {
    const auto& o = perc[i];
    mindeg_ok += o.isolated == 0;
    connected += o.connected;
    some_cut += o.cut_gadgets > 0;
    isolated.push_back(o.isolated);
    Json rec;
    rec["part"] = "percolation";
    rec["trial"] = i;
    rec["isolated"] = o.isolated;
    rec["cut_gadgets"] = o.cut_gadgets;
    rec["connected"] = o.connected;
    r.trials.push_back(std::move(rec));
  }
  std::size_t strict = 0;
  std::vector<std::size_t> gaps;
  for (std::size_t i = 0; i < proc.size(); ++i) {
    const auto& o = proc[i];
    if (o.tau_1 > o.tau_conn) throw InvariantViolation("tau_1 exceeds tau_conn");
    strict += o.tau_1 < o.tau_conn;
    gaps.push_back(o.tau_conn - o.tau_1);
    Json rec;
    rec["part"] = "process";
    rec["trial"] = i;
    rec["tau_1"] = o.tau_1;
    rec["tau_conn"] = o.tau_conn;
    r.trials.push_back(std::move(rec));
  }

  const Moments iso = moments<std::size_t>(isolated);
  const double tie_loss = std::pow(1.0 - p, d - layout.d1);
  Json perc_j;
  perc_j["p"] = p;
  perc_j["trials"] = perc.size();
  perc_j["min_degree_ge_1"] = proportion_json(mindeg_ok, perc.size());
  perc_j["connected"] = proportion_json(connected, perc.size());
  perc_j["some_gadget_cut"] = proportion_json(some_cut, perc.size());
  perc_j["isolated_mean"] = iso.mean;
  perc_j["isolated_variance"] = iso.variance;
  perc_j["isolated_expected"] = n * std::pow(1.0 - p, d);
  perc_j["isolated_expected_identity"] = 1.0 / std::log(d);
  perc_j["no_gadget_cut_probability"] = std::pow(1.0 - tie_loss, static_cast<double>(layout.hubs));
  r.aggregates["percolation"] = perc_j;

  Json proc_j;
  proc_j["trials"] = proc.size();
  proc_j["tau1_before_conn"] = proportion_json(strict, proc.size());
  const Moments gm = moments<std::size_t>(gaps);
  proc_j["gap_mean"] = gm.mean;
  proc_j["gap_quantiles"] = quantiles_json(gaps);
  r.aggregates["process"] = proc_j;
  return r;
}

// ---------------------------------------------------------------------------
// Probability sweeps.
//
// Trial i uses the uniforms u_e of Stream(split_seed(base_seed, i)) for every
// grid point, so G_p at each p is exactly percolate(g, p, split_seed(base_seed, i))
// and the samples are nested in p. Sorting edges by u_e turns trial i into a
// process; a monotone property first holds at the step tau, and it holds in
// G_p iff the tau-th smallest u_e is below p.

enum class SweepProperty { min_degree_ge_k, connected, k_connected };

inline const char* to_string(SweepProperty p) {
  switch (p) {
    case SweepProperty::min_degree_ge_k: return "min_degree_ge_k";
    case SweepProperty::connected: return "connected";
    case SweepProperty::k_connected: return "k_connected";
  }
  return "?";
}

struct SweepRow {
  double p = 0.0;
  std::string property;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double phat = 0.0;
  Interval ci;
  double isotonic = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Smallest p at which the property holds in trial `seed`'s coupled samples
/// (+infinity if the host lacks it). The property holds at p iff critical < p.
inline double critical_probability(const Graph& g, SweepProperty prop, std::size_t k, std::uint64_t seed,
                                   bool host_k_connected) {
  std::vector<double> u(g.size());
  Stream rng(seed);
  for (auto& x : u) x = rng.uniform();
  ProcessTrace t;
  t.order.resize(g.size());
  std::iota(t.order.begin(), t.order.end(), EdgeIndex{0});
  std::stable_sort(t.order.begin(), t.order.end(), [&](EdgeIndex a, EdgeIndex b) { return u[a] < u[b]; });
  std::size_t tau = 0;
  switch (prop) {
    case SweepProperty::min_degree_ge_k: tau = hitting_time_min_degree(g, t, k); break;
    case SweepProperty::connected: tau = hitting_time_connectivity(g, t); break;
    case SweepProperty::k_connected:
      tau = host_k_connected ? hitting_time_k_connectivity(g, t, k, true) : never_reached(g);
      break;
  }
  if (tau > g.size()) return std::numeric_limits<double>::infinity();
  if (tau == 0) return -1.0;  // holds even with no edges
  return u[t.order[tau - 1]];
}

/// True when the property holds in the sample.
inline bool sample_has_property(const Graph& host, const PercolationSample& s, SweepProperty prop, std::size_t k) {
  const Graph sub = sample_graph(host, s);
  switch (prop) {
    case SweepProperty::min_degree_ge_k: return sub.order() == 0 || sub.min_degree() >= k;
    case SweepProperty::connected: return is_connected(sub);
    case SweepProperty::k_connected: return is_k_connected(sub, k);
  }
  return false;
}

inline SweepTable sweep_probability(const Graph& g, const ExperimentConfig& cfg, SweepProperty prop) {
  cfg.validate();
  if (cfg.p_grid.empty()) throw ExperimentError("sweep needs a nonempty p grid");
  const bool host_ok = prop != SweepProperty::k_connected || is_k_connected(g, cfg.k);
  std::vector<double> critical(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    critical[i] = critical_probability(g, prop, cfg.k, split_seed(cfg.base_seed, i), host_ok);
  });
  SweepTable table;
  std::vector<double> values;
  std::vector<double> weights;
  for (double p : cfg.p_grid) {
    SweepRow row;
    row.p = p;
    row.property = to_string(prop);
    row.trials = cfg.trials;
    row.successes = static_cast<std::size_t>(std::count_if(critical.begin(), critical.end(), [&](double c) { return c < p; }));
    row.phat = static_cast<double>(row.successes) / static_cast<double>(row.trials);
    row.ci = wilson_interval(row.successes, row.trials);
    values.push_back(row.phat);
    weights.push_back(static_cast<double>(row.trials));
    table.rows.push_back(row);
  }
  const auto iso = isotonic_fit(values, weights);
  for (std::size_t i = 0; i < table.rows.size(); ++i) table.rows[i].isotonic = iso[i];
  return table;
}

/// Linear interpolation of the isotonic column at `level` (default 1/2).
inline double estimate_half_threshold(const SweepTable& table, double level = 0.5) {
  const auto& rows = table.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].isotonic < level) continue;
    if (rows[i].isotonic == level) return rows[i].p;
    if (i == 0) break;
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    return a.p + (level - a.isotonic) * (b.p - a.p) / (b.isotonic - a.isotonic);
  }
  throw ExperimentError("estimate_half_threshold: level not bracketed by the table");
}

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string sweep_csv(const SweepTable& t) {
  std::string out = "p,property,successes,trials,phat,ci_lo,ci_hi,isotonic\n";
  for (const auto& r : t.rows) {
    out += format_number(r.p) + ',' + r.property + ',' + std::to_string(r.successes) + ',' +
           std::to_string(r.trials) + ',' + format_number(r.phat) + ',' + format_number(r.ci.lo) + ',' +
           format_number(r.ci.hi) + ',' + format_number(r.isotonic) + '\n';
  }
  return out;
}

inline Report sweep_report(const Graph& g, const ExperimentConfig& cfg, SweepProperty prop, const SweepTable& t) {
  Report r;
  r.experiment = "sweep";
  r.config = cfg.to_json();
  r.config["property"] = to_string(prop);
  r.host = host_json(g);
  for (const auto& row : t.rows) {
    Json j;
    j["p"] = row.p;
    j["property"] = row.property;
    j["successes"] = row.successes;
    j["trials"] = row.trials;
    j["phat"] = row.phat;
    j["ci95"] = interval_json(row.ci);
    j["isotonic"] = row.isotonic;
    r.trials.push_back(std::move(j));
  }
  try {
    r.aggregates["p_half"] = estimate_half_threshold(t);
  } catch (const ExperimentError&) {
    r.aggregates["p_half"] = nullptr;
  }
  return r;
}

}  // namespace rgp
