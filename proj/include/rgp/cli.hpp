#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgp/expansion.hpp"
#include "rgp/experiment.hpp"
#include "rgp/generators.hpp"
#include "rgp/graph_io.hpp"

namespace rgp::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kInconclusive = 3 };

namespace detail {

inline std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used, 0);
  if (used != s.size()) throw CLI::ValidationError("--seed", "not an integer: " + s);
  return v;
}

// "K3", "C5", "Q4", "P3" (path), or a graph file path.
inline Graph parse_factor(const std::string& s) {
  if (s.size() >= 2 && (s[0] == 'K' || s[0] == 'C' || s[0] == 'Q' || s[0] == 'P')) {
    const std::string digits = s.substr(1);
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      const auto v = std::stoul(digits);
      switch (s[0]) {
        case 'K': return complete_graph(v);
        case 'C': return cycle_graph(v);
        case 'Q': return hypercube(static_cast<unsigned>(v));
        case 'P': return path_graph(v);
      }
    }
  }
  return load_graph(s);
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw GraphError("cannot open " + out_path + " for writing");
  f << text;
}

inline std::vector<double> make_grid(double pmin, double pmax, double step) {
  if (!(step > 0.0) || !(pmax >= pmin)) throw ExperimentError("sweep grid needs step > 0 and pmax >= pmin");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double p = std::round((pmin + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (p > pmax + 1e-12) break;
    grid.push_back(p);
  }
  return grid;
}

inline SweepProperty parse_property(const std::string& s) {
  if (s == "min_degree_ge_k" || s == "min-degree") return SweepProperty::min_degree_ge_k;
  if (s == "connected") return SweepProperty::connected;
  if (s == "k_connected" || s == "k-connected") return SweepProperty::k_connected;
  throw CLI::ValidationError("--property", "unknown property " + s);
}

}  // namespace detail

/// Runs one command line; returns the process exit code.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random graph process laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string seed_text = "0xC0FFEE";
  std::string out_path;
  std::string format = "json";
  unsigned threads = 1;
  app.add_option("--seed", seed_text, "base seed (default 0xC0FFEE)");
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  std::string gen_type;
  unsigned dim = 0;
  std::size_t gen_n = 0;
  unsigned gen_d = 0;
  std::vector<std::string> factors;
  std::optional<double> lambda_ceiling;
  std::size_t max_retries = 100;
  gen->add_option("--type", gen_type)
      ->required()
      ->check(CLI::IsMember({"hypercube", "complete", "cycle", "product", "rrg", "tightness"}));
  gen->add_option("--dim", dim);
  gen->add_option("--n", gen_n);
  gen->add_option("--d", gen_d);
  gen->add_option("--factor", factors, "product factor: K<n>, C<n>, P<n>, Q<d> or a graph file");
  gen->add_option("--lambda-ceiling", lambda_ceiling);
  gen->add_option("--max-retries", max_retries);

  // certify
  auto* cert = app.add_subcommand("certify", "certify an expansion property");
  std::string graph_path;
  std::string property;
  double c_value = 0.0;
  double epsilon = 0.1;
  std::optional<double> size_bound;
  double big_c = 1.0;
  std::size_t max_size = 4;
  std::vector<std::string> methods;
  cert->add_option("--graph", graph_path)->required();
  cert->add_option("--property", property)->required()->check(CLI::IsMember({"p1", "p2"}));
  cert->add_option("--c", c_value, "P1 constant");
  cert->add_option("--epsilon", epsilon, "P2 epsilon");
  cert->add_option("--size-bound", size_bound, "P2 size bound (default C d ln n)");
  cert->add_option("--C", big_c, "P2 constant C");
  cert->add_option("--max-size", max_size, "brute-force set size limit");
  cert->add_option("--method", methods, "strategy order")->check(CLI::IsMember({"harper", "spectral", "brute"}));

  // sim
  auto* sim = app.add_subcommand("sim", "hitting times of min degree k and k-connectivity");
  std::size_t k = 1;
  std::size_t trials = 100;
  bool exhaustive = false;
  std::optional<double> min_fraction;
  sim->add_option("--graph", graph_path)->required();
  sim->add_option("--k", k);
  sim->add_option("--trials", trials);
  sim->add_flag("--exhaustive", exhaustive, "enumerate every edge ordering (m <= 8)");
  sim->add_option("--expect-min", min_fraction, "exit 1 when the equality fraction is below this");

  // exp
  auto* exp = app.add_subcommand("exp", "structure or tightness experiment");
  std::string exp_kind;
  std::optional<double> phi;
  std::optional<double> p_override;
  std::optional<std::size_t> process_trials;
  exp->add_option("kind", exp_kind)->required()->check(CLI::IsMember({"structure", "tightness"}));
  exp->add_option("--graph", graph_path)->required();
  exp->add_option("--k", k);
  exp->add_option("--trials", trials);
  exp->add_option("--process-trials", process_trials);
  exp->add_option("--phi", phi);
  exp->add_option("--C", big_c);
  exp->add_option("--p", p_override);
  exp->add_option("--expect-min", min_fraction, "exit 1 when a headline rate is below this");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "success probability over a p grid");
  std::string sweep_prop;
  double pmin = 0.0;
  double pmax = 1.0;
  double step = 0.1;
  sweep->add_option("--graph", graph_path)->required();
  sweep->add_option("--property", sweep_prop)->required();
  sweep->add_option("--k", k);
  sweep->add_option("--pmin", pmin);
  sweep->add_option("--pmax", pmax);
  sweep->add_option("--step", step);
  sweep->add_option("--trials", trials);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const std::uint64_t seed = detail::parse_seed(seed_text);

    if (*gen) {
      Graph g;
      if (gen_type == "hypercube") {
        g = hypercube(dim);
      } else if (gen_type == "complete") {
        g = complete_graph(gen_n);
      } else if (gen_type == "cycle") {
        g = cycle_graph(gen_n);
      } else if (gen_type == "product") {
        std::vector<Graph> fs;
        for (const auto& f : factors) fs.push_back(detail::parse_factor(f));
        g = cartesian_product(fs);
      } else if (gen_type == "rrg") {
        g = random_regular(gen_n, gen_d, seed);
      } else {
        ConstructionSpec spec;
        spec.d = gen_d;
        spec.n = gen_n;
        spec.lambda_ceiling = lambda_ceiling;
        spec.max_retries = max_retries;
        spec.seed = seed;
        const auto built = build_construction(spec);
        err << "base graph lambda = " << built.base_gap.nontrivial_abs() << " after " << built.attempts
            << " attempt(s)\n";
        g = built.graph;
      }
      detail::emit(write_graph(g), out_path, out);
      return kOk;
    }

    const Graph g = with_detected_family(load_graph(graph_path));

    if (*cert) {
      ExpansionProperty prop;
      if (property == "p1") {
        prop = P1{c_value};
      } else {
        const auto d = g.regular_degree();
        if (!d) throw ExpansionError("P2 needs a regular graph");
        prop = P2{epsilon, size_bound.value_or(local_size_bound(big_c, *d, g.order()))};
      }
      std::vector<Method> order;
      for (const auto& m : methods) {
        order.push_back(m == "harper" ? Method::harper : m == "spectral" ? Method::spectral : Method::brute);
      }
      if (order.empty()) order = {Method::harper, Method::spectral, Method::brute};
      CertifyOptions opt;
      opt.max_size = max_size;
      const auto c = certify(g, prop, order, opt);
      Json j = to_json(c);
      j["graph"] = graph_path;
      detail::emit(j.dump(1) + "\n", out_path, out);
      return c.verdict == Verdict::certified ? kOk : c.verdict == Verdict::refuted ? kFailed : kInconclusive;
    }

    ExperimentConfig cfg;
    cfg.graph_source = graph_path;
    cfg.k = k;
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.threads = threads;
    cfg.phi = phi;
    cfg.big_c = big_c;
    cfg.p_override = p_override;
    cfg.process_trials = process_trials;

    if (*sim) {
      if (exhaustive) cfg.exhaustive = true;
      const auto r = run_hitting_experiment(g, cfg);
      detail::emit(write_report(r), out_path, out);
      const double frac = r.aggregates["equal"]["fraction"].get<double>();
      return (min_fraction && frac < *min_fraction) ? kFailed : kOk;
    }

    if (*exp) {
      if (exp_kind == "structure") {
        const auto r = run_structure_experiment(g, cfg);
        detail::emit(write_report(r), out_path, out);
        const double rate = r.aggregates["all"]["fraction"].get<double>();
        return (min_fraction && rate < *min_fraction) ? kFailed : kOk;
      }
      const auto r = run_tightness_experiment(g, cfg);
      detail::emit(write_report(r), out_path, out);
      const double rate = r.aggregates["process"]["tau1_before_conn"]["fraction"].get<double>();
      return (min_fraction && rate < *min_fraction) ? kFailed : kOk;
    }

    if (*sweep) {
      cfg.p_grid = detail::make_grid(pmin, pmax, step);
      const auto prop = detail::parse_property(sweep_prop);
      const auto table = sweep_probability(g, cfg, prop);
      if (format == "csv") {
        detail::emit(sweep_csv(table), out_path, out);
      } else {
        detail::emit(write_report(sweep_report(g, cfg, prop, table)), out_path, out);
      }
      return kOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rgp::cli
