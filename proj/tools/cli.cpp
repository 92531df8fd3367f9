#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "egse/analytics.hpp"
#include "egse/errors.hpp"
#include "egse/feedback.hpp"
#include "egse/simulation.hpp"

namespace egse::cli {

namespace {

using nlohmann::json;

double rounded(double value) { return std::stod(format_number(value)); }

std::string exact_text(const Rational& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_field_csv(std::ostream& os, const json& doc, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      write_field_csv(os, value, name);
    } else if (value.is_string()) {
      os << name << ',' << value.get<std::string>() << '\n';
    } else {
      os << name << ',' << value.dump() << '\n';
    }
  }
}

ExplorationConfig validated_config(const ExperimentSpec& spec) {
  const auto config = ExplorationConfig::make(spec.n, spec.m, spec.epsilon);
  if (spec.trials == 0) throw InvalidConfig("--trials must be at least 1");
  if (spec.max_queries == 0) throw InvalidConfig("--max-queries must be at least 1");
  ClickModel{5, spec.boost_delta, spec.penalty_delta}.validate();
  return config;
}

json analytic_report(const ExperimentSpec& spec, const ExplorationConfig& config) {
  const auto n = config.n;
  const auto m = config.m;
  const auto r = config.r;
  const bool checkable = config.explore_pool() <= kBinomialCheckLimit;

  json doc;
  doc["algorithm"] = std::string(to_string(spec.algorithm));
  doc["n"] = n;
  doc["m"] = m;
  doc["epsilon"] = spec.epsilon;
  doc["r"] = r;
  doc["k"] = config.k;

  json exact;
  if (spec.algorithm == Algorithm::egse_a) {
    const Rational alpha = inclusion_prob_a(n, m, r);
    const Rational mean = mean_u(n, m, r);
    const Rational var = var_u(n, m, r);
    doc["alpha"] = rounded(to_double(alpha));
    doc["alpha_exact"] = exact_text(alpha);
    doc["mean"] = rounded(to_double(mean));
    doc["variance"] = rounded(to_double(var));
    doc["second_moment"] = rounded(to_double(var + mean * mean));
    doc["support_max"] = nullptr;
    exact["closed_form"] = "exact";
    exact["mean_exact"] = exact_text(mean);
    exact["variance_exact"] = exact_text(var);
    if (checkable) {
      exact["binomial_forms_agree"] =
          mean_u_binomial(n, m, r) == mean && var_u_binomial(n, m, r) == var;
    }
  } else {
    const Rational alpha(r, config.explore_pool());
    const Moments moments = exact_moments_v(n, m, r);
    const bool even = divides_evenly(n, m, r);
    doc["alpha"] = rounded(to_double(alpha));
    doc["alpha_exact"] = exact_text(alpha);
    doc["mean"] = rounded(to_double(mean_v(n, m, r)));
    doc["variance"] = rounded(to_double(var_v(n, m, r)));
    doc["second_moment"] = rounded(to_double(second_moment_v(n, m, r)));
    doc["support_max"] = support_max_v(n, m, r);
    exact["closed_form"] = even ? "exact" : "approximate";
    exact["divides_evenly"] = even;
    exact["mean_exact"] = exact_text(moments.mean);
    exact["variance_exact"] = exact_text(moments.variance);
    exact["second_moment_exact"] = exact_text(moments.second_moment);
    exact["mean_exact_value"] = rounded(to_double(moments.mean));
    if (checkable) {
      exact["recurrence_verified"] =
          verify_recurrence(n, m, r, support_max_v(n, m, r)).consistent;
    }
  }
  doc["exact_vs_closed_form"] = exact;

  if (spec.within) {
    doc["within_t"] = {{"t", *spec.within},
                       {"probability",
                        rounded(discovery_within(spec.algorithm, n, m, r, *spec.within))}};
  }
  return doc;
}

int cmd_analytic(const ExperimentSpec& spec, std::ostream& out) {
  const auto config = validated_config(spec);
  const json doc = analytic_report(spec, config);
  Sink sink(spec.out, out);
  if (spec.format.value_or(Format::json) == Format::json) {
    sink.get() << doc.dump(2) << '\n';
  } else {
    sink.get() << "field,value\n";
    write_field_csv(sink.get(), doc);
  }
  return kExitOk;
}

json simulation_summary(const ConvergenceTrace& trace) {
  json summary;
  summary["algorithm"] = std::string(to_string(trace.algorithm));
  summary["trials"] = trace.discovery_times.size();
  summary["final_mean"] = rounded(trace.final_mean);
  summary["analytic_mean"] = rounded(trace.analytic_mean);
  summary["rel_error"] = rounded(trace.rel_error);
  json capped = json::array();
  for (const auto& c : trace.capped) {
    capped.push_back({{"max_steps", c.max_steps},
                      {"empirical", rounded(c.empirical)},
                      {"analytic", rounded(c.analytic)}});
  }
  summary["within"] = capped;
  return summary;
}

int cmd_simulate(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  TrialBatch batch;
  batch.algorithm = spec.algorithm;
  batch.config = validated_config(spec);
  batch.trials = spec.trials;
  batch.base_seed = spec.seed;
  batch.max_steps = spec.max_steps;
  const ConvergenceTrace trace = run_convergence(batch, spec.threads);

  const auto rel = [&](double mean) {
    return std::abs(mean - trace.analytic_mean) / trace.analytic_mean;
  };
  Sink sink(spec.out, out);
  if (spec.format.value_or(Format::csv) == Format::csv) {
    std::ostream& os = sink.get();
    os << "trial,discovery_time,running_mean,analytic_mean,rel_error\n";
    for (std::size_t t = 0; t < trace.discovery_times.size(); ++t) {
      os << t + 1 << ',' << trace.discovery_times[t] << ',' << format_number(trace.running_mean[t])
         << ',' << format_number(trace.analytic_mean) << ','
         << format_number(rel(trace.running_mean[t])) << '\n';
    }
    if (spec.summary) os << simulation_summary(trace).dump() << '\n';
  } else {
    json doc;
    doc["summary"] = simulation_summary(trace);
    json rows = json::array();
    for (std::size_t t = 0; t < trace.discovery_times.size(); ++t) {
      rows.push_back({{"trial", t + 1},
                      {"discovery_time", trace.discovery_times[t]},
                      {"running_mean", rounded(trace.running_mean[t])},
                      {"analytic_mean", rounded(trace.analytic_mean)},
                      {"rel_error", rounded(rel(trace.running_mean[t]))}});
    }
    doc["trials"] = rows;
    sink.get() << doc.dump(2) << '\n';
  }

  err << to_string(trace.algorithm) << ": mean " << format_number(trace.final_mean)
      << " over " << trace.discovery_times.size() << " trials, analytic "
      << format_number(trace.analytic_mean) << ", relative error "
      << format_number(trace.rel_error) << '\n';
  for (const auto& c : trace.capped) {
    err << "  P(discovery <= " << c.max_steps << ") = " << format_number(c.empirical)
        << " (analytic " << format_number(c.analytic) << ")\n";
  }
  return kExitOk;
}

json histogram_json(const std::vector<CategorySummary>& summary) {
  json rows = json::array();
  for (const auto& s : summary) {
    json deciles = json::array();
    for (double d : s.deciles) deciles.push_back(rounded(d));
    rows.push_back({{"label", s.label}, {"count", s.count}, {"mean", rounded(s.mean)},
                    {"deciles", deciles}});
  }
  return rows;
}

void write_histogram_csv(const std::string& path, const std::vector<CategorySummary>& summary) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open histogram file '" + path + "'");
  os << "label,count,mean";
  for (int d = 0; d <= 100; d += 10) os << ",d" << d;
  os << '\n';
  for (const auto& s : summary) {
    os << s.label << ',' << s.count << ',' << format_number(s.mean);
    for (double d : s.deciles) os << ',' << format_number(d);
    os << '\n';
  }
}

std::string histogram_prefix(const ExperimentSpec& spec) {
  if (!spec.hist_prefix.empty()) return spec.hist_prefix;
  if (spec.out.empty()) return "evolve";
  std::filesystem::path p(spec.out);
  if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
  return p.string();
}

int cmd_evolve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const auto config = validated_config(spec);
  EvolutionParams params;
  params.algorithm = spec.algorithm;
  params.n = config.n;
  params.m = config.m;
  params.epsilon = config.epsilon;
  params.target_boost = spec.target_boost;
  params.clicks = ClickModel{5, spec.boost_delta, spec.penalty_delta};
  params.worst_case = spec.worst_case;
  params.exclusion = spec.exclusion;
  params.max_queries = spec.max_queries;
  params.seed = spec.seed;
  const EvolutionTrace trace = run_evolution(params);

  const auto initial = summarize_categories(trace.initial, trace.catalog, params.target);
  const auto final = summarize_categories(trace.final, trace.catalog, params.target);

  Sink sink(spec.out, out);
  if (spec.format.value_or(Format::csv) == Format::csv) {
    std::ostream& os = sink.get();
    os << "query,precision,clicks,discovered\n";
    for (const auto& q : trace.queries) {
      os << q.query << ',' << format_number(q.precision) << ',' << q.clicked.size() << ','
         << (q.discovered ? 1 : 0) << '\n';
    }
    const std::string prefix = histogram_prefix(spec);
    write_histogram_csv(prefix + ".initial_hist.csv", initial);
    write_histogram_csv(prefix + ".discovery_hist.csv", final);
  } else {
    json doc;
    doc["algorithm"] = std::string(to_string(spec.algorithm));
    doc["hidden_object"] = index_of(trace.hidden);
    doc["discovery_query"] =
        trace.discovery_query ? json(*trace.discovery_query) : json(nullptr);
    json rows = json::array();
    for (const auto& q : trace.queries) {
      rows.push_back({{"query", q.query}, {"precision", rounded(q.precision)},
                      {"clicks", q.clicked.size()}, {"discovered", q.discovered}});
    }
    doc["queries"] = rows;
    doc["initial_hist"] = histogram_json(initial);
    doc["discovery_hist"] = histogram_json(final);
    sink.get() << doc.dump(2) << '\n';
  }

  if (trace.discovery_query) {
    err << to_string(spec.algorithm) << ": hidden object " << index_of(trace.hidden)
        << " discovered at query " << *trace.discovery_query << '\n';
  } else {
    err << to_string(spec.algorithm) << ": hidden object " << index_of(trace.hidden)
        << " not discovered after " << trace.queries.size() << " queries\n";
  }
  return kExitOk;
}

void add_common(CLI::App* sub, ExperimentSpec& spec, std::string& algo, std::string& format) {
  sub->add_option("--algo", algo, "Exploration variant")
      ->check(CLI::IsMember({"a", "b"}, CLI::ignore_case))
      ->capture_default_str();
  sub->add_option("--n", spec.n, "Catalog size N")->capture_default_str();
  sub->add_option("--m", spec.m, "List length M")->capture_default_str();
  sub->add_option("--epsilon", spec.epsilon, "Exploration share of the list")
      ->capture_default_str();
  sub->add_option("--out", spec.out, "Output file (default: stdout)");
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case));
}

}  // namespace

std::string format_number(double value) {
  std::ostringstream os;
  os << std::setprecision(6) << value;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epsilon-greedy search-space exploration: analytics, Monte-Carlo and evolution runs",
               "egse"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);

  ExperimentSpec analytic_spec;
  ExperimentSpec simulate_spec;
  ExperimentSpec evolve_spec;
  evolve_spec.n = 1000;
  evolve_spec.m = 50;
  std::map<std::string, std::string> algo{{"analytic", "b"}, {"simulate", "b"}, {"evolve", "b"}};
  std::map<std::string, std::string> format;
  std::string exclusion = "strict";

  auto* analytic = app.add_subcommand("analytic", "Closed-form discovery-time statistics");
  add_common(analytic, analytic_spec, algo["analytic"], format["analytic"]);
  analytic->add_option("--within", analytic_spec.within,
                       "Also report P(discovery within this many presentations)");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo discovery-time trials");
  add_common(simulate, simulate_spec, algo["simulate"], format["simulate"]);
  simulate->add_option("--seed", simulate_spec.seed, "Base seed")->capture_default_str();
  simulate->add_option("--trials", simulate_spec.trials, "Number of trials")->capture_default_str();
  simulate->add_option("--max-steps", simulate_spec.max_steps,
                       "Step caps for time-constrained discovery probabilities");
  simulate->add_option("--threads", simulate_spec.threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--summary", simulate_spec.summary, "Append a JSON summary line to the CSV");

  auto* evolve = app.add_subcommand("evolve", "Index evolution with simulated user feedback");
  add_common(evolve, evolve_spec, algo["evolve"], format["evolve"]);
  evolve->add_option("--seed", evolve_spec.seed, "Experiment seed")->capture_default_str();
  evolve->add_option("--boost-delta", evolve_spec.boost_delta, "RIV gain for a relevant judgment")
      ->capture_default_str();
  evolve->add_option("--penalty-delta", evolve_spec.penalty_delta,
                     "RIV loss for an irrelevant judgment")
      ->capture_default_str();
  evolve->add_option("--target-boost", evolve_spec.target_boost,
                     "Initial head start of true-target objects (at most sigma = 0.15)")
      ->capture_default_str();
  evolve->add_option("--max-queries", evolve_spec.max_queries, "Query cap C")
      ->capture_default_str();
  evolve->add_flag("--worst-case,!--no-worst-case", evolve_spec.worst_case,
                   "Keep the hidden object out of the exploitation block");
  evolve->add_option("--exclusion", exclusion, "EGSE-B exclusion set: strict or explored")
      ->check(CLI::IsMember({"strict", "explored"}))
      ->capture_default_str();
  evolve->add_option("--hist-prefix", evolve_spec.hist_prefix,
                     "Path prefix for the RIV histogram files (default: from --out)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    const auto finish = [&](ExperimentSpec& spec, const std::string& name) {
      spec.command = name;
      spec.algorithm = parse_algorithm(algo[name]);
      if (!format[name].empty()) {
        spec.format = (format[name] == "json" || format[name] == "JSON") ? Format::json : Format::csv;
      }
    };
    if (analytic->parsed()) {
      finish(analytic_spec, "analytic");
      return cmd_analytic(analytic_spec, out);
    }
    if (simulate->parsed()) {
      finish(simulate_spec, "simulate");
      return cmd_simulate(simulate_spec, out, err);
    }
    finish(evolve_spec, "evolve");
    evolve_spec.exclusion = exclusion == "strict" ? Exclusion::all_presented : Exclusion::explored_only;
    return cmd_evolve(evolve_spec, out, err);
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace egse::cli
