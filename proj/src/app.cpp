// Copyright 2026 The evostream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evostream/app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "evostream/eindm.hpp"
#include "evostream/kv_config.hpp"
#include "evostream/osdm.hpp"
#include "evostream/osgm.hpp"
#include "evostream/synthetic.hpp"

namespace evostream {

namespace fs = std::filesystem;

std::vector<std::string> LoadedStream::label_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) names.push_back(labels.term(static_cast<TermId>(i)));
  return names;
}

LoadedStream load_documents(const std::vector<RawRecord>& records, const PreprocessConfig& cfg) {
  LoadedStream s;
  s.docs.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    Document d = preprocess(records[i], cfg, s.vocab, s.labels);
    d.arrival = i;
    std::int64_t cls = -1;
    if (records[i].topic) {
      cls = *records[i].topic;
    } else if (!records[i].labels.empty()) {
      cls = *s.labels.find(records[i].labels.front());
    }
    s.classes.push_back(cls);
    s.reveal.push_back(records[i].reveal_labels);
    s.docs.push_back(std::move(d));
  }
  return s;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"osdm", "osgm", "osgm-es", "eindm", "osmtc"};
  return names;
}

ParamBlock defaults_for(const std::string& model) {
  if (model == "osdm") return osdm_defaults();
  if (model == "osgm") return osgm_defaults(osgm::Variant::kWithIcf);
  if (model == "osgm-es") return osgm_defaults(osgm::Variant::kEs);
  if (model == "eindm") return eindm_defaults();
  if (model == "osmtc") return osmtc_defaults();
  throw ConfigError("unknown model '" + model + "'");
}

namespace {

std::size_t to_count(const std::string& key, double v) {
  if (std::isinf(v) && v > 0) return 0;
  if (!(v >= 0.0) || v != std::floor(v))
    throw ConfigError(key + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

void apply_param(ParamBlock& p, const std::string& key, double v) {
  if (key == "alpha") {
    p.alpha = v;
  } else if (key == "beta") {
    p.beta = v;
  } else if (key == "lambda") {
    p.lambda = v;
  } else if (key == "gamma") {
    p.gamma_recency = v;
    p.gamma_penalty = v;
  } else if (key == "gamma_recency") {
    p.gamma_recency = v;
  } else if (key == "gamma_penalty") {
    p.gamma_penalty = v;
  } else if (key == "delta") {
    p.window = static_cast<int>(to_count(key, v));
  } else if (key == "psi") {
    p.buffer_size = to_count(key, v);
  } else if (key == "rho") {
    p.infer_interval = to_count(key, v);  // inf disables inference
  } else if (key == "eta") {
    p.resample_count = to_count(key, v);
  } else if (key == "k") {
    p.neighbors = to_count(key, v);
  } else if (key == "z_min") {
    p.min_clusters_per_label = to_count(key, v);
  } else if (key == "d_init") {
    p.init_docs = to_count(key, v);
  } else if (key == "epsilon") {
    p.decay_epsilon = v;
  } else {
    throw ConfigError("unknown parameter '" + key + "'");
  }
}

std::unique_ptr<StreamClusterer> make_clusterer(const std::string& model, const ParamBlock& p,
                                                std::uint64_t seed) {
  if (model == "osdm") return std::make_unique<OsdmModel>(p);
  if (model == "osgm") return std::make_unique<OsgmModel>(p, osgm::Variant::kWithIcf);
  if (model == "osgm-es") return std::make_unique<OsgmModel>(p, osgm::Variant::kEs);
  if (model == "eindm") return std::make_unique<EindmModel>(p, seed);
  throw ConfigError("model '" + model + "' is not a clustering model");
}

namespace {

class LineSink {
 public:
  explicit LineSink(const fs::path& path) : out_(path) {
    if (!out_) throw IoError("cannot write " + path.string());
  }
  void operator()(const Json& row) { out_ << row.dump() << '\n'; }

 private:
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

}  // namespace

RunReport execute_run(const RunConfig& cfg, const LoadedStream& stream) {
  ParamBlock p = defaults_for(cfg.model);
  for (const auto& [k, v] : cfg.overrides) apply_param(p, k, v);
  p.validate();

  std::unique_ptr<LineSink> rows, events;
  RunOptions opts;
  opts.window = cfg.window;
  opts.deterministic = cfg.deterministic;
  opts.check_invariants = cfg.check_invariants;
  if (!cfg.out.empty()) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw IoError("cannot create " + cfg.out + ": " + ec.message());
    rows = std::make_unique<LineSink>(fs::path(cfg.out) / "assignments.jsonl");
    events = std::make_unique<LineSink>(fs::path(cfg.out) / "events.jsonl");
    opts.on_row = [&](const Json& j) { (*rows)(j); };
    opts.on_event = [&](const Json& j) { (*events)(j); };
  }

  RunReport report;
  if (cfg.model == "osmtc") {
    std::vector<bool> reveal = stream.reveal;
    if (cfg.labeled_ratio) {
      if (*cfg.labeled_ratio < 0.0 || *cfg.labeled_ratio > 1.0)
        throw ConfigError("labeled ratio outside [0, 1]");
      std::mt19937_64 rng(cfg.seed);
      std::bernoulli_distribution coin(*cfg.labeled_ratio);
      for (std::size_t i = 0; i < reveal.size(); ++i) reveal[i] = coin(rng);
    }
    OsmtcModel model(p, cfg.seed);
    report = run_osmtc(model, stream.docs, reveal, stream.labels.size(), opts,
                       stream.label_names());
  } else {
    auto model = make_clusterer(cfg.model, p, cfg.seed);
    report = run_clustering(*model, stream.docs, stream.classes, opts);
  }

  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "report.json", report.to_json(cfg.deterministic).dump(2) + "\n");
    write_text(fs::path(cfg.out) / "report.csv", report.to_csv());
  }
  return report;
}

namespace {

PreprocessConfig preprocess_config(const RunConfig& cfg) {
  PreprocessConfig pc = PreprocessConfig::defaults();
  pc.stem = cfg.stem;
  if (!cfg.stopwords.empty()) pc.stopwords = load_stopwords(cfg.stopwords);
  return pc;
}

LoadedStream load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("--input is required");
  if (!fs::exists(cfg.input)) throw IoError("input file not found: " + cfg.input);
  auto records = read_stream(cfg.input, cfg.skip_bad_lines ? OnParseError::kSkip
                                                           : OnParseError::kAbort);
  return load_documents(records, preprocess_config(cfg));
}

std::uint64_t env_seed() {
  const char* s = std::getenv("EVOSTREAM_SEED");
  if (!s || !*s) return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("EVOSTREAM_SEED is not an integer: ") + s);
  }
}

double json_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  return v.get<double>();
}

// Fills fields of `cfg` from a config file; values already set by flags win.
void apply_config_file(RunConfig& cfg, const std::string& path, const CLI::App& cmd) {
  const auto file = load_kv_config(path);
  auto flag_set = [&](const char* name) { return cmd.get_option(name)->count() > 0; };
  std::vector<std::pair<std::string, double>> params;
  for (const auto& [key, v] : file.items()) {
    if (key.rfind("params.", 0) == 0) {
      params.emplace_back(key.substr(7), json_number(v, key));
    } else if (key == "model") {
      if (!v.is_string()) throw ConfigError("model must be a string");
      if (!flag_set("--model")) cfg.model = v.get<std::string>();
    } else if (key == "input") {
      if (!v.is_string()) throw ConfigError("input must be a string");
      if (!flag_set("--input")) cfg.input = v.get<std::string>();
    } else if (key == "out") {
      if (!v.is_string()) throw ConfigError("out must be a string");
      if (!flag_set("--out")) cfg.out = v.get<std::string>();
    } else if (key == "window") {
      if (!flag_set("--window")) cfg.window = static_cast<std::size_t>(json_number(v, key));
    } else if (key == "seed") {
      if (!flag_set("--seed")) cfg.seed = static_cast<std::uint64_t>(json_number(v, key));
    } else if (key == "labeled_ratio") {
      if (!flag_set("--labeled-ratio")) cfg.labeled_ratio = json_number(v, key);
    } else if (key == "deterministic") {
      if (!v.is_boolean()) throw ConfigError("deterministic must be true or false");
      if (!flag_set("--deterministic")) cfg.deterministic = v.get<bool>();
    } else if (key == "stem") {
      if (!v.is_boolean()) throw ConfigError("stem must be true or false");
      if (!flag_set("--stem")) cfg.stem = v.get<bool>();
    } else if (key == "stopwords") {
      if (!v.is_string()) throw ConfigError("stopwords must be a string");
      if (!flag_set("--stopwords")) cfg.stopwords = v.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  // file parameters first so that flag overrides are applied after them
  params.insert(params.end(), cfg.overrides.begin(), cfg.overrides.end());
  cfg.overrides = std::move(params);
}

struct ParamFlags {
  std::optional<double> alpha, beta, lambda, gamma, gamma_recency, gamma_penalty;
  std::optional<double> delta, psi, rho, eta, k, z_min, d_init, epsilon;

  void attach(CLI::App& cmd) {
    cmd.add_option("--alpha", alpha, "concentration parameter");
    cmd.add_option("--beta", beta, "pseudo term weight");
    cmd.add_option("--lambda", lambda, "decay factor");
    cmd.add_option("--gamma", gamma, "recency and penalty threshold, percent");
    cmd.add_option("--gamma-recency", gamma_recency, "term recency threshold, percent");
    cmd.add_option("--gamma-penalty", gamma_penalty, "wrong-label penalty, percent");
    cmd.add_option("--delta", delta, "co-occurrence window");
    cmd.add_option("--psi", psi, "buffer size");
    cmd.add_option("--rho", rho, "inference interval (inf disables)");
    cmd.add_option("--eta", eta, "documents resampled per inference");
    cmd.add_option("-k,--neighbors", k, "nearest clusters used for prediction");
    cmd.add_option("--z-min", z_min, "minimum clusters per label");
    cmd.add_option("--d-init", d_init, "labelled warmup documents");
    cmd.add_option("--epsilon", epsilon, "decayed weight below which clusters are outdated");
  }

  std::vector<std::pair<std::string, double>> collect() const {
    std::vector<std::pair<std::string, double>> out;
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) out.emplace_back(key, *v);
    };
    put("alpha", alpha);
    put("beta", beta);
    put("lambda", lambda);
    put("gamma", gamma);
    put("gamma_recency", gamma_recency);
    put("gamma_penalty", gamma_penalty);
    put("delta", delta);
    put("psi", psi);
    put("rho", rho);
    put("eta", eta);
    put("k", k);
    put("z_min", z_min);
    put("d_init", d_init);
    put("epsilon", epsilon);
    return out;
  }
};

void attach_run_options(CLI::App& cmd, RunConfig& cfg, std::optional<std::uint64_t>& seed,
                        std::string& config_path) {
  cmd.add_option("--model", cfg.model, "osdm | osgm | osgm-es | eindm | osmtc")
      ->check(CLI::IsMember(model_names()));
  cmd.add_option("--input", cfg.input, "JSONL stream");
  cmd.add_option("--out", cfg.out, "output directory");
  cmd.add_option("--config", config_path, "key/value config file");
  cmd.add_option("--window", cfg.window, "report every W documents");
  cmd.add_option("--seed", seed, "random seed (default: $EVOSTREAM_SEED or 0)");
  cmd.add_option("--labeled-ratio", cfg.labeled_ratio,
                 "osmtc: reveal labels of this share of documents");
  cmd.add_flag("--deterministic", cfg.deterministic, "omit wall-clock figures from reports");
  cmd.add_flag("--check-invariants", cfg.check_invariants, "recount model state after each document");
  cmd.add_flag("--stem", cfg.stem, "apply Porter stemming");
  cmd.add_option("--stopwords", cfg.stopwords, "stopword file, one word per line");
  cmd.add_flag("--skip-bad-lines", cfg.skip_bad_lines, "skip malformed input lines with a warning");
}

void finish_config(RunConfig& cfg, const std::optional<std::uint64_t>& seed,
                   const std::string& config_path, const ParamFlags& flags, const CLI::App& cmd) {
  cfg.overrides = flags.collect();
  if (!config_path.empty()) {
    if (!fs::exists(config_path)) throw IoError("config file not found: " + config_path);
    apply_config_file(cfg, config_path, cmd);
  }
  if (seed) {
    cfg.seed = *seed;
  } else if (cmd.get_option("--seed")->count() == 0 && cfg.seed == 0) {
    cfg.seed = env_seed();
  }
  if (std::find(model_names().begin(), model_names().end(), cfg.model) == model_names().end())
    throw ConfigError("unknown model '" + cfg.model + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

int cmd_generate(const std::string& spec_path, const std::string& out) {
  if (!fs::exists(spec_path)) throw IoError("spec file not found: " + spec_path);
  const SynthSpec spec = load_synth_spec(spec_path);
  const SynthStream s = generate_synthetic(spec);
  write_stream(out, s.records);
  std::cerr << "wrote " << s.records.size() << " documents to " << out << "\n";
  return exit_code::kOk;
}

int cmd_run(const RunConfig& cfg) {
  const LoadedStream stream = load_input(cfg);
  const RunReport r = execute_run(cfg, stream);
  std::cout << r.final_metrics.dump() << "\n";
  return exit_code::kOk;
}

struct GridAxis {
  std::string key;
  std::vector<double> values;
};

int cmd_sweep(RunConfig base, const std::vector<std::string>& grid_specs, unsigned threads) {
  if (grid_specs.empty()) throw ConfigError("sweep needs at least one --grid key=v1,v2");
  std::vector<GridAxis> axes;
  for (const auto& g : grid_specs) {
    const auto eq = g.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("bad --grid '" + g + "'");
    GridAxis ax{g.substr(0, eq), {}};
    for (const auto& v : split(g.substr(eq + 1), ',')) ax.values.push_back(parse_number(v, ax.key));
    if (ax.values.empty()) throw ConfigError("empty grid for " + ax.key);
    ParamBlock probe;
    apply_param(probe, ax.key, ax.values.front());
    axes.push_back(std::move(ax));
  }
  std::vector<std::vector<double>> combos{{}};
  for (const auto& ax : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& c : combos)
      for (double v : ax.values) {
        auto e = c;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    combos = std::move(next);
  }

  const LoadedStream stream = load_input(base);
  const std::string out_dir = base.out;
  base.out.clear();

  struct Row {
    bool ok = false;
    std::string error;
    Json metrics;
    double seconds = 0.0;
  };
  std::vector<Row> rows(combos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < combos.size(); i = next++) {
      RunConfig cfg = base;
      for (std::size_t a = 0; a < axes.size(); ++a)
        cfg.overrides.emplace_back(axes[a].key, combos[i][a]);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        rows[i].metrics = execute_run(cfg, stream).final_metrics;
        rows[i].ok = true;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
      rows[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(combos.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<std::string> metric_keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.metrics.items())
      if (std::find(metric_keys.begin(), metric_keys.end(), k) == metric_keys.end())
        metric_keys.push_back(k);

  std::ostringstream csv;
  for (const auto& ax : axes) csv << ax.key << ',';
  csv << "status";
  for (const auto& k : metric_keys) csv << ',' << k;
  if (!base.deterministic) csv << ",seconds";
  csv << ",error\n";
  std::size_t failed = 0;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    for (double v : combos[i]) csv << fmt(v) << ',';
    csv << (rows[i].ok ? "ok" : "failed");
    for (const auto& k : metric_keys) {
      csv << ',';
      if (rows[i].metrics.contains(k)) csv << fmt(rows[i].metrics[k].get<double>());
    }
    if (!base.deterministic) csv << ',' << fmt(rows[i].seconds);
    std::string err = rows[i].error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    csv << ',' << err << '\n';
    if (!rows[i].ok) ++failed;
  }
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    write_text(fs::path(out_dir) / "sweep.csv", csv.str());
  }
  std::cout << csv.str();
  if (failed > 0) std::cerr << failed << " of " << combos.size() << " runs failed\n";
  return exit_code::kOk;
}

int cmd_bench(RunConfig base, const std::string& spec_path, const std::vector<std::size_t>& sizes) {
  if (base.model == "osmtc") throw ConfigError("bench supports the clustering models");
  std::vector<RawRecord> records;
  if (!spec_path.empty()) {
    if (!fs::exists(spec_path)) throw IoError("spec file not found: " + spec_path);
    records = generate_synthetic(load_synth_spec(spec_path)).records;
  } else if (!base.input.empty()) {
    if (!fs::exists(base.input)) throw IoError("input file not found: " + base.input);
    records = read_stream(base.input);
  } else {
    throw ConfigError("bench needs --spec or --input");
  }
  const std::string out_dir = base.out;
  base.out.clear();
  base.deterministic = false;

  std::ostringstream csv;
  csv << "size,ms,docs_per_sec,ms_per_doc,peak_clusters,peak_cooc_entries";
  const bool paired = base.model == "eindm";
  if (paired) csv << ",no_inference_ms,inference_ms";
  csv << '\n';
  for (std::size_t n : sizes) {
    if (n > records.size())
      throw ConfigError("bench size " + std::to_string(n) + " exceeds the " +
                        std::to_string(records.size()) + " available documents");
    const std::vector<RawRecord> prefix(records.begin(),
                                        records.begin() + static_cast<std::ptrdiff_t>(n));
    const LoadedStream stream = load_documents(prefix, preprocess_config(base));
    const RunReport r = execute_run(base, stream);
    const double ms = r.perf.seconds * 1000.0;
    csv << n << ',' << fmt(ms) << ',' << fmt(r.perf.docs_per_sec) << ','
        << fmt(n > 0 ? ms / static_cast<double>(n) : 0.0) << ',' << r.perf.peak_clusters << ','
        << r.perf.peak_cooc_entries;
    if (paired) {
      RunConfig off = base;
      off.overrides.emplace_back("rho", 0.0);
      const double off_ms = execute_run(off, stream).perf.seconds * 1000.0;
      csv << ',' << fmt(off_ms) << ',' << fmt(ms - off_ms);
    }
    csv << '\n';
  }
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    write_text(fs::path(out_dir) / "bench.csv", csv.str());
  }
  std::cout << csv.str();
  return exit_code::kOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"evostream: online text-stream clustering and classification"};
  app.require_subcommand(1);

  std::string spec_path, gen_out;
  auto* gen = app.add_subcommand("generate", "write a synthetic stream");
  gen->add_option("--spec", spec_path, "generator spec (key/value file)")->required();
  gen->add_option("--out", gen_out, "output JSONL")->required();

  RunConfig run_cfg;
  std::optional<std::uint64_t> run_seed;
  std::string run_config;
  ParamFlags run_flags;
  auto* run = app.add_subcommand("run", "run a model over a stream");
  attach_run_options(*run, run_cfg, run_seed, run_config);
  run_flags.attach(*run);

  RunConfig sweep_cfg;
  std::optional<std::uint64_t> sweep_seed;
  std::string sweep_config;
  ParamFlags sweep_flags;
  std::vector<std::string> grid;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid");
  attach_run_options(*sweep, sweep_cfg, sweep_seed, sweep_config);
  sweep_flags.attach(*sweep);
  sweep->add_option("--grid", grid, "key=v1,v2,... (repeatable)");
  sweep->add_option("--threads", threads, "concurrent runs");

  RunConfig bench_cfg;
  std::optional<std::uint64_t> bench_seed;
  std::string bench_config, bench_spec, bench_sizes;
  ParamFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "measure throughput over stream prefixes");
  attach_run_options(*bench, bench_cfg, bench_seed, bench_config);
  bench_flags.attach(*bench);
  bench->add_option("--spec", bench_spec, "generator spec to draw documents from");
  bench->add_option("--sizes", bench_sizes, "comma separated prefix sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::kOk : exit_code::kConfig;
  }

  try {
    if (gen->parsed()) return cmd_generate(spec_path, gen_out);
    if (run->parsed()) {
      finish_config(run_cfg, run_seed, run_config, run_flags, *run);
      return cmd_run(run_cfg);
    }
    if (sweep->parsed()) {
      finish_config(sweep_cfg, sweep_seed, sweep_config, sweep_flags, *sweep);
      return cmd_sweep(sweep_cfg, grid, threads);
    }
    if (bench->parsed()) {
      finish_config(bench_cfg, bench_seed, bench_config, bench_flags, *bench);
      std::vector<std::size_t> sizes;
      for (const auto& s : split(bench_sizes, ','))
        if (!s.empty()) sizes.push_back(to_count("size", parse_number(s, "--sizes")));
      return cmd_bench(bench_cfg, bench_spec, sizes);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const StreamError& e) {
    std::cerr << (e.invariant_breach() ? "invariant breach: " : "error: ") << e.what() << "\n";
    return e.invariant_breach() ? exit_code::kInvariant : exit_code::kFailure;
  } catch (const InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return exit_code::kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kFailure;
  }
  return exit_code::kFailure;
}

}  // namespace evostream
