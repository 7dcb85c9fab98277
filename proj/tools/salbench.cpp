#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "salbench/corpus.hpp"
#include "salbench/error.hpp"
#include "salbench/experiments.hpp"
#include "salbench/models.hpp"
#include "salbench/report.hpp"
#include "salbench/score_table.hpp"
#include "salbench/scoring.hpp"

namespace fs = std::filesystem;
using namespace salbench;

namespace {

struct Options {
  std::string command;
  fs::path manifest;
  fs::path scores;
  fs::path categories;
  std::vector<std::string> models;
  std::vector<std::string> metrics;
  std::vector<std::string> gts;
  double blur_sigma = 0.03;
  int border_cut = -1;
  int reps = metrics::kDefaultReps;
  std::uint64_t seed = 0;
  int working_size = 64;
  double ft_blur = 3.0;
  std::vector<std::string> exclude{"FT"};
  double alpha = 0.05;
  fs::path out = ".";
};

struct SynthArgs {
  std::uint64_t seed = 0;
  int count = 60;
  std::vector<double> mix{1.0 / 3, 1.0 / 3, 1.0 / 3};
  int width = 128;
  int height = 96;
  std::string layout = "independent";
  fs::path out;
};

void apply_thread_cap() {
  if (const char* env = std::getenv("SALBENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

ScoringConfig scoring_config(const Options& o) {
  ScoringConfig c;
  if (!o.metrics.empty()) {
    c.metrics.clear();
    for (const auto& m : o.metrics) c.metrics.push_back(metrics::parse_metric(m));
  }
  if (!o.gts.empty()) {
    c.gts.clear();
    for (const auto& g : o.gts) c.gts.push_back(metrics::parse_gt_kind(g));
  }
  c.preprocess.blur_sigma = o.blur_sigma;
  if (o.border_cut >= 0) c.preprocess.border_cut = o.border_cut;
  c.reps = o.reps;
  c.seed = o.seed;
  return c;
}

Json config_echo(const Options& o, const ScoringConfig& c) {
  Json metrics_j = Json::array(), gts_j = Json::array();
  for (auto m : c.metrics) metrics_j.push_back(std::string(metrics::to_string(m)));
  for (auto g : c.gts) gts_j.push_back(std::string(metrics::to_string(g)));
  Json j{{"command", o.command}};
  if (!o.scores.empty()) {
    j["scores"] = o.scores.generic_string();
  } else {
    j["manifest"] = o.manifest.generic_string();
    j["models"] = o.models;
    j["metrics"] = metrics_j;
    j["gts"] = gts_j;
    j["preprocess"] = to_json(c.preprocess);
    j["reps"] = c.reps;
    j["working_size"] = o.working_size;
    j["ft_blur_radius"] = o.ft_blur;
  }
  j["seed"] = o.seed;
  j["trend_exclude"] = o.exclude;
  j["alpha"] = o.alpha;
  return j;
}

Json failure_header(const ScoreTable& t) {
  Json reasons = Json::object();
  for (const auto& [k, v] : t.missing_by_reason()) reasons[k] = v;
  return Json{{"rows", t.rows.size()}, {"missing", t.missing_count()}, {"missing_by_reason", reasons}};
}

Json with_header(const Json& config, const Json& failures, const std::string& key, Json body) {
  return Json{{"toolkit", kToolkitName},
              {"version", kToolkitVersion},
              {"config", config},
              {"failures", failures},
              {key, std::move(body)}};
}

int run(const Options& o) {
  apply_thread_cap();
  fs::create_directories(o.out);
  const ScoringConfig config = scoring_config(o);

  ScoreTable table;
  CategoryIndex categories;
  if (!o.scores.empty()) {
    table = read_score_csv(o.scores);
    const fs::path cats = o.categories.empty() ? o.scores.parent_path() / "categories.csv" : o.categories;
    if (fs::exists(cats)) categories = read_categories_csv(cats);
  } else {
    if (o.manifest.empty()) throw Error(ErrorCode::InvalidArgument, "--manifest or --scores is required");
    const corpus::Dataset dataset = corpus::load_dataset(o.manifest);
    std::vector<models::ModelSpec> specs;
    for (const auto& m : o.models) specs.push_back(models::parse_model_spec(m));
    models::ModelOptions mo;
    mo.spectral.working_size = o.working_size;
    mo.frequency_tuned.blur_radius = o.ft_blur;
    const models::ModelRegistry registry(std::move(specs), mo);
    table = score_corpus(dataset, registry, config);
    categories = category_index(dataset.manifest);
    write_csv(o.out / "scores.csv", table);
    write_categories_csv(o.out / "categories.csv", categories);
  }

  const Json echo = config_echo(o, config);
  const Json failures = failure_header(table);
  Json report{{"toolkit", kToolkitName}, {"version", kToolkitVersion}, {"config", echo}, {"failures", failures}};

  const bool all = o.command == "all";
  if (all || o.command == "exp1") {
    const auto r = bench::run_exp1(table);
    const Json j = to_json(r);
    write_json(o.out / "exp1.json", with_header(echo, failures, "exp1", j));
    write_exp1_figure_csv(o.out / "fig_exp1.csv", r);
    report["exp1"] = j;
  }
  if (all || o.command == "exp2") {
    try {
      bench::Exp2Options opts;
      opts.trend_exclude = o.exclude;
      const auto r = bench::run_exp2(table, categories, opts);
      const Json j = to_json(r);
      write_json(o.out / "exp2.json", with_header(echo, failures, "exp2", j));
      write_exp2_figure_csv(o.out / "fig_exp2.csv", r);
      report["exp2"] = j;
    } catch (const Error& e) {
      if (!all) throw;
      report["exp2"] = Json{{"error", e.what()}};
      write_json(o.out / "exp2.json", with_header(echo, failures, "exp2", report["exp2"]));
    }
  }
  if (all || o.command == "exp3") {
    const auto r = bench::run_exp3(table, categories, o.alpha);
    const Json j = to_json(r);
    write_json(o.out / "exp3.json", with_header(echo, failures, "exp3", j));
    write_exp3_figure_csv(o.out / "fig_exp3.csv", r);
    report["exp3"] = j;
  }
  write_json(o.out / "report.json", report);

  std::cerr << table.rows.size() << " score rows, " << table.missing_count() << " missing\n";
  return 0;
}

int run_synth(const SynthArgs& a) {
  if (a.mix.size() != 3) throw Error(ErrorCode::InvalidProportions, "--mix takes three values (L M S)");
  corpus::SynthOptions opts;
  opts.width = a.width;
  opts.height = a.height;
  if (a.layout == "coincident") {
    opts.layout = corpus::GroundTruthLayout::Coincident;
  } else if (a.layout != "independent") {
    throw Error(ErrorCode::InvalidArgument, "unknown layout '" + a.layout + "'");
  }
  const auto m = corpus::synth_dataset(a.seed, a.count, {a.mix[0], a.mix[1], a.mix[2]}, a.out, opts);
  std::cerr << m.entries.size() << " images written to " << a.out.string() << "\n";
  return 0;
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--manifest", o.manifest, "Dataset manifest (JSON)");
  sub->add_option("--scores", o.scores, "Reuse an existing scores.csv instead of scoring");
  sub->add_option("--categories", o.categories, "categories.csv (default: next to --scores)");
  sub->add_option("--model", o.models, "SR, PFT, FT or ext:NAME=dir (repeatable)");
  sub->add_option("--metric", o.metrics, "NSS or AUROC (repeatable)");
  sub->add_option("--gt", o.gts, "fixations or regions (repeatable)");
  sub->add_option("--blur-sigma", o.blur_sigma, "Gaussian sigma as a fraction of image width");
  sub->add_option("--border-cut", o.border_cut, "Border width in pixels (default 4% of the smaller side)");
  sub->add_option("--reps", o.reps, "AUROC negative resamples");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--working-size", o.working_size, "SR/PFT working resolution");
  sub->add_option("--ft-blur", o.ft_blur, "FT Gaussian sigma in pixels");
  sub->add_option("--exclude", o.exclude, "Models left out of the size trend fit");
  sub->add_option("--alpha", o.alpha, "Tukey significance level");
  sub->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saliency model benchmark toolkit"};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  Options o;
  for (const char* name : {"score", "exp1", "exp2", "exp3", "all"}) {
    auto* sub = app.add_subcommand(name, std::string("Run ") + name);
    add_run_options(sub, o);
    sub->callback([&o, name] { o.command = name; });
  }

  SynthArgs s;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  synth->add_option("--seed", s.seed, "Random seed");
  synth->add_option("--count", s.count, "Number of images");
  synth->add_option("--mix", s.mix, "Large, medium, small proportions")->expected(3);
  synth->add_option("--width", s.width);
  synth->add_option("--height", s.height);
  synth->add_option("--layout", s.layout, "independent or coincident");
  synth->add_option("--out", s.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);
  if (o.models.empty()) o.models = {"SR", "PFT", "FT"};

  try {
    if (synth->parsed()) return run_synth(s);
    return run(o);
  } catch (const std::exception& e) {
    std::cerr << "salbench: " << e.what() << "\n";
    return 1;
  }
}
