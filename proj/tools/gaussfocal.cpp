#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "focal/experiments.hpp"
#include "focal/report.hpp"
#include "focal/spec_file.hpp"

namespace {

constexpr int kExitInput = 4;

struct Options {
  focal::ExperimentConfig cfg;
  std::string experiment;
  std::string spec_path;
  std::string verify = "basic";
  std::vector<std::string> features;
  bool json = false;
  std::string jsonl_out;
  bool no_timing = false;
  std::string expectations = FOCAL_EXPECTATIONS_PATH;
  unsigned m = 0;
  focal::u64 prime = 0;
};

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--m", o.m, "Series parameter");
  auto* prime = cmd->add_option("--prime", o.prime, "Use this prime only");
  auto* primes = cmd->add_option("--primes", o.cfg.primes, "Number of random primes")->check(CLI::Range(1u, 16u));
  prime->excludes(primes);
  cmd->add_option("--seed", o.cfg.seed, "Master seed");
  cmd->add_option("--trials", o.cfg.trials, "Sampled points per prime")->check(CLI::Range(1u, 1000u));
  cmd->add_option("--lines", o.cfg.lines, "Lines per focal profile")->check(CLI::Range(1u, 1000u));
  auto* json = cmd->add_flag("--json", o.json, "Print records as a JSON array");
  auto* jsonl = cmd->add_option("--jsonl-out", o.jsonl_out, "Append records as JSON lines to FILE");
  json->excludes(jsonl);
  cmd->add_option("--verify", o.verify, "Verification level")->check(CLI::IsMember({"basic", "full"}));
  cmd->add_option("--features", o.features, "Optional features (albert)")->check(CLI::IsMember({"albert"}));
  cmd->add_flag("--no-timing", o.no_timing, "Record zero wall time (byte-identical output)");
  cmd->add_option("--expectations", o.expectations, "Expectation table");
}

int report(const Options& o, const focal::ExperimentResult& res) {
  using focal::ReportFormat;
  if (o.json)
    focal::emit_report(std::cout, res.records, ReportFormat::Json);
  else if (!o.jsonl_out.empty())
    focal::emit_report(std::cout, res.records, ReportFormat::JsonLines, o.jsonl_out);
  else
    focal::emit_report(std::cout, res.records, ReportFormat::Table);
  for (auto& f : res.failures) std::cerr << "FAIL " << f << '\n';
  std::ostream& summary = o.json ? std::cerr : std::cout;
  summary << (res.exit_code == 0 ? "PASS" : "FAIL") << " (" << res.records.size() << " records)\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss fibres, characteristic matrices and focal divisors over prime fields"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run a preset experiment");
  run->add_option("experiment", o.experiment, "Preset name")->required();
  add_run_options(run, o);

  auto* custom = app.add_subcommand("custom", "Analyse a variety described in a JSON file");
  custom->add_option("--spec", o.spec_path, "Spec file")->required();
  add_run_options(custom, o);

  auto* sweep = app.add_subcommand("sweep", "Run every preset at its default parameter");
  add_run_options(sweep, o);

  auto* list = app.add_subcommand("list", "List presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (list->parsed()) {
    for (auto& p : focal::presets()) {
      std::cout << p.name;
      if (!p.m_values.empty())
        std::cout << "  (m " << p.m_values.front() << ".." << p.m_values.back() << ", default " << p.default_m << ")";
      if (p.needs_albert) std::cout << "  (needs --features albert)";
      std::cout << '\n';
    }
    return 0;
  }

  auto& cfg = o.cfg;
  cfg.experiment = o.experiment;
  if (o.m != 0) cfg.m = o.m;
  if (o.prime != 0) cfg.prime = o.prime;
  cfg.verify = o.verify == "full" ? focal::VerifyLevel::Full : focal::VerifyLevel::Basic;
  for (auto& f : o.features) cfg.albert = cfg.albert || f == "albert";
  cfg.timing = !o.no_timing;

  try {
    auto expectations = focal::Expectations::load(o.expectations);
    focal::ExperimentResult res;
    if (run->parsed()) {
      res = focal::run_experiment(cfg, &expectations);
    } else if (custom->parsed()) {
      auto spec = focal::parse_spec_file(o.spec_path);
      res = focal::run_spec(spec.name, std::nullopt, &spec, cfg, &expectations);
    } else if (sweep->parsed()) {
      res = focal::run_sweep(cfg, &expectations);
    }
    return report(o, res);
  } catch (const focal::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (focal::is_degeneracy(e.kind())) return 3;
    return kExitInput;
  }
}
