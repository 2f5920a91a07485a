#pragma once

// Preset registry, per-trial orchestration and run records.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "focal/albert.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"
#include "focal/focal_scheme.hpp"
#include "focal/gauss_map.hpp"
#include "focal/hyperband.hpp"
#include "focal/rng.hpp"
#include "focal/varieties.hpp"

namespace focal {

enum class VerifyLevel { Basic, Full };

struct ExperimentConfig {
  std::string experiment;
  std::optional<unsigned> m;
  std::optional<u64> prime;
  unsigned primes = 2;
  u64 seed = 1;
  unsigned trials = 3;
  unsigned lines = 8;
  bool albert = false;
  VerifyLevel verify = VerifyLevel::Basic;
  bool timing = true;
  /// Attempts per trial when sampling hits a degenerate configuration.
  unsigned retries = 16;
};

struct RunRecord {
  std::string experiment;
  std::optional<unsigned> m;
  u64 prime = 0;
  u64 seed = 0;
  unsigned trial_index = 0;
  std::size_t n = 0;
  std::size_t dim_x = 0;
  std::optional<std::size_t> c;
  std::size_t r = 0;
  std::size_t k = 0;
  unsigned focal_degree = 0;
  unsigned mu = 0;
  unsigned reduced_degree = 0;
  std::optional<std::size_t> quadric_rank;
  std::string sing_containment = "skipped";
  std::map<std::string, std::string> bound_verdicts;
  std::vector<ProfileEntry> profile;
  std::optional<std::size_t> focus_kernel_dim;
  std::optional<std::string> error;
  double wall_time = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline void to_json(nlohmann::ordered_json& j, const RunRecord& r) {
  auto opt = [](const auto& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  nlohmann::ordered_json prof = nlohmann::ordered_json::array();
  for (auto& e : r.profile) prof.push_back({e.multiplicity, e.degree});
  nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
  for (auto& [k, v] : r.bound_verdicts) bounds[k] = v;
  j = nlohmann::ordered_json{{"experiment", r.experiment},
                             {"m", opt(r.m)},
                             {"prime", r.prime},
                             {"seed", r.seed},
                             {"trial_index", r.trial_index},
                             {"n", r.n},
                             {"dim_x", r.dim_x},
                             {"c", opt(r.c)},
                             {"r", r.r},
                             {"k", r.k},
                             {"focal_degree", r.focal_degree},
                             {"mu", r.mu},
                             {"reduced_degree", r.reduced_degree},
                             {"quadric_rank", opt(r.quadric_rank)},
                             {"sing_containment", r.sing_containment},
                             {"bound_verdicts", bounds},
                             {"profile", prof},
                             {"focus_kernel_dim", opt(r.focus_kernel_dim)},
                             {"error", opt(r.error)},
                             {"wall_time", r.wall_time}};
}

inline void from_json(const nlohmann::ordered_json& j, RunRecord& r) {
  auto get_opt = [&](const char* key, auto& out) {
    using T = typename std::remove_reference_t<decltype(out)>::value_type;
    if (j.at(key).is_null())
      out.reset();
    else
      out = j.at(key).get<T>();
  };
  r.experiment = j.at("experiment").get<std::string>();
  get_opt("m", r.m);
  r.prime = j.at("prime").get<u64>();
  r.seed = j.at("seed").get<u64>();
  r.trial_index = j.at("trial_index").get<unsigned>();
  r.n = j.at("n").get<std::size_t>();
  r.dim_x = j.at("dim_x").get<std::size_t>();
  get_opt("c", r.c);
  r.r = j.at("r").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  r.focal_degree = j.at("focal_degree").get<unsigned>();
  r.mu = j.at("mu").get<unsigned>();
  r.reduced_degree = j.at("reduced_degree").get<unsigned>();
  get_opt("quadric_rank", r.quadric_rank);
  r.sing_containment = j.at("sing_containment").get<std::string>();
  r.bound_verdicts.clear();
  for (auto& [k, v] : j.at("bound_verdicts").items()) r.bound_verdicts[k] = v.get<std::string>();
  r.profile.clear();
  for (auto& e : j.at("profile")) r.profile.push_back({e.at(0).get<unsigned>(), e.at(1).get<unsigned>()});
  get_opt("focus_kernel_dim", r.focus_kernel_dim);
  get_opt("error", r.error);
  r.wall_time = j.at("wall_time").get<double>();
}

struct Preset {
  std::string name;
  /// Supported m values; empty when the preset takes no m.
  std::vector<unsigned> m_values;
  unsigned default_m = 0;
  bool needs_albert = false;
  bool hyperband = false;
  std::function<VarietySpec(unsigned)> build;
};

inline std::vector<unsigned> m_range(unsigned lo, unsigned hi) {
  std::vector<unsigned> v;
  for (unsigned m = lo; m <= hi; ++m) v.push_back(m);
  return v;
}

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = [] {
    using S = MatrixShape;
    std::vector<Preset> p;
    auto fixed = [&](std::string name, std::function<VarietySpec()> f) {
      p.push_back({name, {}, 0, false, false, [f](unsigned) { return f(); }});
    };
    fixed("severi-2", [] { return rank_locus_spec(S::symmetric(3), 2, "severi-2"); });
    fixed("severi-4", [] { return rank_locus_spec(S::generic(3, 3), 2, "severi-4"); });
    fixed("severi-8", [] { return rank_locus_spec(S::skew(6), 4, "severi-8"); });
    p.push_back({"severi-16", {}, 0, true, false, [](unsigned) { return albert_cubic(); }});
    auto series = [&](std::string name, unsigned lo, unsigned hi, std::function<VarietySpec(unsigned)> f) {
      p.push_back({name, m_range(lo, hi), 3, false, false, std::move(f)});
    };
    series("scorza-sy-sym", 2, 5, [](unsigned m) { return rank_locus_spec(S::symmetric(m + 1), 2); });
    series("scorza-sy-gen", 2, 5, [](unsigned m) { return rank_locus_spec(S::generic(m + 1, m + 1), 2); });
    series("scorza-sy-skew", 2, 5, [](unsigned m) { return rank_locus_spec(S::skew(2 * m + 2), 4); });
    series("scorza-max-sym", 2, 5, [](unsigned m) { return rank_locus_spec(S::symmetric(m + 1), m); });
    series("scorza-max-gen", 2, 5, [](unsigned m) { return rank_locus_spec(S::generic(m + 1, m + 1), m); });
    series("scorza-max-skew", 2, 5, [](unsigned m) { return rank_locus_spec(S::skew(2 * m + 2), 2 * m); });
    series("wide-gen", 2, 5, [](unsigned m) { return rank_locus_spec(S::generic(m + 1, m + 2), 2); });
    series("odd-skew", 3, 5, [](unsigned m) { return rank_locus_spec(S::skew(2 * m + 1), 4); });
    p.push_back({"hyperband", {}, 0, false, true, nullptr});
    return p;
  }();
  return list;
}

inline const Preset* find_preset(const std::string& name) {
  for (auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

/// Integers a run is expected to reproduce, keyed by experiment and m
/// ("default" when the experiment takes no m).
class Expectations {
 public:
  Expectations() = default;
  explicit Expectations(nlohmann::json table) : table_(std::move(table)) {}

  static Expectations load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open expectations file " + path);
    try {
      return Expectations(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, "expectations file " + path + ": " + e.what());
    }
  }

  const nlohmann::json* lookup(const std::string& experiment, std::optional<unsigned> m) const {
    if (!table_.contains(experiment)) return nullptr;
    const auto& e = table_.at(experiment);
    const std::string key = m ? std::to_string(*m) : "default";
    if (!e.contains(key)) return nullptr;
    return &e.at(key);
  }

 private:
  nlohmann::json table_ = nlohmann::json::object();
};

/// Invariant violations and expectation mismatches of one record.
inline std::vector<std::string> record_violations(const RunRecord& r, const Expectations* exp) {
  std::vector<std::string> out;
  if (r.error) {
    out.push_back("error: " + *r.error);
    return out;
  }
  if (r.focal_degree != r.r) out.push_back("focal degree differs from r");
  if (r.mu * r.reduced_degree != r.focal_degree) out.push_back("mu * reduced degree differs from focal degree");
  if (r.k + r.r != r.dim_x) out.push_back("k + r differs from dim X");
  if (r.sing_containment == "fail") out.push_back("singular-locus containment failed");
  for (auto& [name, v] : r.bound_verdicts)
    if (v == "fail") out.push_back("bound check " + name + " failed");
  if (!exp) return out;
  const nlohmann::json* e = exp->lookup(r.experiment, r.m);
  if (!e) return out;
  const auto rec = nlohmann::json::parse(nlohmann::ordered_json(r).dump());
  for (auto& [key, want] : e->items()) {
    if (!rec.contains(key)) {
      out.push_back("unknown expectation key " + key);
      continue;
    }
    const auto& got = rec[key];
    if (got != want) out.push_back(key + " = " + got.dump() + ", expected " + want.dump());
  }
  return out;
}

namespace detail {

struct PrimeContext {
  PrimeField F;
  std::size_t dim_x = 0;
  std::optional<std::size_t> c;
};

inline void fill_bounds(RunRecord& rec, const FocalReport& rep) {
  for (auto& b : check_bounds(rep)) rec.bound_verdicts[b.name] = to_string(b.verdict);
}

inline std::optional<std::vector<Fp>> rational_focal_point(const FocalProfile& prof, Rng& rng) {
  for (std::size_t i = 0; i < prof.lines.size(); ++i) {
    if (prof.restrictions[i].degree() < 1) continue;
    auto roots = roots_mod_p(squarefree_profile(prof.restrictions[i]).radical(prof.restrictions[i].modulus()), rng);
    if (roots.empty()) continue;
    return line_point(prof.lines[i].first, prof.lines[i].second, roots.front());
  }
  return std::nullopt;
}

inline void gauss_trial(const VarietySpec& spec, const PrimeContext& ctx, const ExperimentConfig& cfg, Rng& rng,
                        RunRecord& rec) {
  const auto& F = ctx.F;
  auto point = sample_point(spec, F, rng);
  auto frame = tangent_space(spec, point.coords, ctx.dim_x);
  FiberCheckCounts counts;
  if (cfg.verify == VerifyLevel::Full) counts = {20, 10};
  auto fiber = gauss_fiber(spec, frame, F, rng, counts);
  auto chart = fiber_family_chart(spec, fiber, F, rng);
  auto m = characteristic_matrix(chart, frame);
  rec.k = fiber.k;
  rec.r = fiber.r;

  auto prof = focal_profile(m, F, rng, static_cast<int>(cfg.lines));
  rec.focal_degree = prof.degree;
  for (auto& e : prof.consensus.entries) rec.profile.push_back(e);
  auto [mu, red] = multiplicity_and_reduced_degree(prof.consensus);
  rec.mu = mu;
  rec.reduced_degree = red;

  std::optional<SparsePoly> q;
  if (prof.consensus.pure() && mu * red == prof.degree) {
    const std::size_t unknowns = monomials_of_degree(m.nvars, red).size();
    if (unknowns <= ExtractionLimits{}.max_unknowns) q = extract_reduced_power(m, mu, red, F, rng);
  }
  if (q && red == 2) rec.quadric_rank = quadric_rank(*q);

  ContainmentResult cont = q ? sing_containment(spec, fiber, *q, point.witnesses, F, rng)
                             : sing_containment(spec, fiber, m, point.witnesses, F, rng);
  rec.sing_containment = to_string(cont.verdict);

  if (auto t = rational_focal_point(prof, rng)) rec.focus_kernel_dim = char_kernel_at_point(m, *t);

  if (cfg.verify == VerifyLevel::Full) {
    auto chart2 = fiber_family_chart(spec, fiber, F, rng);
    auto m2 = characteristic_matrix(chart2, frame);
    rec.bound_verdicts["chart_independence"] = focal_forms_proportional(m, m2, F, rng) ? "pass" : "fail";
  }

  FocalReport rep;
  rep.r = rec.r;
  rep.c = rec.c;
  rep.mu = rec.mu;
  rep.reduced_degree = rec.reduced_degree;
  fill_bounds(rec, rep);
}

inline void hyperband_trial(const PrimeContext& ctx, const ExperimentConfig& cfg, Rng& rng, RunRecord& rec) {
  const auto& F = ctx.F;
  auto fam = hyperband_family(F, rng);
  auto full = characteristic_matrix(fam.chart);
  auto reduced = reduce_to_image_span(full);
  const CharMatrix& m = reduced ? *reduced : full;
  rec.n = 6;
  rec.dim_x = swept_dimension(fam.chart, F, rng);
  rec.c = rec.dim_x - base_surface_dimension(fam.band);
  rec.k = fam.chart.k();
  rec.r = fam.chart.r();

  auto prof = focal_profile(m, F, rng, static_cast<int>(cfg.lines));
  rec.focal_degree = prof.degree;
  for (auto& e : prof.consensus.entries) rec.profile.push_back(e);
  auto [mu, red] = multiplicity_and_reduced_degree(prof.consensus);
  rec.mu = mu;
  rec.reduced_degree = red;

  auto t = coordinates_in<Fp>(fam.chart.center, std::span<const Fp>(fam.predictor));
  if (!t) throw Error(ErrorKind::ChartFailed, "predictor is not on the centre line");
  rec.focus_kernel_dim = char_kernel_at_point(m, *t);

  // The focus is the unique root of the radical on each sampled line.
  bool at_predictor = prof.consensus.pure() && red == 1;
  for (std::size_t i = 0; at_predictor && i < prof.lines.size(); ++i) {
    UniPoly rad = squarefree_profile(prof.restrictions[i]).radical(F.prime());
    Fp s = -rad.coeff(0) * rad.coeff(1).inv();
    auto focus = line_point(prof.lines[i].first, prof.lines[i].second, s);
    Matrix<Fp> pair(0, focus.size(), F.zero());
    pair.append_row(focus);
    pair.append_row(*t);
    at_predictor = rank(pair) == 1;
  }
  rec.bound_verdicts["focus_is_predictor"] = at_predictor ? "pass" : "fail";

  if (cfg.verify == VerifyLevel::Full && m.square() && prof.consensus.pure() && mu * red == prof.degree) {
    auto q = extract_reduced_power(m, mu, red, F, rng);
    rec.bound_verdicts["reduced_form_vanishes_at_predictor"] = q(*t).is_zero() ? "pass" : "fail";
  }

  FocalReport rep;
  rep.r = rec.r;
  rep.c = rec.c;
  rep.mu = rec.mu;
  rep.reduced_degree = rec.reduced_degree;
  fill_bounds(rec, rep);
}

}  // namespace detail

struct ExperimentResult {
  std::vector<RunRecord> records;
  /// 0 pass, 2 invariant or expectation failure, 3 degeneracy exhaustion.
  int exit_code = 0;
  std::vector<std::string> failures;
};

inline void sort_records(std::vector<RunRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.experiment, a.m, a.prime, a.trial_index) < std::tie(b.experiment, b.m, b.prime, b.trial_index);
  });
}

/// Runs a variety (or the line-family preset when spec is null) over all
/// primes and trials.
inline ExperimentResult run_spec(const std::string& experiment, std::optional<unsigned> m, const VarietySpec* spec,
                                 const ExperimentConfig& cfg, const Expectations* exp) {
  ExperimentResult res;
  Rng master(cfg.seed);
  std::vector<u64> primes;
  if (cfg.prime) {
    PrimeField check(*cfg.prime);
    primes.push_back(*cfg.prime);
  } else {
    Rng prng = master.derive(0);
    while (primes.size() < cfg.primes) {
      u64 p = random_prime(prng);
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
  }
  bool degeneracy = false, violation = false;
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    detail::PrimeContext ctx{PrimeField(primes[pi]), 0, std::nullopt};
    Rng prime_rng = master.derive(1 + pi);
    std::optional<std::string> setup_error;
    bool setup_degenerate = false;
    if (spec) {
      try {
        Rng drng = prime_rng.derive(0);
        ctx.dim_x = variety_dim(*spec, ctx.F, drng);
        if (spec->name == "severi-16")
          ctx.c = ctx.dim_x - albert_singular_dim(*spec, ctx.F, drng);
        else
          ctx.c = fiber_codim_data(*spec, ctx.dim_x, ctx.F, drng);
      } catch (const Error& e) {
        setup_error = e.what();
        setup_degenerate = is_degeneracy(e.kind()) || e.kind() == ErrorKind::InconsistentDim;
      }
    }
    for (unsigned t = 0; t < cfg.trials; ++t) {
      RunRecord rec;
      rec.experiment = experiment;
      rec.m = m;
      rec.prime = primes[pi];
      rec.seed = cfg.seed;
      rec.trial_index = t;
      const auto start = std::chrono::steady_clock::now();
      if (setup_error) {
        rec.error = setup_error;
        (setup_degenerate ? degeneracy : violation) = true;
      } else {
        Rng trial_rng = prime_rng.derive(1 + t);
        for (unsigned attempt = 0;; ++attempt) {
          RunRecord attempt_rec = rec;
          if (spec) {
            attempt_rec.n = spec->ambient_dim;
            attempt_rec.dim_x = ctx.dim_x;
            attempt_rec.c = ctx.c;
          }
          try {
            if (spec)
              detail::gauss_trial(*spec, ctx, cfg, trial_rng, attempt_rec);
            else
              detail::hyperband_trial(ctx, cfg, trial_rng, attempt_rec);
            rec = std::move(attempt_rec);
            break;
          } catch (const Error& e) {
            const bool retry = is_degeneracy(e.kind());
            if (retry && attempt + 1 < cfg.retries) continue;
            rec = std::move(attempt_rec);
            rec.error = e.what();
            (retry ? degeneracy : violation) = true;
            break;
          }
        }
      }
      if (cfg.timing)
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (auto& v : record_violations(rec, exp)) {
        res.failures.push_back(experiment + (m ? " m=" + std::to_string(*m) : "") + " prime " +
                               std::to_string(rec.prime) + " trial " + std::to_string(t) + ": " + v);
        if (!rec.error) violation = true;
      }
      res.records.push_back(std::move(rec));
    }
  }
  sort_records(res.records);
  res.exit_code = violation ? 2 : degeneracy ? 3 : 0;
  return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const Expectations* exp) {
  const Preset* preset = find_preset(cfg.experiment);
  if (!preset) throw Error(ErrorKind::InvalidArgument, "unknown experiment " + cfg.experiment);
  if (preset->needs_albert && !cfg.albert)
    throw Error(ErrorKind::InvalidArgument, cfg.experiment + " requires --features albert");
  std::optional<unsigned> m;
  if (!preset->m_values.empty()) {
    m = cfg.m.value_or(preset->default_m);
    if (std::find(preset->m_values.begin(), preset->m_values.end(), *m) == preset->m_values.end())
      throw Error(ErrorKind::InvalidArgument, "m = " + std::to_string(*m) + " is outside the supported range for " +
                                                  cfg.experiment);
  } else if (cfg.m) {
    throw Error(ErrorKind::InvalidArgument, cfg.experiment + " takes no m");
  }
  if (preset->hyperband) return run_spec(preset->name, m, nullptr, cfg, exp);
  VarietySpec spec = preset->build(m.value_or(0));
  return run_spec(preset->name, m, &spec, cfg, exp);
}

/// Every preset at its default m (severi-16 only with the albert feature).
inline ExperimentResult run_sweep(const ExperimentConfig& base, const Expectations* exp) {
  ExperimentResult all;
  for (auto& p : presets()) {
    if (p.needs_albert && !base.albert) continue;
    ExperimentConfig cfg = base;
    cfg.experiment = p.name;
    cfg.m.reset();
    auto r = run_experiment(cfg, exp);
    for (auto& rec : r.records) all.records.push_back(std::move(rec));
    for (auto& f : r.failures) all.failures.push_back(std::move(f));
    if (p.needs_albert) continue;
    if (r.exit_code == 2 || (r.exit_code == 3 && all.exit_code == 0)) all.exit_code = r.exit_code;
  }
  sort_records(all.records);
  return all;
}

}  // namespace focal
