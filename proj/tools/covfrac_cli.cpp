// Batch experiment driver: reads a JSON config, fans seeded trials out
// over workers, and writes summary.json + trials.csv into --out.
//
// Exit codes: 0 success, 2 config/usage error, 3 runtime error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "covfrac/covering.hpp"
#include "covfrac/estimator.hpp"
#include "covfrac/limsup.hpp"
#include "covfrac/runner.hpp"

using json = nlohmann::json;
using namespace covfrac;

namespace {

constexpr const char* kVersion = "covfrac 1.0.0";
constexpr const char* kCsvSchema = "# covfrac-csv v1";

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DigitSpace make_space(const json& cfg) {
  if (!cfg.contains("space")) throw config_error("space: missing");
  const json& s = cfg["space"];
  int base = s.value("base", 0);
  if (base < 2) throw config_error("space.base: need integer >= 2");
  std::vector<Digit> alphabet;
  if (s.contains("alphabet"))
    for (const auto& d : s["alphabet"])
      alphabet.push_back(static_cast<Digit>(d.get<int>()));
  else
    for (int d = 0; d < base; ++d) alphabet.push_back(static_cast<Digit>(d));
  std::optional<int> cap;
  if (s.contains("depth_cap")) cap = s["depth_cap"].get<int>();
  try {
    return DigitSpace(base, std::move(alphabet), cap);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("space: ") + e.what());
  }
}

RadiusSequence make_sequence(const json& cfg, const DigitSpace& space) {
  if (!cfg.contains("sequence")) throw config_error("sequence: missing");
  const json& q = cfg["sequence"];
  std::string kind = q.value("kind", "");
  try {
    if (kind == "power-law") {
      PowerLaw pl;
      pl.alpha0 = parse_decimal(q.at("alpha0").get<std::string>());
      pl.base = q.value("base", space.base());
      pl.grid_depth = q.value("grid_depth", space.depth_cap());
      return RadiusSequence(pl);
    }
    if (kind == "block-profile") {
      BlockProfile bp;
      bp.base = q.value("base", space.base());
      for (const auto& [key, val] : q.at("counts").items())
        bp.counts[std::stoi(key)] = val.get<std::int64_t>();
      return RadiusSequence(bp);
    }
    if (kind == "explicit") {
      ExplicitList el;
      for (const auto& r : q.at("radii"))
        el.radii.push_back(parse_decimal(r.get<std::string>()));
      return RadiusSequence(el);
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("sequence: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("sequence: ") + e.what());
  }
  throw config_error("sequence.kind: one of power-law|block-profile|explicit");
}

TargetSet make_target(const json& cfg, const DigitSpace& space) {
  if (!cfg.contains("target")) return TargetSet::whole_space(space);
  try {
    std::vector<std::vector<Digit>> profile;
    for (const auto& level : cfg["target"].at("profile")) {
      std::vector<Digit> digits;
      for (const auto& d : level)
        digits.push_back(static_cast<Digit>(d.get<int>()));
      profile.push_back(std::move(digits));
    }
    return TargetSet(space, std::move(profile));
  } catch (const json::exception& e) {
    throw config_error(std::string("target: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("target: ") + e.what());
  }
}

json prediction_json(const Prediction& p) {
  json out;
  out["regime"] = to_string(p.regime);
  out["inputs"] = {{"s", p.s},
                   {"alpha", p.alpha},
                   {"dimH_G", p.dimH_G},
                   {"dimP_G", p.dimP_G}};
  if (p.regime != Regime::Empty) {
    if (p.dim_lower > kNegInf) out["dim_lower"] = p.dim_lower;
    if (p.dim_upper > kNegInf) out["dim_upper"] = p.dim_upper;
    if (p.dim_packing > kNegInf) out["dim_packing"] = p.dim_packing;
  }
  return out;
}

json frequency_json(const HitFrequency& f) {
  return {{"trials", f.trials},
          {"hits", f.hits},
          {"frequency", f.frequency},
          {"ci95", {f.ci_low, f.ci_high}}};
}

struct CoverSetup {
  RadiusSequence seq;
  BlockTable table;
  double alpha_hat = 0;
  double gap_c = 0;
};

CoverSetup cover_setup(const json& cfg, const DigitSpace& space, int K,
                       const TargetSet& target) {
  CoverSetup s{make_sequence(cfg, space), {}, 0, 0};
  s.table = block_counts(s.seq, Rat(1, space.base()), K);
  int window = cfg.value("bt_window", std::max(3, K / 2));
  s.alpha_hat = bt_index_estimate(s.table, window);
  s.gap_c = cfg.value(
      "gap_constant",
      default_gap_constant(space.dim(), s.alpha_hat, space.base()));
  sparse_indices(s.table, s.gap_c);
  (void)target;
  return s;
}

struct CoverTrial {
  std::uint64_t seed = 0;
  bool hit = false;
  std::vector<std::int64_t> n_k, m_k, h_sub, h_cap, s_k;
  std::vector<LevelCount> limsup;
};

std::vector<CoverTrial> run_cover_trials(const DigitSpace& space,
                                         const CoverSetup& setup,
                                         const TargetSet& target, int K,
                                         int k_min, int m0,
                                         std::int64_t trials,
                                         std::uint64_t master_seed, int jobs,
                                         bool want_limsup,
                                         bool scale_matched) {
  return run_trials(
      trials, master_seed, jobs,
      [&](std::int64_t, std::uint64_t seed) -> CoverTrial {
        OrbitSource src(space, seed);
        CoverTrace trace =
            simulate_cover(space, setup.table, setup.seq, src, K);
        CoverTrial row;
        row.seed = seed;
        row.hit = hit_target(trace, target, k_min, K);
        row.s_k = target_hit_counts(trace, target);
        for (int k = 1; k <= K; ++k) {
          const BlockRecord& rec = trace.block(k);
          row.n_k.push_back(rec.n_k);
          row.m_k.push_back(rec.m_k);
          row.h_sub.push_back(
              static_cast<std::int64_t>(rec.contain_hits.size()));
          row.h_cap.push_back(
              static_cast<std::int64_t>(rec.intersect_hits.size()));
        }
        if (want_limsup)
          row.limsup = scale_matched
                           ? matched_cube_counts(trace, target, m0)
                           : limsup_cube_counts(trace, target, m0);
        return row;
      });
}

int run_experiment(const json& cfg, std::uint64_t seed, std::int64_t trials,
                   int depth, int jobs, const std::filesystem::path& out_dir) {
  std::string kind = cfg.value("kind", "");
  DigitSpace space = make_space(cfg);
  TargetSet target = make_target(cfg, space);
  int k_min = cfg.value("k_min", 3);

  json summary;
  summary["version"] = kVersion;
  summary["kind"] = kind;
  summary["seed"] = seed;
  summary["config"] = cfg;
  summary["space"] = {{"base", space.base()},
                      {"dim", space.dim()},
                      {"c1", space.regularity_constant()}};
  if (Rat(1, space.base()) >= Rat(1, 3))
    summary["warnings"] = {"scale b = 1/m >= 1/3: outside the stated "
                           "condition-(C) range, reported as-is"};
  std::ostringstream csv;
  csv << kCsvSchema << "\n";

  if (kind == "nesting-check") {
    NestingReport rep = nesting_family_report(space, depth);
    summary["pass"] = rep.pass;
    summary["r_in"] = to_double(rep.inner_radius_factor);
    summary["r_out"] = to_double(rep.outer_radius_factor);
    if (!rep.pass) summary["failure"] = rep.failure;
    csv << "k,cube_count\n";
    BigInt n = 1;
    for (int k = 0; k <= depth; ++k) {
      csv << k << "," << n << "\n";
      n *= space.alphabet_size();
    }
    if (!rep.pass) {
      std::cerr << "nesting check failed: " << rep.failure << "\n";
    }
  } else if (kind == "bt-index") {
    RadiusSequence seq = make_sequence(cfg, space);
    BlockTable table = block_counts(seq, Rat(1, space.base()), depth);
    int window = cfg.value("bt_window", std::max(3, depth / 2));
    double est = bt_index_estimate(table, window);
    double alpha = cfg.value("alpha", est);
    double tol = cfg.value("tolerance", 0.1);
    ConditionCResult cc = condition_c_check(table, alpha, tol);
    summary["bt_index"] = est;
    summary["condition_c"] = {{"holds_on_prefix", cc.holds_on_prefix},
                              {"witness", cc.witness}};
    csv << "k,n_k,m_k,log_ratio\n";
    double log_inv_b = std::log(static_cast<double>(space.base()));
    for (int k = 1; k <= depth; ++k) {
      const Block& blk = table.block(k);
      double ratio = blk.count > 0 ? std::log(static_cast<double>(blk.count)) /
                                         (k * log_inv_b)
                                   : 0.0;
      csv << k << "," << blk.count << "," << blk.sparse.size() << ","
          << ratio << "\n";
    }
  } else if (kind == "cover-sim" || kind == "hit-prob" || kind == "dim-est") {
    CoverSetup setup = cover_setup(cfg, space, depth, target);
    int m0 = cfg.value("m0", 4);
    bool want_limsup = kind == "dim-est";
    bool scale_matched = cfg.value("scale_matched", true);
    std::vector<CoverTrial> rows =
        run_cover_trials(space, setup, target, depth, k_min, m0, trials, seed,
                         jobs, want_limsup, scale_matched);
    summary["alpha_hat"] = setup.alpha_hat;
    summary["gap_constant"] = setup.gap_c;
    double alpha = cfg.value("alpha", setup.alpha_hat);
    int proxy_depth = cfg.value("proxy_depth", depth);
    Prediction pred =
        predict(space.dim(), alpha, target.dim_lower_proxy(proxy_depth),
                target.dim_upper_proxy(proxy_depth));
    summary["prediction"] = prediction_json(pred);

    if (kind == "cover-sim") {
      csv << "trial_seed,k,n_k,m_k,h_sub,h_cap,s_k,hit_flag\n";
      for (const CoverTrial& row : rows)
        for (int k = 1; k <= depth; ++k)
          csv << row.seed << "," << k << "," << row.n_k[k - 1] << ","
              << row.m_k[k - 1] << "," << row.h_sub[k - 1] << ","
              << row.h_cap[k - 1] << "," << row.s_k[k - 1] << ","
              << (row.hit ? 1 : 0) << "\n";
      std::int64_t hits = 0;
      for (const CoverTrial& row : rows) hits += row.hit;
      summary["hit"] = frequency_json(wilson_interval(hits, trials));
    } else if (kind == "hit-prob") {
      csv << "trial,trial_seed,hit\n";
      std::int64_t hits = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        csv << i << "," << rows[i].seed << "," << (rows[i].hit ? 1 : 0)
            << "\n";
        hits += rows[i].hit;
      }
      summary["hit"] = frequency_json(wilson_interval(hits, trials));
    } else {  // dim-est
      csv << "trial,k,count\n";
      std::vector<double> mean(depth, 0.0);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (const LevelCount& lc : rows[i].limsup) {
          csv << i << "," << lc.k << "," << lc.count << "\n";
          mean[lc.k - 1] += static_cast<double>(lc.count) / trials;
        }
      std::vector<CountRow> counts;
      for (int k = 1; k <= depth; ++k)
        counts.push_back(CountRow{k, mean[k - 1]});
      auto [k_lo, k_hi] = default_window(1, depth);
      if (cfg.contains("window")) {
        k_lo = cfg["window"][0].get<int>();
        k_hi = cfg["window"][1].get<int>();
      }
      DimEstimate est = box_dimension(counts, space.base(), k_lo, k_hi);
      summary["box_dimension"] = {{"slope", est.slope},
                                  {"stderr", est.stderr_slope},
                                  {"r2", est.r2},
                                  {"window", {est.k_lo, est.k_hi}}};
    }
  } else if (kind == "percolate") {
    const json& pc = cfg.value("percolation", json::object());
    PercolationRun run;
    run.depth = pc.value("depth", depth);
    run.retention_p = pc.contains("t")
                          ? PercolationRun::p_from_bit_exponent(
                                pc["t"].get<double>())
                          : pc.value("p", 0.5);
    int copies = pc.value("copies", 1);
    std::vector<char> flags = percolation_union_flags(
        space, run, copies, target, trials, seed, jobs);
    csv << "trial,hit\n";
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      csv << i << "," << int(flags[i]) << "\n";
      hits += flags[i];
    }
    summary["retention_p"] = run.retention_p;
    summary["copies"] = copies;
    summary["hit"] = frequency_json(wilson_interval(hits, trials));
  } else if (kind == "limsup-hit") {
    const json& lc = cfg.value("limsup", json::object());
    int model_depth = lc.value("depth", depth);
    double g1 = lc.value("gamma1", 0.5);
    double g2 = lc.value("gamma2", g1);
    LimsupModel model =
        LimsupModel::split_field(space, model_depth, g1, g2);
    int n_min = lc.value("n_min", 3);
    std::vector<char> flags =
        sample_limsup_flags(model, target, trials, seed, n_min, jobs);
    csv << "trial,hit\n";
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      csv << i << "," << int(flags[i]) << "\n";
      hits += flags[i];
    }
    summary["hit"] = frequency_json(wilson_interval(hits, trials));
    summary["gamma"] = {g1, g2};
  } else {
    throw config_error("kind: unknown experiment '" + kind + "'");
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream(out_dir / "trials.csv") << csv.str();
  std::ofstream(out_dir / "summary.json") << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-set simulation experiments"};
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::int64_t trials = 0;
  int depth = 0, jobs = 0;
  app.add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  app.add_option("--seed", seed, "master seed (overrides config)")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--trials", trials, "trial count (overrides config)");
  app.add_option("--depth", depth, "max level K (overrides config)");
  app.add_option("--jobs", jobs, "worker count, 0 = all cores");
  app.add_option("--out", out_dir, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in) throw config_error("cannot open config: " + config_path);
    json cfg = json::parse(in);
    if (const char* env = std::getenv("COVFRAC_SEED")) {
      seed = std::strtoull(env, nullptr, 10);
      seed_set = true;
    }
    if (!seed_set) seed = cfg.value("seed", 1u);
    if (trials <= 0) trials = cfg.value("trials", 100);
    if (depth <= 0) depth = cfg.value("depth", 12);
    return run_experiment(cfg, seed, trials, depth, jobs, out_dir);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
