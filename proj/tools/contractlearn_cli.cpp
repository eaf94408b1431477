// contractlearn: generate instances, solve them exactly, learn contracts from
// sampled outcomes, and simulate regret.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "contractlearn/driver.hpp"
#include "contractlearn/environment.hpp"
#include "contractlearn/find_contract.hpp"
#include "contractlearn/instgen.hpp"
#include "contractlearn/json_io.hpp"
#include "contractlearn/oracle_ref.hpp"
#include "contractlearn/regret.hpp"
#include "contractlearn/whitebox.hpp"

namespace cl = contractlearn;
using cl::Json;

namespace {

// Thrown for bad flag combinations found after parsing; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Required flags are checked after the config file had its chance to fill
// them.
void Require(const CLI::App* sub, std::initializer_list<const char*> flags) {
  for (const char* flag : flags) {
    if (sub->get_option(flag)->count() == 0) {
      throw UsageError(std::string(flag) + " is required");
    }
  }
}

// Fills options the user did not pass on the command line from the --config
// JSON object. Keys are flag names without dashes.
class ConfigFill {
 public:
  explicit ConfigFill(CLI::App* app) : app_(app) {}

  void Apply(const std::string& path) const {
    if (path.empty()) return;
    const Json cfg = cl::ReadJsonFile(path);
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      CLI::Option* opt = nullptr;
      try {
        opt = app_->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        throw UsageError("unknown config key \"" + key + "\"");
      }
      if (opt->count() > 0) continue;
      std::string text;
      if (value.is_string()) text = value.get<std::string>();
      else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
      else text = value.dump();
      opt->add_result(text);
      opt->run_callback();
    }
  }

 private:
  CLI::App* app_;
};

std::uint64_t ResolveSeed(const CLI::Option* flag, std::uint64_t seed) {
  if (flag->count() > 0) return seed;
  if (const char* env = std::getenv("CONTRACT_LEARNER_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("CONTRACT_LEARNER_SEED is not an unsigned integer");
  }
  return seed;
}

Json ContractCandidateJson(const cl::ContractCandidate& c) {
  return Json{{"meta", c.meta.value},
              {"point", c.point},
              {"lp_value", c.empirical_value}};
}

Json CoverStateJson(const cl::CoverSession& session) {
  const cl::TryCoverState& s = session.state();
  Json metas = Json::array();
  for (const auto& [d, hull] : s.lower) {
    Json cuts = Json::array();
    for (const auto& c : s.upper.at(d).cuts()) {
      cuts.push_back(Json{{"normal", c.normal}, {"offset", c.offset}});
    }
    std::vector<std::uint64_t> known;
    for (cl::MetaId k : s.known.at(d)) known.push_back(k.value);
    metas.push_back(Json{{"meta", d.value},
                         {"anchor", session.registry().Anchor(d)},
                         {"lower", hull.points()},
                         {"cuts", cuts},
                         {"known", known}});
  }
  std::vector<std::uint64_t> pending;
  for (cl::MetaId d : s.pending) pending.push_back(d.value);
  return Json{{"oracle_calls", session.oracle_calls()},
              {"pending", pending},
              {"metas", metas}};
}

// Suboptimality target when --rho is absent. With --eps given it only serves
// as the audit threshold reported back as rho_effective.
constexpr double kDefaultRho = 0.15;

struct LearnFlags {
  std::string instance;
  std::optional<double> rho;
  double delta = 0.1;
  double bound = 1.0;
  std::optional<double> eps;
  std::optional<std::uint64_t> q;
  std::optional<double> eta;
  std::optional<double> alpha;
  std::string mix = "gamma";
  double mix_value = 0.0;
  std::optional<std::size_t> n_bound;
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 1'000'000'000;
  std::string out;
  bool whitebox = false;
  std::string trace_cover;
  std::size_t replicates = 1;
  std::size_t jobs = 1;
};

void AddParamFlags(CLI::App* sub, LearnFlags& f) {
  sub->add_option("--instance", f.instance, "instance JSON");
  sub->add_option("--rho", f.rho, "target suboptimality");
  sub->add_option("--delta", f.delta, "failure probability");
  sub->add_option("--B", f.bound, "payment bound");
  sub->add_option("--eps", f.eps, "override estimation accuracy");
  sub->add_option("--q", f.q, "override samples per oracle call");
  sub->add_option("--eta", f.eta, "override bisection resolution");
  sub->add_option("--alpha", f.alpha, "override per-call failure probability");
  sub->add_option("--mix", f.mix, "reward mixing weight")
      ->check(CLI::IsMember({"gamma", "eps", "value"}));
  sub->add_option("--mix-value", f.mix_value, "mixing weight for --mix value");
  sub->add_option("--n-bound", f.n_bound, "bound on the number of actions");
  sub->add_option("--replicates", f.replicates, "independent seeds to run")
      ->check(CLI::PositiveNumber);
  sub->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

cl::ParamOverrides Overrides(const LearnFlags& f) {
  return cl::ParamOverrides{f.eps, f.eta, f.alpha, f.q};
}

// Runs `work(seed)` for seeds seed..seed+R-1 on up to `jobs` threads and
// returns results in seed order.
template <typename Result, typename Work>
std::vector<Result> RunSeeds(std::uint64_t first, std::size_t replicates,
                             std::size_t jobs, Work work) {
  std::vector<std::optional<Result>> results(replicates);
  std::vector<std::exception_ptr> errors(replicates);
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next == replicates) return;
        i = next++;
      }
      try {
        results[i].emplace(work(first + i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min(jobs, replicates);
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Result> out;
  for (std::size_t i = 0; i < replicates; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

void EmitJson(const std::string& out, const Json& j) {
  if (out.empty()) std::cout << j.dump(2) << '\n';
  else cl::WriteJsonFile(out, j);
}

// ---- gen ----

int RunGenRandom(std::size_t n, std::size_t m, std::uint64_t seed,
                 double min_sep, const std::string& out) {
  cl::SaveInstance(out, cl::GenRandom(n, m, seed, min_sep));
  return 0;
}

int RunGenHardness(double eps, bool relaxed, const std::string& out) {
  cl::SaveInstance(out, cl::GenHardness(eps, relaxed
                                                 ? cl::HardnessRange::kRelaxed
                                                 : cl::HardnessRange::kStrict));
  return 0;
}

// ---- oracle ----

int RunOracle(const std::string& path, double bound,
              std::optional<double> grid, const std::string& out) {
  const cl::Instance inst = cl::LoadInstance(path);
  Json j = cl::OptToJson(cl::SolveOpt(inst, bound));
  if (grid) {
    const cl::GridResult g = cl::GridOpt(inst, bound, *grid);
    j["grid"] = Json{{"value", g.value},
                     {"contract", g.contract},
                     {"points", g.points}};
  }
  EmitJson(out, j);
  return 0;
}

// ---- learn ----

Json LearnOnce(const cl::Instance& inst, const cl::Params& params,
               std::uint64_t seed, bool whitebox,
               const std::string& trace_path) {
  cl::SampledEnvironment env(inst, seed);
  cl::MetaActionRegistry registry;
  cl::DriverOptions options;
  Json trace = Json::array();
  std::uint64_t attempt = 0;
  if (!trace_path.empty()) {
    options.observer = [&](const cl::CoverSession& s) {
      Json step = CoverStateJson(s);
      step["attempt"] = attempt;
      trace.push_back(std::move(step));
    };
  }
  options.on_attempt = [&](bool, const cl::MetaActionRegistry&) { ++attempt; };

  Json j;
  j["seed"] = seed;
  try {
    const cl::LearnResult r =
        cl::DiscoverAndCover(env, inst.rewards, params, &registry, options);
    j["status"] = "ok";
    j["contract"] = r.contract;
    j["rounds_used"] = r.rounds_used;
    j["restarts"] = r.restarts;
    j["bot_count"] = r.bot_count;
    j["oracle_calls"] = r.oracle_calls;
    j["selected_meta"] = r.find.selected.meta.value;
    j["reward_weight"] = r.find.reward_weight;
    Json regions = Json::array();
    for (const auto& c : r.find.candidates) {
      regions.push_back(ContractCandidateJson(c));
    }
    j["regions"] = regions;
    if (whitebox) {
      const cl::OptResult opt = cl::SolveOpt(inst, params.bound);
      const double u = cl::PrincipalUtility(inst, r.contract);
      j["whitebox"] = Json{
          {"opt", opt.value},
          {"utility", u},
          {"audit", opt.value - u},
          {"max_estimate_error", cl::MaxEstimateError(inst, registry)},
          {"clean_event", cl::CleanEventHeld(inst, registry, params.eps)}};
    }
  } catch (const cl::RoundBudgetExceeded& e) {
    j["status"] = "round_budget_exceeded";
    j["message"] = e.what();
    j["rounds_used"] = e.rounds_used;
    j["restarts"] = e.restarts;
  }
  if (!trace_path.empty()) cl::WriteJsonFile(trace_path, trace);
  return j;
}

int RunLearn(const LearnFlags& f) {
  const cl::Instance inst = cl::LoadInstance(f.instance);
  const std::size_t n = f.n_bound.value_or(inst.n_actions);
  if (n < inst.n_actions) throw UsageError("--n-bound below instance size");
  const double rho = f.rho.value_or(kDefaultRho);
  cl::Params params = cl::ComputeParams(rho, f.delta, f.bound, inst.n_outcomes,
                                        n, Overrides(f));
  params.mix_mode = cl::ParseMixMode(f.mix);
  params.mix_value = f.mix_value;
  params.max_rounds = f.max_rounds;
  if (f.replicates > 1 && !f.trace_cover.empty()) {
    throw UsageError("--trace-cover needs a single replicate");
  }

  std::vector<Json> runs = RunSeeds<Json>(
      f.seed, f.replicates, f.jobs, [&](std::uint64_t seed) {
        return LearnOnce(inst, params, seed, f.whitebox, f.trace_cover);
      });

  Json j;
  j["params"] = cl::ParamsToJson(params);
  j["rho_effective"] = rho;
  if (runs.size() == 1) {
    j.update(runs.front());
  } else {
    j["replicates"] = runs;
  }
  EmitJson(f.out, j);
  return 0;
}

// ---- regret ----

struct RegretFlags {
  LearnFlags base;
  std::uint64_t horizon = 0;
  std::string csv;
  std::optional<double> baseline_grid;
};

void WriteRegretCsv(const std::string& path, const cl::RegretRun& run) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,u_t,cumulative_regret\n";
  char buf[96];
  for (std::size_t t = 0; t < run.per_round_utilities.size(); ++t) {
    // %.17g round-trips doubles; the C locale keeps '.' as the separator.
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", t + 1,
                  run.per_round_utilities[t], run.regret_curve[t]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string SeedPath(const std::string& path, std::uint64_t seed) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const std::string tag = "_seed" + std::to_string(seed);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

Json RegretSummary(const cl::RegretRun& run, std::uint64_t seed) {
  return Json{{"seed", seed},
              {"horizon", run.horizon},
              {"rho", run.rho},
              {"opt", run.opt_value},
              {"total_regret", run.total_regret()},
              {"exploration_rounds", run.exploration_rounds},
              {"all_exploration", run.all_exploration},
              {"final_contract", run.final_contract}};
}

int RunRegretCmd(const RegretFlags& f) {
  const cl::Instance inst = cl::LoadInstance(f.base.instance);
  if (f.horizon < 1) throw UsageError("--T must be positive");
  cl::RegretOptions options;
  options.delta = f.base.delta;
  options.bound = f.base.bound;
  options.rho = f.base.rho;
  options.overrides = Overrides(f.base);
  options.mix_mode = cl::ParseMixMode(f.base.mix);
  options.mix_value = f.base.mix_value;

  std::vector<Json> summaries;
  const auto runs = RunSeeds<std::pair<cl::RegretRun, Json>>(
      f.base.seed, f.base.replicates, f.base.jobs, [&](std::uint64_t seed) {
        cl::RegretOptions o = options;
        o.seed = seed;
        cl::RegretRun run = cl::RunRegret(inst, f.horizon, o);
        Json s = RegretSummary(run, seed);
        s["params"] = cl::ParamsToJson(run.params);
        if (f.baseline_grid) {
          const cl::RegretRun base = cl::RunGridBaseline(
              inst, f.horizon, std::max<std::uint64_t>(run.exploration_rounds, 1),
              *f.baseline_grid, o);
          s["baseline_grid"] = RegretSummary(base, seed);
        }
        return std::make_pair(std::move(run), std::move(s));
      });
  for (const auto& [run, summary] : runs) {
    if (!f.csv.empty()) {
      const std::uint64_t seed = summary["seed"].get<std::uint64_t>();
      WriteRegretCsv(runs.size() == 1 ? f.csv : SeedPath(f.csv, seed), run);
    }
    summaries.push_back(summary);
  }
  Json j = summaries.size() == 1 ? summaries.front()
                                 : Json{{"replicates", summaries}};
  EmitJson(f.base.out, j);
  return 0;
}

// ---- audit ----

cl::Vector ParseContract(const std::string& text) {
  cl::Vector p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad contract entry \"" + item + "\"");
    }
    if (used != item.size()) throw UsageError("bad contract entry \"" + item + "\"");
    p.push_back(v);
    pos = comma + 1;
  }
  return p;
}

int RunAudit(const std::string& path, double bound, const std::string& contract,
             const std::string& result_path, const std::string& out) {
  const cl::Instance inst = cl::LoadInstance(path);
  cl::Vector p;
  if (!contract.empty() == !result_path.empty()) {
    throw UsageError("give exactly one of --contract or --result");
  }
  if (!contract.empty()) {
    p = ParseContract(contract);
  } else {
    const Json r = cl::ReadJsonFile(result_path);
    if (!r.contains("contract")) throw std::invalid_argument("result has no contract");
    p = r["contract"].get<cl::Vector>();
  }
  if (p.size() != inst.n_outcomes) {
    throw UsageError("contract has " + std::to_string(p.size()) +
                     " entries, instance has " +
                     std::to_string(inst.n_outcomes) + " outcomes");
  }
  const cl::OptResult opt = cl::SolveOpt(inst, bound);
  const double u = cl::PrincipalUtility(inst, p);
  EmitJson(out, Json{{"contract", p},
                     {"action", cl::BestResponse(inst, p)},
                     {"utility", u},
                     {"opt", opt.value},
                     {"suboptimality", opt.value - u}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn near-optimal contracts from outcome samples"};
  app.require_subcommand(1);
  std::string config;

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "random instance");
  std::size_t gen_n = 2, gen_m = 2;
  std::uint64_t gen_seed = 1;
  double gen_sep = 0.0;
  std::string gen_out;
  gen_random->add_option("--n", gen_n, "actions")->check(CLI::PositiveNumber);
  gen_random->add_option("--m", gen_m, "outcomes")->check(CLI::PositiveNumber);
  auto* gen_seed_opt = gen_random->add_option("--seed", gen_seed, "seed");
  gen_random->add_option("--min-sep", gen_sep, "minimum L-inf separation");
  gen_random->add_option("--out", gen_out, "output JSON");
  gen_random->add_option("--config", config, "JSON config");
  auto* gen_hard = gen->add_subcommand("hardness", "two-action hard instance");
  double hard_eps = 0.1;
  bool hard_strict = false;
  gen_hard->add_option("--eps", hard_eps, "gap parameter");
  gen_hard->add_flag("--strict", hard_strict, "require eps < 1/80");
  gen_hard->add_option("--out", gen_out, "output JSON");
  gen_hard->add_option("--config", config, "JSON config");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimal contract");
  std::string oracle_inst, oracle_out;
  double oracle_bound = 1.0;
  std::optional<double> oracle_grid;
  oracle->add_option("--instance", oracle_inst, "instance JSON");
  oracle->add_option("--B", oracle_bound, "payment bound");
  oracle->add_option("--grid", oracle_grid, "also search a grid of this step");
  oracle->add_option("--out", oracle_out, "output JSON (default stdout)");
  oracle->add_option("--config", config, "JSON config");

  // learn
  auto* learn = app.add_subcommand("learn", "learn a contract from samples");
  LearnFlags lf;
  AddParamFlags(learn, lf);
  auto* learn_seed = learn->add_option("--seed", lf.seed, "seed");
  learn->add_option("--max-rounds", lf.max_rounds, "round cap");
  learn->add_option("--out", lf.out, "output JSON (default stdout)");
  learn->add_flag("--whitebox", lf.whitebox, "audit against the exact optimum");
  learn->add_option("--trace-cover", lf.trace_cover, "cover state dump JSON");
  learn->add_option("--config", config, "JSON config");

  // regret
  auto* regret = app.add_subcommand("regret", "explore-then-commit regret");
  RegretFlags rf;
  AddParamFlags(regret, rf.base);
  regret->add_option("--T", rf.horizon, "horizon");
  auto* regret_seed = regret->add_option("--seed", rf.base.seed, "seed");
  regret->add_option("--csv", rf.csv, "per-round CSV");
  regret->add_option("--out", rf.base.out, "summary JSON (default stdout)");
  regret->add_option("--baseline-grid", rf.baseline_grid,
                     "also run a grid baseline of this step");
  regret->add_option("--config", config, "JSON config");

  // audit
  auto* audit = app.add_subcommand("audit", "suboptimality of a contract");
  std::string audit_inst, audit_contract, audit_result, audit_out;
  double audit_bound = 1.0;
  audit->add_option("--instance", audit_inst, "instance JSON");
  audit->add_option("--B", audit_bound, "payment bound");
  audit->add_option("--contract", audit_contract, "comma-separated payments");
  audit->add_option("--result", audit_result, "learn output JSON");
  audit->add_option("--out", audit_out, "output JSON (default stdout)");
  audit->add_option("--config", config, "JSON config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_random->parsed()) {
      ConfigFill(gen_random).Apply(config);
      Require(gen_random, {"--out"});
      return RunGenRandom(gen_n, gen_m, ResolveSeed(gen_seed_opt, gen_seed),
                          gen_sep, gen_out);
    }
    if (gen_hard->parsed()) {
      ConfigFill(gen_hard).Apply(config);
      Require(gen_hard, {"--out"});
      return RunGenHardness(hard_eps, !hard_strict, gen_out);
    }
    if (oracle->parsed()) {
      ConfigFill(oracle).Apply(config);
      Require(oracle, {"--instance"});
      return RunOracle(oracle_inst, oracle_bound, oracle_grid, oracle_out);
    }
    if (learn->parsed()) {
      ConfigFill(learn).Apply(config);
      Require(learn, {"--instance"});
      lf.seed = ResolveSeed(learn_seed, lf.seed);
      return RunLearn(lf);
    }
    if (regret->parsed()) {
      ConfigFill(regret).Apply(config);
      Require(regret, {"--instance", "--T"});
      rf.base.seed = ResolveSeed(regret_seed, rf.base.seed);
      return RunRegretCmd(rf);
    }
    if (audit->parsed()) {
      ConfigFill(audit).Apply(config);
      Require(audit, {"--instance"});
      return RunAudit(audit_inst, audit_bound, audit_contract, audit_result,
                      audit_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
