#include "oofa/design_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <thread>

#include "oofa/error.hpp"

namespace oofa {
namespace {

constexpr int kStartAttempts = 200;

class Objective {
 public:
  Objective(const CompoundSpec& spec, int m) {
    for (const auto& member : spec.members) {
      evaluators_.emplace_back(member.model, member.criterion, m);
      weights_.push_back(member.weight);
    }
  }

  std::size_t candidate_count() const { return evaluators_.front().candidate_count(); }

  // nullopt if any member model is not estimable.
  std::optional<double> operator()(std::span<const std::size_t> design) const {
    double total = 0.0;
    for (std::size_t k = 0; k < evaluators_.size(); ++k) {
      const auto v = evaluators_[k].try_evaluate(design);
      if (!v) return std::nullopt;
      total += weights_[k] * oriented_value(evaluators_[k].criterion().kind, *v);
    }
    return total;
  }

  std::vector<double> member_values(std::span<const std::size_t> design) const {
    std::vector<double> out;
    for (const auto& e : evaluators_) out.push_back(e.try_evaluate(design).value());
    return out;
  }

 private:
  std::vector<CriterionEvaluator> evaluators_;
  std::vector<double> weights_;
};

std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

std::vector<std::size_t> draw(std::size_t w, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, w - 1);
  std::vector<std::size_t> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = pick(rng);
  return out;
}

bool strictly_better(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

struct RestartOutcome {
  bool found = false;
  std::vector<std::size_t> design;
  double objective = 0.0;
  std::vector<double> improvements;
  std::vector<double> pass_objectives;
  int passes = 0;
};

RestartOutcome run_restart(const Objective& objective, const SearchConfig& config, int restart) {
  RestartOutcome out;
  auto rng = restart_engine(config.seed, restart);
  const std::size_t w = objective.candidate_count();

  std::optional<double> value;
  for (int attempt = 0; attempt < kStartAttempts && !value; ++attempt) {
    out.design = draw(w, config.runs, rng);
    value = objective(out.design);
  }
  if (!value) return out;
  out.found = true;
  out.objective = *value;

  std::vector<std::size_t> trial = out.design;
  for (int pass = 0; pass < config.max_passes; ++pass) {
    bool improved = false;
    for (std::size_t slot = 0; slot < out.design.size(); ++slot) {
      const std::size_t incumbent = out.design[slot];
      std::size_t best_candidate = incumbent;
      double best_value = out.objective;
      for (std::size_t cand = 0; cand < w; ++cand) {
        if (cand == incumbent) continue;
        trial[slot] = cand;
        const auto v = objective(trial);
        if (v && strictly_better(*v, best_value)) {
          best_value = *v;
          best_candidate = cand;
        }
      }
      trial[slot] = best_candidate;
      if (best_candidate != incumbent) {
        out.design[slot] = best_candidate;
        out.objective = best_value;
        out.improvements.push_back(best_value);
        improved = true;
      }
    }
    out.pass_objectives.push_back(out.objective);
    ++out.passes;
    if (!improved) break;
  }
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  factorial(m);
  if (m < 2) throw ArgumentError("design search needs m >= 2");
  if (restarts < 1) throw ArgumentError("restarts must be at least 1");
  if (max_passes < 1) throw ArgumentError("max_passes must be at least 1");
  if (threads < 1) throw ArgumentError("threads must be at least 1");
  objective.validate();
  int needed = 0;
  for (const auto& member : objective.members) needed = std::max(needed, parameter_count(member.model, m));
  if (runs < needed) {
    throw ArgumentError("N=" + std::to_string(runs) + " runs cannot support a model with " + std::to_string(needed) +
                        " parameters");
  }
}

Design random_design(int m, int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("a design needs at least one run");
  const auto candidates = enumerate_permutations(m);
  std::mt19937_64 rng(seed);
  Design d;
  for (std::size_t i : draw(candidates.size(), n, rng)) d.runs.push_back(candidates[i]);
  return d;
}

SearchResult exchange_search(const SearchConfig& config) {
  config.validate();
  const Objective objective(config.objective, config.m);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  const int workers = std::min(config.threads, config.restarts);
  if (workers <= 1) {
    for (int r = 0; r < config.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(objective, config, r);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < config.restarts; r += workers) {
          outcomes[static_cast<std::size_t>(r)] = run_restart(objective, config, r);
        }
      });
    }
  }

  const RestartOutcome* best = nullptr;
  int best_restart = -1;
  for (int r = 0; r < config.restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    if (o.found && (best == nullptr || o.objective < best->objective)) {
      best = &o;
      best_restart = r;
    }
  }
  if (best == nullptr) {
    throw SearchFailure("no estimable starting design found in " + std::to_string(config.restarts) +
                        " restarts; increase the number of runs");
  }

  const auto candidates = enumerate_permutations(config.m);
  std::vector<std::size_t> sorted = best->design;
  std::sort(sorted.begin(), sorted.end());

  SearchResult result;
  for (std::size_t i : sorted) result.design.runs.push_back(candidates[i]);
  result.objective = best->objective;
  result.member_values = objective.member_values(best->design);
  result.improvements = best->improvements;
  result.pass_objectives = best->pass_objectives;
  result.passes = best->passes;
  result.restart = best_restart;
  result.seed = config.seed;
  return result;
}

}  // namespace oofa
