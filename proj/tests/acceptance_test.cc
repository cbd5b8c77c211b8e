// Copyright 2026 The rmsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.h"
#include "rmsearch/estimators.h"
#include "rmsearch/exploit.h"
#include "rmsearch/grid_conquest.h"
#include "rmsearch/harness.h"
#include "rmsearch/ratings.h"
#include "rmsearch/regret.h"

namespace rmsearch {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

// 1. Seed averaging on random zero-sum games.
Outcome seed_average_criterion() {
  struct Column {
    int size;
    std::array<double, 4> target;  // avg_of_final, avg_of_avg, single_avg, single_final
  };
  const Column columns[] = {{10, {0.019, 0.035, 0.078, 0.478}},
                            {100, {0.063, 0.092, 0.225, 0.706}}};
  RmConfig rm;
  rm.iterations = 256;
  rm.linear = false;
  rm.optimism = false;
  Outcome out{true, ""};
  for (const Column& c : columns) {
    const auto report = seed_average_experiment(c.size, c.size, rm, 1000, 20, 0);
    const auto got = report.means();
    bool ok = true;
    out.detail += std::to_string(c.size) + "x" + std::to_string(c.size) + ":";
    for (int q = 0; q < 4; ++q) {
      const bool within = std::abs(got[q] - c.target[q]) <= 0.5 * c.target[q];
      ok &= within;
      out.detail += std::string(" ") + SeedAverageReport::kQuantityNames[q] + "=" +
                    fmt("%.4f", got[q]) + "(" + fmt("%.3f", c.target[q]) +
                    (within ? ")" : ",out)");
    }
    const bool order = report.avg_of_final < report.single_avg &&
                       report.single_avg < report.single_final &&
                       report.avg_of_avg < report.single_avg;
    out.detail += order ? " order=ok; " : " order=violated; ";
    out.pass &= ok && order;
  }
  return out;
}

// 2. Convergence on matching pennies and rock-paper-scissors.
Outcome convergence_criterion() {
  double worst = 0.0;
  const std::pair<const char*, MatrixGame> games[] = {{"mp", matching_pennies()},
                                                      {"rps", rock_paper_scissors()}};
  for (const auto& [name, game] : games) {
    const SubgameSpec spec = matrix_subgame(game);
    for (uint64_t seed = 0; seed < 20; ++seed) {
      RmConfig rm;
      rm.iterations = 10000;
      rm.seed = seed;
      const auto result = run_rm(spec, rm);
      worst = std::max(worst, exploitability(spec, result.average_policies).total);
    }
  }
  return {worst < 0.05, "worst exploitability over 40 runs " + fmt("%.5f", worst) + " < 0.05"};
}

// 3. Exploitability at iteration 256 below iteration 1.
Outcome trace_criterion() {
  int improved = 0;
  for (int g = 0; g < 20; ++g) {
    const SubgameSpec spec = matrix_subgame(random_zero_sum_game(10, 10, 1000 + g));
    RmConfig rm;
    rm.iterations = 256;
    rm.trace_every = 256;
    rm.seed = g;
    const auto result = run_rm(spec, rm);
    improved += result.trace.front().iteration == 1 && result.trace.back().iteration == 256 &&
                result.trace.back().exploitability < result.trace.front().exploitability;
  }
  return {improved == 20, std::to_string(improved) + "/20 games improved"};
}

// 4. Averaging two independent runs.
Outcome two_run_criterion() {
  double individual = 0.0, combined = 0.0;
  for (int g = 0; g < 20; ++g) {
    const SubgameSpec spec = matrix_subgame(random_zero_sum_game(10, 10, 2000 + g));
    RmConfig rm;
    rm.iterations = 256;
    rm.seed = mix_seed(77, g, 0);
    const auto r1 = run_rm(spec, rm);
    rm.seed = mix_seed(77, g, 1);
    const auto r2 = run_rm(spec, rm);
    individual += 0.5 * (exploitability(spec, r1.average_policies).total +
                         exploitability(spec, r2.average_policies).total);
    const std::vector<EquilibriumResult> both = {r1, r2};
    combined += exploitability(spec, average_policies(both, PolicyKind::kAverage)).total;
  }
  individual /= 20;
  combined /= 20;
  const double rel = std::abs(combined - individual) / individual;
  return {rel <= 0.25, "mean individual " + fmt("%.5f", individual) + ", combined " +
                           fmt("%.5f", combined) + ", relative gap " + fmt("%.3f", rel)};
}

// 5. Best response and exploitability vs exhaustive enumeration.
Outcome best_response_criterion() {
  Rng rng(555);
  double worst = 0.0;
  bool argmax_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixGame game = testing::random_general_game(rng, 3, 4);
    const SubgameSpec spec = matrix_subgame(game);
    const auto policies = testing::random_policies(rng, game.action_counts());
    double total = 0.0;
    for (int p = 0; p < game.num_players(); ++p) {
      const auto values = testing::brute_force_action_values(game, policies, p);
      double best = values[0], on_policy = 0.0;
      for (size_t a = 0; a < values.size(); ++a) {
        best = std::max(best, values[a]);
        on_policy += policies[p][a] * values[a];
      }
      const BestResponse br = best_response_value(spec, policies, p);
      worst = std::max(worst, std::abs(br.value - best));
      argmax_ok &= values[br.action] == best || std::abs(values[br.action] - best) <= 1e-9;
      total += best - on_policy;
    }
    worst = std::max(worst, std::abs(exploitability(spec, policies).total - total));
  }
  return {worst <= 1e-9 && argmax_ok,
          "max abs deviation " + fmt("%.2e", worst) + " over 100 games"};
}

// 6. SearchBot lift over the blueprint, and the symmetric null.
Outcome lift_criterion() {
  AgentSpec searchbot;
  searchbot.kind = AgentKind::kSearchBot;
  searchbot.search.rm.iterations = 128;
  const AgentSpec blueprint;
  const MatchOptions options;
  const double null_mean = 1.0 / Board::standard().num_players;
  const auto lift = evaluate_1v6(searchbot, blueprint, 400, 1, options);
  const auto null = evaluate_1v6(blueprint, blueprint, 400, 2, options);
  const bool lift_ok = lift.mean_a - 3 * lift.std_error_a > null_mean;
  const bool null_ok = std::abs(null.mean_a - null_mean) <= 3 * null.std_error_a;
  return {lift_ok && null_ok,
          "searchbot " + fmt("%.4f", lift.mean_a) + " +- " + fmt("%.4f", lift.std_error_a) +
              ", blueprint " + fmt("%.4f", null.mean_a) + " +- " +
              fmt("%.4f", null.std_error_a) + " vs null " + fmt("%.2f", null_mean) +
              " (400 games each)"};
}

// 7. Entropy-gradient estimator is unbiased.
Outcome entropy_criterion() {
  Rng models(99);
  double worst_z = 0.0;
  for (int m = 0; m < 10; ++m) {
    std::vector<double> logits(5);
    for (double& l : logits) l = 4.0 * uniform01(models) - 2.0;
    const CategoricalModel model(logits);
    const auto exact = exact_entropy_grad(model);
    std::vector<double> sum(5, 0.0), sum_sq(5, 0.0);
    const int batches = 200;
    for (int b = 0; b < batches; ++b) {
      Rng rng(mix_seed(4242, m, b));
      const auto est = entropy_grad_estimate(model, 10000, rng);
      for (int k = 0; k < 5; ++k) {
        sum[k] += est.mean[k];
        sum_sq[k] += est.mean[k] * est.mean[k];
      }
    }
    for (int k = 0; k < 5; ++k) {
      const double mean = sum[k] / batches;
      const double se = std::sqrt((sum_sq[k] - batches * mean * mean) / (batches - 1) / batches);
      worst_z = std::max(worst_z, std::abs(mean - exact[k]) / se);
    }
  }
  return {worst_z <= 4.0, "max |z| " + fmt("%.2f", worst_z) + " over 50 coordinates"};
}

// 8. Rating fit: gradient check and transitive data against a grid optimum.
Outcome rating_criterion() {
  Rng rng(8);
  double worst_rel = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    OutcomeDataset d;
    d.num_players = 2 + static_cast<int>(rng() % 5);
    for (int k = 0; k < 20; ++k) {
      const int i = static_cast<int>(rng() % d.num_players);
      int j = static_cast<int>(rng() % (d.num_players - 1));
      if (j >= i) ++j;
      d.pairs.emplace_back(i, j);
    }
    std::vector<double> s(d.num_players);
    for (double& x : s) x = 4.0 * uniform01(rng) - 2.0;
    const double lambda = uniform01(rng);
    const auto grad = rating_gradient(s, d, lambda);
    for (int k = 0; k < d.num_players; ++k) {
      auto plus = s, minus = s;
      plus[k] += 1e-5;
      minus[k] -= 1e-5;
      const double fd = (rating_loss(plus, d, lambda) - rating_loss(minus, d, lambda)) / 2e-5;
      worst_rel = std::max(worst_rel, std::abs(fd - grad[k]) / std::max(1.0, std::abs(fd)));
    }
  }
  OutcomeDataset t;
  t.num_players = 3;
  for (int k = 0; k < 10; ++k) t.pairs.emplace_back(0, 1);
  for (int k = 0; k < 10; ++k) t.pairs.emplace_back(1, 2);
  RatingConfig config;
  config.lambda = 0.1;
  const auto fit = fit_ratings(t, config);
  const auto grid = testing::grid_rating_optimum({{{0, 1}, 10}, {{1, 2}, 10}}, 0.1, 6.0);
  const bool order = fit.s[0] > fit.s[1] && fit.s[1] > fit.s[2];
  const double gap = std::abs(fit.final_loss - grid.loss);
  return {worst_rel <= 1e-6 && order && gap <= 1e-3,
          "gradient rel err " + fmt("%.1e", worst_rel) + ", s = (" + fmt("%.3f", fit.s[0]) +
              ", " + fmt("%.3f", fit.s[1]) + ", " + fmt("%.3f", fit.s[2]) + "), loss gap " +
              fmt("%.1e", gap)};
}

// 9. Every CLI experiment reproduces its tables byte for byte.
bool same_tree(const fs::path& a, const fs::path& b, std::string* why) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file() && e.path().filename() != "timing.json") {
      files.push_back(fs::relative(e.path(), a));
    }
  }
  size_t other = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    other += e.is_regular_file() && e.path().filename() != "timing.json";
  }
  if (files.empty() || other != files.size()) {
    *why = "file lists differ";
    return false;
  }
  for (const auto& rel : files) {
    std::ifstream fa(a / rel, std::ios::binary), fb(b / rel, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) {
      *why = rel.string() + " differs";
      return false;
    }
  }
  return true;
}

Outcome determinism_criterion(const std::string& cli, const fs::path& data_dir) {
  const fs::path root = fs::temp_directory_path() / "rmsearch_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream(root / "play.json")
        << R"({"seed": 5, "num_games": 2, "seats": [{"kind": "searchbot", "iterations": 16},)"
        << R"( "blueprint", {"kind": "brbot", "br_rollouts": 8}, "blueprint"]})";
    std::ofstream(root / "eval.json")
        << R"({"seed": 6, "num_games": 8, "write_logs": true,)"
        << R"( "agent_a": {"kind": "searchbot", "iterations": 16}, "agent_b": "blueprint"})";
  }
  const std::string game = (data_dir / "games" / "rock_paper_scissors.json").string();
  const std::string ratings = (data_dir / "ratings" / "transitive.csv").string();
  const std::string cfg = root.string();
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"solve-matrix", "solve-matrix " + game + " --iters 500 --seed 3"},
      {"seed-average", "seed-average --rows 6 --cols 6 --seeds 50 --games 3 --iters 64"},
      {"trace", "trace --game-file " + game + " --iters 512 --every 64"},
      {"play", "play --config " + cfg + "/play.json"},
      {"evaluate-1v6", "evaluate-1v6 --config " + cfg + "/eval.json"},
      {"sweep", "sweep --axis M --values 0.5,2 --config " + cfg + "/eval.json"},
      {"rate", "rate --dataset " + ratings},
      {"check-entropy-grad", "check-entropy-grad --models 3 --samples 20000"},
  };
  std::string failures;
  for (const auto& [name, args] : runs) {
    bool ok = true;
    for (int rep = 0; rep < 2 && ok; ++rep) {
      const std::string cmd = cli + " --out " + cfg + "/" + name + "_" + std::to_string(rep) +
                              " " + args + " > /dev/null 2>&1";
      ok = std::system(cmd.c_str()) == 0;
    }
    std::string why = "command failed";
    if (ok) ok = same_tree(root / (name + "_0"), root / (name + "_1"), &why);
    if (!ok) failures += " " + name + " (" + why + ")";
  }
  fs::remove_all(root);
  return {failures.empty(), failures.empty()
                                ? "8/8 subcommands reproduced byte-identical outputs"
                                : "mismatch:" + failures};
}

// 10. Adjudicator examples.
Outcome adjudicator_criterion() {
  const auto board = std::make_shared<const Board>(Board::standard());
  auto empty = [&] {
    GameState s = initial_state(board);
    s.unit.assign(board->num_provinces, kNobody);
    return s;
  };
  auto orders_for = [&](const GameState& s,
                        std::vector<std::pair<int, UnitOrder>> given) -> JointAction {
    JointAction joint(board->num_players);
    for (int p = 0; p < board->num_players; ++p) {
      for (int u : s.units_of(p)) {
        UnitOrder o = UnitOrder::hold(u);
        for (const auto& [src, order] : given) {
          if (src == u) o = order;
        }
        joint[p].push_back(o);
      }
    }
    return joint;
  };
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const char* name) {
    if (!ok) failed.push_back(name);
  };

  {  // Uncontested move.
    GameState s = empty();
    s.unit[5] = 0;
    const auto next = resolve_movement(s, orders_for(s, {{5, UnitOrder::move(5, 9)}}));
    expect(next.unit[9] == 0 && next.unit[5] == kNobody, "move");
  }
  {  // Bounce: two unsupported moves into the same empty province.
    GameState s = empty();
    s.unit[4] = 0;
    s.unit[6] = 1;
    const auto next = resolve_movement(
        s, orders_for(s, {{4, UnitOrder::move(4, 5)}, {6, UnitOrder::move(6, 5)}}));
    expect(next.unit[4] == 0 && next.unit[6] == 1 && next.unit[5] == kNobody, "bounce");
  }
  {  // Supported move dislodges a lone holder.
    GameState s = empty();
    s.unit[4] = 0;
    s.unit[1] = 0;
    s.unit[5] = 1;
    const auto next = resolve_movement(s, orders_for(s, {{4, UnitOrder::move(4, 5)},
                                                         {1, UnitOrder::support_move(1, 4, 5)}}));
    expect(next.unit[5] == 0 && next.unit[4] == kNobody && next.unit[1] == 0, "support");
  }
  {  // Support cut by an attack on the supporter.
    GameState s = empty();
    s.unit[4] = 0;
    s.unit[1] = 0;
    s.unit[5] = 1;
    s.unit[2] = 2;
    const auto next = resolve_movement(s, orders_for(s, {{4, UnitOrder::move(4, 5)},
                                                         {1, UnitOrder::support_move(1, 4, 5)},
                                                         {2, UnitOrder::move(2, 1)}}));
    expect(next.unit[5] == 1 && next.unit[4] == 0 && next.unit[1] == 0, "support-cut");
  }
  {  // Build on a vacant owned home; disband the unit farthest from an owned SC.
    GameState s = empty();
    s.unit[0] = 0;  // player 0 owns homes 0 and 1 with one unit
    s.unit[6] = 1;  // player 1 owns 6 and 7 with three units
    s.unit[10] = 1;
    s.unit[12] = 1;
    const auto next = apply_adjustments(resolve_movement(s, orders_for(s, {})));
    expect(next.unit[0] == 0 && next.unit[1] == 0, "build");
    expect(next.unit[6] == 1 && next.unit[10] == 1 && next.unit[12] == kNobody, "disband");
  }
  std::string detail = "move, bounce, support, support-cut, build, disband";
  if (!failed.empty()) {
    detail = "failed:";
    for (const auto& f : failed) detail += " " + f;
  }
  return {failed.empty(), detail};
}

}  // namespace
}  // namespace rmsearch

int main(int argc, char** argv) {
  using namespace rmsearch;
  if (argc < 3) {
    std::cerr << "usage: acceptance_test <rmsearch-cli> <data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data = argv[2];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"seed averaging reproduces the 10x10 and 100x100 columns", seed_average_criterion},
      {"RM convergence on matching pennies and RPS", convergence_criterion},
      {"exploitability falls from iteration 1 to 256", trace_criterion},
      {"averaging two runs keeps exploitability within 25%", two_run_criterion},
      {"best response equals exhaustive enumeration", best_response_criterion},
      {"SearchBot beats the blueprint; blueprint null holds", lift_criterion},
      {"entropy-gradient estimator is unbiased", entropy_criterion},
      {"rating fit gradient and grid optimum", rating_criterion},
      {"CLI outputs are byte-identical on re-run", [&] { return determinism_criterion(cli, data); }},
      {"adjudicator examples", adjudicator_criterion},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !out.pass;
    std::printf("criterion %zu: %s - %s: %s [%.1fs]\n", i + 1, out.pass ? "PASS" : "FAIL",
                criteria[i].first, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
