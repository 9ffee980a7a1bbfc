#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tails/harness.hpp"
#include "tails/json_io.hpp"
#include "tails/problems.hpp"
#include "tails/reductions.hpp"

namespace {

using tails::Json;

constexpr int kOk = 0;
constexpr int kDataFailure = 1;
constexpr int kUsage = 2;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

// The min variants accept the plain-kind instance files.
tails::ProblemInstance coerce(const std::string& problem,
                              tails::ProblemInstance inst) {
  tails::ProblemId want = tails::problem_id_from_name(problem);
  if (inst.id() == want) return inst;
  if (want == tails::ProblemId::MinErt && inst.id() == tails::ProblemId::Ert)
    return tails::ProblemInstance{
        tails::MinErtInstance{std::get<tails::ErtInstance>(inst.node).coloring}};
  if (want == tails::ProblemId::MinEct && inst.id() == tails::ProblemId::Ect)
    return tails::ProblemInstance{
        tails::MinEctInstance{std::get<tails::EctInstance>(inst.node).coloring}};
  throw std::invalid_argument("instance kind does not match problem " + problem);
}

int cmd_solve(const std::string& problem, const std::string& path) {
  tails::ProblemInstance inst = coerce(problem, tails::instance_from_json(load_json(path)));
  if (!tails::instance_valid(inst))
    throw std::invalid_argument("instance violates its invariants");
  Json out{{"solution", tails::solution_to_json(tails::solve(inst))}};
  std::cout << out.dump() << "\n";
  return kOk;
}

int cmd_reduce(const std::string& name, const std::string& path,
               std::uint64_t samples) {
  const tails::ReductionRecord& record = tails::find_record(name);
  tails::ProblemInstance inst = tails::instance_from_json(load_json(path));
  if (inst.id() != record.source)
    throw std::invalid_argument("instance kind does not match the record source");
  if (!tails::instance_valid(inst))
    throw std::invalid_argument("instance violates its invariants");
  tails::ProblemInstance target = record.forward(inst);
  Json steps = Json::array();
  bool all_ok = true;
  std::vector<tails::ProblemSolution> pool = tails::sample_solutions(target, 1);
  if (samples < pool.size()) pool.resize(samples);
  for (const tails::ProblemSolution& s : pool) {
    tails::ProblemSolution decoded = record.backward(inst, s);
    bool ok = tails::validate(inst, decoded);
    all_ok = all_ok && ok;
    steps.push_back(Json{{"target_solution", tails::solution_to_json(s)},
                         {"decoded", tails::solution_to_json(decoded)},
                         {"verdict", ok}});
  }
  Json out{{"reduction", name},
           {"target", tails::instance_to_json(target)},
           {"samples", std::move(steps)}};
  std::cout << out.dump() << "\n";
  return all_ok ? kOk : kDataFailure;
}

int cmd_verify(std::uint64_t trials, std::uint64_t seed,
               const std::string& only, const std::string& limits_json) {
  tails::GeneratorLimits limits;
  if (!limits_json.empty())
    limits = tails::limits_from_json(Json::parse(limits_json));
  std::optional<std::string> filter;
  if (!only.empty()) filter = only;
  tails::Report report = tails::run_suite(seed, trials, limits, filter);
  std::cout << tails::report_to_json(report).dump() << "\n";
  return report.ok() ? kOk : kDataFailure;
}

int cmd_refute(const std::string& target, const std::string& candidate) {
  const tails::StrongCandidate& cand = tails::find_candidate(candidate);
  tails::Counterexample cex =
      target == "strong_ert_lpostar" ? tails::refute_strong_ert_to_lpostar(cand)
                                     : tails::refute_strong_lpo_to_ect(cand);
  std::cout << tails::counterexample_to_json(cex).dump() << "\n";
  return kOk;
}

tails::ProblemInstance canon_instance(const tails::ProblemInstance& inst) {
  using namespace tails;
  ProblemInstance out = inst;
  std::visit(
      [](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LpoInstance> ||
                      std::is_same_v<T, IsInfiniteInstance>) {
          node.word = node.word.canonicalize();
        } else if constexpr (std::is_same_v<T, ErtInstance> ||
                             std::is_same_v<T, ErtjInstance> ||
                             std::is_same_v<T, EctInstance> ||
                             std::is_same_v<T, MinErtInstance> ||
                             std::is_same_v<T, MinEctInstance>) {
          node.coloring.word = node.coloring.word.canonicalize();
        } else if constexpr (std::is_same_v<T, StarInstance> ||
                             std::is_same_v<T, ProductInstance>) {
          for (auto& item : node.items) item = canon_instance(item);
        }
      },
      out.node);
  return out;
}

int cmd_canon(const std::string& path) {
  Json j = load_json(path);
  if (j.contains("kind")) {
    tails::ProblemInstance inst = tails::instance_from_json(j);
    std::cout << tails::instance_to_json(canon_instance(inst)).dump() << "\n";
    return kOk;
  }
  tails::Word w = tails::word_from_json(j);
  std::cout << tails::word_to_json(w.canonicalize()).dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail principles over ultimately periodic words"};
  app.require_subcommand(1);

  std::string problem, path, name, candidate, only, limits_json, refute_target;
  std::uint64_t trials = 200, seed = 42, samples = 3;

  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("problem", problem)->required();
  solve->add_option("instance", path)->required();

  CLI::App* reduce = app.add_subcommand("reduce", "apply a registered reduction");
  reduce->add_option("name", name)->required();
  reduce->add_option("instance", path)->required();
  reduce->add_option("--samples", samples);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  verify->add_option("--only", only);
  verify->add_option("--limits", limits_json);

  CLI::App* refute = app.add_subcommand("refute", "run a strong-reduction refuter");
  refute->add_option("target", refute_target)
      ->required()
      ->check(CLI::IsMember({"strong_ert_lpostar", "strong_lpo_ect"}));
  refute->add_option("--candidate", candidate)->required();

  CLI::App* canon = app.add_subcommand("canon", "canonicalize a word or instance");
  canon->add_option("instance", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(problem, path);
    if (reduce->parsed()) return cmd_reduce(name, path, samples);
    if (verify->parsed()) return cmd_verify(trials, seed, only, limits_json);
    if (refute->parsed()) return cmd_refute(refute_target, candidate);
    if (canon->parsed()) return cmd_canon(path);
  } catch (const tails::NotRefuted& e) {
    std::cerr << "not refuted: " << e.what() << "\n";
    return kDataFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
