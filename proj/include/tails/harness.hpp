#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tails/problems.hpp"
#include "tails/reductions.hpp"

namespace tails {

struct NoStreamingForward : std::runtime_error {
  explicit NoStreamingForward(const std::string& name)
      : std::runtime_error("no streaming forward for " + name) {}
};

struct NotRefuted : std::runtime_error {
  explicit NotRefuted(const std::string& why) : std::runtime_error(why) {}
};

struct GeneratorLimits {
  std::uint64_t max_palette = 5;
  std::uint64_t max_prefix = 12;
  std::uint64_t max_period = 6;
  std::uint64_t max_skip_set = 4;
  std::uint64_t max_star_arity = 3;
};

struct Failure {
  ProblemInstance instance;
  std::optional<ProblemSolution> target_solution;
  std::optional<ProblemSolution> decoded;
  std::string violated;
};

struct Report {
  std::string reduction;
  std::uint64_t trials = 0;
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};

ProblemInstance gen_instance(ProblemId id, std::uint64_t seed,
                             const GeneratorLimits& limits);
// Source instance tailored to a record (handles the compound sources, and for
// minect_pair mixes in members whose colors all recur).
ProblemInstance gen_source(const ReductionRecord& record, std::uint64_t seed,
                           const GeneratorLimits& limits);

Report check_reduction(const std::string& name, const ProblemInstance& instance,
                       std::uint64_t seed);

bool stream_agreement(const std::string& name, const ProblemInstance& instance,
                      std::uint64_t horizon);

// A source word whose reads are counted, so candidate forwards can report
// their use.
class InstrumentedStream {
 public:
  explicit InstrumentedStream(Word word) : word_(std::move(word)) {}
  Symbol at(std::uint64_t n) const {
    use_ = std::max(use_, n + 1);
    return word_.at(n);
  }
  std::uint64_t use() const { return use_; }
  void reset() { use_ = 0; }

 private:
  Word word_;
  mutable std::uint64_t use_ = 0;
};

struct StrongCandidate {
  std::string name;
  ProblemId source;
  ProblemId target;
  // Forward sees the instrumented source; backward sees only the solution.
  std::function<ProblemInstance(const InstrumentedStream&, std::uint64_t palette)> forward;
  std::function<ProblemSolution(const ProblemSolution&)> backward;
};

struct Counterexample {
  std::string candidate;
  std::vector<ProblemInstance> instances;
  ProblemSolution answer;
  std::string violated;
};

const std::vector<StrongCandidate>& strong_candidates();
const StrongCandidate& find_candidate(const std::string& name);

Counterexample refute_strong_ert_to_lpostar(const StrongCandidate& candidate);
Counterexample refute_strong_lpo_to_ect(const StrongCandidate& candidate);

Report run_suite(std::uint64_t seed, std::uint64_t trials,
                 const GeneratorLimits& limits,
                 const std::optional<std::string>& only = std::nullopt);

}  // namespace tails
