#include "tails/harness.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

namespace tails {

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  std::uint64_t below(std::uint64_t n) { return n ? g() % n : 0; }
};

Word gen_word(Rng& rng, std::uint64_t palette, const GeneratorLimits& limits) {
  std::vector<Symbol> prefix(rng.below(limits.max_prefix + 1), sym(0));
  std::vector<Symbol> period(1 + rng.below(limits.max_period), sym(0));
  for (auto& s : prefix) s = sym(rng.below(palette));
  for (auto& s : period) s = sym(rng.below(palette));
  return Word(std::move(prefix), std::move(period));
}

// Every color below the palette recurs in the period.
Word gen_word_all_recurring(Rng& rng, std::uint64_t palette,
                            const GeneratorLimits& limits) {
  std::vector<Symbol> prefix(rng.below(limits.max_prefix + 1), sym(0));
  for (auto& s : prefix) s = sym(rng.below(palette));
  std::uint64_t rot = rng.below(palette);
  std::vector<Symbol> period;
  for (std::uint64_t v = 0; v < palette; ++v)
    period.push_back(sym((v + rot) % palette));
  return Word(std::move(prefix), std::move(period));
}

Coloring gen_coloring(Rng& rng, const GeneratorLimits& limits) {
  std::uint64_t palette = 1 + rng.below(limits.max_palette);
  return Coloring{gen_word(rng, palette, limits), palette};
}

EnumerationPresentation gen_enumeration(Rng& rng, const GeneratorLimits& limits) {
  EnumerationPresentation e;
  std::uint64_t len = rng.below(limits.max_prefix + 1);
  for (std::uint64_t n = 0; n < len; ++n)
    e.explicit_part.push_back(rng.below(4) == 0 ? Symbol::pause()
                                                : sym(rng.below(12)));
  if (rng.below(2) == 0) {
    e.tail = EnumerationPresentation::TailKind::Pauses;
  } else {
    e.tail = EnumerationPresentation::TailKind::AllExcept;
    std::uint64_t picks = rng.below(limits.max_skip_set + 1);
    for (std::uint64_t n = 0; n < picks; ++n) e.skip.insert(Nat(rng.below(13)));
  }
  return e;
}

ProblemInstance gen_minect(Rng& rng, const GeneratorLimits& limits) {
  return ProblemInstance{MinEctInstance{gen_coloring(rng, limits)}};
}

std::vector<ProblemInstance> gen_star_items(
    Rng& rng, const GeneratorLimits& limits,
    const std::function<ProblemInstance(Rng&)>& gen) {
  std::vector<ProblemInstance> items;
  std::uint64_t arity = rng.below(limits.max_star_arity + 1);
  for (std::uint64_t n = 0; n < arity; ++n) items.push_back(gen(rng));
  return items;
}

}  // namespace

ProblemInstance gen_instance(ProblemId id, std::uint64_t seed,
                             const GeneratorLimits& limits) {
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(id)));
  switch (id) {
    case ProblemId::Lpo:
      return ProblemInstance{LpoInstance{gen_word(rng, 2, limits)}};
    case ProblemId::IsInfinite:
      return ProblemInstance{IsInfiniteInstance{gen_word(rng, 2, limits)}};
    case ProblemId::Cn: {
      for (int attempt = 0; attempt < 64; ++attempt) {
        EnumerationPresentation e = gen_enumeration(rng, limits);
        if (!target_set(e).empty()) return ProblemInstance{CnInstance{std::move(e)}};
      }
      EnumerationPresentation e;
      e.tail = EnumerationPresentation::TailKind::AllExcept;
      e.skip.insert(Nat(rng.below(10)));
      return ProblemInstance{CnInstance{std::move(e)}};
    }
    case ProblemId::Tcn:
      return ProblemInstance{TcnInstance{gen_enumeration(rng, limits)}};
    case ProblemId::Ert:
      return ProblemInstance{ErtInstance{gen_coloring(rng, limits)}};
    case ProblemId::Ertj:
      return ProblemInstance{
          ErtjInstance{gen_coloring(rng, limits), 1 + rng.below(4)}};
    case ProblemId::Ect:
      return ProblemInstance{EctInstance{gen_coloring(rng, limits)}};
    case ProblemId::MinErt:
      return ProblemInstance{MinErtInstance{gen_coloring(rng, limits)}};
    case ProblemId::MinEct:
      return ProblemInstance{MinEctInstance{gen_coloring(rng, limits)}};
    case ProblemId::CSharpMax: {
      std::uint64_t bound = 1 + rng.below(3);
      std::uint64_t members = 1 + rng.below(3);
      EnumerationPresentation e;
      e.tail = EnumerationPresentation::TailKind::AllExcept;
      for (std::uint64_t n = 0; n < members; ++n) {
        std::set<Nat> s;
        std::uint64_t card = rng.below(bound + 1);
        while (s.size() < card) s.insert(Nat(rng.below(6)));
        e.skip.insert(encode_set(s));
      }
      return ProblemInstance{
          CSharpMaxInstance{FiniteSetFamilyInstance{bound, std::move(e)}}};
    }
    case ProblemId::Star:
      return ProblemInstance{StarInstance{
          ProblemId::MinEct,
          gen_star_items(rng, limits,
                         [&](Rng& r) { return gen_minect(r, limits); })}};
    case ProblemId::Product:
      return ProblemInstance{
          ProductInstance{{gen_minect(rng, limits), gen_minect(rng, limits)}}};
  }
  throw std::logic_error("unknown problem id");
}

ProblemInstance gen_source(const ReductionRecord& record, std::uint64_t seed,
                           const GeneratorLimits& limits) {
  Rng rng(mix_seed(seed, 0xA11CE));
  if (record.name == "lpostar_to_ert")
    return ProblemInstance{StarInstance{
        ProblemId::Lpo,
        gen_star_items(rng, limits, [&](Rng& r) {
          return ProblemInstance{LpoInstance{gen_word(r, 2, limits)}};
        })}};
  if (record.name == "tcn_star_to_ect")
    return ProblemInstance{StarInstance{
        ProblemId::Tcn,
        gen_star_items(rng, limits, [&](Rng& r) {
          return ProblemInstance{TcnInstance{gen_enumeration(r, limits)}};
        })}};
  if (record.name == "minect_star_fold")
    return ProblemInstance{StarInstance{
        ProblemId::MinEct,
        gen_star_items(rng, limits,
                       [&](Rng& r) { return gen_minect(r, limits); })}};
  if (record.name == "minect_pair") {
    auto gen_member = [&](bool all_recurring) {
      std::uint64_t palette = 1 + rng.below(limits.max_palette);
      Word w = all_recurring ? gen_word_all_recurring(rng, palette, limits)
                             : gen_word(rng, palette, limits);
      return ProblemInstance{MinEctInstance{Coloring{w, palette}}};
    };
    std::uint64_t mode = seed % 5;
    return ProblemInstance{
        ProductInstance{{gen_member(mode == 0), gen_member(mode == 1)}}};
  }
  return gen_instance(record.source, seed, limits);
}

Report check_reduction(const std::string& name, const ProblemInstance& instance,
                       std::uint64_t seed) {
  const ReductionRecord& record = find_record(name);
  Report report;
  report.reduction = name;
  report.trials = 1;
  ProblemInstance target = record.forward(instance);
  if (!instance_valid(target)) {
    report.failures.push_back(
        {instance, std::nullopt, std::nullopt, "forward image is not a valid instance"});
    return report;
  }
  for (const ProblemSolution& s : sample_solutions(target, seed)) {
    if (!validate(target, s)) {
      report.failures.push_back(
          {instance, s, std::nullopt, "sampled target solution fails validation"});
      continue;
    }
    ProblemSolution decoded = record.backward(instance, s);
    if (!validate(instance, decoded))
      report.failures.push_back({instance, s, decoded, "decode fails validation"});
  }
  return report;
}

// --- stream agreement ---

namespace {

bool word_stream_agreement(const Word& target,
                           const std::function<Symbol(std::uint64_t)>& literal,
                           std::uint64_t horizon) {
  for (std::uint64_t n = 0; n < horizon; ++n)
    if (target.at(n) != literal(n)) return false;
  return true;
}

// The literal stream must stay inside the symbolic range and must cover the
// explicitly listed values within the horizon.
bool enum_stream_agreement(const EnumerationPresentation& e,
                           const std::function<Symbol(std::uint64_t)>& literal,
                           std::uint64_t horizon) {
  std::set<Nat> lit;
  for (std::uint64_t s = 0; s < horizon; ++s) {
    Symbol v = literal(s);
    if (!v.is_pause()) lit.insert(v.value());
  }
  std::set<Nat> explicit_values;
  for (const Symbol& v : e.explicit_part)
    if (!v.is_pause()) explicit_values.insert(v.value());
  for (const Nat& v : lit) {
    bool in_range = explicit_values.count(v) ||
                    (e.tail == EnumerationPresentation::TailKind::AllExcept &&
                     !e.skip.count(v));
    if (!in_range) return false;
  }
  for (const Nat& v : explicit_values)
    if (!lit.count(v)) return false;
  return true;
}

// Member stream of the recurrence translation: position n is certified once
// its color has been seen again at or past it; one value per step.
std::function<Symbol(std::uint64_t)> recurrence_member_stream(const Word& f,
                                                              std::uint64_t color) {
  auto queue = std::make_shared<std::deque<Nat>>();
  auto next_uncertified = std::make_shared<std::uint64_t>(0);
  auto step = std::make_shared<std::uint64_t>(0);
  // Caller reads positions in order, one per call.
  return [=, &f](std::uint64_t) -> Symbol {
    std::uint64_t t = (*step)++;
    if (to_u64(f.at(t).value()) == color)
      while (*next_uncertified <= t) queue->push_back(Nat((*next_uncertified)++));
    if (queue->empty()) return Symbol::pause();
    Symbol out(queue->front());
    queue->pop_front();
    return out;
  };
}

const Word& coloring_word_of(const ProblemInstance& inst) {
  switch (inst.id()) {
    case ProblemId::Ert: return std::get<ErtInstance>(inst.node).coloring.word;
    case ProblemId::Ect: return std::get<EctInstance>(inst.node).coloring.word;
    case ProblemId::MinErt: return std::get<MinErtInstance>(inst.node).coloring.word;
    case ProblemId::MinEct: return std::get<MinEctInstance>(inst.node).coloring.word;
    case ProblemId::Ertj: return std::get<ErtjInstance>(inst.node).coloring.word;
    default: throw ArityMismatch("expected a coloring instance");
  }
}

}  // namespace

bool stream_agreement(const std::string& name, const ProblemInstance& instance,
                      std::uint64_t horizon) {
  const ReductionRecord& record = find_record(name);
  ProblemInstance target = record.forward(instance);
  if (name == "lpostar_to_ert") {
    const auto& star = std::get<StarInstance>(instance.node);
    std::uint64_t k = star.items.size();
    const Word& w = std::get<ErtInstance>(target.node).coloring.word;
    auto literal = [&](std::uint64_t n) -> Symbol {
      if (k == 0) return sym(0);
      std::uint64_t i = n % k, s = n / k;
      const Word& f = std::get<LpoInstance>(star.items[i].node).word;
      if (f.at(s).value() != 0) return sym(k);
      for (std::uint64_t m = 0; m < s; ++m)
        if (f.at(m).value() == 0) return sym(k);
      return sym(i);
    };
    return word_stream_agreement(w, literal, horizon);
  }
  if (name == "ect_to_tcn_star") {
    const Word f = coloring_word_of(instance);
    const auto& star = std::get<StarInstance>(target.node);
    for (std::size_t i = 0; i < star.items.size(); ++i) {
      const auto& e = std::get<TcnInstance>(star.items[i].node).enumeration;
      auto literal = recurrence_member_stream(f, i);
      if (!enum_stream_agreement(e, literal, horizon)) return false;
    }
    return true;
  }
  if (name == "lpo_to_tcn_strong") {
    const Word& f = std::get<LpoInstance>(instance.node).word;
    const auto& e = std::get<TcnInstance>(target.node).enumeration;
    auto literal = [&](std::uint64_t n) -> Symbol {
      return f.at(n).value() == 0 ? sym(0) : Symbol(Nat(n + 1));
    };
    return enum_stream_agreement(e, literal, horizon);
  }
  if (name == "isinf_to_minect") {
    const Word& p = std::get<IsInfiniteInstance>(instance.node).word;
    const Word& r = std::get<MinEctInstance>(target.node).coloring.word;
    auto literal = [&](std::uint64_t n) -> Symbol {
      if (n == 0) return sym(1);
      return n % 2 == 1 ? sym(0) : p.at(n / 2 - 1);
    };
    return word_stream_agreement(r, literal, horizon);
  }
  if (name == "ertj_to_ert") {
    const auto& src = std::get<ErtjInstance>(instance.node);
    const Word& g = std::get<ErtInstance>(target.node).coloring.word;
    std::uint64_t j = src.multiplicity;
    auto literal = [&](std::uint64_t n) -> Symbol {
      std::uint64_t color = to_u64(src.coloring.word.at(n).value());
      std::uint64_t before = 0;
      for (std::uint64_t m = 0; m < n; ++m)
        if (to_u64(src.coloring.word.at(m).value()) == color) ++before;
      return sym(color * j + before % j);
    };
    return word_stream_agreement(g, literal, horizon);
  }
  throw NoStreamingForward(name);
}

// --- refuters ---

namespace {

Word window_word(const InstrumentedStream& f, std::uint64_t window) {
  std::vector<Symbol> prefix;
  for (std::uint64_t n = 0; n < window; ++n) prefix.push_back(f.at(n));
  Symbol last = window ? prefix.back() : sym(0);
  return Word(std::move(prefix), {last});
}

bool same_lpo_star(const ProblemInstance& a, const ProblemInstance& b) {
  const auto& sa = std::get<StarInstance>(a.node);
  const auto& sb = std::get<StarInstance>(b.node);
  if (sa.items.size() != sb.items.size()) return false;
  for (std::size_t n = 0; n < sa.items.size(); ++n) {
    const Word& wa = std::get<LpoInstance>(sa.items[n].node).word;
    const Word& wb = std::get<LpoInstance>(sb.items[n].node).word;
    if (!wa.denotes_same_stream(wb)) return false;
  }
  return true;
}

Word zeros_then_one(std::uint64_t zeros) {
  std::vector<Symbol> prefix(zeros, sym(0));
  prefix.push_back(sym(1));
  return Word(std::move(prefix), {sym(0)});
}

}  // namespace

Counterexample refute_strong_ert_to_lpostar(const StrongCandidate& candidate) {
  if (candidate.source != ProblemId::Ert || candidate.target != ProblemId::Star)
    throw NotRefuted("candidate does not claim ERT -> LPO*");
  InstrumentedStream f1(Word({}, {sym(0)}));
  ProblemInstance t1 = candidate.forward(f1, 2);
  std::uint64_t k = f1.use();
  if (t1.id() != ProblemId::Star)
    throw NotRefuted("forward image is not an LPO star instance");
  Nat m = candidate.backward(solve(t1)).as_number();
  // Any bound the candidate can name for f2 is at most m, but the true
  // minimum is k+m+1.
  Word f2_word = zeros_then_one(k + to_u64(m));
  InstrumentedStream f2(f2_word);
  ProblemInstance t2 = candidate.forward(f2, 2);
  if (!same_lpo_star(t1, t2))
    throw NotRefuted("forward distinguishes streams beyond its declared use");
  ProblemSolution answer = candidate.backward(solve(t2));
  Coloring f2_coloring{f2_word, 2};
  if (ert_validate(f2_coloring, answer.as_number()))
    throw NotRefuted("candidate answer unexpectedly validates");
  std::ostringstream why;
  why << "bound " << answer.as_number() << " fails on the stream with "
      << (k + to_u64(m)) << " zeros then a single 1; minimal bound is "
      << min_ert_oracle(f2_coloring);
  return Counterexample{candidate.name,
                        {ProblemInstance{ErtInstance{Coloring{Word({}, {sym(0)}), 2}}},
                         ProblemInstance{ErtInstance{f2_coloring}}},
                        answer, why.str()};
}

Counterexample refute_strong_lpo_to_ect(const StrongCandidate& candidate) {
  if (candidate.source != ProblemId::Lpo || candidate.target != ProblemId::Ect)
    throw NotRefuted("candidate does not claim LPO -> ECT");
  Word f1_word({}, {sym(1)});  // answer 1
  Word f2_word({}, {sym(0)});  // answer 0
  InstrumentedStream f1(f1_word), f2(f2_word);
  ProblemInstance g1 = candidate.forward(f1, 2);
  ProblemInstance g2 = candidate.forward(f2, 2);
  const Coloring& c1 = std::get<EctInstance>(g1.node).coloring;
  const Coloring& c2 = std::get<EctInstance>(g2.node).coloring;
  Nat b = std::max(min_ect_oracle(c1), min_ect_oracle(c2));
  if (!ect_validate(c1, b) || !ect_validate(c2, b))
    throw NotRefuted("upward closure violated by candidate images");
  ProblemSolution answer = candidate.backward(ProblemSolution::number(b));
  int a = answer.as_bit();
  Word failing = (a != 1) ? f1_word : f2_word;
  int expected = (a != 1) ? 1 : 0;
  std::ostringstream why;
  why << "single answer " << a << " decodes bound " << b
      << " for both streams but the true answer here is " << expected;
  return Counterexample{candidate.name,
                        {ProblemInstance{LpoInstance{failing}}},
                        answer, why.str()};
}

const std::vector<StrongCandidate>& strong_candidates() {
  static const std::vector<StrongCandidate> list = [] {
    std::vector<StrongCandidate> v;
    v.push_back({"blind_ert_via_lpostar", ProblemId::Ert, ProblemId::Star,
                 [](const InstrumentedStream& f, std::uint64_t palette) {
                   Word w = window_word(f, 2 * palette + 2);
                   return find_record("ert_to_lpostar")
                       .forward(ProblemInstance{ErtInstance{Coloring{w, palette}}});
                 },
                 [](const ProblemSolution& sol) {
                   Nat zeros = 0;
                   for (const auto& bit : sol.as_tuple())
                     if (bit.as_bit() == 0) ++zeros;
                   return ProblemSolution::number(zeros);
                 }});
    v.push_back({"ignore_input", ProblemId::Ert, ProblemId::Star,
                 [](const InstrumentedStream&, std::uint64_t) {
                   return ProblemInstance{StarInstance{ProblemId::Lpo, {}}};
                 },
                 [](const ProblemSolution&) { return ProblemSolution::number(0); }});
    auto echo_forward = [](const InstrumentedStream& f, std::uint64_t) {
      Word w = window_word(f, 4);
      return ProblemInstance{EctInstance{Coloring{w, 2}}};
    };
    v.push_back({"constant_zero", ProblemId::Lpo, ProblemId::Ect, echo_forward,
                 [](const ProblemSolution&) { return ProblemSolution::bit(0); }});
    v.push_back({"constant_one", ProblemId::Lpo, ProblemId::Ect, echo_forward,
                 [](const ProblemSolution&) { return ProblemSolution::bit(1); }});
    return v;
  }();
  return list;
}

const StrongCandidate& find_candidate(const std::string& name) {
  for (const auto& c : strong_candidates())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown candidate: " + name);
}

// --- suite ---

namespace {

void merge(Report& into, const Report& part) {
  into.trials += part.trials;
  for (const auto& f : part.failures) into.failures.push_back(f);
}

void property_trials(Report& report, std::uint64_t seed, std::uint64_t trials,
                     const GeneratorLimits& limits) {
  for (std::uint64_t t = 0; t < trials; ++t) {
    ProblemInstance inst =
        gen_instance(ProblemId::MinErt, mix_seed(seed, 0xFEED00 + t), limits);
    const Coloring& c = std::get<MinErtInstance>(inst.node).coloring;
    ++report.trials;
    Nat oracle = min_ert_oracle(c);
    if (bound_from_t0(c) != oracle || min_ert_last_singleton(c) != oracle) {
      report.failures.push_back(
          {inst, std::nullopt, std::nullopt, "three-way minimum-ERT disagreement"});
      continue;
    }
    Rng rng(mix_seed(seed, 0xB0B0 + t));
    Nat b = Nat(rng.below(c.word.prefix().size() + 3));
    std::uint64_t j = 1 + rng.below(4);
    bool ok = true;
    // Constant-palette validity is monotone in the bound; repeating-tail
    // validity is not (a color can lose its second occurrence when the tail
    // shortens), but it holds everywhere at or above the constant-palette
    // minimum because the palette law implies the repetition law.
    if (ect_validate(c, b) && !ect_validate(c, b + 1)) ok = false;
    if (b >= min_ect_oracle(c) &&
        (!ert_validate(c, b) || !ertj_validate(c, j, b)))
      ok = false;
    if (ect_validate(c, b) && !ert_validate(c, b)) ok = false;
    if (ertj_validate(c, 2, b) != ert_validate(c, b)) ok = false;
    if (ertj_validate(c, j + 1, b) && !ertj_validate(c, j, b)) ok = false;
    if (!ok) {
      report.failures.push_back(
          {inst, std::nullopt, std::nullopt, "validator law violated"});
      continue;
    }
    Nat ect_min = min_ect_oracle(c);
    if (!ect_validate(c, ect_min) ||
        (ect_min > 0 && ect_validate(c, ect_min - 1)) ||
        !ert_validate(c, oracle) || (oracle > 0 && ert_validate(c, oracle - 1)))
      report.failures.push_back(
          {inst, std::nullopt, std::nullopt, "oracle is not the least valid bound"});
  }
}

}  // namespace

Report run_suite(std::uint64_t seed, std::uint64_t trials,
                 const GeneratorLimits& limits,
                 const std::optional<std::string>& only) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Report aggregate;
  aggregate.reduction = only.value_or("suite");
  if (only) find_record(*only);  // fail fast on unknown names
  std::uint64_t index = 0;
  for (const ReductionRecord& record : registry()) {
    ++index;
    if (only && record.name != *only) continue;
    for (std::uint64_t t = 0; t < trials; ++t) {
      std::uint64_t s = mix_seed(seed, index * 0x10001 + t);
      ProblemInstance inst = gen_source(record, s, limits);
      Report part = check_reduction(record.name, inst, s);
      for (auto& f : part.failures) f.violated = record.name + ": " + f.violated;
      merge(aggregate, part);
    }
  }
  if (!only) property_trials(aggregate, seed, trials, limits);
  return aggregate;
}

}  // namespace tails
