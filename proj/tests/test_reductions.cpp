#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "tails/codes.hpp"
#include "tails/harness.hpp"
#include "tails/problems.hpp"
#include "tails/reductions.hpp"

using namespace tails;

namespace {

Coloring coloring(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period,
                  std::uint64_t k) {
  return Coloring{make_word(std::move(prefix), std::move(period)), k};
}

ProblemInstance lpo(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period) {
  return ProblemInstance{LpoInstance{make_word(std::move(prefix), std::move(period))}};
}

ProblemInstance minect(std::vector<std::uint64_t> prefix,
                       std::vector<std::uint64_t> period, std::uint64_t k) {
  return ProblemInstance{MinEctInstance{coloring(std::move(prefix), std::move(period), k)}};
}

EnumerationPresentation all_except(std::set<std::uint64_t> skip) {
  EnumerationPresentation e;
  e.tail = EnumerationPresentation::TailKind::AllExcept;
  for (std::uint64_t v : skip) e.skip.insert(Nat(v));
  return e;
}

std::set<CandidateSequence> as_set(const std::vector<CandidateSequence>& v) {
  return {v.begin(), v.end()};
}

// Round trip: forward, solve the target canonically, decode.
ProblemSolution decode_of(const std::string& name, const ProblemInstance& inst) {
  const ReductionRecord& r = find_record(name);
  ProblemInstance target = r.forward(inst);
  return r.backward(inst, solve(target));
}

}  // namespace

TEST_CASE("candidates enumerates non-repeating sequences shorter than the palette") {
  CHECK(candidates(1) == std::vector<CandidateSequence>{{}});
  CHECK(candidates(2) == std::vector<CandidateSequence>{{}, {0}, {1}});
  CHECK(candidates(3).size() == 10);  // 1 + 3 + 6 partial permutations
  CHECK(candidates(4).size() == 41);  // 1 + 4 + 12 + 24
  for (const CandidateSequence& s : candidates(4)) {
    CHECK(s.size() < 4);
    CHECK(std::set<std::uint64_t>(s.begin(), s.end()).size() == s.size());
    for (std::uint64_t c : s) CHECK(c < 4);
  }
}

TEST_CASE("first_witness finds the greedy earliest positions") {
  Coloring c = coloring({0, 1, 0}, {0}, 2);
  WitnessSearch w = first_witness(c, {1});
  REQUIRE(w.found);
  CHECK(w.positions == std::vector<std::uint64_t>{1});
  WitnessSearch w2 = first_witness(c, {1, 0});
  REQUIRE(w2.found);
  CHECK(w2.positions == std::vector<std::uint64_t>{1, 2});
  WitnessSearch w3 = first_witness(c, {0, 1});
  REQUIRE(w3.found);
  CHECK(w3.positions == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("stz_sets golden cases") {
  StzSets a = stz_sets(coloring({0, 1, 0}, {0}, 2));
  CHECK(as_set(a.s) == std::set<CandidateSequence>{{}, {0}, {1}});
  CHECK(as_set(a.t) == std::set<CandidateSequence>{{}, {1}});
  CHECK(as_set(a.t0) == std::set<CandidateSequence>{{1}});
  CHECK(a.witness.at({1}) == std::vector<std::uint64_t>{1});

  StzSets b = stz_sets(coloring({}, {0, 1}, 2));
  CHECK(as_set(b.t) == std::set<CandidateSequence>{{}});
  CHECK(as_set(b.t0) == std::set<CandidateSequence>{{}});

  StzSets c = stz_sets(coloring({}, {0}, 1));
  CHECK(as_set(c.t0) == std::set<CandidateSequence>{{}});
}

TEST_CASE("stz_sets regression: interleaved singleton chain") {
  // The maximal-in-T reading must keep both chains here; the minimum comes
  // from the shorter one.
  Coloring c = coloring({0, 4, 0, 3, 1, 0}, {3, 3, 2}, 5);
  StzSets s = stz_sets(c);
  CHECK(as_set(s.t0) == std::set<CandidateSequence>{{1, 0}, {4, 1, 0}});
  CHECK(bound_from_t0(c) == Nat(6));
  CHECK(min_ert_last_singleton(c) == Nat(6));
  CHECK(min_ert_oracle(c) == Nat(6));
}

TEST_CASE("minimum bound golden cases for both symbolic routes") {
  CHECK(bound_from_t0(coloring({0, 1, 0}, {0}, 2)) == Nat(2));
  CHECK(bound_from_t0(coloring({}, {0, 1}, 2)) == Nat(0));
  CHECK(bound_from_t0(coloring({1, 1}, {0}, 2)) == Nat(0));
  CHECK(min_ert_last_singleton(coloring({0, 1, 0}, {0}, 2)) == Nat(2));
  CHECK(min_ert_last_singleton(coloring({}, {0, 1}, 2)) == Nat(0));
  CHECK(min_ert_last_singleton(coloring({2, 0, 1, 0, 1}, {0, 1}, 3)) == Nat(1));
}

TEST_CASE("three-way minimum agreement on seeded colorings") {
  GeneratorLimits limits;
  for (std::uint64_t t = 0; t < 300; ++t) {
    ProblemInstance inst = gen_instance(ProblemId::MinErt, 0x3A11 + t, limits);
    const Coloring& c = std::get<MinErtInstance>(inst.node).coloring;
    Nat oracle = min_ert_oracle(c);
    CAPTURE(t);
    CHECK(bound_from_t0(c) == oracle);
    CHECK(min_ert_last_singleton(c) == oracle);
  }
}

TEST_CASE("parallel single-zero searches fold into one repeating-tail instance") {
  StarInstance star{ProblemId::Lpo,
                    {lpo({}, {1}), lpo({5, 0}, {3})}};
  const ReductionRecord& r = find_record("lpostar_to_ert");
  ProblemInstance target = r.forward(ProblemInstance{star});
  const ErtInstance& g = std::get<ErtInstance>(target.node);
  CHECK(g.coloring.palette == 3);
  CHECK(g.coloring.word.denotes_same_stream(make_word({2, 2, 2, 1}, {2})));
  CHECK(solve(target).as_number() == Nat(4));
  ProblemSolution back = r.backward(ProblemInstance{star}, ProblemSolution::number(Nat(4)));
  REQUIRE(back.as_tuple().size() == 2);
  CHECK(back.as_tuple()[0].as_bit() == 1);
  CHECK(back.as_tuple()[1].as_bit() == 0);

  StarInstance one{ProblemId::Lpo, {lpo({}, {0})}};
  ProblemInstance t1 = r.forward(ProblemInstance{one});
  CHECK(std::get<ErtInstance>(t1.node).coloring.word.denotes_same_stream(
      make_word({0}, {1})));
  CHECK(r.backward(ProblemInstance{one}, ProblemSolution::number(Nat(1)))
            .as_tuple()[0]
            .as_bit() == 0);

  StarInstance empty{ProblemId::Lpo, {}};
  ProblemInstance t2 = r.forward(ProblemInstance{empty});
  CHECK(solve(t2).as_number() == Nat(0));
  CHECK(r.backward(ProblemInstance{empty}, ProblemSolution::number(Nat(0)))
            .as_tuple()
            .empty());
}

TEST_CASE("repeating-tail bound recovered from parallel threshold searches") {
  const ReductionRecord& r = find_record("ert_to_lpostar");
  ProblemInstance a{ErtInstance{coloring({0, 1, 0}, {0}, 2)}};
  CHECK(decode_of("ert_to_lpostar", a).as_number() == Nat(2));
  ProblemInstance b{ErtInstance{coloring({}, {0, 1}, 2)}};
  CHECK(decode_of("ert_to_lpostar", b).as_number() == Nat(0));
  ProblemInstance c{ErtInstance{coloring({}, {0}, 1)}};
  ProblemInstance star = r.forward(c);
  CHECK(std::get<StarInstance>(star.node).items.empty());
  CHECK(decode_of("ert_to_lpostar", c).as_number() == Nat(0));
}

TEST_CASE("constant-palette bound via one choice per color") {
  const ReductionRecord& r = find_record("ect_to_tcn_star");
  ProblemInstance src{EctInstance{coloring({1, 1}, {0}, 2)}};
  ProblemInstance target = r.forward(src);
  const StarInstance& star = std::get<StarInstance>(target.node);
  REQUIRE(star.items.size() == 2);
  CHECK(target_set(std::get<TcnInstance>(star.items[0].node).enumeration).empty());
  TargetSet a1 = target_set(std::get<TcnInstance>(star.items[1].node).enumeration);
  CHECK(a1.cofinite);
  CHECK_FALSE(a1.contains(Nat(0)));
  CHECK_FALSE(a1.contains(Nat(1)));
  CHECK(a1.contains(Nat(2)));
  ProblemSolution back = r.backward(
      src, ProblemSolution::tuple({ProblemSolution::number(Nat(0)),
                                   ProblemSolution::number(Nat(2))}));
  CHECK(back.as_number() == Nat(3));
  CHECK(ect_validate(coloring({1, 1}, {0}, 2), Nat(3)));

  ProblemInstance trivial{EctInstance{coloring({}, {0}, 1)}};
  CHECK(r.backward(trivial,
                   ProblemSolution::tuple({ProblemSolution::number(Nat(5))}))
            .as_number() == Nat(6));

  ProblemInstance third{EctInstance{coloring({0}, {1}, 2)}};
  ProblemSolution back3 = r.backward(
      third, ProblemSolution::tuple({ProblemSolution::number(Nat(1)),
                                     ProblemSolution::number(Nat(0))}));
  CHECK(back3.as_number() == Nat(2));
  CHECK(ect_validate(coloring({0}, {1}, 2), Nat(2)));
}

TEST_CASE("parallel choices answered through one constant-palette instance") {
  const ReductionRecord& r = find_record("tcn_star_to_ect");
  StarInstance star{ProblemId::Tcn, {ProblemInstance{TcnInstance{all_except({4})}}}};
  ProblemInstance src{star};
  ProblemInstance target = r.forward(src);
  const EctInstance& e = std::get<EctInstance>(target.node);
  CHECK(e.coloring.palette == 2);
  CHECK(e.coloring.word.denotes_same_stream(
      make_word({0, 1, 0, 1, 0, 1, 0, 1}, {0})));
  CHECK(solve(target).as_number() == Nat(8));
  ProblemSolution back = r.backward(src, ProblemSolution::number(Nat(8)));
  REQUIRE(back.as_tuple().size() == 1);
  CHECK(back.as_tuple()[0].as_number() == Nat(4));

  StarInstance empty_target{ProblemId::Tcn,
                            {ProblemInstance{TcnInstance{all_except({})}}}};
  ProblemInstance src2{empty_target};
  ProblemSolution back2 = r.backward(src2, solve(r.forward(src2)));
  CHECK(validate(src2, back2));  // empty target accepts anything

  StarInstance none{ProblemId::Tcn, {}};
  ProblemInstance src3{none};
  CHECK(r.backward(src3, solve(r.forward(src3))).as_tuple().empty());
}

TEST_CASE("single-zero search answered by one choice, solution-blind decode") {
  const ReductionRecord& r = find_record("lpo_to_tcn_strong");
  CHECK(r.strength == Strength::Strong);
  CHECK(decode_of("lpo_to_tcn_strong", lpo({}, {7})).as_bit() == 1);
  CHECK(decode_of("lpo_to_tcn_strong", lpo({1, 0}, {1})).as_bit() == 0);
  CHECK(decode_of("lpo_to_tcn_strong", lpo({}, {0})).as_bit() == 0);
  // The middle case goes through target value 2 = position of the zero + 1.
  ProblemInstance mid = r.forward(lpo({1, 0}, {1}));
  CHECK(solve(mid).as_number() == Nat(2));
}

TEST_CASE("palette minimum via last occurrences and recurrence bits") {
  CHECK(decode_of("minect_to_tcn_isinf", minect({1, 1}, {0}, 2)).as_number() == Nat(2));
  CHECK(decode_of("minect_to_tcn_isinf", minect({}, {0, 1}, 2)).as_number() == Nat(0));
  CHECK(decode_of("minect_to_tcn_isinf", minect({2}, {0, 1}, 3)).as_number() == Nat(1));
}

TEST_CASE("palette minimum decodes are exact on seeded instances") {
  GeneratorLimits limits;
  for (std::uint64_t t = 0; t < 200; ++t) {
    ProblemInstance inst = gen_instance(ProblemId::MinEct, 0xE8AC7 + t, limits);
    const Coloring& c = std::get<MinEctInstance>(inst.node).coloring;
    CAPTURE(t);
    CHECK(decode_of("minect_to_tcn_isinf", inst).as_number() == min_ect_oracle(c));
    CHECK(decode_of("minect_to_csharpmax", inst).as_number() == min_ect_oracle(c));
  }
}

TEST_CASE("infinitely-many-ones answered through an interleaved palette minimum") {
  const ReductionRecord& r = find_record("isinf_to_minect");
  ProblemInstance a{IsInfiniteInstance{make_word({}, {0})}};
  ProblemInstance ta = r.forward(a);
  CHECK(std::get<MinEctInstance>(ta.node).coloring.word.denotes_same_stream(
      make_word({1}, {0})));
  CHECK(r.backward(a, solve(ta)).as_bit() == 0);

  ProblemInstance b{IsInfiniteInstance{make_word({}, {1})}};
  ProblemInstance tb = r.forward(b);
  CHECK(std::get<MinEctInstance>(tb.node).coloring.word.denotes_same_stream(
      make_word({1}, {0, 1})));
  CHECK(solve(tb).as_number() == Nat(0));
  CHECK(r.backward(b, solve(tb)).as_bit() == 1);

  ProblemInstance c{IsInfiniteInstance{make_word({1}, {0})}};
  ProblemInstance tc = r.forward(c);
  CHECK(std::get<MinEctInstance>(tc.node).coloring.word.denotes_same_stream(
      make_word({1, 0, 1}, {0})));
  CHECK(solve(tc).as_number() == Nat(3));
  CHECK(r.backward(c, solve(tc)).as_bit() == 0);
}

TEST_CASE("pair of palette minima through one instance via fresh head colors") {
  const ReductionRecord& r = find_record("minect_pair");

  ProductInstance p1{{minect({1}, {0}, 2), minect({}, {0}, 1)}};
  ProblemInstance s1{p1};
  ProblemInstance t1 = r.forward(s1);
  CHECK(solve(t1).as_number() == Nat(1));
  ProblemSolution b1 = r.backward(s1, solve(t1));
  CHECK(b1.as_tuple()[0].as_number() == Nat(1));
  CHECK(b1.as_tuple()[1].as_number() == Nat(0));

  ProductInstance p2{{minect({}, {0}, 1), minect({}, {0}, 1)}};
  ProblemInstance s2{p2};
  ProblemInstance t2 = r.forward(s2);
  CHECK(solve(t2).as_number() == Nat(1));
  ProblemSolution b2 = r.backward(s2, solve(t2));
  CHECK(b2.as_tuple()[0].as_number() == Nat(0));
  CHECK(b2.as_tuple()[1].as_number() == Nat(0));

  ProductInstance p3{{minect({0, 1, 0}, {0}, 2), minect({}, {1}, 2)}};
  ProblemInstance s3{p3};
  ProblemInstance t3 = r.forward(s3);
  CHECK(solve(t3).as_number() == Nat(2));
  ProblemSolution b3 = r.backward(s3, solve(t3));
  CHECK(b3.as_tuple()[0].as_number() == Nat(2));
  CHECK(b3.as_tuple()[1].as_number() == Nat(0));
}

TEST_CASE("star of palette minima folds to one instance") {
  const ReductionRecord& r = find_record("minect_star_fold");
  StarInstance empty{ProblemId::MinEct, {}};
  ProblemInstance s0{empty};
  CHECK(r.backward(s0, solve(r.forward(s0))).as_tuple().empty());

  StarInstance three{ProblemId::MinEct,
                     {minect({1}, {0}, 2), minect({}, {0}, 1), minect({0, 1, 0}, {0}, 2)}};
  ProblemInstance s{three};
  ProblemSolution back = r.backward(s, solve(r.forward(s)));
  REQUIRE(back.as_tuple().size() == 3);
  CHECK(back.as_tuple()[0].as_number() == Nat(1));
  CHECK(back.as_tuple()[1].as_number() == Nat(0));
  CHECK(back.as_tuple()[2].as_number() == Nat(2));
}

TEST_CASE("palette minimum via the largest last-occurrence family") {
  CHECK(decode_of("minect_to_csharpmax", minect({1, 1}, {0}, 2)).as_number() == Nat(2));
  CHECK(decode_of("minect_to_csharpmax", minect({}, {0}, 1)).as_number() == Nat(0));
  CHECK(decode_of("minect_to_csharpmax", minect({2, 1}, {0}, 3)).as_number() == Nat(2));
}

TEST_CASE("ones-count gadget golden cases") {
  TargetSet two = target_set(ones_count_gadget(make_word({1, 1}, {0})));
  REQUIRE(two.elems.size() == 1);
  CHECK_FALSE(two.cofinite);
  CHECK(cantor_unpair(*two.elems.begin()).first == Nat(2));

  CHECK(target_set(ones_count_gadget(make_word({}, {1}))).empty());

  TargetSet zero = target_set(ones_count_gadget(make_word({}, {0})));
  REQUIRE(zero.elems.size() == 1);
  CHECK(cantor_unpair(*zero.elems.begin()).first == Nat(0));
}

TEST_CASE("ones-count gadget counts exactly on seeded binary words") {
  GeneratorLimits limits;
  for (std::uint64_t t = 0; t < 200; ++t) {
    ProblemInstance inst = gen_instance(ProblemId::IsInfinite, 0x10E5 + t, limits);
    Word p = std::get<IsInfiniteInstance>(inst.node).word;
    TargetSet a = target_set(ones_count_gadget(p));
    Word canon = p.canonicalize();
    OccurrenceInfo ones = canon.occurrence_info(sym(1));
    if (ones.infinite) {
      CHECK(a.empty());
    } else {
      REQUIRE(a.elems.size() == 1);
      CHECK(cantor_unpair(*a.elems.begin()).first == Nat(ones.positions.size()));
    }
  }
}

TEST_CASE("largest family member recovered from ones counts") {
  // Family {emptyset, {1}, {3,5}} as codes 0, 2, 40 with size bound 2.
  CSharpMaxInstance f{FiniteSetFamilyInstance{2, all_except({0, 2, 40})}};
  ProblemInstance src{f};
  CHECK(decode_of("csharpmax_to_tcn_isinf", src).as_set() ==
        std::set<Nat>{Nat(3), Nat(5)});

  CSharpMaxInstance only_empty{FiniteSetFamilyInstance{1, all_except({0})}};
  CHECK(decode_of("csharpmax_to_tcn_isinf", ProblemInstance{only_empty}).as_set().empty());

  CSharpMaxInstance single{FiniteSetFamilyInstance{1, all_except({0, 4})}};
  CHECK(decode_of("csharpmax_to_tcn_isinf", ProblemInstance{single}).as_set() ==
        std::set<Nat>{Nat(2)});
}

TEST_CASE("multiplicity reduces to plain repetition by counting occurrences mod j") {
  const ReductionRecord& r = find_record("ertj_to_ert");

  ProblemInstance a{ErtjInstance{coloring({}, {0, 1}, 2), 2}};
  ProblemInstance ta = r.forward(a);
  CHECK(std::get<ErtInstance>(ta.node).coloring.palette == 4);
  CHECK(r.backward(a, solve(ta)).as_number() == Nat(0));

  ProblemInstance b{ErtjInstance{coloring({1, 1, 1}, {0}, 2), 3}};
  ProblemInstance tb = r.forward(b);
  CHECK(std::get<ErtInstance>(tb.node).coloring.palette == 6);
  CHECK(solve(tb).as_number() == Nat(3));
  Nat decoded = r.backward(b, solve(tb)).as_number();
  CHECK(decoded == Nat(3));
  CHECK(ertj_validate(coloring({1, 1, 1}, {0}, 2), 3, decoded));
  CHECK(ertj_validate(coloring({1, 1, 1}, {0}, 2), 3, Nat(0)));

  ProblemInstance c{ErtjInstance{coloring({}, {0}, 1), 5}};
  CHECK(std::get<ErtInstance>(r.forward(c).node).coloring.palette == 5);
  CHECK(r.backward(c, solve(r.forward(c))).as_number() == Nat(0));
}

TEST_CASE("registry exposes the twelve stable names with declared endpoints") {
  std::vector<std::string> expected = {
      "lpostar_to_ert",       "ert_to_lpostar",   "ect_to_tcn_star",
      "tcn_star_to_ect",      "lpo_to_tcn_strong", "minect_to_tcn_isinf",
      "isinf_to_minect",      "minect_pair",       "minect_star_fold",
      "minect_to_csharpmax",  "csharpmax_to_tcn_isinf", "ertj_to_ert"};
  REQUIRE(registry().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(registry()[i].name == expected[i]);
  CHECK_THROWS_AS(find_record("nope"), UnknownReduction);
}
