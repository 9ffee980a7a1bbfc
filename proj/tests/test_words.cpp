#include <cstdint>
#include <vector>

#include "doctest.h"
#include "tails/words.hpp"

using namespace tails;

namespace {

// Brute-force canonical form: find the least eventual period length d, then
// the least prefix length r, by direct stream comparison. Slow but obviously
// correct; used as the oracle for Word::canonicalize.
Word brute_canonical(const Word& w) {
  std::uint64_t p = w.prefix().size();
  std::uint64_t q = w.period().size();
  for (std::uint64_t d = 1; d <= q; ++d) {
    // Eventually d-periodic iff the shift-by-d check holds from |prefix| on;
    // beyond the prefix the stream is q-periodic, so q*d positions cover
    // every residue pattern.
    std::uint64_t horizon = p + q * d + d;
    bool periodic = true;
    for (std::uint64_t n = p; n + d < horizon && periodic; ++n)
      periodic = w.at(n) == w.at(n + d);
    if (!periodic) continue;
    std::uint64_t r = p;
    while (r > 0 && w.at(r - 1) == w.at(r - 1 + d)) --r;
    std::vector<Symbol> prefix, period;
    for (std::uint64_t n = 0; n < r; ++n) prefix.push_back(w.at(n));
    for (std::uint64_t n = r; n < r + d; ++n) period.push_back(w.at(n));
    return Word(prefix, period);
  }
  return w;
}

std::vector<Word> exhaustive_binary_words(std::uint64_t max_prefix,
                                          std::uint64_t max_period) {
  std::vector<Word> out;
  for (std::uint64_t pl = 0; pl <= max_prefix; ++pl)
    for (std::uint64_t ql = 1; ql <= max_period; ++ql)
      for (std::uint64_t bits = 0; bits < (1ull << (pl + ql)); ++bits) {
        std::vector<std::uint64_t> prefix, period;
        for (std::uint64_t i = 0; i < pl; ++i) prefix.push_back((bits >> i) & 1);
        for (std::uint64_t i = 0; i < ql; ++i) period.push_back((bits >> (pl + i)) & 1);
        out.push_back(make_word(prefix, period));
      }
  return out;
}

}  // namespace

TEST_CASE("indexing reads the prefix then wraps around the period") {
  Word w = make_word({1, 2}, {3});
  CHECK(w.at(0) == sym(1));
  CHECK(w.at(1) == sym(2));
  CHECK(w.at(5) == sym(3));
  CHECK(make_word({}, {0}).at(1000000) == sym(0));
}

TEST_CASE("stream_prefix lists the first L symbols") {
  CHECK(make_word({1}, {2}).stream_prefix(4) ==
        std::vector<Symbol>{sym(1), sym(2), sym(2), sym(2)});
  CHECK(make_word({1}, {2}).stream_prefix(0).empty());
  CHECK(make_word({}, {0, 1}).stream_prefix(3) ==
        std::vector<Symbol>{sym(0), sym(1), sym(0)});
}

TEST_CASE("canonicalize golden cases") {
  CHECK(make_word({0}, {0, 0}).canonicalize() == make_word({}, {0}));
  CHECK(make_word({1}, {2, 3, 2, 3}).canonicalize() == make_word({1}, {2, 3}));
  CHECK(make_word({1, 2}, {2}).canonicalize() == make_word({1}, {2}));
}

TEST_CASE("canonicalize matches the brute-force minimal presentation") {
  for (const Word& w : exhaustive_binary_words(3, 3)) {
    Word fast = w.canonicalize();
    Word slow = brute_canonical(w);
    CAPTURE(w.prefix().size());
    CAPTURE(w.period().size());
    CHECK(fast == slow);
  }
  // A few larger alphabets, exhaustive over base-3 digits.
  for (std::uint64_t code = 0; code < 3 * 3 * 3 * 3 * 3; ++code) {
    std::uint64_t c = code;
    std::vector<std::uint64_t> digits;
    for (int i = 0; i < 5; ++i) {
      digits.push_back(c % 3);
      c /= 3;
    }
    Word w = make_word({digits[0], digits[1]}, {digits[2], digits[3], digits[4]});
    CHECK(w.canonicalize() == brute_canonical(w));
  }
}

TEST_CASE("canonicalize is idempotent and preserves the stream") {
  for (const Word& w : exhaustive_binary_words(3, 3)) {
    Word c = w.canonicalize();
    CHECK(c.canonicalize() == c);
    std::uint64_t L = 4 * (w.prefix().size() + w.period().size());
    CHECK(w.stream_prefix(L) == c.stream_prefix(L));
    CHECK(w.denotes_same_stream(c));
  }
}

TEST_CASE("occurrence_info golden cases") {
  Word w = make_word({1, 1}, {0}).canonicalize();
  OccurrenceInfo one = w.occurrence_info(sym(1));
  CHECK_FALSE(one.infinite);
  CHECK(one.positions == std::vector<std::uint64_t>{0, 1});
  OccurrenceInfo zero = w.occurrence_info(sym(0));
  CHECK(zero.infinite);
  CHECK(zero.first == 2);
  OccurrenceInfo alt = make_word({}, {0, 1}).occurrence_info(sym(1));
  CHECK(alt.infinite);
  CHECK(alt.first == 1);
}

TEST_CASE("occurrence_info and infinite_values are sound on small words") {
  for (const Word& raw : exhaustive_binary_words(3, 2)) {
    Word w = raw.canonicalize();
    std::uint64_t horizon = w.prefix().size() + w.period().size();
    for (std::uint64_t v = 0; v < 2; ++v) {
      OccurrenceInfo info = w.occurrence_info(sym(v));
      std::vector<std::uint64_t> seen;
      for (std::uint64_t n = 0; n < horizon; ++n)
        if (w.at(n) == sym(v)) seen.push_back(n);
      bool in_period = false;
      for (const Symbol& s : w.period()) in_period = in_period || s == sym(v);
      CHECK(info.infinite == in_period);
      CHECK(info.infinite == (w.infinite_values().count(sym(v)) > 0));
      if (info.infinite) {
        CHECK(w.at(info.first) == sym(v));
        for (std::uint64_t n = 0; n < info.first; ++n) CHECK(w.at(n) != sym(v));
        // Recurs within every period-length window.
        for (std::uint64_t n = info.first; n < horizon; ++n) {
          bool again = false;
          for (std::uint64_t m = n + 1; m <= n + w.period().size() + horizon; ++m)
            again = again || w.at(m) == sym(v);
          CHECK(again);
        }
      } else {
        CHECK(info.positions == seen);
        for (std::uint64_t pos : info.positions) CHECK(pos < w.prefix().size());
      }
    }
  }
}

TEST_CASE("infinite_values golden cases") {
  CHECK(make_word({1, 1}, {0}).infinite_values() == std::set<Symbol>{sym(0)});
  CHECK(make_word({}, {0, 1}).infinite_values() ==
        std::set<Symbol>{sym(0), sym(1)});
  CHECK(make_word({5}, {5}).infinite_values() == std::set<Symbol>{sym(5)});
}

TEST_CASE("pause symbols sort first and are flagged") {
  Word w({Symbol::pause(), sym(3)}, {Symbol::pause()});
  CHECK(w.contains_pause());
  CHECK(Symbol::pause() < sym(0));
  CHECK_FALSE(make_word({1}, {0}).contains_pause());
}

TEST_CASE("denotes_same_stream distinguishes different streams") {
  CHECK(make_word({0, 1}, {0, 1}).denotes_same_stream(make_word({}, {0, 1})));
  CHECK_FALSE(make_word({1}, {0}).denotes_same_stream(make_word({}, {0})));
}
