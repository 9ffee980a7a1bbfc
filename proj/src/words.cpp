#include "tails/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace tails {

const Nat& Symbol::value() const {
  if (!value_.has_value()) throw std::logic_error("PAUSE has no numeric value");
  return *value_;
}

Word::Word(std::vector<Symbol> prefix, std::vector<Symbol> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("period must be nonempty");
}

Symbol Word::at(std::uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

std::vector<Symbol> Word::stream_prefix(std::uint64_t len) const {
  std::vector<Symbol> out;
  out.reserve(len);
  for (std::uint64_t n = 0; n < len; ++n) out.push_back(at(n));
  return out;
}

bool Word::denotes_same_stream(const Word& other) const {
  std::uint64_t horizon = std::max(prefix_.size(), other.prefix_.size()) +
                          period_.size() * other.period_.size();
  for (std::uint64_t n = 0; n < horizon; ++n)
    if (at(n) != other.at(n)) return false;
  return true;
}

Word Word::canonicalize() const {
  // The minimal eventual period divides the presented period length.
  std::size_t q = period_.size();
  for (std::size_t d = 1; d < period_.size(); ++d) {
    if (period_.size() % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < period_.size() && ok; ++i)
      if (period_[i] != period_[i % d]) ok = false;
    if (ok) {
      q = d;
      break;
    }
  }
  // Absorb the longest prefix suffix that already follows that period, read
  // backwards from the tail alignment.
  std::size_t absorbed = 0;
  while (absorbed < prefix_.size()) {
    const Symbol& expect = period_[(q - ((absorbed + 1) % q)) % q];
    if (prefix_[prefix_.size() - 1 - absorbed] != expect) break;
    ++absorbed;
  }
  std::size_t p = prefix_.size() - absorbed;
  std::vector<Symbol> new_prefix(prefix_.begin(), prefix_.begin() + p);
  std::vector<Symbol> new_period;
  new_period.reserve(q);
  for (std::size_t j = 0; j < q; ++j)
    new_period.push_back(period_[(j + q - (absorbed % q)) % q]);
  return Word(std::move(new_prefix), std::move(new_period));
}

OccurrenceInfo Word::occurrence_info(const Symbol& v) const {
  OccurrenceInfo info;
  bool in_period = std::find(period_.begin(), period_.end(), v) != period_.end();
  if (in_period) {
    info.infinite = true;
    std::uint64_t horizon = prefix_.size() + period_.size();
    for (std::uint64_t n = 0; n < horizon; ++n) {
      if (at(n) == v) {
        info.first = n;
        break;
      }
    }
    return info;
  }
  info.infinite = false;
  for (std::uint64_t n = 0; n < prefix_.size(); ++n)
    if (prefix_[n] == v) info.positions.push_back(n);
  return info;
}

std::set<Symbol> Word::infinite_values() const {
  return std::set<Symbol>(period_.begin(), period_.end());
}

bool Word::contains_pause() const {
  for (const auto& s : prefix_)
    if (s.is_pause()) return true;
  for (const auto& s : period_)
    if (s.is_pause()) return true;
  return false;
}

Word make_word(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period) {
  std::vector<Symbol> p, q;
  for (auto v : prefix) p.push_back(sym(v));
  for (auto v : period) q.push_back(sym(v));
  return Word(std::move(p), std::move(q));
}

}  // namespace tails
