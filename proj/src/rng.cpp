#include "fpl/rng.hpp"

#include "fpl/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fpl {

namespace {

std::mt19937_64 keyed_engine(StreamTag tag, std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * key.size() + 2);
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(static_cast<std::uint64_t>(tag));
  for (auto k : key) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

KeyedStream::KeyedStream(StreamTag tag, std::initializer_list<std::uint64_t> key)
    : engine_(keyed_engine(tag, key)) {}

std::uint64_t KeyedStream::below(std::uint64_t n) {
  if (n == 0) throw ArgumentError("below(0) is empty");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double KeyedStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace fpl
