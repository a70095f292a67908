#include "modgraph/rng.hpp"

#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

__extension__ typedef unsigned __int128 Wide;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(seeded(seed, stream)) {}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("empty range");
  // Lemire's multiply-shift with rejection.
  Wide m = static_cast<Wide>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<Wide>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

BigInt RngStream::below(const BigInt& bound) {
  if (sgn(bound) <= 0) throw ContractViolation("empty range");
  if (bound.fits_ulong_p()) {
    return BigInt(static_cast<unsigned long>(below(static_cast<std::uint64_t>(bound.get_ui()))));
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t count = (bits + 63) / 64;
  const std::size_t top = bits - 64 * (count - 1);
  const std::uint64_t mask = top == 64 ? UINT64_MAX : (std::uint64_t{1} << top) - 1;
  limbs_.resize(count);
  BigInt r;
  do {
    for (auto& limb : limbs_) limb = engine_();
    limbs_.back() &= mask;
    mpz_import(r.get_mpz_t(), count, -1, sizeof(std::uint64_t), 0, 0, limbs_.data());
  } while (r >= bound);
  return r;
}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool RngStream::bernoulli(double p) { return uniform() < p; }

}  // namespace modgraph
