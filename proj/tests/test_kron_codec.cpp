#include <doctest.h>

#include <cmath>
#include <random>

#include "kronrod/error.hpp"
#include "kronrod/kron_codec.hpp"
#include "kronrod/tensor.hpp"

using namespace kronrod;

namespace {

KronConfig uniform_psk(std::size_t n, std::size_t l, unsigned m, bool pilot = true) {
  return KronConfig(std::vector<std::size_t>(n, l), std::vector<ConstellationSet>(n, make_psk(m)),
                    pilot);
}

Bits random_bits(std::mt19937_64& g, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(g() & 1u);
  return b;
}

// Sum of L_n log2 M_n, computed from integers only.
std::size_t rate_numerator(const std::vector<std::size_t>& lengths,
                           const std::vector<unsigned>& orders) {
  std::size_t s = 0;
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    unsigned k = 0;
    while ((1u << k) < orders[n]) ++k;
    s += lengths[n] * k;
  }
  return s;
}

}  // namespace

TEST_CASE("payload bits and rates for the half-rate 4-PSK configuration") {
  CHECK(payload_bits_per_block(uniform_psk(4, 2, 4, false)) == 16);
  CHECK(payload_bits_per_block(uniform_psk(4, 2, 4, true)) == 8);
  const auto cfg = uniform_psk(4, 2, 4);
  CHECK(bit_rate(cfg) == 1.0);
  CHECK(code_rate(cfg) == 0.5);
  CHECK(effective_bit_rate(cfg) == 0.5);
  CHECK(code_rate(uniform_psk(2, 2, 4)) == 1.0);

  const KronConfig mixed({2, 2, 2}, {make_psk(2), make_psk(4), make_psk(8)});
  CHECK(bit_rate(mixed) == 1.5);

  // All-BPSK: both schemes give the same rate.
  const auto s1 = make_kron_config({Scheme::one, 2, {}}, {2, 2, 2, 2}, std::nullopt);
  const auto s2 = make_kron_config({Scheme::two, 2, {2}}, {2, 2, 2, 2}, std::nullopt);
  CHECK(bit_rate(s1) == bit_rate(s2));
}

TEST_CASE("code rate never exceeds one") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t l = 2; l <= 4; ++l) CHECK(code_rate(uniform_psk(n, l, 2)) <= 1.0);
}

TEST_CASE("uniform lengths: rate equals N l log2 M / l^N") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t l = 2; l <= 4; ++l)
      for (unsigned m : {2u, 4u, 8u}) {
        const double k = std::log2(double(m));
        CHECK(bit_rate(uniform_psk(n, l, m)) ==
              doctest::Approx(double(n * l) * k / std::pow(double(l), double(n))));
      }
}

TEST_CASE("scheme rate ordering over a brute-force grid") {
  // Every scheme 2 factor choice in {2, .., M} against binary factors.
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t l = 2; l <= 4; ++l) {
      const std::vector<std::size_t> lengths(n, l);
      for (unsigned m : {2u, 4u, 8u}) {
        const unsigned k = m == 2 ? 1 : (m == 4 ? 2 : 3);
        const std::size_t s1 = rate_numerator(lengths, std::vector<unsigned>(n, 2));
        std::vector<unsigned> orders(n, 2);
        while (true) {
          const std::size_t s2 = rate_numerator(lengths, orders);
          CHECK(s1 <= s2);
          CHECK(s2 <= k * s1);
          const KronConfig cfg(lengths, scheme2_sets(orders), true, Scheme::two);
          CHECK(bit_rate(cfg) * double(cfg.block_length()) == double(s2));
          std::size_t i = 0;
          while (i < n && orders[i] == m) orders[i++] = 2;
          if (i == n) break;
          orders[i] *= 2;
        }
        // All factors M-PSK: the upper bound is met.
        CHECK(rate_numerator(lengths, std::vector<unsigned>(n, m)) == k * s1);
      }
    }
  }
}

TEST_CASE("encode hand example") {
  SymbolBlock b;
  b.branch_symbols = {{1.0, -1.0}, {1.0, cdouble(0, 1)}};
  const CVector x = encode(b);
  const CVector expect{1.0, -1.0, cdouble(0, 1), cdouble(0, -1)};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - expect[i]) < 1e-15);
  SymbolBlock ones;
  ones.branch_symbols = {CVector(2, 1.0), CVector(3, 1.0)};
  for (auto z : encode(ones)) CHECK(z == 1.0);
}

TEST_CASE("modulation, pilots, demapping") {
  const auto cfg = make_kron_config({Scheme::one, 8, {}}, {2, 3, 4}, std::nullopt);
  const Bits zeros(payload_bits_per_block(cfg), 0);
  const auto blk = modulate_branches(zeros, cfg);
  for (const auto& s : blk.branch_symbols)
    for (auto z : s) CHECK(z == 1.0);
  CHECK(demap_branches(blk, cfg) == zeros);
  CHECK_THROWS_AS(modulate_branches(Bits(3, 0), cfg), Error);

  // Flipping one payload bit changes one symbol of one branch.
  const auto cfg4 = uniform_psk(3, 3, 4);
  std::mt19937_64 g(1);
  const Bits b = random_bits(g, payload_bits_per_block(cfg4));
  const auto base = modulate_branches(b, cfg4);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Bits f = b;
    f[i] ^= 1u;
    const auto m = modulate_branches(f, cfg4);
    int changed = 0;
    for (std::size_t n = 0; n < 3; ++n)
      for (std::size_t k = 0; k < 3; ++k) changed += m.branch_symbols[n][k] != base.branch_symbols[n][k];
    CHECK(changed == 1);
  }

  SymbolBlock bad = base;
  bad.branch_symbols[1][1] = cdouble(0.6, 0.8);
  try {
    demap_branches(bad, cfg4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_symbol);
  }
}

TEST_CASE("round trip, constant modulus, membership in the expansion") {
  std::mt19937_64 g(42);
  const std::vector<KronConfig> cfgs{
      uniform_psk(4, 2, 4),
      make_kron_config({Scheme::one, 4, {}}, {2, 2, 2, 2}, std::vector<std::size_t>{0, 0, 0, 1}),
      make_kron_config({Scheme::two, 8, {2, 4, 8}}, {2, 3, 2}, std::nullopt),
      make_kron_config({Scheme::one, 8, {}}, {4, 4}, std::vector<std::size_t>{1, 2}, false)};
  for (const auto& cfg : cfgs) {
    std::vector<ConstellationSet> sets(cfg.sets().begin(), cfg.sets().end());
    const auto expansion = kron_expand(sets);
    for (int t = 0; t < 2500; ++t) {
      const Bits b = random_bits(g, payload_bits_per_block(cfg));
      auto blk = modulate_branches(b, cfg);
      CHECK(demap_branches(blk, cfg) == b);
      const CVector x = encode(blk);
      CHECK(x.size() == cfg.block_length());
      CHECK(std::abs(norm2(x) - double(cfg.block_length())) < 1e-9);
      if (t < 50) {
        for (auto z : x) CHECK(expansion.find(z) < expansion.size());
      }
    }
  }
  // Exhaustive on a tiny configuration: 2^4 strings.
  const auto tiny = uniform_psk(2, 3, 2);
  REQUIRE(payload_bits_per_block(tiny) == 4);
  for (unsigned v = 0; v < 16; ++v) {
    Bits b(4);
    for (int i = 0; i < 4; ++i) b[i] = (v >> i) & 1u;
    CHECK(demap_branches(modulate_branches(b, tiny), tiny) == b);
  }
}

TEST_CASE("configuration invariants and default assignment") {
  CHECK_THROWS_AS(uniform_psk(1, 4, 4), Error);
  CHECK_THROWS_AS(KronConfig({2, 1}, {make_psk(2), make_psk(2)}), Error);
  CHECK_THROWS_AS(KronConfig({2, 2}, {make_psk(2)}), Error);
  CHECK(default_assignment(4, 2) == std::vector<std::size_t>{0, 0, 0, 1});
  CHECK(default_assignment(3, 3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(default_assignment(5, 3) == std::vector<std::size_t>{0, 0, 0, 1, 2});
}
