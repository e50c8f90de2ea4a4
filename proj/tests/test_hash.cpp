#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "scgraph/hash.hpp"

using scg::hash64;

TEST_CASE("hash64 matches frozen vectors") {
  CHECK(hash64(0) == 0xe220a8397b1dcdafULL);
  CHECK(hash64(1) == 0x910a2dec89025cc1ULL);
  CHECK(hash64(2) == 0x975835de1c9756ceULL);
  CHECK(hash64(42) == 0xbdd732262feb6e95ULL);
  CHECK(hash64(0xDEADBEEFULL) == 0x4adfb90f68c9eb9bULL);
  CHECK(hash64(0xFFFFFFFFFFFFFFFFULL) == 0xe4d971771b652c20ULL);
  CHECK(hash64(123456789ULL) == 0x223c74d93deb7679ULL);
}

TEST_CASE("hash64 is deterministic across calls") {
  for (std::uint64_t x : {0ULL, 7ULL, 1ULL << 40, 0x123456789abcdefULL}) {
    CHECK(hash64(x) == hash64(x));
  }
}

TEST_CASE("hash64 has no collisions over a million consecutive inputs") {
  std::vector<std::uint64_t> out;
  out.reserve(1000000);
  for (std::uint64_t i = 0; i < 1000000; ++i) out.push_back(hash64(i));
  std::sort(out.begin(), out.end());
  CHECK(std::adjacent_find(out.begin(), out.end()) == out.end());
}

TEST_CASE("hash_counter derives distinct streams per seed") {
  CHECK(scg::hash_counter(1, 0) != scg::hash_counter(2, 0));
  CHECK(scg::hash_counter(1, 0) != scg::hash_counter(1, 1));
  CHECK(scg::hash_counter(5, 9) == scg::hash_counter(5, 9));
}

TEST_CASE("hash_unit lands in [0, 1) and looks uniform") {
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = scg::hash_unit(11, static_cast<std::uint64_t>(i));
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == Catch::Approx(0.5).margin(0.01));
}
