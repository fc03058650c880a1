#include <random>

#include "doctest.h"
#include "eqw/error.hpp"
#include "eqw/gf2.hpp"
#include "oracles.hpp"

using namespace eqw;

namespace {

// Boundary of the 4-cycle: edge i joins vertices i and i+1 mod 4.
BitMatrix square_boundary() {
  BitMatrix d(4, 4);
  for (std::size_t e = 0; e < 4; ++e) {
    d.set(e, e);
    d.set(e, (e + 1) % 4);
  }
  return d;
}

}  // namespace

TEST_CASE("rank: trivial cases") {
  CHECK(rank(BitMatrix::identity(3)) == 3);
  BitMatrix ones(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.set(i, j);
  CHECK(rank(ones) == 1);
  CHECK(rank(BitMatrix(0, 5)) == 0);
}

TEST_CASE("rank agrees with the naive elimination oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> sz(0, 40);
    const auto m = BitMatrix::random(sz(rng), sz(rng), rng);
    CHECK(rank(m) == oracle::naive_rank(m));
  }
  const auto m = BitMatrix::random(20, 30, rng);
  CHECK(rank(m) == oracle::naive_rank(m));
}

TEST_CASE("kernel") {
  CHECK(kernel(BitMatrix(2, 2)).dim() == 2);
  CHECK(kernel(BitMatrix::identity(4)).dim() == 0);
  // Enumerate all 16 edge vectors of the square to find cycles.
  const BitMatrix d = square_boundary();
  std::size_t cycles = 0;
  for (const auto& v : oracle::all_vectors(4))
    if (oracle::apply(v, d).none()) ++cycles;
  const Subspace k = kernel(d);
  CHECK((std::size_t{1} << k.dim()) == cycles);
  CHECK(k.dim() == 1);
  CHECK(k.basis().row(0).to_string() == "1111");
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> sz(0, 70);
    const auto m = BitMatrix::random(sz(rng), sz(rng), rng);
    const Subspace k = kernel(m);
    CHECK(rank(m) + k.dim() == m.rows());
    CHECK((k.basis() * m).is_zero());
  }
}

TEST_CASE("preimage") {
  std::mt19937_64 rng(13);
  const auto m = BitMatrix::random(6, 5, rng);
  CHECK(preimage(m, Subspace::full(5)).is_full());
  CHECK(preimage(m, Subspace::zero(5)) == kernel(m));
  CHECK(preimage(m, kernel(BitMatrix::identity(5))) == kernel(m));
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> sz(1, 10);
    const std::size_t n = sz(rng), c = sz(rng);
    const auto a = BitMatrix::random(n, c, rng);
    const Subspace w(BitMatrix::random(sz(rng) % c, c, rng));
    const Subspace pre = preimage(a, w);
    std::size_t count = 0;
    for (const auto& v : oracle::all_vectors(n)) {
      const bool in = w.contains(oracle::apply(v, a));
      if (in) ++count;
      CHECK(pre.contains(v) == in);
    }
    CHECK((std::size_t{1} << pre.dim()) == count);
  }
}

TEST_CASE("subquotient") {
  const Subspace full = Subspace::full(3);
  CHECK(Subquotient(full, full).dim() == 0);
  CHECK(Subquotient(full, Subspace::zero(3)).dim() == 3);
  const Subspace z(BitMatrix::from_strings({"100", "010"}, 3));
  const Subspace b(BitMatrix::from_strings({"110"}, 3));
  const Subquotient q(z, b);
  CHECK(q.dim() == 1);  // 4 vectors / 2 per coset
  CHECK(q.coordinates(BitVector::from_string("110")).none());
  CHECK(q.coordinates(BitVector::from_string("100")) == q.coordinates(BitVector::from_string("010")));
  CHECK(q.coordinates(BitVector::from_string("100")).any());
  CHECK_THROWS_AS(Subquotient(b, z), Error);
}

TEST_CASE("subquotient coordinates are a well-defined surjection") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 7;
    const Subspace z(BitMatrix::random(5, n, rng));
    const Subspace b(BitMatrix::random(2, z.dim(), rng) * z.basis());
    const Subquotient q(z, b);
    CHECK(q.dim() == z.dim() - b.dim());
    for (std::size_t i = 0; i < q.dim(); ++i)
      CHECK(q.coordinates(q.section().row(i)) == BitVector::unit(q.dim(), i));
    for (const auto& c : oracle::all_vectors(z.dim())) {
      const BitVector v = c * z.basis();
      for (std::size_t j = 0; j < b.dim(); ++j)
        CHECK(q.coordinates(v ^ b.basis().row(j)) == q.coordinates(v));
    }
  }
}

TEST_CASE("solve, sum, intersection") {
  std::mt19937_64 rng(15);
  CHECK(solve(BitMatrix::identity(3), BitVector::from_string("101"))->to_string() == "101");
  CHECK_FALSE(solve(BitMatrix(2, 2), BitVector::from_string("01")).has_value());
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 8;
    const auto a = BitMatrix::random(4, n, rng);
    const auto b = BitMatrix::random(5, n, rng);
    const Subspace sa(a), sb(b);
    const Subspace s = sum(sa, sb);
    const Subspace i = intersection(sa, sb);
    CHECK(s.dim() + i.dim() == sa.dim() + sb.dim());
    for (const auto& v : oracle::all_vectors(n)) {
      CHECK(i.contains(v) == (sa.contains(v) && sb.contains(v)));
      auto x = solve(a, v);
      CHECK(x.has_value() == sa.contains(v));
      if (x) CHECK(oracle::apply(*x, a) == v);
    }
    CHECK(oracle::span_size(s.basis()) == (std::size_t{1} << s.dim()));
  }
}

TEST_CASE("canonical form: equal spans have identical bases") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = BitMatrix::random(5, 9, rng);
    const auto mix = BitMatrix::random(5, 5, rng);
    if (rank(mix) < 5) continue;
    CHECK(Subspace(a) == Subspace(mix * a));
  }
}

TEST_CASE("annihilator dimension") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Subspace s(BitMatrix::random(4, 9, rng));
    const Subspace a = annihilator(s);
    CHECK(a.dim() + s.dim() == 9);
    CHECK((s.basis() * a.basis().transpose()).is_zero());
  }
}

TEST_CASE("matrix product and transpose match entrywise definitions") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = BitMatrix::random(7, 70, rng);
    const auto b = BitMatrix::random(70, 9, rng);
    const auto p = a * b;
    for (std::size_t i = 0; i < 7; ++i)
      CHECK(p.row(i) == oracle::apply(a.row(i), b));
    CHECK(p.transpose() == b.transpose() * a.transpose());
  }
  const auto k = kron(BitMatrix::identity(2), BitMatrix::from_strings({"01", "10"}, 2));
  CHECK(k.to_strings() == std::vector<std::string>{"0100", "1000", "0001", "0010"});
}
