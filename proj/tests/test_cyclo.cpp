#include "mcfin/cyclo.hpp"

#include <doctest.h>

#include <random>

using namespace mcfin;

namespace {

Cyclo rnd(const Field* f, std::mt19937& g) {
  std::uniform_int_distribution<int> c(-4, 4), d(1, 3);
  std::vector<mpq_class> v;
  for (int i = 0; i < f->deg; ++i) v.emplace_back(c(g), d(g));
  return Cyclo(f, v);
}

}  // namespace

TEST_CASE("field axioms on random triples") {
  std::mt19937 g(7);
  for (int n : {3, 4, 5, 12, 36, 60}) {
    const Field* f = field(n);
    for (int s = 0; s < 400; ++s) {
      Cyclo a = rnd(f, g), b = rnd(f, g), c = rnd(f, g);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inv() == Cyclo(f, 1));
    }
  }
}

TEST_CASE("zeta_n has exact order n") {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 14, 15, 20, 24, 30, 36, 42, 60, 84}) {
    const Field* f = field(n);
    Cyclo z = Cyclo::zeta(f, 1);
    CHECK(z.pow(n).is_one());
    for (int k = 1; k < n; ++k) CHECK_FALSE(z.pow(k).is_one());
  }
}

TEST_CASE("text form round trips") {
  std::mt19937 g(11);
  for (int n : {3, 5, 12, 20}) {
    const Field* f = field(n);
    for (int s = 0; s < 50; ++s) {
      Cyclo a = rnd(f, g);
      CHECK(Cyclo::parse(a.str()) == a);
    }
  }
  CHECK(Cyclo::parse("3:[-1,-1]") == -Cyclo(field(3), 1) - Cyclo::zeta(field(3), 1));
}

TEST_CASE("rationals are fixed by embedding") {
  Cyclo h(field(1), mpq_class(7, 2));
  for (int n : {3, 12, 60}) CHECK(embed(h, n) == Cyclo(field(n), mpq_class(7, 2)));
}

TEST_CASE("embed then descend is the identity") {
  std::mt19937 g(3);
  const std::pair<int, int> pairs[] = {{3, 12}, {4, 12}, {5, 20}, {12, 36}, {6, 36}, {5, 60}, {12, 60}, {15, 60}, {8, 24}};
  for (auto [m, n] : pairs)
    for (int s = 0; s < 100; ++s) {
      Cyclo a = rnd(field(m), g);
      Cyclo b = embed(a, n);
      auto back = try_descend(b, m);
      REQUIRE(back);
      CHECK(*back == a);
      CHECK(min_conductor(b) == min_conductor(a));
    }
  // zeta_6 into Q(zeta_36) is zeta_36^6
  Cyclo z6 = Cyclo::zeta(field(6), 1);
  CHECK(embed(z6, 36) == Cyclo::zeta(field(36), 6));
  CHECK(*try_descend(embed(z6, 36), 6) == z6);
  // zeta_12 does not live in Q(zeta_3)
  CHECK_FALSE(try_descend(Cyclo::zeta(field(12), 1), 3));
}

TEST_CASE("as_root_of_unity returns the reduced residue") {
  for (int d = 1; d <= 120; ++d) {
    const Field* f = field(d);
    for (int k = 0; k < d; ++k) {
      auto r = as_root_of_unity(Cyclo::zeta(f, k));
      REQUIRE(r);
      CHECK(*r == Root::make(d, k));
    }
  }
  CHECK(as_root_of_unity(Cyclo(field(1), 1))->d == 1);
  // -zeta_5^3 has order 10, residue 1/10
  Cyclo q = Cyclo::zeta(field(5), 1);
  CHECK(as_root_of_unity(-q.pow(3))->residue() == "1/10");
  // 1 + zeta_3 = zeta_6
  CHECK(as_root_of_unity(Cyclo(field(3), 1) + Cyclo::zeta(field(3), 1))->residue() == "1/6");
  CHECK_FALSE(as_root_of_unity(Cyclo(field(3), 2)));
  CHECK_FALSE(as_root_of_unity(Cyclo(field(5), 1) + Cyclo::zeta(field(5), 1)));
}

TEST_CASE("two-cos residues") {
  CHECK(as_two_cos(Cyclo(field(1), 2))->residue() == "0");
  CHECK(as_two_cos(Cyclo(field(1), -1))->residue() == "1/3");
  CHECK(as_two_cos(Cyclo(field(1), -2))->residue() == "1/2");
  CHECK(as_two_cos(Cyclo(field(1), 0))->residue() == "1/4");
  const Field* f = field(5);
  Cyclo z = Cyclo::zeta(f, 1);
  CHECK(as_two_cos(z + z.inv())->residue() == "1/5");
  CHECK(as_two_cos(z * z + z.inv() * z.inv())->residue() == "2/5");
  CHECK_FALSE(as_two_cos(Cyclo(field(1), 3)));
}

TEST_CASE("roots") {
  Root a = Root::make(12, 5), b = Root::make(4, 3);
  CHECK((a * b) == Root::make(12, 14));
  CHECK(a.inv() == Root::make(12, 7));
  CHECK(Root::make(10, 5) == Root{2, 1});
  CHECK(Root::make(6, -1).residue() == "5/6");
  CHECK(Cyclo::root(field(12), a) == Cyclo::zeta(field(12), 5));
}

TEST_CASE("galois action") {
  const Field* f = field(12);
  Cyclo z = Cyclo::zeta(f, 1);
  CHECK(z.galois(5) == z.pow(5));
  CHECK(z.conj() * z == Cyclo(f, 1));
  CHECK_THROWS(Cyclo::parse("3:[1,2,3,4"));
}
