#include "mcfin/imprim.hpp"

#include <doctest.h>

#include <random>

using namespace mcfin;

namespace {

GpnElement rnd(int m, int p, int n, std::mt19937& g) {
  GpnElement e = GpnElement::identity(m, p, n);
  std::uniform_int_distribution<int> a(0, m - 1);
  for (int i = 0; i < n; ++i) e.a[i] = a(g);
  int s = 0;
  for (int i = 0; i < n - 1; ++i) s += e.a[i];
  // fix the last exponent so that p divides the sum
  e.a[n - 1] = ((e.a[n - 1] - (s + e.a[n - 1]) % p) % m + m) % m;
  std::shuffle(e.sigma.begin(), e.sigma.end(), g);
  return e;
}

}  // namespace

TEST_CASE("to_matrix is a homomorphism") {
  std::mt19937 g(1);
  for (int s = 0; s < 200; ++s) {
    int m = 2 + s % 5, n = 2 + s % 3;
    int p = (s % 2) ? m : 1;
    GpnElement x = rnd(m, p, n, g), y = rnd(m, p, n, g);
    REQUIRE(x.valid());
    CHECK((x * y).to_matrix() == x.to_matrix() * y.to_matrix());
    CHECK((x * x.inverse()) == GpnElement::identity(m, p, n));
  }
}

TEST_CASE("orders and degrees") {
  CHECK(gpn_order(3, 3, 3) == 54);
  CHECK(gpn_order(4, 4, 4) == 1536);
  CHECK(gpn_order(2, 2, 5) == 1920);
  CHECK(gpn_degrees(4, 2, 3) == std::vector<int>{4, 6, 8});
  CHECK(all_reflections(3, 1, 3).size() == 9 + 6);
  CHECK(all_reflections(3, 3, 3).size() == 9);
}

TEST_CASE("degree formula against closures") {
  for (int m = 2; m <= 4; ++m)
    for (int p = 1; p <= m; ++p) {
      if (m % p) continue;
      for (int n = 2; n <= 4; ++n) {
        std::vector<GpnElement> gens;
        for (auto& r : standard_generators(m, p, n)) gens.push_back(r.elt(m, p, n));
        CHECK(gpn_closure_order(gens, gpn_order(m, p, n) + 1) == gpn_order(m, p, n));
        // eigenvalue orders of elements divide some degree
        auto deg = gpn_degrees(m, p, n);
        unsigned long long prod = 1;
        for (int d : deg) prod *= d;
        CHECK(prod == gpn_order(m, p, n));
      }
    }
}

TEST_CASE("cycle invariant and subgroup identification") {
  using R = TypedReflection;
  std::vector<R> X{R::s(1, 2, 1), R::s(1, 2, 0), R::s(2, 3, 2)};
  CHECK(delta({R::s(1, 2, 0), R::s(2, 3, 0)}, 5) == std::nullopt);
  CHECK(identify_subgroup(X, 5, 5, 3) == GpnId{5, 5, 3});
  CHECK(identify_subgroup({R::s(1, 2, 0), R::s(2, 3, 0)}, 4, 4, 3) == GpnId{1, 1, 3});
}

TEST_CASE("product eigenvalues of constructed G(m,m,3) 3-tuples") {
  for (int m = 2; m <= 8; ++m) {
    auto w = construct_nice(m, m, 3, 3);
    REQUIRE(w);
    std::vector<GpnElement> es;
    for (auto& r : w->tuple) es.push_back(r.elt(m, m, 3));
    GpnElement P = es[0] * es[1] * es[2];
    auto ev = P.eigenvalues();
    REQUIRE(ev.size() == 3);
    // shape {l^-2, l, -l}
    bool found = false;
    for (auto l : ev) {
      std::vector<Root> want{(l * l).inv(), l, l * Root{2, 1}};
      std::vector<Root> got = ev;
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      found = found || want == got;
    }
    CHECK(found);
  }
}

TEST_CASE("constructed G(m,m,4) 5-tuples are Type 1 and nice") {
  for (int m : {2, 4}) {
    auto w = construct_nice(m, m, 4, 5);
    REQUIRE(w);
    int t1 = 0;
    for (auto& r : w->tuple) t1 += !r.type2;
    CHECK(t1 == 5);
    std::vector<GpnElement> es;
    for (auto& r : w->tuple) es.push_back(r.elt(m, m, 4));
    CHECK(!nice_lambdas(es).empty());
  }
}

TEST_CASE("brute force existence claims") {
  CHECK(brute_nice_search(2, 2, 5, 5, 1u << 20, true).tuples.empty());
  CHECK(brute_nice_search(3, 1, 3, 4, 1u << 20, true).tuples.empty());
  auto b = brute_nice_search(2, 2, 4, 4, 1u << 20);
  REQUIRE(!b.tuples.empty());
  bool minus_one = false;
  for (auto& t : b.tuples) {
    std::vector<GpnElement> es;
    for (auto& r : t) es.push_back(r.elt(2, 2, 4));
    for (auto l : nice_lambdas(es)) minus_one = minus_one || l == Root{2, 1};
  }
  CHECK(minus_one);
}

TEST_CASE("construction agrees with brute force on a small range") {
  const std::pair<int, int> shapes[] = {{3, 3}, {3, 4}, {4, 4}};
  for (int m = 2; m <= 4; ++m)
    for (int p = 1; p <= m; ++p) {
      if (m % p) continue;
      for (auto [n, T] : shapes) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(T);
        auto w = construct_nice(m, p, n, T);
        auto b = brute_nice_search(m, p, n, T, ~0ull, true);
        CHECK(w.has_value() == !b.tuples.empty());
        if (w) CHECK(witness_ok(m, p, n, *w));
      }
    }
  CHECK_THROWS(construct_nice(4, 3, 3, 3));
  CHECK_THROWS(construct_nice(4, 4, 3, 6));
}
