#include "mcfin/exactla.hpp"
#include "mcfin/refgroup.hpp"

#include <doctest.h>

#include <random>

using namespace mcfin;

namespace {

Mat rnd(const Field* f, int n, std::mt19937& g) {
  std::uniform_int_distribution<int> c(-3, 3);
  Mat m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<mpq_class> v;
      for (int t = 0; t < f->deg; ++t) v.emplace_back(c(g));
      m.set(i, j, Cyclo(f, v));
    }
  return m;
}

}  // namespace

TEST_CASE("Cayley-Hamilton") {
  std::mt19937 g(5);
  for (int n : {1, 3, 4, 5, 12})
    for (int d : {1, 2, 3, 4, 5})
      for (int s = 0; s < 4; ++s) {
        Mat A = rnd(field(n), d, g);
        CharPoly p = charpoly(A);
        CHECK(p.degree() == d);
        CHECK(p.c.back().is_one());
        Mat Z = p.eval(A);
        CHECK(Z == Mat(A.fld(), d));
        // constant term is (-1)^d det
        CHECK(p.c[0] == (d % 2 ? -A.det() : A.det()));
      }
}

TEST_CASE("inverse and determinant") {
  std::mt19937 g(9);
  for (int s = 0; s < 20; ++s) {
    Mat A = rnd(field(5), 3, g), B = rnd(field(5), 3, g);
    CHECK((A * B).det() == A.det() * B.det());
    if (A.det().is_zero()) continue;
    CHECK((A * A.inverse()).is_identity());
    CHECK((A.inverse() * A).is_identity());
  }
  Mat S = Mat::from_rows(field(1), {{Cyclo(field(1), 1), Cyclo(field(1), 2)}, {Cyclo(field(1), 2), Cyclo(field(1), 4)}});
  CHECK(S.rank() == 1);
  CHECK_THROWS_AS(S.inverse(), Error);
}

TEST_CASE("text format round trip") {
  std::string t = "# comment\ndim=2; field=3;\n1 3:[0,1];\n3:[-1,-1] 0;\ndim=2; field=3;\n1 0;\n0 1;\n";
  auto ms = parse_mats(t);
  REQUIRE(ms.size() == 2);
  CHECK(ms[1].is_identity());
  CHECK(ms[0](0, 1) == Cyclo::zeta(field(3), 1));
  CHECK(parse_mats(mats_str(ms)) == ms);
  CHECK_THROWS(parse_mats("dim=2; field=3;\n1 0;\n"));
}

TEST_CASE("subspaces") {
  const Field* f = field(1);
  Mat A = Mat::from_rows(f, {{Cyclo(f, 1), Cyclo(f, 1), Cyclo(f)}, {Cyclo(f), Cyclo(f), Cyclo(f, 1)}, {Cyclo(f, 1), Cyclo(f, 1), Cyclo(f, 1)}});
  CHECK(A.rank() == 2);
  Subspace K = kernel(A), I = image(A);
  CHECK(K.dim() == 1);
  CHECK(I.dim() == 2);
  // here the kernel (1,-1,0) lies inside the column space
  CHECK(subspace_sum(K, I) == I);
  CHECK(intersection(K, I) == K);
  CHECK(subspace_sum(K, span_rows(Mat::identity(f, 3))).dim() == 3);
  // the kernel is invariant under A
  CHECK(is_invariant(A, K));
}

TEST_CASE("spectra") {
  const Field* f = field(3);
  // 3-cycle permutation matrix: eigenvalues 1, w, w^2
  Mat P = Mat::from_rows(f, {{Cyclo(f), Cyclo(f, 1), Cyclo(f)}, {Cyclo(f), Cyclo(f), Cyclo(f, 1)}, {Cyclo(f, 1), Cyclo(f), Cyclo(f)}});
  auto sp = root_spectrum(charpoly(P), 3);
  CHECK(sp.size() == 3);
  for (auto& [z, c] : sp) CHECK(c == 1);
  auto id = root_spectrum(charpoly(Mat::identity(field(1), 3)), 30);
  REQUIRE(id.size() == 1);
  CHECK(id[0].first == Root{1, 0});
  CHECK(id[0].second == 3);
  CHECK(roots_dividing(6).size() == 6);
}

TEST_CASE("inverse product spectrum of a G23 exemplar") {
  auto A = read_mats(data_dir() + "/exemplars/G23_T3_A.txt");
  Mat P = (A[0] * A[1] * A[2]).inverse();
  auto sp = root_spectrum(charpoly(P), 10);
  std::vector<std::string> r;
  for (auto& [z, c] : sp) {
    CHECK(c == 1);
    r.push_back(z.residue());
  }
  std::sort(r.begin(), r.end());
  CHECK(r == std::vector<std::string>{"1/10", "1/2", "9/10"});
}

TEST_CASE("descend and embed matrices") {
  Mat m = Mat::identity(field(3), 2) * Cyclo::zeta(field(3), 1);
  Mat e = m.embed_to(field(12));
  CHECK(min_conductor(e) == 3);
  CHECK(descend(e, 3) == m);
  CHECK_THROWS(descend(Mat::identity(field(12), 2) * Cyclo::zeta(field(12), 1), 3));
}
