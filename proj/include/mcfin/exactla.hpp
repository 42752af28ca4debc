// Dense exact matrices over one cyclotomic field.
#pragma once

#include "mcfin/cyclo.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mcfin {

class Mat {
 public:
  Mat() : f_(field(1)) {}
  Mat(const Field* f, int rows, int cols);
  Mat(const Field* f, int dim) : Mat(f, dim, dim) {}
  static Mat identity(const Field* f, int n);
  static Mat scalar(const Cyclo& s, int n);
  // entries row-major; constants promote into f
  static Mat from_rows(const Field* f, const std::vector<std::vector<Cyclo>>& rows);

  const Field* fld() const { return f_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  int dim() const { return r_; }
  bool square() const { return r_ == c_; }
  const Cyclo& operator()(int i, int j) const { return e_[i * c_ + j]; }
  void set(int i, int j, const Cyclo& v);
  const std::vector<Cyclo>& entries() const { return e_; }

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  Mat operator*(const Cyclo& s) const;
  Mat operator-() const;
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
  size_t hash() const;

  Mat inverse() const;  // throws on singular
  Cyclo det() const;
  Cyclo trace() const;
  Mat transpose() const;
  Mat pow(long e) const;
  int rank() const;
  bool is_identity() const;
  bool is_scalar() const;
  Mat block(int r0, int c0, int nr, int nc) const;
  Mat embed_to(const Field* f) const;
  Mat galois(long k) const;

  std::string str() const;  // dim=k; field=n; rows...
  static Mat parse(const std::string& text);
  std::string pretty() const;

 private:
  const Field* f_;
  int r_ = 0, c_ = 0;
  std::vector<Cyclo> e_;
};

// a run of matrices in text form; '#' starts a comment line
std::vector<Mat> parse_mats(const std::string& text);
std::string mats_str(const std::vector<Mat>& ms);
std::vector<Mat> read_mats(const std::string& path);

struct MatHash {
  size_t operator()(const Mat& m) const { return m.hash(); }
};

// smallest conductor holding all entries
int min_conductor(const Mat& m);
Mat descend(const Mat& m, int n);  // throws if impossible

// p(x) = det(xI - A), coefficients low to high, monic
struct CharPoly {
  std::vector<Cyclo> c;
  int degree() const { return (int)c.size() - 1; }
  Cyclo eval(const Cyclo& x) const;
  Mat eval(const Mat& A) const;
};

CharPoly charpoly(const Mat& A);
// multiplicity of x - z in p for each candidate z (z embedded as needed)
std::vector<std::pair<Root, int>> eig_multiplicity(const CharPoly& p, const std::vector<Root>& candidates);
std::vector<std::pair<Root, int>> eig_multiplicity(const Mat& A, const std::vector<Root>& candidates);
int root_multiplicity(const CharPoly& p, Root z);
// all roots of unity with order dividing N, with multiplicity (only nonzero ones)
std::vector<std::pair<Root, int>> root_spectrum(const CharPoly& p, int N);
std::vector<Root> roots_dividing(int N);

// row space in reduced echelon form; vectors are columns of the ambient space
struct Subspace {
  int ambient = 0;
  Mat basis;  // k x ambient, RREF
  std::vector<int> pivots;
  int dim() const { return (int)pivots.size(); }
  bool contains(const std::vector<Cyclo>& v) const;
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.pivots == b.pivots && (a.dim() == 0 || a.basis == b.basis);
  }
};

// rref in place, returns pivot columns
std::vector<int> rref(Mat& m);
Subspace span_rows(const Mat& rows);
Subspace kernel(const Mat& A);  // {v : A v = 0}
Subspace image(const Mat& A);   // column space
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
bool is_invariant(const Mat& B, const Subspace& U);
// action on ambient/U in the basis of standard vectors at non-pivot columns
Mat quotient_action(const Mat& B, const Subspace& U);

}  // namespace mcfin
