#include "mcfin/midconv.hpp"

namespace mcfin {

MatTuple unify(const MatTuple& A) {
  long n = 1;
  for (auto& m : A) n = lcml(n, m.fld()->n);
  const Field* f = field((int)n);
  MatTuple r;
  for (auto& m : A) r.push_back(m.fld() == f ? m : m.embed_to(f));
  return r;
}

MatTuple shrink(const MatTuple& A) {
  long n = 1;
  for (auto& m : A) n = lcml(n, min_conductor(m));
  MatTuple r;
  for (auto& m : A) r.push_back(descend(m, (int)n));
  return r;
}

Mat product(const MatTuple& A) {
  if (A.empty()) throw Error("empty tuple");
  MatTuple U = unify(A);
  Mat P = U[0];
  for (size_t k = 1; k < U.size(); ++k) P = P * U[k];
  return P;
}

MatTuple inverse_tuple(const MatTuple& A) {
  MatTuple r;
  for (auto it = A.rbegin(); it != A.rend(); ++it) r.push_back(it->inverse());
  return r;
}

namespace {

// tuple and lambda over one field
std::pair<MatTuple, Cyclo> common(const MatTuple& A, const Cyclo& lambda) {
  if (A.empty()) throw Error("middle convolution of an empty tuple");
  long n = lambda.fld()->n;
  for (auto& m : A) {
    if (!m.square() || m.dim() != A[0].dim()) throw Error("tuple entries must be square of one size");
    n = lcml(n, m.fld()->n);
  }
  const Field* f = field((int)n);
  MatTuple r;
  for (auto& m : A) r.push_back(m.fld() == f ? m : m.embed_to(f));
  return {r, lambda.fld() == f ? lambda : embed(lambda, f)};
}

}  // namespace

int predicted_dim(const MatTuple& A0, const Cyclo& lambda0) {
  auto [A, lambda] = common(A0, lambda0);
  if (lambda.is_one()) throw Error("predicted_dim: lambda = 1 is not supported");
  int n = A[0].dim();
  const Field* f = A[0].fld();
  Mat I = Mat::identity(f, n);
  int s = 0;
  for (auto& a : A) s += (a - I).rank();
  Mat P = A[0];
  for (size_t k = 1; k < A.size(); ++k) P = P * A[k];
  return s - (n - (P * lambda - I).rank());
}

ConvolutionData convolution_data(const MatTuple& A0, const Cyclo& lambda0) {
  auto [A, lambda] = common(A0, lambda0);
  if (lambda.is_zero()) throw Error("lambda must be nonzero");
  if (lambda.is_one()) throw Error("middle convolution with lambda = 1 is not supported");
  const Field* f = A[0].fld();
  int n = A[0].dim(), T = (int)A.size(), N = n * T;
  Mat I = Mat::identity(f, n);
  ConvolutionData cd;
  cd.lambda = lambda;
  for (int k = 0; k < T; ++k) {
    Mat B = Mat::identity(f, N);
    for (int j = 0; j < T; ++j) {
      Mat blk = j < k ? (A[j] - I) * lambda : j == k ? A[k] * lambda : A[j] - I;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) B.set(k * n + r, j * n + c, blk(r, c));
    }
    cd.B.push_back(std::move(B));
  }
  // K: block sum of ker(A_k - 1)
  Mat Kr(f, 0, N);
  std::vector<std::vector<Cyclo>> krows;
  for (int k = 0; k < T; ++k) {
    Subspace s = kernel(A[k] - I);
    for (int r = 0; r < s.dim(); ++r) {
      std::vector<Cyclo> row(N, Cyclo(f));
      for (int c = 0; c < n; ++c) row[k * n + c] = s.basis(r, c);
      krows.push_back(row);
    }
  }
  if (krows.empty())
    cd.K = span_rows(Mat(f, 0, N));
  else
    cd.K = span_rows(Mat::from_rows(f, krows));
  // L: common fixed space of the B_k
  Mat S(f, N * T, N);
  Mat IN = Mat::identity(f, N);
  for (int k = 0; k < T; ++k) {
    Mat D = cd.B[k] - IN;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) S.set(k * N + r, c, D(r, c));
  }
  cd.L = kernel(S);
  return cd;
}

MCResult middle_convolution(const MatTuple& A, const Cyclo& lambda) {
  ConvolutionData cd = convolution_data(A, lambda);
  for (size_t k = 0; k < cd.B.size(); ++k) {
    if (!is_invariant(cd.B[k], cd.K)) throw Error("middle convolution: K is not invariant under B_" + std::to_string(k + 1));
    if (!is_invariant(cd.B[k], cd.L)) throw Error("middle convolution: L is not invariant under B_" + std::to_string(k + 1));
  }
  Subspace U = subspace_sum(cd.K, cd.L);
  MCResult res;
  res.dimK = cd.K.dim();
  res.dimL = cd.L.dim();
  res.predicted = predicted_dim(A, lambda);
  for (auto& B : cd.B) res.tuple.push_back(quotient_action(B, U));
  int got = cd.B[0].dim() - U.dim();
  if (got != res.predicted)
    throw Error("middle convolution: dimension " + std::to_string(got) + " but the formula gives " +
                std::to_string(res.predicted));
  if (got > 0) res.tuple = shrink(res.tuple);
  return res;
}

MCResult middle_convolution(const MatTuple& A, Root lambda) {
  long n = lambda.d;
  for (auto& m : A) n = lcml(n, m.fld()->n);
  return middle_convolution(A, Cyclo::root(field((int)n), lambda));
}

bool irreducible(const MatTuple& A0) {
  MatTuple A = unify(A0);
  if (A.empty()) return false;
  int n = A[0].dim();
  if (n == 1) return true;
  const Field* f = A[0].fld();
  // span of words of length <= n*n - 1 equals the generated algebra; grow until stable
  std::vector<Mat> frontier{Mat::identity(f, n)};
  std::vector<std::vector<Cyclo>> rows;
  auto flat = [&](const Mat& m) {
    std::vector<Cyclo> v;
    for (auto& x : m.entries()) v.push_back(x);
    return v;
  };
  rows.push_back(flat(frontier[0]));
  int dim = 1;
  for (int len = 1; len < n * n && dim < n * n; ++len) {
    std::vector<Mat> next;
    for (auto& w : frontier)
      for (auto& a : A) {
        Mat x = w * a;
        rows.push_back(flat(x));
        int d = span_rows(Mat::from_rows(f, rows)).dim();
        if (d > dim) {
          dim = d;
          next.push_back(x);
        } else {
          rows.pop_back();
        }
      }
    if (next.empty()) break;
    frontier = next;
  }
  return dim == n * n;
}

}  // namespace mcfin
