// Middle convolution MC_lambda on matrix tuples (Dettweiler-Reiter block form).
#pragma once

#include "mcfin/exactla.hpp"

#include <vector>

namespace mcfin {

using MatTuple = std::vector<Mat>;

Mat product(const MatTuple& A);
MatTuple inverse_tuple(const MatTuple& A);  // [A_T^-1, ..., A_1^-1]
// all entries over one field (the lcm of their conductors)
MatTuple unify(const MatTuple& A);
// shrink to the smallest common conductor
MatTuple shrink(const MatTuple& A);

struct ConvolutionData {
  std::vector<Mat> B;  // nT x nT
  Subspace K, L;
  Cyclo lambda;
};

struct MCResult {
  MatTuple tuple;
  int dimK = 0, dimL = 0;
  int predicted = 0;
};

// sum rank(A_i - 1) - (n - rank(lambda A_1...A_T - 1)); lambda != 1
int predicted_dim(const MatTuple& A, const Cyclo& lambda);
ConvolutionData convolution_data(const MatTuple& A, const Cyclo& lambda);
// throws on lambda == 1, invariance failure, or a dimension mismatch
MCResult middle_convolution(const MatTuple& A, const Cyclo& lambda);
MCResult middle_convolution(const MatTuple& A, Root lambda);

// no common invariant proper subspace (checked through the span of short words)
bool irreducible(const MatTuple& A);

}  // namespace mcfin
