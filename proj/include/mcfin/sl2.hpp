// Induced SL2 tuples, finite/infinite subgroup recognition, trace residues.
#pragma once

#include "mcfin/midconv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcfin {

struct Induced {
  MatTuple tuple;              // T+1 matrices in SL2, product identity
  std::vector<Root> character;  // a_1..a_{T+1}
};

// appends (M_1...M_T)^-1, scales M_i by a_i with a_i^2 = det(M_i)^-1, a_i the root with
// residue in [0, 1/2); a_{T+1} absorbs the sign so that prod a_i = 1.
// field_ext forces the result into Q(zeta_lcm(.., field_ext)).
Induced induce(const MatTuple& mc, int field_ext = 1);
// explicit character (length T+1); throws when it does not give an SL2 tuple
Induced induce_with(const MatTuple& mc, const std::vector<Root>& character, int field_ext = 1);
std::string character_str(const std::vector<Root>& ch);

struct SubgroupId {
  bool finite = false;
  bool inconclusive = false;
  size_t order = 0;            // 0 when infinite
  std::string label;           // cyclic, dicyclic, SL(2,3), binary octahedral, SL(2,5), other
  int small_id = 0;            // SmallGroup number when known, 0 otherwise
  std::vector<std::pair<int, int>> histogram;  // element order -> count
  Mat certificate;             // infinite: an element of infinite order
  std::string reason;
  std::string str() const;
};

// closure in SL2 with an infinite-order certificate search along the way
SubgroupId subgroup_id(const MatTuple& M, size_t cap = 20000);
// GL2 group generated by an MC output (the table's S. Size; 0 = infinite)
SubgroupId gl2_subgroup(const MatTuple& M, size_t cap = 20000);
// true when g has infinite order, judged from trace and determinant only
bool infinite_order_certificate(const Mat& g);

struct Residues {
  std::vector<Root> theta;   // per matrix, residue in [0, 1/2]
  std::vector<Root> sigma;   // pairs (12,23,13,24) or (12,23,34,45,51,13,24)
  std::string str() const;
};
// throws Error("NotFiniteOrder ...") when some trace is not 2cos of a rational angle
Residues residues(const MatTuple& M);

}  // namespace mcfin
