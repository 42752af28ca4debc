// Braid action on tuples, trace signatures, and orbit enumeration.
#pragma once

#include "mcfin/midconv.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace mcfin {

// sigma_i, 1 <= i < len: (.., M_i M_{i+1} M_i^-1, M_i, ..)
MatTuple braid_act(int i, const MatTuple& M);
// inverse generator, for relation checks
MatTuple braid_act_inv(int i, const MatTuple& M);

struct Signature {
  std::vector<Cyclo> c;
  bool operator==(const Signature& o) const { return c == o.c; }
  size_t hash() const;
  std::string str() const;
  static Signature parse(const std::string& line);
};
struct SignatureHash {
  size_t operator()(const Signature& s) const { return s.hash(); }
};

// traces of ordered sub-products of all but the last entry, by size then lexicographic:
// 4-tuples (t1,t2,t3,t12,t13,t23,t123), 5-tuples 15 coordinates ending in t1234.
// requires SL2 entries with product identity
Signature signature(const MatTuple& M);

struct Orbit {
  std::vector<MatTuple> reps;         // one per signature, discovery order
  std::vector<Signature> sigs;        // parallel to reps
  bool complete = true;               // false: cap reached, size is a lower bound
  size_t size() const { return sigs.size(); }
  bool contains(const Signature& s) const;
  std::unordered_set<Signature, SignatureHash> set;
};

Orbit orbit(const MatTuple& M, size_t cap = 1000000);
// signature of N lies in orbit(M); throws CapExceeded when the orbit is not finished by cap
bool same_orbit(const MatTuple& M, const MatTuple& N, size_t cap = 1000000);
bool same_orbit(const Orbit& o, const MatTuple& N);

// some even sign pattern of M (product unchanged) lies in o; the patterns are what
// separates two choices of character. An unfinished orbit counts as a miss.
bool same_orbit_up_to_signs(const Orbit& o, const MatTuple& M);

// one move each: sign flips on pairs, complex conjugation, cyclic shifts, inverse-and-reverse
std::vector<MatTuple> tykhyy_variants(const MatTuple& M);

}  // namespace mcfin
