// G(m,p,n): symbolic monomial elements [a_1..a_n | sigma], typed reflections,
// the cycle invariant delta(X), and explicit nice-tuple constructions.
#pragma once

#include "mcfin/exactla.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcfin {

struct GpnElement {
  int m = 1, p = 1;
  std::vector<int> a;      // exponents mod m
  std::vector<int> sigma;  // 0-based: row i has its entry in column sigma[i]

  static GpnElement identity(int m, int p, int n);
  int n() const { return (int)a.size(); }
  bool valid() const;  // p | sum a
  Mat to_matrix() const;
  GpnElement operator*(const GpnElement& o) const;
  GpnElement inverse() const;
  bool operator==(const GpnElement& o) const { return a == o.a && sigma == o.sigma; }
  uint64_t key() const;  // injective for n <= 8, m < 64
  // eigenvalues from the cycle structure: a cycle of length l with exponent sum s
  // contributes the l-th roots of zeta_m^s
  std::vector<Root> eigenvalues() const;
  std::string str() const;
};

// s(i,j;a) with i != j, or s(i;a); indices 1-based as in the usual notation
struct TypedReflection {
  bool type2 = false;
  int i = 1, j = 2, a = 0;
  static TypedReflection s(int i, int j, int a) { return {false, i, j, a}; }
  static TypedReflection s(int i, int a) { return {true, i, 0, a}; }
  GpnElement elt(int m, int p, int n) const;
  std::string str() const;
  bool operator==(const TypedReflection& o) const;
};

std::vector<int> phi(const GpnElement& g);

// |cycle sum| when the Type 1 edges form a connected graph with exactly one cycle
std::optional<int> delta(const std::vector<TypedReflection>& X, int m);

struct GpnId {
  int m = 1, p = 1, n = 1;
  std::string str() const;
  bool operator==(const GpnId& o) const { return m == o.m && p == o.p && n == o.n; }
};
GpnId identify_subgroup(const std::vector<TypedReflection>& X, int m, int p, int n);

std::vector<TypedReflection> all_reflections(int m, int p, int n);
std::vector<TypedReflection> standard_generators(int m, int p, int n);
unsigned long long gpn_order(int m, int p, int n);
std::vector<int> gpn_degrees(int m, int p, int n);

struct NiceWitness {
  std::vector<TypedReflection> tuple;
  std::vector<Root> lambdas;  // eigenvalues of the inverse product with multiplicity T-2
};
// throws for (n,T) outside {(3,3),(3,4),(4,4),(4,5)} unless n >= 5 (always empty)
std::optional<NiceWitness> construct_nice(int m, int p, int n, int T);

// entries lie in G(m,p,n), generate it, and some lambda is admissible
bool witness_ok(int m, int p, int n, const NiceWitness& w);

// admissible lambdas of a reflection tuple: non-1 eigenvalues of the inverse product with multiplicity T-2
std::vector<Root> nice_lambdas(const std::vector<GpnElement>& tuple);

struct BruteResult {
  std::vector<std::vector<TypedReflection>> tuples;
  bool complete = true;  // false when stopped early
};
// exhaustive over ordered tuples with the first entry fixed to s(1,2;0); every nice
// tuple is conjugate (under G(m,1,n) and cyclic rotation) to one of these.
// first_only stops at the first hit.
BruteResult brute_nice_search(int m, int p, int n, int T, unsigned long long cap, bool first_only = false);

// closure order of a set of symbolic elements, stops after `stop_above` elements
unsigned long long gpn_closure_order(const std::vector<GpnElement>& gens, unsigned long long stop_above);

}  // namespace mcfin
