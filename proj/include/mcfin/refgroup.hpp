// Finite matrix groups: BFS closure, reflections and their classes, generation
// tests, and the catalog of G23..G32 plus G(m,p,n).
#pragma once

#include "mcfin/zmat.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcfin {

struct CapExceeded : Error {
  size_t cap, reached;
  CapExceeded(size_t c, size_t r)
      : Error("cap of " + std::to_string(c) + " exceeded (reached " + std::to_string(r) + ")"), cap(c), reached(r) {}
};

struct GroupElements {
  const Field* f = nullptr;
  int n = 0;
  std::vector<ZMat> elts;  // elts[0] is the identity
  std::unordered_map<ZMat, int, ZMatHash> idx;
  std::vector<ZMat> gens;

  size_t size() const { return elts.size(); }
  int find(const ZMat& z) const {
    auto it = idx.find(z);
    return it == idx.end() ? -1 : it->second;
  }
  int find(const Mat& m) const;
  Mat mat(int i) const { return elts[i].to_mat(); }
};

// BFS by left multiplication with the generators; throws CapExceeded
GroupElements closure(const std::vector<Mat>& gens, size_t cap);

struct Reflection {
  int elt = -1;  // index in GroupElements
  Mat m;
  Root eig;  // the non-1 eigenvalue (= det)
  int cls = -1;
};
struct ReflectionSet {
  std::vector<Reflection> refl;
  int nclasses = 0;
  std::vector<int> reps;  // one reflection index per class, first in list order
  int find(int elt) const;
};
ReflectionSet reflections(const GroupElements& W);

// left-multiplication table rows: row[k][g] = index of (ms[k] * elts[g])
std::vector<std::vector<int32_t>> left_table(const GroupElements& W, const std::vector<Mat>& ms, int threads = 0);

// does the subset (given as table rows) generate all of W? bitset BFS with early exit
bool generates_rows(const std::vector<const std::vector<int32_t>*>& rows, size_t order);
bool generates(const std::vector<Mat>& subset, const GroupElements& W);

struct CatalogEntry {
  std::string id;
  int rank = 0;
  unsigned long long order = 0;
  std::vector<int> degrees;
  std::vector<Mat> gens;
  const Field* base = nullptr;  // field stated in the data file
  int classes = -1;             // expected reflection classes, -1 if unstated
  int extension() const;        // lcm of degrees, where all eigenvalues live
};

std::string data_dir();  // MCFIN_DATA env var, else the compiled-in path
CatalogEntry parse_catalog(const std::string& text);
// "G23".."G32" from data files; "G(m,p,n)" built from imprim
CatalogEntry load_catalog(const std::string& id);

struct Validation {
  bool ok = true;
  size_t order = 0;
  int nreflections = 0, nclasses = 0;
  size_t scanned = 0;  // elements checked for the degree/eigenvalue condition
  std::vector<std::string> problems;
};
// closure order, reflection classes, and the degree condition: for d dividing exactly
// k degrees, the max multiplicity of a primitive d-th root over elements is k
Validation validate(const CatalogEntry& e, const GroupElements& W, const ReflectionSet& R, size_t sample = 0);

// a loaded and validated group with lazily built tables
struct Group {
  CatalogEntry entry;
  GroupElements W;
  ReflectionSet R;
  static std::shared_ptr<Group> load(const std::string& id, bool check = true);
  const std::vector<std::vector<int32_t>>& refl_table();  // rows per reflection
 private:
  std::vector<std::vector<int32_t>> table_;
};

}  // namespace mcfin
