// Nice-tuple search, type partitioning, per-lambda MC rows, result store and reports.
#pragma once

#include "mcfin/braid.hpp"
#include "mcfin/refgroup.hpp"
#include "mcfin/sl2.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mcfin {

struct NiceTuple {
  std::vector<int> refl;       // indices into Group::R.refl
  std::vector<Root> inv_eigs;  // inverse product spectrum, sorted, with multiplicity
  int product = -1;            // element index of A_1...A_T
  MatTuple mats(const Group& G) const;
};

struct SearchOptions {
  size_t cap = 0;            // max ordered tuples visited, 0 = unbounded
  bool twelfth_only = false; // only accept lambda of order dividing 12
  int threads = 0;
};

struct SearchResult {
  std::vector<NiceTuple> tuples;
  size_t visited = 0;
  bool complete = true;
};

// ordered T-tuples of reflections, first entry a class representative
SearchResult search_nice(Group& G, int T, const SearchOptions& opt = {});
// the three defining conditions, checked from matrices alone
bool is_nice(const Group& G, const MatTuple& A, std::string* why = nullptr);
// sorted inverse-product spectrum of a tuple in G (dimension n entries)
std::vector<Root> inverse_spectrum(const MatTuple& A, int N);

struct TupleType {
  std::string label;
  std::vector<Root> key;  // inverse-product eigenvalues, sorted
  MatTuple exemplar;
  std::vector<int> exemplar_refl;  // empty when the exemplar came from a file
  size_t members = 0;
  int inverse = -1;  // index of the inverse type in the same list (may be self)
  std::vector<MatTuple> sample;  // up to member_limit members for step-9 checks
};

std::string key_str(const std::vector<Root>& key);
std::vector<Root> inverted(const std::vector<Root>& key);

// group by inverse-product eigenvalues and pair inverse types; exemplar = least member
std::vector<TupleType> partition_types(const Group& G, const std::vector<NiceTuple>& tuples, size_t member_limit = 0);
// shipped exemplars data/exemplars/<G>_T<T>_<label>.txt, in label order
std::vector<TupleType> load_exemplars(const std::string& group, int T, int N);
// give search types the labels of matching shipped exemplars where possible
void adopt_labels(std::vector<TupleType>& types, const std::vector<TupleType>& shipped);

struct AppendixRow {
  std::string group, type, xi;
  int T = 0;
  std::vector<Root> character;
  std::string osize, ssize, sl2;
};
std::vector<AppendixRow> load_appendix(const std::string& path = "");
const AppendixRow* find_appendix(const std::vector<AppendixRow>& rows, const std::string& group, int T,
                                 const std::string& type, const std::string& xi);

struct ReportRow {
  std::string group;
  int T = 0;
  std::string type;
  Root xi;              // residue of lambda
  std::string lambda;   // pretty form
  int multiplicity = 0; // of lambda in the inverse product
  int dim = 0;          // MC dimension; rows with dim != 2 carry no further data
  MatTuple mc;          // MC output (T matrices)
  std::vector<Root> character;
  std::string character_source;  // "default" or "appendix"
  size_t orbit = 0;
  bool orbit_complete = false;
  long long ssize = -1;  // GL2 closure order, 0 infinite, -1 inconclusive
  std::string sl2;       // "order,id", "0" or "inconclusive"
  std::string sl2_label;
  bool identity_entry = false;  // induced tuple has an identity matrix
  long long reduced_orbit = -1;  // orbit of the tuple with identities dropped
  int orbit_class = -1;          // distinct-orbit index within the run
  std::string note;
  MatTuple induced;              // SL2 tuple used for the orbit
  std::string id() const;        // group_T_type_xi
};

struct RunOptions {
  size_t orbit_cap = 5000;
  size_t subgroup_cap = 20000;
  bool search = false;          // derive types by search instead of shipped exemplars
  SearchOptions search_opt;
  size_t member_limit = 0;      // step-9: members checked per type (0 = none)
  bool appendix_characters = true;  // use the tabulated character when one applies
  bool inverse_types = false;   // also run the inverse partner of each type
  bool check_inverse = false;   // induced inverse of each row lies in the orbit from the inverse tuple
};

struct StepNine {
  std::string type;
  size_t checked = 0, landed = 0;
  std::vector<std::string> misses;  // xi of rows a member missed
  size_t inverse_checked = 0, inverse_landed = 0;
};

struct RunResult {
  std::string group;
  int T = 0;
  std::vector<TupleType> types;
  std::vector<ReportRow> rows;
  int distinct_orbits = 0;
  std::vector<StepNine> checks;
  bool search_complete = true;
};

RunResult run_group(const std::string& group, int T, const RunOptions& opt = {});
// MC rows for one tuple: one per eigenvalue != 1 of the inverse product
std::vector<ReportRow> mc_rows(const std::string& group, int T, const std::string& type, const MatTuple& A,
                               const RunOptions& opt, const std::vector<AppendixRow>* appendix = nullptr);
// union rows whose orbits meet; sets orbit_class and returns the number of classes
int classify_orbits(std::vector<ReportRow>& rows, size_t cap);
// MC_{1/lambda}(A^-1), induced, has the induced inverse of MC_lambda(A) in its orbit up to signs
bool inverse_consistent(const MatTuple& A, Root lambda, size_t cap);

// result store: dir/<group>/T<T>/<hash>.row plus dir/<group>/T<T>/index.tsv
std::string store_rows(const std::string& dir, const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_store(const std::string& dir);
std::string report(const std::vector<ReportRow>& rows, const std::string& format);  // tsv | md

}  // namespace mcfin
