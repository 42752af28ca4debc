// Exact arithmetic in Q(zeta_n), power basis reduced mod Phi_n.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcfin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Field;
class Cyclo;

// interned, never freed; compare by pointer
const Field* field(int n);

struct Field {
  int n = 1;
  int deg = 1;
  std::vector<long> phi;                     // monic, low to high, size deg+1
  std::vector<std::vector<long>> red;        // x^(deg+j) mod phi, j < deg-1
  std::vector<std::vector<long>> pow;        // zeta^k for 0 <= k < n
};

long euler_phi(long n);
long gcdl(long a, long b);
long lcml(long a, long b);

// value zeta_d^k, kept reduced: 0 <= k < d, gcd(k,d) = 1 (or d = 1, k = 0)
struct Root {
  int d = 1;
  int k = 0;
  static Root make(long d, long k);
  Root inv() const { return make(d, -k); }
  Root operator*(const Root& o) const;
  bool operator==(const Root& o) const { return d == o.d && k == o.k; }
  bool operator<(const Root& o) const { return d != o.d ? d < o.d : k < o.k; }
  // residue k/d in [0,1)
  std::string residue() const;
};

class Cyclo {
 public:
  Cyclo();  // rational 0
  explicit Cyclo(const Field* f);
  Cyclo(const Field* f, long v);
  Cyclo(const Field* f, const mpq_class& v);
  Cyclo(const Field* f, std::vector<mpq_class> coeffs);

  static Cyclo zeta(const Field* f, long k);
  static Cyclo root(const Field* f, Root r);  // needs r.d | n (or 2n, n odd)

  const Field* fld() const { return f_; }
  int conductor() const;
  int degree() const { return (int)num_.size(); }
  mpq_class coeff(int i) const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& nums() const { return num_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  bool is_integral() const { return den_ == 1; }
  mpq_class rational() const;  // requires is_rational

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
  Cyclo inv() const;
  Cyclo pow(long e) const;
  Cyclo mul_int(long v) const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }
  size_t hash() const;

  // zeta -> zeta^k, gcd(k,n)=1
  Cyclo galois(long k) const;
  Cyclo conj() const { return galois(-1); }

  std::string str() const;  // n:[c0,...]
  static Cyclo parse(const std::string& s);
  std::string pretty() const;  // human form in powers of zeta
  double re() const;
  double im() const;

 private:
  const Field* f_;
  std::vector<mpz_class> num_;
  mpz_class den_;
  void normalize();
  friend Cyclo make_raw(const Field*, std::vector<mpz_class>, mpz_class);
};

struct CycloHash {
  size_t operator()(const Cyclo& a) const { return a.hash(); }
};

// lift a into Q(zeta_n); needs conductor(a) | n
Cyclo embed(const Cyclo& a, const Field* target);
Cyclo embed(const Cyclo& a, int n);
std::optional<Cyclo> try_descend(const Cyclo& a, int m);
// smallest conductor m | n with a in Q(zeta_m)
int min_conductor(const Cyclo& a);

std::optional<Root> as_root_of_unity(const Cyclo& a);

// smallest field holding both; embeds
int common_conductor(int a, int b);
// cos-type check: t == z + 1/z for a root z; returns reduced residue of z in [0,1/2]
std::optional<Root> as_two_cos(const Cyclo& t);

}  // namespace mcfin
